#include "ghzqpc/adversary.hpp"

#include <cmath>
#include <stdexcept>

namespace ghzqpc {

namespace {

struct Vec2 {
  Complex a, b;

  double norm() const { return std::sqrt(std::norm(a) + std::norm(b)); }
};

// Conditional ancilla vectors lambda_ab |e_ab> for ancilla input |0>:
// column 2*a of u, split into the data-b block.
Vec2 conditional(const TwoQubitUnitary& u, int data_in, int data_out) {
  const int col = 2 * data_in;
  return {u.at(2 * data_out + 0, col), u.at(2 * data_out + 1, col)};
}

double tp_error_probability(const StateVector& forwarded, DecoyKind decoy) {
  return outcome_probability(forwarded, 0, decoy_basis(decoy), 1 - decoy_bit(decoy));
}

constexpr DecoyKind kAllDecoys[] = {DecoyKind::zero, DecoyKind::one, DecoyKind::plus,
                                    DecoyKind::minus};

// Gram-Schmidt completion of preset columns with Gaussian draws.
std::array<Complex, 16> complete_columns(std::array<Complex, 16>& m,
                                         const std::vector<int>& free_cols, Rng& rng);

double gaussian(Rng& rng) {
  const double u1 = 1.0 - rng.unit();
  const double u2 = rng.unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

std::array<Complex, 16> complete_columns(std::array<Complex, 16>& m,
                                         const std::vector<int>& free_cols, Rng& rng) {
  for (int col : free_cols) {
    for (int attempt = 0;; ++attempt) {
      Complex v[4];
      for (auto& x : v) x = Complex(gaussian(rng), gaussian(rng));
      // Orthogonalize against every already-set column.
      for (int other = 0; other < 4; ++other) {
        if (other == col) continue;
        bool is_free_later = false;
        for (int f : free_cols)
          if (f == other && f > col) is_free_later = true;
        if (is_free_later) continue;
        Complex overlap(0, 0);
        for (int r = 0; r < 4; ++r) overlap += std::conj(m[r * 4 + other]) * v[r];
        for (int r = 0; r < 4; ++r) v[r] -= overlap * m[r * 4 + other];
      }
      double norm = 0;
      for (const auto& x : v) norm += std::norm(x);
      if (norm > 1e-12) {
        const double inv = 1.0 / std::sqrt(norm);
        for (int r = 0; r < 4; ++r) m[r * 4 + col] = v[r] * inv;
        break;
      }
      if (attempt > 64) throw std::logic_error("column completion failed");
    }
  }
  return m;
}

// Measures the ancilla at `pos` in the basis aligned with the unitary's
// lambda_00|e_00> direction; outcome 0 reads as "data branch 0". For a
// constraint-satisfying unitary the outcome is independent of the data, for
// CNOT it recovers the branch bit exactly.
int measure_ancilla_estimate(const EveRecord& record, std::size_t pos, Rng& rng) {
  const TwoQubitUnitary& u = record.unitaries[pos % record.unitaries.size()];
  Vec2 w = conditional(u, 0, 0);
  const double n = w.norm();
  if (n < 1e-9) {
    w = {Complex(1, 0), Complex(0, 0)};
  } else {
    w.a /= n;
    w.b /= n;
  }
  const std::array<Complex, 4> rotate = {std::conj(w.a), std::conj(w.b), -w.b, w.a};
  const WireSlot& slot = record.ancillas[pos];
  slot.system->state = apply_single_qubit_unitary(slot.system->state, slot.qubit, rotate);
  MeasurementResult m = measure_qubit(slot.system->state, slot.qubit, Basis::z, rng);
  slot.system->state = m.state;
  return m.bit;
}

}  // namespace

std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::none:
      return "none";
    case AttackKind::intercept_resend:
      return "intercept_resend";
    case AttackKind::measurement_resend:
      return "measurement_resend";
    case AttackKind::entangle_measure:
      return "entangle_measure";
  }
  return "?";
}

std::string_view to_string(AttackTarget target) {
  switch (target) {
    case AttackTarget::alice_channel:
      return "alice_channel";
    case AttackTarget::bob_channel:
      return "bob_channel";
    case AttackTarget::both:
      return "both";
  }
  return "?";
}

void intercept_resend(std::vector<WireSlot>& stream, Rng& rng, EveRecord& record) {
  record.kind = AttackKind::intercept_resend;
  for (WireSlot& slot : stream) {
    MeasurementResult m = measure_qubit(slot.system->state, slot.qubit, Basis::z, rng);
    slot.system->state = m.state;
    record.stolen.push_back(slot);
    record.z_outcomes.push_back(m.bit);
    auto fake = std::make_shared<QuantumSystem>(
        QuantumSystem{StateVector::basis_state(1, static_cast<std::uint64_t>(m.bit))});
    slot = WireSlot{fake, 0};
  }
}

void measurement_resend(std::vector<WireSlot>& stream, Rng& rng, EveRecord& record) {
  record.kind = AttackKind::measurement_resend;
  for (WireSlot& slot : stream) {
    const Basis basis = rng.bit() ? Basis::x : Basis::z;
    MeasurementResult m = measure_qubit(slot.system->state, slot.qubit, basis, rng);
    slot.system->state = m.state;
    record.measurements.push_back({basis, m.bit});
  }
}

void entangle_measure(std::vector<WireSlot>& stream,
                      const std::vector<TwoQubitUnitary>& unitaries, EveRecord& record) {
  if (unitaries.empty())
    throw std::invalid_argument("entangle_measure: at least one unitary required");
  record.kind = AttackKind::entangle_measure;
  record.unitaries = unitaries;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    WireSlot& slot = stream[i];
    const int ancilla = slot.system->state.qubit_count();
    slot.system->state = tensor(slot.system->state, StateVector::basis_state(1, 0));
    slot.system->state = apply_two_qubit_unitary(slot.system->state, slot.qubit, ancilla,
                                                 unitaries[i % unitaries.size()]);
    record.ancillas.push_back(WireSlot{slot.system, ancilla});
  }
}

void apply_attack(const AttackModel& attack, std::vector<WireSlot>& stream, Rng& rng,
                  EveRecord& record) {
  switch (attack.kind) {
    case AttackKind::none:
      return;
    case AttackKind::intercept_resend:
      intercept_resend(stream, rng, record);
      return;
    case AttackKind::measurement_resend:
      measurement_resend(stream, rng, record);
      return;
    case AttackKind::entangle_measure:
      entangle_measure(stream, attack.unitaries, record);
      return;
  }
}

ConstraintReport check_constraints(const TwoQubitUnitary& u) {
  ConstraintReport r;
  r.lambda_01_mag = conditional(u, 0, 1).norm();
  r.lambda_10_mag = conditional(u, 1, 0).norm();
  const Vec2 w00 = conditional(u, 0, 0);
  const Vec2 w11 = conditional(u, 1, 1);
  r.cross_term_distance = Vec2{w00.a - w11.a, w00.b - w11.b}.norm();
  r.satisfied = r.lambda_01_mag <= kUnitaryTolerance && r.lambda_10_mag <= kUnitaryTolerance &&
                r.cross_term_distance <= kUnitaryTolerance;
  return r;
}

double ancilla_distinguishability(const TwoQubitUnitary& u) {
  const Vec2 w00 = conditional(u, 0, 0);
  const Vec2 w11 = conditional(u, 1, 1);
  const double n0 = w00.norm(), n1 = w11.norm();
  if (n0 * n1 < 1e-12) return (n0 + n1 < 1e-12) ? 0.0 : 1.0;
  // sqrt(1 - |<e00|e11>|^2) via the Lagrange identity
  // |w00|^2 |w11|^2 - |<w00,w11>|^2 = |w00.a w11.b - w00.b w11.a|^2,
  // which stays exact where the vectors are (anti)parallel and the
  // inner-product form would cancel catastrophically.
  const Complex det = w00.a * w11.b - w00.b * w11.a;
  return std::min(1.0, std::abs(det) / (n0 * n1));
}

double exact_decoy_error(AttackKind kind, DecoyKind decoy) {
  const StateVector psi = prepare_decoy(decoy);
  switch (kind) {
    case AttackKind::none:
      return 0.0;
    case AttackKind::intercept_resend: {
      double err = 0;
      for (int o = 0; o < 2; ++o) {
        const double p = outcome_probability(psi, 0, Basis::z, o);
        if (p <= 0) continue;
        err += p * tp_error_probability(StateVector::basis_state(1, static_cast<std::uint64_t>(o)),
                                        decoy);
      }
      return err;
    }
    case AttackKind::measurement_resend: {
      double err = 0;
      for (Basis basis : {Basis::z, Basis::x})
        for (int o = 0; o < 2; ++o) {
          const double p = outcome_probability(psi, 0, basis, o);
          if (p <= 0) continue;
          err += 0.5 * p * tp_error_probability(project_outcome(psi, 0, basis, o), decoy);
        }
      return err;
    }
    case AttackKind::entangle_measure:
      throw std::invalid_argument("entangle_measure needs a unitary; use the unitary overload");
  }
  return 0.0;
}

double exact_decoy_error(const TwoQubitUnitary& u, DecoyKind decoy) {
  StateVector joint = tensor(prepare_decoy(decoy), StateVector::basis_state(1, 0));
  joint = apply_two_qubit_unitary(joint, 0, 1, u);
  return tp_error_probability(joint, decoy);
}

double exact_mean_decoy_error(AttackKind kind) {
  double sum = 0;
  for (DecoyKind d : kAllDecoys) sum += exact_decoy_error(kind, d);
  return sum / 4.0;
}

double exact_mean_decoy_error(const TwoQubitUnitary& u) {
  double sum = 0;
  for (DecoyKind d : kAllDecoys) sum += exact_decoy_error(u, d);
  return sum / 4.0;
}

double exact_mean_decoy_error(const AttackModel& attack) {
  if (attack.kind != AttackKind::entangle_measure) return exact_mean_decoy_error(attack.kind);
  if (attack.unitaries.empty())
    throw std::invalid_argument("entangle_measure needs at least one unitary");
  double sum = 0;
  for (const TwoQubitUnitary& u : attack.unitaries) sum += exact_mean_decoy_error(u);
  return sum / static_cast<double>(attack.unitaries.size());
}

std::vector<std::string> reconstruct_encrypted_groups(const EveRecord& record, int group_count,
                                                      int group_size, Rng& rng) {
  if (group_count < 0 || group_size < 1) throw std::invalid_argument("bad group shape");
  if (record.active() && record.announced.empty())
    throw std::logic_error("positions have not been announced yet");

  // branch_bits[g][j]: Eve's Z-branch knowledge of carrier qubit j (flag 0),
  // -1 where she has none.
  std::vector<std::vector<int>> branch_bits(
      static_cast<std::size_t>(group_count),
      std::vector<int>(static_cast<std::size_t>(group_size) + 1, -1));
  for (std::size_t pos = 0; pos < record.announced.size(); ++pos) {
    const auto& info = record.announced[pos];
    if (!info.carrier) continue;
    if (info.group < 0 || info.group >= group_count || info.qubit_in_group < 0 ||
        info.qubit_in_group > group_size)
      throw std::logic_error("announced layout does not match group shape");
    int known = -1;
    switch (record.kind) {
      case AttackKind::intercept_resend:
        known = record.z_outcomes.at(pos);
        break;
      case AttackKind::measurement_resend: {
        const auto& m = record.measurements.at(pos);
        if (m.basis == Basis::z) known = m.outcome;
        break;
      }
      case AttackKind::entangle_measure:
        known = measure_ancilla_estimate(record, pos, rng);
        break;
      case AttackKind::none:
        break;
    }
    branch_bits[static_cast<std::size_t>(info.group)]
               [static_cast<std::size_t>(info.qubit_in_group)] = known;
  }

  std::vector<std::string> out(static_cast<std::size_t>(group_count));
  for (int g = 0; g < group_count; ++g) {
    const auto& row = branch_bits[static_cast<std::size_t>(g)];
    const int flag = row[0] >= 0 ? row[0] : rng.bit();
    std::string enc(static_cast<std::size_t>(group_size), '0');
    for (int j = 1; j <= group_size; ++j) {
      const int bit = row[static_cast<std::size_t>(j)] >= 0
                          ? (row[static_cast<std::size_t>(j)] ^ flag)
                          : rng.bit();
      enc[static_cast<std::size_t>(j - 1)] = static_cast<char>('0' + bit);
    }
    out[static_cast<std::size_t>(g)] = std::move(enc);
  }
  return out;
}

EveInformation eve_information(const EveRecord& record,
                               const std::vector<std::string>& truth_groups, Rng& rng) {
  EveInformation info;
  info.groups_total = static_cast<int>(truth_groups.size());
  if (!record.active() || truth_groups.empty()) return info;

  const int group_size = static_cast<int>(truth_groups.front().size());
  const auto enc = reconstruct_encrypted_groups(record, info.groups_total, group_size, rng);
  for (int g = 0; g < info.groups_total; ++g) {
    // Eve does not hold the encryption key; she guesses its bit.
    const std::string guess =
        rng.bit() ? complement_bits(enc[static_cast<std::size_t>(g)])
                  : enc[static_cast<std::size_t>(g)];
    if (guess == truth_groups[static_cast<std::size_t>(g)]) ++info.groups_correct;
  }
  info.group_hit_fraction =
      static_cast<double>(info.groups_correct) / static_cast<double>(info.groups_total);
  info.exact_recovery = info.groups_correct == info.groups_total;
  if (record.kind == AttackKind::entangle_measure)
    for (const TwoQubitUnitary& u : record.unitaries)
      info.ancilla_distinguishability =
          std::max(info.ancilla_distinguishability, ancilla_distinguishability(u));
  return info;
}

TwoQubitUnitary random_unitary(Rng& rng) {
  std::array<Complex, 16> m{};
  return TwoQubitUnitary::from_matrix(complete_columns(m, {0, 1, 2, 3}, rng));
}

TwoQubitUnitary random_satisfying_unitary(Rng& rng) {
  Complex v0(gaussian(rng), gaussian(rng));
  Complex v1(gaussian(rng), gaussian(rng));
  const double inv = 1.0 / std::sqrt(std::norm(v0) + std::norm(v1));
  v0 *= inv;
  v1 *= inv;
  std::array<Complex, 16> m{};
  // Columns for ancilla input |0>: data is preserved and the ancilla goes to
  // the same state v either way, which is exactly the constraint set.
  m[0 * 4 + 0] = v0;
  m[1 * 4 + 0] = v1;
  m[2 * 4 + 2] = v0;
  m[3 * 4 + 2] = v1;
  return TwoQubitUnitary::from_matrix(complete_columns(m, {1, 3}, rng));
}

}  // namespace ghzqpc
