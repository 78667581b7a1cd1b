#include "ghzqpc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ghzqpc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

const std::array<Complex, 4> kHadamard = {Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0),
                                          Complex(kInvSqrt2, 0), Complex(-kInvSqrt2, 0)};

void check_qubit_count(int qubit_count) {
  if (qubit_count < 1 || qubit_count > kMaxQubits)
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
}

void check_index(const StateVector& s, int index) {
  if (index < 0 || index >= s.qubit_count()) throw std::out_of_range("qubit index out of range");
}

// Big-endian bit of qubit `q` within an m-qubit basis index.
std::uint64_t qubit_mask(int qubit_count, int q) {
  return std::uint64_t{1} << (qubit_count - 1 - q);
}

}  // namespace

Basis decoy_basis(DecoyKind kind) {
  return (kind == DecoyKind::zero || kind == DecoyKind::one) ? Basis::z : Basis::x;
}

int decoy_bit(DecoyKind kind) {
  return (kind == DecoyKind::one || kind == DecoyKind::minus) ? 1 : 0;
}

std::uint64_t bits_to_index(std::string_view bits) {
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may contain only 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return index;
}

std::string index_to_bits(std::uint64_t index, int qubit_count) {
  std::string bits(static_cast<std::size_t>(qubit_count), '0');
  for (int q = 0; q < qubit_count; ++q)
    if (index & qubit_mask(qubit_count, q)) bits[static_cast<std::size_t>(q)] = '1';
  return bits;
}

std::string complement_bits(std::string_view bits) {
  std::string out(bits);
  for (char& c : out) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may contain only 0 and 1");
    c = (c == '0') ? '1' : '0';
  }
  return out;
}

std::string xor_bits(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) throw std::invalid_argument("bit strings must have equal length");
  std::string out(a.size(), '0');
  for (std::size_t i = 0; i < a.size(); ++i) {
    int x = a[i] - '0', y = b[i] - '0';
    if ((x | y) & ~1) throw std::invalid_argument("bit string may contain only 0 and 1");
    out[i] = static_cast<char>('0' + (x ^ y));
  }
  return out;
}

StateVector StateVector::basis_state(int qubit_count, std::uint64_t index) {
  check_qubit_count(qubit_count);
  std::vector<Complex> amps(std::uint64_t{1} << qubit_count, Complex(0, 0));
  amps.at(index) = Complex(1, 0);
  return StateVector(qubit_count, std::move(amps));
}

StateVector StateVector::from_bits(std::string_view bits) {
  return basis_state(static_cast<int>(bits.size()), bits_to_index(bits));
}

StateVector StateVector::from_amplitudes(int qubit_count, std::vector<Complex> amplitudes) {
  check_qubit_count(qubit_count);
  if (amplitudes.size() != (std::uint64_t{1} << qubit_count))
    throw std::invalid_argument("amplitude count must be 2^qubit_count");
  double norm = 0;
  for (const Complex& a : amplitudes) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw std::invalid_argument("state is not normalized");
  return StateVector(qubit_count, std::move(amplitudes));
}

double StateVector::norm_squared() const {
  double norm = 0;
  for (const Complex& a : amps_) norm += std::norm(a);
  return norm;
}

StateVector make_ghz(std::string_view bits) {
  if (bits.empty()) throw std::invalid_argument("make_ghz: bits must be non-empty");
  const int m = static_cast<int>(bits.size()) + 1;
  check_qubit_count(m);
  std::vector<Complex> amps(std::uint64_t{1} << m, Complex(0, 0));
  const std::uint64_t lo = bits_to_index(bits);
  const std::uint64_t hi = bits_to_index(complement_bits(bits)) | (std::uint64_t{1} << (m - 1));
  amps[lo] = Complex(kInvSqrt2, 0);
  amps[hi] = Complex(kInvSqrt2, 0);
  return StateVector::from_amplitudes(m, std::move(amps));
}

StateVector canonical_ghz(std::uint64_t k, int sign, int qubit_count) {
  check_qubit_count(qubit_count);
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  const std::uint64_t dim = std::uint64_t{1} << qubit_count;
  if (k >= dim / 2) throw std::invalid_argument("k must satisfy 0 <= k < 2^(m-1)");
  std::vector<Complex> amps(dim, Complex(0, 0));
  amps[k] = Complex(kInvSqrt2, 0);
  amps[dim - 1 - k] = Complex(sign * kInvSqrt2, 0);
  return StateVector::from_amplitudes(qubit_count, std::move(amps));
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.qubit_count() != b.qubit_count())
    throw std::invalid_argument("inner_product: qubit counts differ");
  Complex sum(0, 0);
  for (std::uint64_t i = 0; i < a.dimension(); ++i)
    sum += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return sum;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const int m = a.qubit_count() + b.qubit_count();
  check_qubit_count(m);
  std::vector<Complex> amps(std::uint64_t{1} << m);
  for (std::uint64_t ia = 0; ia < a.dimension(); ++ia)
    for (std::uint64_t ib = 0; ib < b.dimension(); ++ib)
      amps[(ia << b.qubit_count()) | ib] = a.amplitudes()[ia] * b.amplitudes()[ib];
  return StateVector::from_amplitudes(m, std::move(amps));
}

StateVector prepare_decoy(DecoyKind kind) {
  switch (kind) {
    case DecoyKind::zero:
      return StateVector::basis_state(1, 0);
    case DecoyKind::one:
      return StateVector::basis_state(1, 1);
    case DecoyKind::plus:
      return StateVector::from_amplitudes(1, {Complex(kInvSqrt2, 0), Complex(kInvSqrt2, 0)});
    case DecoyKind::minus:
      return StateVector::from_amplitudes(1, {Complex(kInvSqrt2, 0), Complex(-kInvSqrt2, 0)});
  }
  throw std::invalid_argument("unknown decoy kind");
}

StateVector apply_single_qubit_unitary(const StateVector& state, int index,
                                       const std::array<Complex, 4>& u) {
  check_index(state, index);
  const std::uint64_t mask = qubit_mask(state.qubit_count(), index);
  std::vector<Complex> amps(state.amplitudes());
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    if (i & mask) continue;
    const Complex a0 = amps[i], a1 = amps[i | mask];
    amps[i] = u[0] * a0 + u[1] * a1;
    amps[i | mask] = u[2] * a0 + u[3] * a1;
  }
  return StateVector::from_amplitudes(state.qubit_count(), std::move(amps));
}

TwoQubitUnitary TwoQubitUnitary::from_matrix(const std::array<Complex, 16>& row_major) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Complex dot(0, 0);  // (U^dagger U)_{ij}
      for (int k = 0; k < 4; ++k) dot += std::conj(row_major[k * 4 + i]) * row_major[k * 4 + j];
      const Complex expected = (i == j) ? Complex(1, 0) : Complex(0, 0);
      if (std::abs(dot - expected) > kUnitaryTolerance)
        throw std::invalid_argument("matrix is not unitary");
    }
  return TwoQubitUnitary(row_major);
}

TwoQubitUnitary TwoQubitUnitary::identity() {
  std::array<Complex, 16> m{};
  for (int i = 0; i < 4; ++i) m[i * 4 + i] = Complex(1, 0);
  return TwoQubitUnitary(m);
}

TwoQubitUnitary TwoQubitUnitary::cnot() {
  std::array<Complex, 16> m{};
  m[0 * 4 + 0] = Complex(1, 0);
  m[1 * 4 + 1] = Complex(1, 0);
  m[2 * 4 + 3] = Complex(1, 0);
  m[3 * 4 + 2] = Complex(1, 0);
  return TwoQubitUnitary(m);
}

StateVector apply_two_qubit_unitary(const StateVector& state, int data_index, int ancilla_index,
                                    const TwoQubitUnitary& u) {
  check_index(state, data_index);
  check_index(state, ancilla_index);
  if (data_index == ancilla_index)
    throw std::invalid_argument("data and ancilla indices must differ");
  const std::uint64_t dmask = qubit_mask(state.qubit_count(), data_index);
  const std::uint64_t amask = qubit_mask(state.qubit_count(), ancilla_index);
  std::vector<Complex> amps(state.amplitudes());
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    if ((i & dmask) || (i & amask)) continue;
    const std::uint64_t idx[4] = {i, i | amask, i | dmask, i | dmask | amask};
    Complex in[4], out[4];
    for (int k = 0; k < 4; ++k) in[k] = amps[idx[k]];
    for (int r = 0; r < 4; ++r) {
      out[r] = Complex(0, 0);
      for (int c = 0; c < 4; ++c) out[r] += u.at(r, c) * in[c];
    }
    for (int k = 0; k < 4; ++k) amps[idx[k]] = out[k];
  }
  return StateVector::from_amplitudes(state.qubit_count(), std::move(amps));
}

double outcome_probability(const StateVector& state, int index, Basis basis, int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  if (basis == Basis::x)
    return outcome_probability(apply_single_qubit_unitary(state, index, kHadamard), index,
                               Basis::z, bit);
  check_index(state, index);
  const std::uint64_t mask = qubit_mask(state.qubit_count(), index);
  double p = 0;
  for (std::uint64_t i = 0; i < state.dimension(); ++i)
    if (((i & mask) != 0) == (bit == 1)) p += std::norm(state.amplitudes()[i]);
  return p;
}

StateVector project_outcome(const StateVector& state, int index, Basis basis, int bit) {
  if (basis == Basis::x) {
    StateVector rotated = apply_single_qubit_unitary(state, index, kHadamard);
    return apply_single_qubit_unitary(project_outcome(rotated, index, Basis::z, bit), index,
                                      kHadamard);
  }
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
  check_index(state, index);
  const std::uint64_t mask = qubit_mask(state.qubit_count(), index);
  std::vector<Complex> amps(state.amplitudes());
  double p = 0;
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    if (((i & mask) != 0) == (bit == 1))
      p += std::norm(amps[i]);
    else
      amps[i] = Complex(0, 0);
  }
  if (p <= 0) throw std::logic_error("projection onto zero-probability outcome");
  const double scale = 1.0 / std::sqrt(p);
  for (Complex& a : amps) a *= scale;
  return StateVector::from_amplitudes(state.qubit_count(), std::move(amps));
}

MeasurementResult measure_qubit(const StateVector& state, int index, Basis basis, Rng& rng) {
  const double p0 = outcome_probability(state, index, basis, 0);
  const int bit = rng.unit() < p0 ? 0 : 1;
  return {bit, project_outcome(state, index, basis, bit)};
}

std::string measure_all_z(const StateVector& state, Rng& rng) {
  const double r = rng.unit() * state.norm_squared();
  double cumulative = 0;
  std::uint64_t pick = 0;
  bool found = false;
  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    const double w = std::norm(state.amplitudes()[i]);
    if (w == 0) continue;
    pick = i;
    cumulative += w;
    if (r < cumulative) {
      found = true;
      break;
    }
  }
  if (!found && cumulative == 0) throw std::logic_error("cannot measure the zero state");
  return index_to_bits(pick, state.qubit_count());
}

double bipartite_product_residual(const StateVector& state, int first_block) {
  if (first_block < 1 || first_block >= state.qubit_count())
    throw std::invalid_argument("cut must leave at least one qubit on each side");
  const std::uint64_t rows = std::uint64_t{1} << first_block;
  const std::uint64_t cols = std::uint64_t{1} << (state.qubit_count() - first_block);
  const auto& amps = state.amplitudes();

  std::uint64_t best_row = 0;
  double best_norm = -1;
  for (std::uint64_t r = 0; r < rows; ++r) {
    double w = 0;
    for (std::uint64_t c = 0; c < cols; ++c) w += std::norm(amps[r * cols + c]);
    if (w > best_norm) {
      best_norm = w;
      best_row = r;
    }
  }

  std::vector<Complex> v(cols);
  const double inv = 1.0 / std::sqrt(best_norm);
  for (std::uint64_t c = 0; c < cols; ++c) v[c] = amps[best_row * cols + c] * inv;

  double residual_sq = 0;
  for (std::uint64_t r = 0; r < rows; ++r) {
    Complex coef(0, 0);
    for (std::uint64_t c = 0; c < cols; ++c) coef += std::conj(v[c]) * amps[r * cols + c];
    for (std::uint64_t c = 0; c < cols; ++c) residual_sq += std::norm(amps[r * cols + c] - coef * v[c]);
  }
  return std::sqrt(std::max(0.0, residual_sq));
}

}  // namespace ghzqpc
