#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ghzqpc/particles.hpp"
#include "ghzqpc/rng.hpp"
#include "ghzqpc/statevector.hpp"

namespace ghzqpc {

enum class AttackKind { none, intercept_resend, measurement_resend, entangle_measure };
enum class AttackTarget { alice_channel, bob_channel, both };

std::string_view to_string(AttackKind kind);
std::string_view to_string(AttackTarget target);

struct AttackModel {
  AttackKind kind = AttackKind::none;
  AttackTarget target = AttackTarget::both;
  // entangle_measure: unitaries[i % size()] is applied at stream position i.
  std::vector<TwoQubitUnitary> unitaries;

  bool hits_alice() const {
    return kind != AttackKind::none && target != AttackTarget::bob_channel;
  }
  bool hits_bob() const {
    return kind != AttackKind::none && target != AttackTarget::alice_channel;
  }
};

// Everything Eve keeps from one attacked transmission, indexed by stream
// position. `announced` stays empty until the step-5 announcement makes the
// carrier/decoy layout public.
struct EveRecord {
  AttackKind kind = AttackKind::none;

  std::vector<WireSlot> stolen;  // intercept_resend: the original particles
  std::vector<int> z_outcomes;   // intercept_resend: Eve's Z results

  struct BasisOutcome {
    Basis basis = Basis::z;
    int outcome = 0;
  };
  std::vector<BasisOutcome> measurements;  // measurement_resend

  std::vector<WireSlot> ancillas;          // entangle_measure
  std::vector<TwoQubitUnitary> unitaries;  // entangle_measure, as configured

  struct PublicInfo {
    bool carrier = false;
    int group = -1;
    int qubit_in_group = -1;
  };
  std::vector<PublicInfo> announced;

  bool active() const { return kind != AttackKind::none; }
};

// Eve measures each particle in the Z basis, keeps the collapsed original,
// and forwards a fresh particle prepared in the observed eigenstate. Z
// decoys pass unharmed, X decoys err with probability 1/2, so each checked
// decoy catches her with probability 1/4; carrier branches are preserved
// exactly in her stash.
void intercept_resend(std::vector<WireSlot>& stream, Rng& rng, EveRecord& record);

// Eve measures each particle in a uniformly chosen basis (Z or X) and
// forwards the collapsed particle. Wrong-basis decoys err with probability
// 1/2, again 1/4 per checked decoy.
void measurement_resend(std::vector<WireSlot>& stream, Rng& rng, EveRecord& record);

// Eve attaches a fresh |0> ancilla to every particle and applies a joint
// unitary; the particles travel on, the ancillas stay with her.
void entangle_measure(std::vector<WireSlot>& stream,
                      const std::vector<TwoQubitUnitary>& unitaries, EveRecord& record);

void apply_attack(const AttackModel& attack, std::vector<WireSlot>& stream, Rng& rng,
                  EveRecord& record);

// Undetectability conditions for an entangling unitary with the ancilla
// prepared in |0>: writing U|a>|0> = sum_b lambda_ab |b>|e_ab>, the attack
// leaves every decoy untouched iff lambda_01 = lambda_10 = 0 and
// lambda_00|e_00> = lambda_11|e_11>.
struct ConstraintReport {
  double lambda_01_mag = 0;
  double lambda_10_mag = 0;
  double cross_term_distance = 0;  // || lambda_00|e_00> - lambda_11|e_11> ||
  bool satisfied = false;
};

ConstraintReport check_constraints(const TwoQubitUnitary& u);

// How well the two conditional ancilla states can be told apart: the
// pure-state trace distance sqrt(1 - |<e_00|e_11>|^2), in [0, 1]. Zero for
// every constraint-satisfying unitary, 1 for CNOT.
double ancilla_distinguishability(const TwoQubitUnitary& u);

// Exact per-decoy disturbance, enumerated over Eve's randomness and all
// measurement branches. No sampling.
double exact_decoy_error(AttackKind kind, DecoyKind decoy);
double exact_decoy_error(const TwoQubitUnitary& u, DecoyKind decoy);
double exact_mean_decoy_error(AttackKind kind);
double exact_mean_decoy_error(const TwoQubitUnitary& u);
double exact_mean_decoy_error(const AttackModel& attack);

// Post-announcement reconstruction of every group's encrypted bits from the
// record; bits Eve cannot infer become uniform guesses. Requires announced
// positions.
std::vector<std::string> reconstruct_encrypted_groups(const EveRecord& record, int group_count,
                                                      int group_size, Rng& rng);

struct EveInformation {
  int groups_total = 0;
  int groups_correct = 0;
  double group_hit_fraction = 0.0;  // groups_correct / groups_total
  bool exact_recovery = false;      // every group reconstructed exactly
  double ancilla_distinguishability = 0.0;
};

// Eve's best guess of the plaintext groups given her record: she recovers
// encrypted bits where possible and guesses one key bit per group. With no
// attack this returns all zeros.
EveInformation eve_information(const EveRecord& record,
                               const std::vector<std::string>& truth_groups, Rng& rng);

// Haar-like random 4x4 unitary (Gram-Schmidt of Gaussian columns).
TwoQubitUnitary random_unitary(Rng& rng);

// Random unitary satisfying the undetectability constraints exactly.
TwoQubitUnitary random_satisfying_unitary(Rng& rng);

}  // namespace ghzqpc
