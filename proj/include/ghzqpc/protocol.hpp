#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ghzqpc/adversary.hpp"
#include "ghzqpc/channel.hpp"
#include "ghzqpc/rng.hpp"
#include "ghzqpc/statevector.hpp"

namespace ghzqpc {

// Private input x_1..x_N; x_1 is the least significant bit of the integer
// value, so bits read left to right in index order.
struct Secret {
  std::string bits;

  static Secret from_bits(std::string_view bits);
  static Secret from_decimal(std::uint64_t value, int length);

  int length() const { return static_cast<int>(bits.size()); }
  std::uint64_t value() const;
};

Secret random_secret(int length, Rng& rng);

struct GroupedSecret {
  std::vector<std::string> groups;  // each exactly group_size wide
  int group_size = 0;
  int secret_length = 0;  // before zero-padding
};

// One bit per group per pairwise key.
struct KeyMaterial {
  std::vector<int> k_ab, k_ac, k_bc;
};

struct TpDecodeRecord {
  int m1 = 0;            // flag qubit outcome
  std::string m2;        // data qubit outcomes
  int c = 0;             // m1 xor key bit
  std::string m2_prime;  // m2, complemented when c = 1
};

enum class Verdict { equal, unequal, aborted };

std::string_view to_string(Verdict v);

struct TranscriptEvent {
  std::string step;
  std::string actor;  // alice | bob | tp | eve
  std::string detail;
};

struct ProtocolConfig {
  int group_size = 2;
  int decoy_count = 16;    // decoys per transmission
  double threshold = 0.0;  // abort above this decoy error rate
};

struct RunOutcome {
  Verdict verdict = Verdict::aborted;
  std::vector<std::string> rc;        // per-group xor of the decoded groups
  double eavesdrop_error_rate = 0.0;  // max of the two channel rates
  EavesdropCheck alice_check, bob_check;
  std::vector<TpDecodeRecord> records_alice, records_bob;
  KeyMaterial keys;
  GroupedSecret groups_alice, groups_bob;
  EveRecord eve_alice, eve_bob;
  std::vector<TranscriptEvent> transcript;
};

// Draw order: k_ab, then k_ac, then k_bc, one bit per group each.
KeyMaterial generate_keys(int group_count, Rng& rng);

// Splits into ceil(N/n) groups of n in index order; the last group is padded
// with zeros up to width n. Requires 2 <= n <= N.
GroupedSecret group_secret(const Secret& secret, int group_size);

// Bitwise complement when r = 1, identity when r = 0.
std::string encrypt_group(std::string_view group, int r);

// (|0 g> + |1 ~g>)/sqrt(2) for the encrypted group g.
StateVector prepare_carrier(std::string_view encrypted_group);

// measured = flag bit followed by the data bits. c = flag xor key; the data
// bits are complemented when c = 1.
TpDecodeRecord tp_decode(std::string_view measured, int key_bit);

struct GroupComparison {
  std::string rc;
  bool equal = false;
};

GroupComparison compare_groups(std::string_view a, std::string_view b);

int group_count(int secret_length, int group_size);

// One full session: key generation, encryption, carrier preparation, decoy
// padding, transmission through the (possibly attacked) channels, the decoy
// check with OR-ed per-channel aborts, TP's Z measurements, decoding and the
// final comparison. The rng drives every random choice in a fixed order, so
// equal seeds give identical outcomes.
RunOutcome run_protocol(const ProtocolConfig& config, const Secret& x, const Secret& y,
                        const AttackModel& attack, Rng& rng);

}  // namespace ghzqpc
