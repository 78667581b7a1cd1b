#pragma once

#include <vector>

#include "ghzqpc/adversary.hpp"
#include "ghzqpc/particles.hpp"
#include "ghzqpc/rng.hpp"

namespace ghzqpc {

// Pads a carrier sequence with `decoy_count` decoys, each uniformly chosen
// from the four preparations and inserted at a uniformly chosen position.
// The returned placement is the sender's private note.
TransmittedSequence insert_decoys(std::vector<ParticleRef> carriers, int decoy_count, Rng& rng);

// Channel with an adversary interposition hook. The attack sees wire slots
// only; the decoy placement is never exposed to it.
void transmit(TransmittedSequence& seq, const AttackModel& attack, Rng& rng, EveRecord& record);

struct EavesdropCheck {
  int decoy_count = 0;
  int mismatches = 0;
  double error_rate = 0.0;
  bool pass = true;
};

// Step 5: measures every decoy in its preparation basis and compares with
// the prepared bit. Passes iff error_rate <= threshold.
EavesdropCheck check_eavesdropping(TransmittedSequence& seq, double threshold, Rng& rng);

// Step 5 announcement: the carrier/decoy layout becomes public, which is
// what lets Eve sort her own records.
void announce_positions(EveRecord& record, const TransmittedSequence& seq);

}  // namespace ghzqpc
