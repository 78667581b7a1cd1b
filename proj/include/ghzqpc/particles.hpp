#pragma once

#include <memory>
#include <vector>

#include "ghzqpc/statevector.hpp"

namespace ghzqpc {

// A joint quantum system owned by one protocol session. Shared references
// let several particles point into the same (possibly entangled) state; the
// value inside is replaced wholesale on each operation.
struct QuantumSystem {
  StateVector state;
};

using SystemPtr = std::shared_ptr<QuantumSystem>;

// One qubit on the wire. This is everything a wiretap can address before the
// decoy positions are announced.
struct WireSlot {
  SystemPtr system;
  int qubit = 0;
};

struct ParticleRef {
  enum class Kind { carrier, decoy };

  Kind kind = Kind::carrier;
  int group = -1;           // carrier: group index
  int qubit_in_group = -1;  // carrier: 0 = flag, 1..n = data
  int decoy = -1;           // decoy: insertion index
  WireSlot slot;
};

struct DecoyInfo {
  int position = 0;
  DecoyKind kind = DecoyKind::zero;
};

// Sender-private until the step-5 announcement.
struct DecoyPlacement {
  std::vector<DecoyInfo> decoys;
};

struct TransmittedSequence {
  std::vector<ParticleRef> particles;
  DecoyPlacement placement;
};

}  // namespace ghzqpc
