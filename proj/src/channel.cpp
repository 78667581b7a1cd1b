#include "ghzqpc/channel.hpp"

#include <stdexcept>

namespace ghzqpc {

TransmittedSequence insert_decoys(std::vector<ParticleRef> carriers, int decoy_count, Rng& rng) {
  if (decoy_count < 0) throw std::invalid_argument("decoy_count must be non-negative");
  TransmittedSequence seq;
  seq.particles = std::move(carriers);
  std::vector<DecoyKind> kinds(static_cast<std::size_t>(decoy_count));
  for (int d = 0; d < decoy_count; ++d) {
    const auto kind = static_cast<DecoyKind>(rng.below(4));
    kinds[static_cast<std::size_t>(d)] = kind;
    auto system = std::make_shared<QuantumSystem>(QuantumSystem{prepare_decoy(kind)});
    ParticleRef p;
    p.kind = ParticleRef::Kind::decoy;
    p.decoy = d;
    p.slot = WireSlot{std::move(system), 0};
    const auto position = rng.below(seq.particles.size() + 1);
    seq.particles.insert(seq.particles.begin() + static_cast<std::ptrdiff_t>(position),
                         std::move(p));
  }
  for (std::size_t i = 0; i < seq.particles.size(); ++i) {
    const ParticleRef& p = seq.particles[i];
    if (p.kind == ParticleRef::Kind::decoy)
      seq.placement.decoys.push_back(
          DecoyInfo{static_cast<int>(i), kinds[static_cast<std::size_t>(p.decoy)]});
  }
  return seq;
}

void transmit(TransmittedSequence& seq, const AttackModel& attack, Rng& rng, EveRecord& record) {
  if (attack.kind == AttackKind::none) return;
  std::vector<WireSlot> stream;
  stream.reserve(seq.particles.size());
  for (const ParticleRef& p : seq.particles) stream.push_back(p.slot);
  apply_attack(attack, stream, rng, record);
  for (std::size_t i = 0; i < seq.particles.size(); ++i) seq.particles[i].slot = stream[i];
}

EavesdropCheck check_eavesdropping(TransmittedSequence& seq, double threshold, Rng& rng) {
  if (threshold < 0) throw std::invalid_argument("threshold must be non-negative");
  EavesdropCheck check;
  check.decoy_count = static_cast<int>(seq.placement.decoys.size());
  for (const DecoyInfo& info : seq.placement.decoys) {
    ParticleRef& p = seq.particles.at(static_cast<std::size_t>(info.position));
    if (p.kind != ParticleRef::Kind::decoy)
      throw std::logic_error("placement does not point at a decoy");
    MeasurementResult m =
        measure_qubit(p.slot.system->state, p.slot.qubit, decoy_basis(info.kind), rng);
    p.slot.system->state = m.state;
    if (m.bit != decoy_bit(info.kind)) ++check.mismatches;
  }
  check.error_rate = check.decoy_count == 0
                         ? 0.0
                         : static_cast<double>(check.mismatches) / check.decoy_count;
  check.pass = check.error_rate <= threshold;
  return check;
}

void announce_positions(EveRecord& record, const TransmittedSequence& seq) {
  if (!record.active()) return;
  record.announced.clear();
  record.announced.reserve(seq.particles.size());
  for (const ParticleRef& p : seq.particles)
    record.announced.push_back(EveRecord::PublicInfo{p.kind == ParticleRef::Kind::carrier,
                                                     p.group, p.qubit_in_group});
}

}  // namespace ghzqpc
