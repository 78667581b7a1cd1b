#include "ghzqpc/protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace ghzqpc {

namespace {

void check_bits(std::string_view bits) {
  if (bits.empty()) throw std::invalid_argument("bit string must be non-empty");
  for (char c : bits)
    if (c != '0' && c != '1') throw std::invalid_argument("bit string may contain only 0 and 1");
}

std::string fmt(std::string_view key, long long value) {
  return std::string(key) + "=" + std::to_string(value);
}

}  // namespace

Secret Secret::from_bits(std::string_view bits) {
  check_bits(bits);
  return Secret{std::string(bits)};
}

Secret Secret::from_decimal(std::uint64_t value, int length) {
  if (length < 1 || length > 64) throw std::invalid_argument("length must be in [1, 64]");
  if (length < 64 && value >= (std::uint64_t{1} << length))
    throw std::invalid_argument("value does not fit in the given length");
  std::string bits(static_cast<std::size_t>(length), '0');
  for (int j = 0; j < length; ++j)
    if (value & (std::uint64_t{1} << j)) bits[static_cast<std::size_t>(j)] = '1';
  return Secret{std::move(bits)};
}

std::uint64_t Secret::value() const {
  if (bits.size() > 64) throw std::logic_error("secret too long for an integer value");
  std::uint64_t v = 0;
  for (std::size_t j = 0; j < bits.size(); ++j)
    if (bits[j] == '1') v |= std::uint64_t{1} << j;
  return v;
}

Secret random_secret(int length, Rng& rng) {
  if (length < 1) throw std::invalid_argument("length must be positive");
  std::string bits(static_cast<std::size_t>(length), '0');
  for (char& c : bits) c = static_cast<char>('0' + rng.bit());
  return Secret{std::move(bits)};
}

KeyMaterial generate_keys(int group_count, Rng& rng) {
  if (group_count < 1) throw std::invalid_argument("group_count must be positive");
  KeyMaterial keys;
  for (auto* key : {&keys.k_ab, &keys.k_ac, &keys.k_bc}) {
    key->resize(static_cast<std::size_t>(group_count));
    for (int& bit : *key) bit = rng.bit();
  }
  return keys;
}

int group_count(int secret_length, int group_size) {
  return (secret_length + group_size - 1) / group_size;
}

GroupedSecret group_secret(const Secret& secret, int group_size) {
  check_bits(secret.bits);
  const int n = group_size, length = secret.length();
  if (n < 2) throw std::invalid_argument("group size must be at least 2");
  if (n > length) throw std::invalid_argument("group size must not exceed the secret length");
  GroupedSecret grouped;
  grouped.group_size = n;
  grouped.secret_length = length;
  for (int start = 0; start < length; start += n) {
    std::string group = secret.bits.substr(static_cast<std::size_t>(start),
                                           static_cast<std::size_t>(n));
    group.resize(static_cast<std::size_t>(n), '0');  // zero-pad the last group
    grouped.groups.push_back(std::move(group));
  }
  return grouped;
}

std::string encrypt_group(std::string_view group, int r) {
  check_bits(group);
  if (r != 0 && r != 1) throw std::invalid_argument("key bit must be 0 or 1");
  return r ? complement_bits(group) : std::string(group);
}

StateVector prepare_carrier(std::string_view encrypted_group) {
  return make_ghz(encrypted_group);
}

TpDecodeRecord tp_decode(std::string_view measured, int key_bit) {
  check_bits(measured);
  if (measured.size() < 2) throw std::invalid_argument("measured string needs flag + data bits");
  if (key_bit != 0 && key_bit != 1) throw std::invalid_argument("key bit must be 0 or 1");
  TpDecodeRecord rec;
  rec.m1 = measured[0] - '0';
  rec.m2 = std::string(measured.substr(1));
  rec.c = rec.m1 ^ key_bit;
  rec.m2_prime = rec.c ? complement_bits(rec.m2) : rec.m2;
  return rec;
}

GroupComparison compare_groups(std::string_view a, std::string_view b) {
  GroupComparison cmp;
  cmp.rc = xor_bits(a, b);
  cmp.equal = cmp.rc.find('1') == std::string::npos;
  return cmp;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::equal:
      return "equal";
    case Verdict::unequal:
      return "unequal";
    case Verdict::aborted:
      return "aborted";
  }
  return "?";
}

RunOutcome run_protocol(const ProtocolConfig& config, const Secret& x, const Secret& y,
                        const AttackModel& attack, Rng& rng) {
  if (x.length() != y.length())
    throw std::invalid_argument("secrets must have the same length");
  if (attack.kind == AttackKind::entangle_measure && attack.unitaries.empty())
    throw std::invalid_argument("entangle_measure attack needs at least one unitary");

  RunOutcome out;
  auto& log = out.transcript;
  out.groups_alice = group_secret(x, config.group_size);
  out.groups_bob = group_secret(y, config.group_size);
  const int n = config.group_size;
  const int groups = static_cast<int>(out.groups_alice.groups.size());

  log.push_back({"setup", "tp",
                 fmt("secret_length", x.length()) + " " + fmt("group_size", n) + " " +
                     fmt("groups", groups) + " " + fmt("decoys", config.decoy_count)});
  out.keys = generate_keys(groups, rng);
  log.push_back({"qkd_key", "alice", "with=bob " + fmt("bits", groups)});
  log.push_back({"qkd_key", "alice", "with=tp " + fmt("bits", groups)});
  log.push_back({"qkd_key", "bob", "with=tp " + fmt("bits", groups)});

  auto prepare_side = [&](const GroupedSecret& grouped, const std::vector<int>& k_with_tp,
                          const char* actor) {
    std::vector<ParticleRef> carriers;
    carriers.reserve(static_cast<std::size_t>(groups * (n + 1)));
    for (int i = 0; i < groups; ++i) {
      const int r = out.keys.k_ab[static_cast<std::size_t>(i)] ^
                    k_with_tp[static_cast<std::size_t>(i)];
      const std::string enc = encrypt_group(grouped.groups[static_cast<std::size_t>(i)], r);
      auto system = std::make_shared<QuantumSystem>(QuantumSystem{prepare_carrier(enc)});
      for (int q = 0; q <= n; ++q) {
        ParticleRef p;
        p.kind = ParticleRef::Kind::carrier;
        p.group = i;
        p.qubit_in_group = q;
        p.slot = WireSlot{system, q};
        carriers.push_back(std::move(p));
      }
    }
    log.push_back({"encrypt", actor, fmt("groups", groups)});
    log.push_back({"prepare_carriers", actor,
                   fmt("systems", groups) + " " + fmt("qubits_each", n + 1)});
    return carriers;
  };

  auto send_side = [&](std::vector<ParticleRef> carriers, EveRecord& record, bool attacked,
                       const char* actor) {
    TransmittedSequence seq = insert_decoys(std::move(carriers), config.decoy_count, rng);
    log.push_back({"insert_decoys", actor,
                   fmt("decoys", config.decoy_count) + " " +
                       fmt("sequence_length", static_cast<long long>(seq.particles.size()))});
    if (attacked) {
      transmit(seq, attack, rng, record);
      log.push_back({"attack", "eve",
                     std::string("kind=") + std::string(to_string(attack.kind)) + " channel=" +
                         actor});
    }
    log.push_back({"transmit", actor,
                   fmt("particles", static_cast<long long>(seq.particles.size()))});
    return seq;
  };

  TransmittedSequence seq_a =
      send_side(prepare_side(out.groups_alice, out.keys.k_ac, "alice"), out.eve_alice,
                attack.hits_alice(), "alice");
  TransmittedSequence seq_b =
      send_side(prepare_side(out.groups_bob, out.keys.k_bc, "bob"), out.eve_bob,
                attack.hits_bob(), "bob");

  // Step 5: positions become public, then TP checks the decoys.
  announce_positions(out.eve_alice, seq_a);
  announce_positions(out.eve_bob, seq_b);
  log.push_back({"announce_positions", "alice", fmt("decoys", config.decoy_count)});
  log.push_back({"announce_positions", "bob", fmt("decoys", config.decoy_count)});

  auto run_check = [&](TransmittedSequence& seq, const char* actor) {
    EavesdropCheck check = check_eavesdropping(seq, config.threshold, rng);
    log.push_back({"eavesdropping_check", "tp",
                   std::string("channel=") + actor + " " + fmt("mismatches", check.mismatches) +
                       " " + fmt("decoys", check.decoy_count) +
                       (check.pass ? " pass=true" : " pass=false")});
    return check;
  };
  out.alice_check = run_check(seq_a, "alice");
  out.bob_check = run_check(seq_b, "bob");
  out.eavesdrop_error_rate = std::max(out.alice_check.error_rate, out.bob_check.error_rate);

  if (!out.alice_check.pass || !out.bob_check.pass) {
    out.verdict = Verdict::aborted;
    log.push_back({"abort", "tp", "eavesdropping detected"});
    log.push_back({"verdict", "tp", std::string(to_string(out.verdict))});
    return out;
  }

  // Step 6: TP measures every carrier qubit in Z, group by group.
  auto measure_side = [&](TransmittedSequence& seq, const std::vector<int>& k_with_tp,
                          const char* actor) {
    std::vector<std::vector<ParticleRef*>> by_group(
        static_cast<std::size_t>(groups),
        std::vector<ParticleRef*>(static_cast<std::size_t>(n) + 1, nullptr));
    for (ParticleRef& p : seq.particles)
      if (p.kind == ParticleRef::Kind::carrier)
        by_group.at(static_cast<std::size_t>(p.group))
            .at(static_cast<std::size_t>(p.qubit_in_group)) = &p;
    std::vector<TpDecodeRecord> records;
    for (int i = 0; i < groups; ++i) {
      std::string measured(static_cast<std::size_t>(n) + 1, '0');
      for (int q = 0; q <= n; ++q) {
        ParticleRef* p = by_group[static_cast<std::size_t>(i)][static_cast<std::size_t>(q)];
        if (p == nullptr) throw std::logic_error("carrier qubit lost in transmission");
        MeasurementResult m =
            measure_qubit(p->slot.system->state, p->slot.qubit, Basis::z, rng);
        p->slot.system->state = m.state;
        measured[static_cast<std::size_t>(q)] = static_cast<char>('0' + m.bit);
      }
      records.push_back(tp_decode(measured, k_with_tp[static_cast<std::size_t>(i)]));
    }
    log.push_back({"measure", "tp", std::string("channel=") + actor + " " + fmt("groups", groups)});
    log.push_back({"decode", "tp", std::string("channel=") + actor});
    return records;
  };
  out.records_alice = measure_side(seq_a, out.keys.k_ac, "alice");
  out.records_bob = measure_side(seq_b, out.keys.k_bc, "bob");

  bool all_equal = true;
  std::string rc_detail;
  for (int i = 0; i < groups; ++i) {
    GroupComparison cmp = compare_groups(out.records_alice[static_cast<std::size_t>(i)].m2_prime,
                                         out.records_bob[static_cast<std::size_t>(i)].m2_prime);
    all_equal = all_equal && cmp.equal;
    if (i > 0) rc_detail += ",";
    rc_detail += cmp.rc;
    out.rc.push_back(std::move(cmp.rc));
  }
  out.verdict = all_equal ? Verdict::equal : Verdict::unequal;
  log.push_back({"compare", "tp", "rc=" + rc_detail});
  log.push_back({"verdict", "tp", std::string(to_string(out.verdict))});
  return out;
}

}  // namespace ghzqpc
