// Command-line front end for the comparison-protocol simulator. Subcommands:
//   run          one protocol session between two secrets
//   attack       Monte Carlo detection experiment for one attack model
//   truth-table  exhaustive check of the 32-row decode table
//   efficiency   qubit efficiency n/(2n+2) with its bounds
//   correctness  honest-run verdicts against ground truth
//   guess        insider/outsider secret-guessing experiment
// All randomness derives from one seed; the same invocation with the same
// seed emits byte-identical output. Exit codes: 0 success or all-pass,
// 1 a check failed, 2 usage error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ghzqpc/analysis.hpp"
#include "ghzqpc/protocol.hpp"
#include "ghzqpc/report_io.hpp"

using nlohmann::json;
using namespace ghzqpc;

namespace {

constexpr const char* kSchema = "ghz-qpc/1";

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
  if (given) return *given;
  std::random_device rd;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  std::cerr << "seed: " << seed << "\n";  // echoed for reproducibility
  return seed;
}

Secret parse_secret(const std::string& text, int length, const char* which) {
  const bool all_binary = !text.empty() && text.find_first_not_of("01") == std::string::npos;
  if (all_binary && static_cast<int>(text.size()) == length) return Secret::from_bits(text);
  std::uint64_t value = 0;
  std::size_t used = 0;
  try {
    value = std::stoull(text, &used, 10);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size())
    throw CLI::ValidationError(std::string(which),
                               "expected " + std::to_string(length) +
                                   " bits or a decimal value, got '" + text + "'");
  if (length < 64 && value >= (std::uint64_t{1} << length))
    throw CLI::ValidationError(std::string(which),
                               "value " + text + " does not fit in " +
                                   std::to_string(length) + " bits");
  return Secret::from_decimal(value, length);
}

AttackModel build_attack(const std::string& kind, const std::string& target,
                         const std::string& unitary_path) {
  AttackModel attack;
  if (kind == "none")
    attack.kind = AttackKind::none;
  else if (kind == "intercept")
    attack.kind = AttackKind::intercept_resend;
  else if (kind == "measurement")
    attack.kind = AttackKind::measurement_resend;
  else if (kind == "entangle")
    attack.kind = AttackKind::entangle_measure;
  else
    throw CLI::ValidationError("--kind", "unknown attack kind '" + kind + "'");

  if (target == "alice")
    attack.target = AttackTarget::alice_channel;
  else if (target == "bob")
    attack.target = AttackTarget::bob_channel;
  else if (target == "both")
    attack.target = AttackTarget::both;
  else
    throw CLI::ValidationError("--target", "unknown target '" + target + "'");

  if (attack.kind == AttackKind::entangle_measure) {
    if (unitary_path.empty())
      throw CLI::ValidationError("--unitary", "entangle attack needs a unitary file");
    attack.unitaries.push_back(load_unitary_file(unitary_path));
  } else if (!unitary_path.empty()) {
    throw CLI::ValidationError("--unitary", "only the entangle attack takes a unitary");
  }
  return attack;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int emit_report(const ExperimentReport& report, const std::string& format, json j) {
  if (format == "csv") {
    std::cout << csv_header() << "\n" << to_csv_line(report) << "\n";
  } else {
    j["report"] = to_json(report);
    emit(j);
  }
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Deterministic simulator and analysis toolkit for a GHZ-state"
      " three-party private comparison protocol"};
  app.require_subcommand(1);

  // ---- run ----------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Execute one protocol session");
  int run_length = 4, run_group = 2, run_decoys = 8;
  double run_threshold = 0.0;
  std::string run_secret_a, run_secret_b;
  std::string run_kind = "none", run_target = "both", run_unitary;
  std::optional<std::uint64_t> run_seed;
  bool run_transcript = false;
  run->add_option("--N", run_length, "Secret length in bits")->check(CLI::Range(2, 24));
  run->add_option("--n", run_group, "Group size")->check(CLI::Range(2, 9));
  run->add_option("--secret-a", run_secret_a, "First party's secret (bits or decimal)")
      ->required();
  run->add_option("--secret-b", run_secret_b, "Second party's secret (bits or decimal)")
      ->required();
  run->add_option("--decoys", run_decoys, "Decoys per transmission")->check(CLI::Range(0, 4096));
  run->add_option("--threshold", run_threshold, "Abort above this decoy error rate")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("--attack", run_kind, "none|intercept|measurement|entangle");
  run->add_option("--target", run_target, "alice|bob|both");
  run->add_option("--unitary", run_unitary, "Unitary file for the entangle attack");
  run->add_option("--seed", run_seed, "Master seed (default: system entropy)");
  run->add_flag("--transcript", run_transcript, "Include the full event transcript");

  // ---- attack ---------------------------------------------------------------
  auto* atk = app.add_subcommand("attack", "Monte Carlo detection experiment");
  int atk_length = 4, atk_group = 2, atk_decoys = 1, atk_jobs = 0;
  long long atk_trials = 10000;
  std::string atk_kind, atk_target = "alice", atk_unitary, atk_format = "json";
  std::optional<std::uint64_t> atk_seed;
  atk->add_option("--kind", atk_kind, "intercept|measurement|entangle")->required();
  atk->add_option("--target", atk_target, "alice|bob|both");
  atk->add_option("--unitary", atk_unitary, "Unitary file for the entangle attack");
  atk->add_option("--decoys", atk_decoys, "Decoys per transmission")->check(CLI::Range(1, 4096));
  atk->add_option("--trials", atk_trials, "Monte Carlo trials")
      ->check(CLI::Range(1LL, 100000000LL));
  atk->add_option("--N", atk_length, "Secret length in bits")->check(CLI::Range(2, 24));
  atk->add_option("--n", atk_group, "Group size")->check(CLI::Range(2, 9));
  atk->add_option("--seed", atk_seed, "Master seed (default: system entropy)");
  atk->add_option("--jobs", atk_jobs, "Worker threads (0 = all cores)")
      ->check(CLI::Range(0, 1024));
  atk->add_option("--format", atk_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // ---- truth-table ----------------------------------------------------------
  auto* tt = app.add_subcommand("truth-table", "Verify the 32-row decode table");

  // ---- efficiency -----------------------------------------------------------
  auto* eff = app.add_subcommand("efficiency", "Qubit efficiency for a group size");
  long long eff_n = 2;
  eff->add_option("--n", eff_n, "Group size")->required()->check(CLI::Range(2LL, 1000000000LL));

  // ---- correctness ----------------------------------------------------------
  auto* corr = app.add_subcommand("correctness", "Honest verdicts vs ground truth");
  int corr_max = 5, corr_jobs = 0;
  std::optional<std::uint64_t> corr_seed;
  corr->add_option("--max-N", corr_max, "Largest secret length")->check(CLI::Range(2, 8));
  corr->add_option("--seed", corr_seed, "Master seed (default: system entropy)");
  corr->add_option("--jobs", corr_jobs, "Worker threads (0 = all cores)")
      ->check(CLI::Range(0, 1024));

  // ---- guess ---------------------------------------------------------------
  auto* gss = app.add_subcommand("guess", "Secret-guessing experiment for one role");
  std::string gss_role = "tp", gss_format = "json";
  int gss_length = 4, gss_group = 2, gss_decoys = 8, gss_jobs = 0;
  long long gss_trials = 10000;
  std::optional<std::uint64_t> gss_seed;
  gss->add_option("--role", gss_role, "tp|alice|bob|eve")
      ->check(CLI::IsMember({"tp", "alice", "bob", "eve"}));
  gss->add_option("--N", gss_length, "Secret length in bits")->check(CLI::Range(2, 24));
  gss->add_option("--n", gss_group, "Group size")->check(CLI::Range(2, 9));
  gss->add_option("--decoys", gss_decoys, "Decoys per transmission")->check(CLI::Range(0, 4096));
  gss->add_option("--trials", gss_trials, "Monte Carlo trials")
      ->check(CLI::Range(1LL, 100000000LL));
  gss->add_option("--seed", gss_seed, "Master seed (default: system entropy)");
  gss->add_option("--jobs", gss_jobs, "Worker threads (0 = all cores)")
      ->check(CLI::Range(0, 1024));
  gss->add_option("--format", gss_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);

    if (run->parsed()) {
      if (run_group > run_length)
        throw CLI::ValidationError("--n", "group size cannot exceed the secret length");
      const Secret a = parse_secret(run_secret_a, run_length, "--secret-a");
      const Secret b = parse_secret(run_secret_b, run_length, "--secret-b");
      const AttackModel attack = build_attack(run_kind, run_target, run_unitary);
      const std::uint64_t seed = resolve_seed(run_seed);
      ProtocolConfig pc;
      pc.group_size = run_group;
      pc.decoy_count = run_decoys;
      pc.threshold = run_threshold;
      Rng rng(seed);
      const RunOutcome outcome = run_protocol(pc, a, b, attack, rng);
      json j = to_json(outcome, run_transcript);
      j["schema"] = kSchema;
      j["command"] = "run";
      j["seed"] = seed;
      json cfg;
      cfg["N"] = run_length;
      cfg["n"] = run_group;
      cfg["decoys"] = run_decoys;
      cfg["threshold"] = run_threshold;
      cfg["attack"] = std::string(to_string(attack.kind));
      cfg["target"] = std::string(to_string(attack.target));
      j["config"] = cfg;
      emit(j);
      return 0;
    }

    if (atk->parsed()) {
      if (atk_kind == "none")
        throw CLI::ValidationError("--kind", "pick an actual attack");
      DetectionConfig cfg;
      cfg.attack = build_attack(atk_kind, atk_target, atk_unitary);
      cfg.decoy_count = atk_decoys;
      cfg.secret_length = atk_length;
      cfg.group_size = atk_group;
      if (atk_group > atk_length)
        throw CLI::ValidationError("--n", "group size cannot exceed the secret length");
      cfg.trials = atk_trials;
      cfg.seed = resolve_seed(atk_seed);
      cfg.jobs = atk_jobs;
      const ExperimentReport report = detection_experiment(cfg);
      json j;
      j["schema"] = kSchema;
      j["command"] = "attack";
      j["seed"] = cfg.seed;
      j["exact_per_decoy_error"] = exact_mean_decoy_error(cfg.attack);
      if (cfg.attack.kind == AttackKind::entangle_measure) {
        j["constraints"] = to_json(check_constraints(cfg.attack.unitaries.front()));
        j["ancilla_distinguishability"] =
            ancilla_distinguishability(cfg.attack.unitaries.front());
      }
      return emit_report(report, atk_format, std::move(j));
    }

    if (tt->parsed()) {
      const TruthTableResult result = verify_truth_table();
      json j = to_json(result);
      j["schema"] = kSchema;
      j["command"] = "truth-table";
      emit(j);
      return result.all_pass ? 0 : 1;
    }

    if (eff->parsed()) {
      const EfficiencyResult result = qubit_efficiency(eff_n);
      json j = to_json(result);
      j["schema"] = kSchema;
      j["command"] = "efficiency";
      emit(j);
      return result.bounds_ok ? 0 : 1;
    }

    if (corr->parsed()) {
      const std::uint64_t seed = resolve_seed(corr_seed);
      const CorrectnessResult result = exhaustive_correctness(corr_max, seed, corr_jobs);
      json j = to_json(result);
      j["schema"] = kSchema;
      j["command"] = "correctness";
      j["seed"] = seed;
      j["max_N"] = corr_max;
      emit(j);
      return result.all_pass ? 0 : 1;
    }

    if (gss->parsed()) {
      if (gss_group > gss_length)
        throw CLI::ValidationError("--n", "group size cannot exceed the secret length");
      GuessConfig cfg;
      if (gss_role == "tp")
        cfg.role = GuessRole::tp;
      else if (gss_role == "alice")
        cfg.role = GuessRole::alice;
      else if (gss_role == "bob")
        cfg.role = GuessRole::bob;
      else
        cfg.role = GuessRole::eve;
      cfg.secret_length = gss_length;
      cfg.group_size = gss_group;
      cfg.decoy_count = gss_decoys;
      cfg.trials = gss_trials;
      cfg.seed = resolve_seed(gss_seed);
      cfg.jobs = gss_jobs;
      const ExperimentReport report = guess_experiment(cfg);
      json j;
      j["schema"] = kSchema;
      j["command"] = "guess";
      j["seed"] = cfg.seed;
      return emit_report(report, gss_format, std::move(j));
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
