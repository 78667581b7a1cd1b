// Acceptance harness: one line per criterion, [PASS]/[FAIL] prefixed, exit 0
// only if every criterion passes. Statistical criteria are re-run once with a
// derived seed on failure; two consecutive failures count as real.
//
// argv[1] (optional): path to the CLI binary, used by the determinism check.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ghzqpc/analysis.hpp"
#include "ghzqpc/protocol.hpp"
#include "ghzqpc/rng.hpp"

using namespace ghzqpc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double run_timed(const std::function<Outcome()>& body, Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  out = body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Retry-once harness for criteria that depend on sampled randomness.
Outcome with_retry(std::uint64_t seed, const std::function<Outcome(std::uint64_t)>& body) {
  Outcome first = body(seed);
  if (first.pass) return first;
  const std::uint64_t retry_seed = splitmix64_mix(seed ^ 0xD1B54A32D192ED03ULL);
  Outcome second = body(retry_seed);
  second.detail = "first attempt failed (" + first.detail + "); retry: " + second.detail;
  return second;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

bool read_command(const std::string& command, std::string& output, int& exit_code) {
  output.clear();
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return false;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
  const int status = pclose(pipe);
  exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return status >= 0;
}

Outcome criterion_truth_table() {
  const TruthTableResult result = verify_truth_table();
  int passed = 0;
  for (const auto& row : result.rows) passed += row.pass ? 1 : 0;
  return {result.all_pass && result.rows.size() == 32,
          std::to_string(passed) + "/32 rows reproduced"};
}

Outcome criterion_correctness() {
  const CorrectnessResult result = exhaustive_correctness(5, 1, 0);
  std::string detail = std::to_string(result.cases) + " secret pairs, " +
                       std::to_string(result.failures) + " failures";
  if (!result.failure_notes.empty()) detail += " (" + result.failure_notes.front() + ")";
  return {result.all_pass, detail};
}

Outcome criterion_intercept_detection(std::uint64_t seed) {
  std::string detail;
  bool all = true;
  int idx = 0;
  for (int l : {1, 2, 4, 8}) {
    DetectionConfig cfg;
    cfg.attack.kind = AttackKind::intercept_resend;
    cfg.attack.target = AttackTarget::alice_channel;
    cfg.decoy_count = l;
    cfg.trials = 10000;
    cfg.seed = seed + static_cast<std::uint64_t>(idx++);
    const ExperimentReport report = detection_experiment(cfg);
    const double target = 1.0 - std::pow(0.75, l);
    const bool ok = std::abs(report.estimate - target) <= 3.0 * report.std_error;
    all = all && ok;
    if (!detail.empty()) detail += ", ";
    detail += "l=" + std::to_string(l) + ": " + fmt(report.estimate) + " vs " + fmt(target);
  }
  return {all, detail};
}

Outcome criterion_measurement_resend(std::uint64_t seed) {
  bool exact_ok = std::abs(exact_mean_decoy_error(AttackKind::measurement_resend) - 0.25) <= 1e-12;
  for (DecoyKind d :
       {DecoyKind::zero, DecoyKind::one, DecoyKind::plus, DecoyKind::minus})
    exact_ok = exact_ok &&
               std::abs(exact_decoy_error(AttackKind::measurement_resend, d) - 0.25) <= 1e-12;

  DetectionConfig cfg;
  cfg.attack.kind = AttackKind::measurement_resend;
  cfg.attack.target = AttackTarget::alice_channel;
  cfg.decoy_count = 1;
  cfg.trials = 10000;
  cfg.seed = seed;
  const ExperimentReport report = detection_experiment(cfg);
  const bool mc_ok = std::abs(report.estimate - 0.25) <= 3.0 * report.std_error;
  return {exact_ok && mc_ok, "exact per-decoy = 1/4 " + std::string(exact_ok ? "ok" : "BAD") +
                                 ", monte carlo " + fmt(report.estimate) + " vs 0.25"};
}

Outcome criterion_entangle(std::uint64_t seed) {
  Rng rng(seed);
  int satisfying_ok = 0;
  double worst_distinguishability = 0.0, worst_error = 0.0;
  for (int i = 0; i < 100; ++i) {
    const TwoQubitUnitary u = random_satisfying_unitary(rng);
    const double err = exact_mean_decoy_error(u);
    const double dist = ancilla_distinguishability(u);
    worst_error = std::max(worst_error, err);
    worst_distinguishability = std::max(worst_distinguishability, dist);
    if (err == 0.0 && dist <= 1e-10) ++satisfying_ok;
  }
  const bool part_a = satisfying_ok == 100;

  const bool cnot_positive = exact_mean_decoy_error(TwoQubitUnitary::cnot()) > 0.0;
  int positive = 0, excused = 0;
  for (int i = 0; i < 100; ++i) {
    const TwoQubitUnitary u = random_unitary(rng);
    if (exact_mean_decoy_error(u) > 0.0)
      ++positive;
    else if (check_constraints(u).satisfied)
      ++excused;  // invisible only because it satisfies the constraints
  }
  const bool part_b = cnot_positive && positive >= 90 && positive + excused == 100;

  return {part_a && part_b,
          "satisfying 100: worst error " + fmt(worst_error) + ", worst distinguishability " +
              fmt(worst_distinguishability) + "; generic positive " + std::to_string(positive) +
              "/100, cnot " + (cnot_positive ? "positive" : "ZERO")};
}

Outcome criterion_guess_rates(std::uint64_t seed) {
  const std::array<std::pair<int, int>, 4> shapes = {
      {{2, 2}, {4, 2}, {6, 2}, {6, 3}}};
  bool all = true;
  std::string detail;
  int idx = 0;
  for (GuessRole role : {GuessRole::tp, GuessRole::alice}) {
    for (const auto& [length, group] : shapes) {
      GuessConfig cfg;
      cfg.role = role;
      cfg.secret_length = length;
      cfg.group_size = group;
      cfg.decoy_count = 4;
      cfg.trials = 10000;
      cfg.seed = seed + static_cast<std::uint64_t>(idx++);
      const ExperimentReport report = guess_experiment(cfg);
      all = all && report.pass;
      if (!report.pass)
        detail += std::string(detail.empty() ? "" : ", ") + std::string(to_string(role)) + "(" +
                  std::to_string(length) + "," + std::to_string(group) +
                  "): " + fmt(report.estimate) + " vs " + fmt(*report.analytic);
    }
  }
  if (all) detail = "tp and participant, 4 shapes each within 3 sigma of 1/2^ceil(N/n)";
  return {all, detail};
}

Outcome criterion_efficiency() {
  const EfficiencyResult e2 = qubit_efficiency(2);
  const EfficiencyResult e4 = qubit_efficiency(4);
  bool ok = e2.numerator == 1 && e2.denominator == 3 && e4.numerator == 2 &&
            e4.denominator == 5;
  for (long long n = 2; n <= 1000000 && ok; ++n) ok = qubit_efficiency(n).bounds_ok;
  return {ok, "n=2 -> 1/3, n=4 -> 2/5, bounds hold for n up to 10^6"};
}

Outcome criterion_ghz_algebra() {
  bool ok = true;
  double worst = 0.0;
  for (int m : {3, 4, 5}) {
    const GhzAlgebraCheck check = ghz_algebra_check(m, 1e-12);
    ok = ok && check.pass;
    worst = std::max({worst, check.max_orthonormality_error, check.max_completeness_error});
  }
  return {ok, "m in {3,4,5}, worst deviation " + fmt(worst)};
}

Outcome criterion_cli_determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path supplied"};
  const std::array<std::string, 3> invocations = {
      " run --N 4 --n 2 --secret-a 1011 --secret-b 0110 --decoys 5 --seed 99"
      " --attack measurement --target both --transcript",
      " attack --kind intercept --decoys 2 --trials 400 --seed 7 --jobs 4",
      " guess --role tp --N 4 --n 2 --trials 300 --seed 3"};
  for (const std::string& args : invocations) {
    std::string first, second;
    int code_first = 0, code_second = 0;
    if (!read_command(cli + args + " 2>/dev/null", first, code_first) ||
        !read_command(cli + args + " 2>/dev/null", second, code_second))
      return {false, "could not execute: " + cli + args};
    if (first.empty()) return {false, "no output from: " + cli + args};
    if (first != second || code_first != code_second)
      return {false, "outputs differ for: " + cli + args};
  }
  return {true, "3 invocations, each byte-identical on repeat"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Row {
    int id;
    std::string title;
    double budget_s;  // <= 0: no budget
    std::function<Outcome()> body;
  };

  const std::vector<Row> rows = {
      {1, "truth table reproduced exactly", 1.0, criterion_truth_table},
      {2, "exhaustive honest-run correctness (N <= 5)", 60.0, criterion_correctness},
      {3, "intercept-resend detection 1-(3/4)^l", 120.0,
       [] { return with_retry(1001, criterion_intercept_detection); }},
      {4, "measurement-resend disturbance = 1/4", 0.0,
       [] { return with_retry(2002, criterion_measurement_resend); }},
      {5, "entangling-attack constraints", 60.0,
       [] { return with_retry(3003, criterion_entangle); }},
      {6, "insider guess rates 1/2^ceil(N/n)", 0.0,
       [] { return with_retry(4004, criterion_guess_rates); }},
      {7, "qubit efficiency n/(2n+2) and bounds", 1.0, criterion_efficiency},
      {8, "canonical GHZ family orthonormal and complete", 5.0, criterion_ghz_algebra},
      {9, "CLI determinism: same seed, same bytes", 0.0,
       [&cli] { return criterion_cli_determinism(cli); }},
  };

  int failures = 0;
  for (const Row& row : rows) {
    Outcome out;
    const double elapsed = run_timed(row.body, out);
    bool pass = out.pass;
    std::string note = out.detail;
    if (pass && row.budget_s > 0 && elapsed > row.budget_s) {
      pass = false;
      note += " [exceeded " + fmt(row.budget_s) + " s budget]";
    }
    std::printf("[%s] criterion %d: %s — %s (%.2f s)\n", pass ? "PASS" : "FAIL", row.id,
                row.title.c_str(), note.c_str(), elapsed);
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
