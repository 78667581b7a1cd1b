#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ghzqpc/adversary.hpp"
#include "ghzqpc/protocol.hpp"
#include "ghzqpc/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ghzqpc {

// Counts trials where `trial(rng)` returns true, one derived rng stream per
// trial. The parallel and serial drivers count the same streams, so the
// result never depends on the job count. jobs: 0 = all cores, 1 = serial.
template <class TrialFn>
long long count_successes_serial(long long trials, std::uint64_t seed, TrialFn&& trial) {
  long long count = 0;
  for (long long i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    if (trial(rng)) ++count;
  }
  return count;
}

template <class TrialFn>
long long count_successes(long long trials, std::uint64_t seed, int jobs, TrialFn&& trial) {
#ifdef _OPENMP
  if (jobs != 1) {
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    long long count = 0;
#pragma omp parallel for schedule(static) num_threads(threads) reduction(+ : count)
    for (long long i = 0; i < trials; ++i) {
      Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
      if (trial(rng)) ++count;
    }
    return count;
  }
#else
  (void)jobs;
#endif
  return count_successes_serial(trials, seed, trial);
}

struct ExperimentReport {
  std::string name;
  std::string parameters;
  long long trials = 0;
  double estimate = 0.0;
  std::optional<double> analytic;
  double std_error = 0.0;  // sqrt(estimate * (1 - estimate) / trials)
  bool pass = true;        // |estimate - analytic| <= 3 * std_error when analytic is set
};

ExperimentReport make_report(std::string name, std::string parameters, long long trials,
                             long long successes, std::optional<double> analytic);

struct DetectionConfig {
  AttackModel attack;
  int decoy_count = 1;  // checked decoys per transmission
  int secret_length = 4;
  int group_size = 2;
  long long trials = 10000;
  std::uint64_t seed = 1;
  int jobs = 0;
  bool serial_reference = false;  // force the serial driver
};

// Fraction of sessions aborted by the decoy check, against the analytic
// detection probability 1 - (1 - p)^L with p the exact per-decoy disturbance
// and L the total number of checked decoys on attacked channels.
ExperimentReport detection_experiment(const DetectionConfig& config);

enum class GuessRole { tp, alice, bob, eve };

std::string_view to_string(GuessRole role);

struct GuessConfig {
  GuessRole role = GuessRole::tp;
  int secret_length = 4;
  int group_size = 2;
  int decoy_count = 8;
  long long trials = 10000;
  std::uint64_t seed = 1;
  int jobs = 0;
};

// Fraction of sessions in which the role reconstructs the targeted secret
// exactly, against the analytic 1/2^ceil(N/n). The TP guesses from its own
// measurement records; a dishonest participant intercepts the other's
// channel and knows the shared key; an outside Eve intercepts with no keys.
ExperimentReport guess_experiment(const GuessConfig& config);

struct TruthTableRow {
  int index = 0;  // 0..31, inputs in (k_ab k_ac k_bc m_a1 m_b1) counting order
  int k_ab = 0, k_ac = 0, k_bc = 0, m_a1 = 0, m_b1 = 0;
  int r_a = 0, r_b = 0, c_a = 0, c_b = 0;
  bool a_complemented = false, b_complemented = false;
  bool pass = false;
};

struct TruthTableResult {
  std::vector<TruthTableRow> rows;
  bool all_pass = false;
};

// Drives sample groups through encryption, both measurement branches and
// decoding, and compares every derived column with the published table.
TruthTableResult verify_truth_table();

struct EfficiencyResult {
  long long n = 0;
  long long numerator = 0, denominator = 0;  // n/(2n+2) in lowest terms
  double value = 0.0;
  bool bounds_ok = false;  // 1/3 <= value < 1/2, checked in integers
};

EfficiencyResult qubit_efficiency(long long n);

struct CorrectnessResult {
  long long cases = 0;
  long long failures = 0;
  bool all_pass = false;
  std::vector<std::string> failure_notes;  // first few failures, if any
};

// Honest-run verdicts against ground truth for every group size: exhaustive
// over all secret pairs for N <= 5, sampled (1000 pairs per configuration)
// for N in [6, max_secret_length].
CorrectnessResult exhaustive_correctness(int max_secret_length, std::uint64_t seed, int jobs);

struct GhzAlgebraCheck {
  int qubit_count = 0;
  double max_orthonormality_error = 0.0;
  double max_completeness_error = 0.0;
  bool pass = false;
};

// Exhaustive pairwise inner products of the 2^m canonical GHZ states plus
// reconstruction of every computational basis vector from them.
GhzAlgebraCheck ghz_algebra_check(int qubit_count, double tolerance = 1e-12);

}  // namespace ghzqpc
