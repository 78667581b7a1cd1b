// Benchmark: the parallel Monte Carlo driver against the serial reference.
// Both drivers consume identical per-trial rng streams, so their success
// counts must match exactly; a mismatch exits nonzero.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "ghzqpc/analysis.hpp"

using namespace ghzqpc;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const long long trials = argc > 1 ? std::atoll(argv[1]) : 20000;
  if (trials < 1) {
    std::fprintf(stderr, "usage: %s [trials]\n", argv[0]);
    return 2;
  }

  DetectionConfig cfg;
  cfg.attack.kind = AttackKind::intercept_resend;
  cfg.attack.target = AttackTarget::alice_channel;
  cfg.decoy_count = 4;
  cfg.secret_length = 6;
  cfg.group_size = 2;
  cfg.trials = trials;
  cfg.seed = 12345;

  cfg.serial_reference = true;
  auto t0 = std::chrono::steady_clock::now();
  const ExperimentReport serial = detection_experiment(cfg);
  const double serial_s = seconds_since(t0);

  cfg.serial_reference = false;
  cfg.jobs = 0;  // all cores
  t0 = std::chrono::steady_clock::now();
  const ExperimentReport parallel = detection_experiment(cfg);
  const double parallel_s = seconds_since(t0);

  std::printf("trials              %lld\n", trials);
  std::printf("serial              %.3f s  (%.0f trials/s)\n", serial_s,
              static_cast<double>(trials) / serial_s);
  std::printf("parallel            %.3f s  (%.0f trials/s)\n", parallel_s,
              static_cast<double>(trials) / parallel_s);
  std::printf("speedup             %.2fx\n", serial_s / parallel_s);
  std::printf("serial estimate     %.6f\n", serial.estimate);
  std::printf("parallel estimate   %.6f\n", parallel.estimate);

  if (serial.estimate != parallel.estimate) {
    std::fprintf(stderr, "FAIL: serial and parallel drivers disagree\n");
    return 1;
  }
  std::printf("drivers agree: OK\n");
  return 0;
}
