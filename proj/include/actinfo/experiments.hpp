#pragma once

// Seeded Monte Carlo calibration studies. Replicate r draws from
// RandomSource(seed).substream(r), so results do not depend on the number of
// threads.

#include <cstdint>
#include <vector>

#include "actinfo/models.hpp"

namespace actinfo {

struct CoverageConfig {
  MachineModel model{5, 0.2, 1.0, 1.0};
  std::size_t n = 500;
  std::size_t replicates = 1000;
  std::uint64_t seed = 42;
};

struct CoverageReplicate {
  EstimationResult nonparametric;
  EstimationResult parametric;
};

struct CoverageReport {
  double truth;  // I+(theta) = I_Q+ for Q = P_theta
  double nonparametric_coverage;
  double parametric_coverage;
  double mean_theta_hat;
  std::size_t degenerate;  // replicates with no target hit
  std::vector<CoverageReplicate> replicates;
};

bool covers(const EstimationResult& r, double truth);

CoverageReport coverage_experiment(const CoverageConfig& config);
CoverageReport coverage_experiment_serial(const CoverageConfig& config);

struct TwoSampleConfig {
  int d = 5;
  double b = 0.5;
  std::size_t n = 5000;
  std::size_t n0 = 5000;
  std::size_t replicates = 500;
  std::uint64_t seed = 7;
};

struct TwoSampleReport {
  double within_fraction;  // |estimate| <= 3 sqrt(variance / n)
  std::vector<EstimationResult> replicates;
};

/// Both samples of every pair come from the same null P_0b; the estimator is
/// nonparametric with b refitted on the null sample.
TwoSampleReport two_sample_calibration(const TwoSampleConfig& config);

}  // namespace actinfo
