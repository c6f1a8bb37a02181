#pragma once

// Exponential family P_theta(x) = exp(theta f(x)) P0(x) / M(theta).

#include "actinfo/core.hpp"

namespace actinfo {

class TiltedFamily {
 public:
  TiltedFamily(Distribution base, SpecificityProfile spec);

  const Distribution& base() const noexcept { return base_; }
  const SpecificityProfile& spec() const noexcept { return spec_; }
  const SpacePtr& space() const noexcept { return base_.space(); }

 private:
  Distribution base_;
  SpecificityProfile spec_;
};

/// log M(theta), summed with the largest exponent factored out.
double log_partition(const TiltedFamily& family, double theta);

Distribution tilt(const TiltedFamily& family, double theta);

struct Moments {
  double mean;
  double variance;
};

/// Mean and variance of f under P_theta.
Moments tilted_moments(const TiltedFamily& family, double theta);

/// P_theta(A) without materializing P_theta.
double tilted_target_probability(const TiltedFamily& family, const TargetSet& a, double theta);

/// I+(theta) = log[P_theta(A) / P0(A)] for theta >= 0.
double actinfo_equilibrium(const TiltedFamily& family, const TargetSet& a, double theta);

/// theta >= 0 with |P_theta(A) - p| <= 1e-10, for P0(A) <= p < 1. The bracket
/// starts at [0, 1] and doubles its upper end until it covers p.
double solve_theta_for_target(const TiltedFamily& family, const TargetSet& a, double p);

}  // namespace actinfo
