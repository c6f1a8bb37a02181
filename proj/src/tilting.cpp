#include "actinfo/tilting.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "actinfo/optimize.hpp"

namespace actinfo {

namespace {

void require_finite(double theta, const char* where) {
  if (!std::isfinite(theta)) throw Error(ErrorKind::InvalidArgument, std::string(where) + ": theta must be finite");
}

// Unnormalized weights exp(theta f - shift) P0 with shift = max over the
// support of theta f, so the largest weight exponent is exactly 0.
struct Weights {
  std::vector<double> w;
  double shift;
  double total;
};

Weights tilted_weights(const TiltedFamily& family, double theta) {
  const auto& p0 = family.base();
  const auto& f = family.spec();
  double shift = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < p0.size(); ++i)
    if (p0[i] > 0.0) shift = std::max(shift, theta * f[i]);
  Weights out{std::vector<double>(p0.size(), 0.0), shift, 0.0};
  for (Index i = 0; i < p0.size(); ++i) {
    if (p0[i] == 0.0) continue;
    out.w[i] = std::exp(theta * f[i] - shift) * p0[i];
    out.total += out.w[i];
  }
  return out;
}

}  // namespace

TiltedFamily::TiltedFamily(Distribution base, SpecificityProfile spec)
    : base_(std::move(base)), spec_(std::move(spec)) {
  require_same_space(base_.space(), spec_.space(), "TiltedFamily");
}

double log_partition(const TiltedFamily& family, double theta) {
  require_finite(theta, "log_partition");
  if (theta == 0.0) return 0.0;
  const Weights w = tilted_weights(family, theta);
  return w.shift + std::log(w.total);
}

Distribution tilt(const TiltedFamily& family, double theta) {
  require_finite(theta, "tilt");
  if (theta == 0.0) return family.base();
  Weights w = tilted_weights(family, theta);
  for (double& x : w.w) x /= w.total;
  return Distribution(family.space(), std::move(w.w));
}

Moments tilted_moments(const TiltedFamily& family, double theta) {
  require_finite(theta, "tilted_moments");
  const Weights w = tilted_weights(family, theta);
  const auto& f = family.spec();
  double mean = 0.0;
  for (Index i = 0; i < w.w.size(); ++i) mean += w.w[i] * f[i];
  mean /= w.total;
  double var = 0.0;
  for (Index i = 0; i < w.w.size(); ++i) {
    const double dev = f[i] - mean;
    var += w.w[i] * dev * dev;
  }
  return {mean, std::max(0.0, var / w.total)};
}

double tilted_target_probability(const TiltedFamily& family, const TargetSet& a, double theta) {
  require_same_space(family.space(), a.space(), "tilted_target_probability");
  require_finite(theta, "tilted_target_probability");
  const Weights w = tilted_weights(family, theta);
  double in = 0.0;
  for (Index i : a.members()) in += w.w[i];
  return std::min(1.0, in / w.total);
}

double actinfo_equilibrium(const TiltedFamily& family, const TargetSet& a, double theta) {
  if (theta < 0.0) throw Error(ErrorKind::OutOfRange, "actinfo_equilibrium needs theta >= 0");
  const double null_mass = target_probability(family.base(), a);
  if (null_mass <= 0.0) throw Error(ErrorKind::NullTargetZero, "P0(A) = 0");
  if (theta == 0.0) return 0.0;
  return std::log(tilted_target_probability(family, a, theta)) - std::log(null_mass);
}

double solve_theta_for_target(const TiltedFamily& family, const TargetSet& a, double p) {
  const double null_mass = target_probability(family.base(), a);
  if (null_mass <= 0.0) throw Error(ErrorKind::NullTargetZero, "P0(A) = 0");
  if (!(p >= null_mass) || !(p < 1.0))
    throw Error(ErrorKind::OutOfRange, "target probability " + std::to_string(p) + " outside [P0(A), 1)");
  constexpr double kTol = 1e-10;
  if (p - null_mass <= kTol) return 0.0;

  auto gap = [&](double theta) { return p - tilted_target_probability(family, a, theta); };
  double hi = 1.0;
  while (gap(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw Error(ErrorKind::NoConvergence, "could not bracket P_theta(A) = p");
  }
  double root = 0.0;
  if (!optimize::bisect_decreasing(gap, 0.0, hi, kTol, 200, root))
    throw Error(ErrorKind::NoConvergence, "bisection for theta did not converge in 200 steps");
  return root;
}

}  // namespace actinfo
