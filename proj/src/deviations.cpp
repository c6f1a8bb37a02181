#include "actinfo/deviations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "actinfo/kernels.hpp"
#include "actinfo/optimize.hpp"

namespace actinfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double xlogy_ratio(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); }

double log_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

const char* to_string(RateKind kind) noexcept {
  return kind == RateKind::Nonparametric ? "nonparametric" : "parametric";
}

double bernoulli_kl(double p, double q) { return std::max(0.0, xlogy_ratio(p, q) + xlogy_ratio(1.0 - p, 1.0 - q)); }

RateReport nonparam_rate(double p0a, double i_min, double bias) {
  if (!(p0a > 0.0 && p0a < 1.0)) throw Error(ErrorKind::InvalidNull, "P0(A) must lie in (0, 1)");
  RateReport r;
  r.kind = RateKind::Nonparametric;
  r.p0a = p0a;
  r.i_min = i_min;
  r.bias = bias;
  r.p_min = p0a * std::exp(i_min);
  const double p = r.p_min * std::exp(-bias);
  if (p > 1.0)
    r.rate = kInf;
  else if (p <= p0a)
    r.rate = 0.0;
  else
    r.rate = bernoulli_kl(p, p0a);
  return r;
}

double cumulant(double p0a, double phi) {
  if (!(p0a >= 0.0 && p0a <= 1.0)) throw Error(ErrorKind::InvalidArgument, "P0(A) must lie in [0, 1]");
  return std::log1p(p0a * std::expm1(phi));
}

RateReport param_rate(const TiltedFamily& family, const TargetSet& a, double i_min, double bias) {
  RateReport r;
  r.kind = RateKind::Parametric;
  r.p0a = target_probability(family.base(), a);
  if (!(r.p0a > 0.0)) throw Error(ErrorKind::NullTargetZero, "P0(A) = 0");
  r.i_min = i_min;
  r.bias = bias;
  r.p_min = r.p0a * std::exp(i_min);
  const double p = r.p_min * std::exp(-bias);
  if (!(p < 1.0)) throw Error(ErrorKind::OutOfRange, "p_min e^-bias must be below 1");

  const double theta_min = p <= r.p0a ? 0.0 : solve_theta_for_target(family, a, p);
  r.theta_min = theta_min;
  const double m = tilted_moments(family, theta_min).mean;
  const double m0 = tilted_moments(family, 0.0).mean;
  if (m <= m0) {
    r.phi_star = 0.0;
    r.rate = 0.0;
    r.boundary = true;
    return r;
  }
  auto residual = [&](double phi) { return m - tilted_moments(family, phi).mean; };
  double hi = std::max(1.0, 2.0 * theta_min);
  while (residual(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw Error(ErrorKind::NoConvergence, "no bracket for the Legendre maximizer");
  }
  double phi = 0.0;
  if (!optimize::bisect_decreasing(residual, 0.0, hi, 1e-12, 400, phi))
    throw Error(ErrorKind::NoConvergence, "Legendre maximizer did not converge");
  r.phi_star = phi;
  r.rate = std::max(0.0, phi * m - log_partition(family, phi));
  return r;
}

double exact_significance(std::size_t n, double p0a, double p_min) {
  if (!(p0a > 0.0 && p0a < 1.0)) throw Error(ErrorKind::InvalidNull, "P0(A) must lie in (0, 1)");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be positive");
  const double nn = static_cast<double>(n);
  const double k_real = std::ceil(nn * p_min - 1e-9);
  if (k_real > nn) return -kInf;
  if (k_real <= 0.0) return 0.0;
  const auto k0 = static_cast<std::size_t>(k_real);
  const double lp = std::log(p0a);
  const double lq = std::log1p(-p0a);
  const double lgn = std::lgamma(nn + 1.0);
  double total = -kInf;
  for (std::size_t k = k0; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double term = lgn - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0) + kk * lp + (nn - kk) * lq;
    total = log_add(total, term);
  }
  return std::min(0.0, total);
}

std::vector<DecayPoint> decay_slope(const std::vector<std::size_t>& n_values, double p0a, double p_min) {
  for (std::size_t i = 1; i < n_values.size(); ++i)
    if (n_values[i] <= n_values[i - 1]) throw Error(ErrorKind::InvalidArgument, "n values must increase");
  std::vector<DecayPoint> out(n_values.size());
  kernels::parallel_for(n_values.size(), [&](std::size_t i) {
    const double level = exact_significance(n_values[i], p0a, p_min);
    out[i] = {n_values[i], level, -level / static_cast<double>(n_values[i])};
  });
  return out;
}

}  // namespace actinfo
