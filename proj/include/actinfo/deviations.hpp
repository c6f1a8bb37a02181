#pragma once

// Large-deviation rates of the fine-tuning tests and exact binomial
// significance levels used to check them.

#include <cstddef>
#include <optional>
#include <vector>

#include "actinfo/tilting.hpp"

namespace actinfo {

enum class RateKind { Nonparametric, Parametric };

const char* to_string(RateKind kind) noexcept;

struct RateReport {
  double rate = 0.0;  // +infinity when rejection is impossible
  RateKind kind = RateKind::Nonparametric;
  double p0a = 0.0;
  double i_min = 0.0;
  double p_min = 0.0;
  double bias = 0.0;
  std::optional<double> theta_min;
  std::optional<double> phi_star;
  bool boundary = false;  // supremum attained as phi -> 0
};

double bernoulli_kl(double p, double q);

/// KL(Be(p_min e^-bias) || Be(P0A)), p_min = P0A e^i_min; zero when
/// p_min e^-bias <= P0A.
RateReport nonparam_rate(double p0a, double i_min, double bias = 0.0);

/// log[1 + P0A (e^phi - 1)].
double cumulant(double p0a, double phi);

/// sup_phi [phi m - log M(phi)] with m the mean of f under P_theta_min.
RateReport param_rate(const TiltedFamily& family, const TargetSet& a, double i_min, double bias = 0.0);

/// log P(Bin(n, P0A) >= ceil(n p_min)).
double exact_significance(std::size_t n, double p0a, double p_min);

struct DecayPoint {
  std::size_t n;
  double log_level;
  double normalized_rate;  // -log_level / n
};

std::vector<DecayPoint> decay_slope(const std::vector<std::size_t>& n_values, double p0a, double p_min);

}  // namespace actinfo
