#pragma once

// Metropolis-Hastings and Moran square-root kernels with equilibrium P_theta,
// stationary solves and time evolution of the search distribution.

#include <vector>

#include "actinfo/core.hpp"
#include "actinfo/kernels.hpp"

namespace actinfo {

/// Row-stochastic proposal q(x, .) whose positive entries form a strongly
/// connected graph.
class ProposalKernel {
 public:
  ProposalKernel(SpacePtr space, Matrix rows);

  const SpacePtr& space() const noexcept { return space_; }
  const Matrix& rows() const noexcept { return rows_; }
  double operator()(Index x, Index y) const { return rows_(x, y); }
  bool is_reciprocal() const;

 private:
  SpacePtr space_;
  Matrix rows_;
};

enum class AcceptanceRule { MetropolisHastings, MoranSquareRoot };

const char* to_string(AcceptanceRule rule) noexcept;

class TransitionKernel {
 public:
  /// Validates row-stochasticity within kMassTolerance and nonnegativity.
  TransitionKernel(SpacePtr space, Matrix rows, double theta, AcceptanceRule rule);

  const SpacePtr& space() const noexcept { return space_; }
  const Matrix& rows() const noexcept { return rows_; }
  double operator()(Index x, Index y) const { return rows_(x, y); }
  double theta() const noexcept { return theta_; }
  AcceptanceRule rule() const noexcept { return rule_; }
  std::size_t size() const noexcept { return space_->size(); }

 private:
  SpacePtr space_;
  Matrix rows_;
  double theta_;
  AcceptanceRule rule_;
};

/// Off-diagonal pi(x,y) = alpha(x,y) q(x,y); the diagonal collects q(x,x)
/// plus all rejected proposal mass.
TransitionKernel build_kernel(const Distribution& p0, const SpecificityProfile& f, double theta,
                              const ProposalKernel& q, AcceptanceRule rule);

/// Unique pi with pi * P = pi, sum(pi) = 1, from a dense LU solve of
/// (P - I)^T with its last equation replaced by the normalization.
Distribution stationary(const TransitionKernel& kernel);
Distribution stationary(const SpacePtr& space, const Matrix& rows);

/// P0 * Pi^t by t sequential vector-matrix products.
Distribution evolve(const Distribution& p0, const TransitionKernel& kernel, std::size_t t);

/// log[(P0 Pi^t v) / (P0 v)] for the indicator v of A.
double actinfo_at_time(const Distribution& p0, const TransitionKernel& kernel, const TargetSet& a, std::size_t t);

/// actinfo_at_time for t = 0..t_max in one pass.
std::vector<double> actinfo_time_series(const Distribution& p0, const TransitionKernel& kernel, const TargetSet& a,
                                        std::size_t t_max);

/// Moran fixation probability (1 - 1/s) / (1 - s^-N), 1/N at s = 1.
double moran_fixation(double s, long long population);

/// Stationary law of the accept-all chain driven by q alone.
Distribution reference_null(const ProposalKernel& q);

}  // namespace actinfo
