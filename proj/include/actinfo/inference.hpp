#pragma once

// Estimators of active information from search outcomes and the fine-tuning
// test built on them. Variances are asymptotic (per observation); intervals
// are Wald intervals estimate +- 1.96 sqrt(variance / n).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "actinfo/sampling.hpp"
#include "actinfo/tilting.hpp"

namespace actinfo {

inline constexpr double kNormalQuantile95 = 1.96;

struct ParameterBounds {
  double lower;
  double upper;
};

/// A family of distributions indexed by up to two real parameters, used as a
/// black box: scores and their derivatives come from finite differences.
class ParametricFamily {
 public:
  using Evaluator = std::function<Distribution(std::span<const double>)>;

  ParametricFamily(SpacePtr space, std::vector<ParameterBounds> bounds, std::vector<double> initial,
                   Evaluator evaluate);

  std::size_t dimension() const noexcept { return bounds_.size(); }
  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<ParameterBounds>& bounds() const noexcept { return bounds_; }
  const std::vector<double>& initial() const noexcept { return initial_; }

  Distribution operator()(std::span<const double> params) const;

 private:
  SpacePtr space_;
  std::vector<ParameterBounds> bounds_;
  std::vector<double> initial_;
  Evaluator evaluate_;
};

/// The tilting family theta -> P_theta, theta in [0, theta_upper].
ParametricFamily as_parametric(const TiltedFamily& family, double theta_upper = 50.0);

/// A single known distribution (no free parameters).
ParametricFamily fixed_family(const Distribution& p);

struct EstimationResult {
  std::string estimator;
  double estimate = 0.0;
  double variance = 0.0;
  std::size_t n = 0;
  std::optional<std::size_t> n0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool degenerate = false;
  std::optional<double> theta_hat;
  std::optional<double> xi_hat;
  std::optional<double> bias;

  double standard_error() const;
};

struct TestOutcome {
  bool reject = false;
  double i_min = 0.0;
  double p_min = 0.0;
  std::string estimator;
};

/// Asymptotic variance (1 - Q(A)) / Q(A) of the hit fraction estimator.
double nonparam_variance(double q_a);

/// Asymptotic variance of the parametric estimator at theta:
/// Cov(f, 1_A)^2 Var_Q[f] / (P_theta(A)^2 Var_theta[f]^2), all but Var_Q[f]
/// under P_theta.
double param_variance(const TiltedFamily& family, const TargetSet& a, double theta, double var_q_f);

/// Hit fraction estimator log[(hits/n) / P0(A)] with variance (1-Q)/Q.
EstimationResult nonparam_actinfo(const SampleSet& sample, const TargetSet& a, double p0a);

/// Maximum likelihood tilt over theta >= 0: zero when the sample mean of f
/// does not exceed E_P0[f], +infinity when it reaches the largest f on the
/// support of P0, otherwise the root of the (decreasing) score.
double mle_tilt(const SampleSet& sample, const TiltedFamily& family);

/// Tilt whose mean of f equals mean_f, clamped to theta >= 0.
double tilt_matching_mean(const TiltedFamily& family, double mean_f);

/// Parametric estimator log[P_thetahat(A) / P0(A)].
EstimationResult param_actinfo(const SampleSet& sample, const TiltedFamily& family, const TargetSet& a);

/// argmin_{theta >= 0} KL(Q || P_theta).
double theta_star(const Distribution& q, const TiltedFamily& family);

/// Reject when estimate >= i_min; degenerate -infinity estimates never reject.
TestOutcome ft_test(const EstimationResult& result, double i_min, double p0a);

struct NullMaximum {
  double p0max;
  std::vector<double> xi;
};

/// max over the grid of P_0xi(A); for one-dimensional xi the grid argmax is
/// refined by golden-section search between its neighbours.
NullMaximum p0_max(const ParametricFamily& family0, const TargetSet& a, const std::vector<std::vector<double>>& xi_grid);
NullMaximum p0_max(const std::function<double(double)>& null_target_prob, const std::vector<double>& xi_grid);

/// Lower bound log[Q(A) / p0max] on the actinfo when the null has unknown
/// parameters. Q(A) is the hit fraction, or P_(thetahat, xihat)(A) from
/// joint_mle when a family is supplied. With the true P_0xi(A) known, the
/// bias log[P_0xi(A) / p0max] is reported.
EstimationResult lower_bound_actinfo(const SampleSet& sample, const TargetSet& a, double p0max,
                                     const ParametricFamily* family = nullptr,
                                     std::optional<double> true_null_target_prob = std::nullopt);

struct JointFit {
  std::vector<double> params;
  double mean_log_likelihood = 0.0;
  int sweeps = 0;
};

/// One coordinate line-search sweep, then projected Newton steps (finite
/// difference gradient and Hessian, curvature taken in absolute value) until
/// no parameter moves by 1e-8. NonIdentifiable if an axis is flat,
/// NoConvergence after 500 iterations; `sweeps` counts the iterations.
JointFit joint_mle(const SampleSet& sample, const ParametricFamily& family);

/// Sandwich variance of the parametric estimator with nuisance parameters:
/// g H^-1 S H^-T g^T with g = E[psi | X in A] under the fitted law and H, S
/// the sample averages of the score derivative and of psi psi^T.
double param_variance_nuisance(const SampleSet& sample, const ParametricFamily& family, const TargetSet& a,
                               std::span<const double> at, double rel_step = 1e-3);

/// Two-sample estimator log[Q(A) / P_0xihat(A)] with xihat fitted on the null
/// sample; variance V1 + (n/n0) V2.
EstimationResult two_sample_actinfo(const SampleSet& sample, const SampleSet& null_sample,
                                    const ParametricFamily& family0, const TargetSet& a, bool parametric,
                                    const ParametricFamily* family = nullptr);

}  // namespace actinfo
