#pragma once

// Worked example models: a cosmological constant with an exponential prior,
// a regression model of student test scores and the d-part molecular
// machine driven by Moran/Metropolis-Hastings dynamics.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "actinfo/chains.hpp"
#include "actinfo/inference.hpp"

namespace actinfo {

struct CosmologyModel {
  double a;
  double b;

  CosmologyModel(double a, double b);
  double midpoint() const noexcept { return 0.5 * (a + b); }
  /// Half the relative width, (b - a) / (2 x).
  double epsilon() const noexcept { return (b - a) / (a + b); }
  /// Interval of half relative width eps around x.
  static CosmologyModel from_epsilon(double x, double eps);
};

/// e^{-a/xi} - e^{-b/xi}.
double cosmology_interval_prob(const CosmologyModel& model, double xi);

struct CosmologyBound {
  double value;          // -log max_xi P_0xi(A)
  double p0max;
  double xi_star;
  double approximation;  // 1 - log(eps) - log(2)
  bool approximation_valid;  // |value - approximation| <= 0.01
};

CosmologyBound cosmology_actinfo_bound(const CosmologyModel& model);

class StudentModel {
 public:
  /// means and sigma describe the d-1 covariates; xi = (xi_0..xi_{d-1}),
  /// theta = (theta_0..theta_{d-1}).
  StudentModel(std::vector<double> means, Eigen::MatrixXd sigma, std::vector<double> xi, double error_variance,
               std::vector<double> theta, double threshold);

  std::size_t covariates() const noexcept { return means_.size(); }
  double threshold() const noexcept { return threshold_; }
  double mean(double t) const;
  double variance(double t) const;
  StudentModel untuned() const;

 private:
  std::vector<double> coefficients(double t) const;

  std::vector<double> means_;
  Eigen::MatrixXd sigma_;
  std::vector<double> xi_;
  double error_variance_;
  std::vector<double> theta_;
  double threshold_;
};

/// 1 - Phi((f0 - mu) / sqrt(V)).
double student_pass_probability(const StudentModel& model, double t);
/// log of the pass probability at (theta, t) over the one at (0, 0).
double student_actinfo(const StudentModel& model, double t);

struct MachineModel {
  int d = 5;
  double a = 0.0;
  double b = 1.0;
  double theta = 0.0;

  void validate() const;
};

struct MachineSystem {
  SpacePtr space;
  SpecificityProfile f;
  ProposalKernel q;
  Distribution p0;
  TiltedFamily family;
  TargetSet target;  // the all-ones state
  double ifo;        // -log P0(A)
};

SpacePtr machine_space(int d);
SpecificityProfile machine_specificity(const SpacePtr& space, double a);
ProposalKernel machine_proposal(const SpacePtr& space, int d, double b);
MachineSystem build_machine(const MachineModel& model);

inline constexpr ParameterBounds kMachineThetaBounds{0.0, 50.0};
inline constexpr ParameterBounds kMachineRateBounds{0.01, 4.0};

/// (theta, b) -> P_theta built on the b-dependent reference null.
ParametricFamily machine_family(int d, double a);
/// b -> P_0b.
ParametricFamily machine_null_family(int d);

struct EquilibriumRow {
  double theta;
  double iplus;
  double ifo;
};

struct TimeRow {
  std::size_t t;
  double iplus;
  double iplus_stopped;
  double iplus_eq;
  double ifo;
};

/// lo, lo + step, ..., up to hi (inclusive within half a step).
std::vector<double> uniform_grid(double lo, double hi, double step);

std::vector<EquilibriumRow> figure_equilibrium_sweep(const MachineModel& model, const std::vector<double>& theta_grid);
/// Moran-rule search at model.theta started from P0.
std::vector<TimeRow> figure_time_sweep(const MachineModel& model, std::size_t t_max);

}  // namespace actinfo
