#include "actinfo/models.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "actinfo/absorption.hpp"
#include "actinfo/kernels.hpp"
#include "actinfo/optimize.hpp"

namespace actinfo {

CosmologyModel::CosmologyModel(double a_, double b_) : a(a_), b(b_) {
  if (!(a > 0.0 && a < b && std::isfinite(b)))
    throw Error(ErrorKind::InvalidArgument, "cosmology interval needs 0 < a < b");
}

CosmologyModel CosmologyModel::from_epsilon(double x, double eps) {
  if (!(x > 0.0 && eps > 0.0 && eps < 1.0)) throw Error(ErrorKind::InvalidArgument, "need x > 0 and 0 < eps < 1");
  return CosmologyModel(x * (1.0 - eps), x * (1.0 + eps));
}

double cosmology_interval_prob(const CosmologyModel& model, double xi) {
  if (!(xi > 0.0)) throw Error(ErrorKind::InvalidArgument, "xi must be positive");
  return std::exp(-model.a / xi) * -std::expm1(-(model.b - model.a) / xi);
}

CosmologyBound cosmology_actinfo_bound(const CosmologyModel& model) {
  const double lo = std::log((model.b - model.a) / 100.0);
  const double hi = std::log(100.0 * model.b);
  auto objective = [&](double log_xi) { return cosmology_interval_prob(model, std::exp(log_xi)); };
  const double log_xi = optimize::golden_section_max(objective, lo, hi, 1e-12);
  CosmologyBound out;
  out.xi_star = std::exp(log_xi);
  out.p0max = cosmology_interval_prob(model, out.xi_star);
  out.value = -std::log(out.p0max);
  out.approximation = 1.0 - std::log(model.epsilon()) - std::log(2.0);
  out.approximation_valid = std::abs(out.value - out.approximation) <= 0.01;
  return out;
}

StudentModel::StudentModel(std::vector<double> means, Eigen::MatrixXd sigma, std::vector<double> xi,
                           double error_variance, std::vector<double> theta, double threshold)
    : means_(std::move(means)), sigma_(std::move(sigma)), xi_(std::move(xi)), error_variance_(error_variance),
      theta_(std::move(theta)), threshold_(threshold) {
  const auto k = static_cast<Eigen::Index>(means_.size());
  if (sigma_.rows() != k || sigma_.cols() != k)
    throw Error(ErrorKind::InvalidArgument, "covariance must be (d-1) x (d-1)");
  if (xi_.size() != means_.size() + 1 || theta_.size() != means_.size() + 1)
    throw Error(ErrorKind::InvalidArgument, "xi and theta need d entries");
  if (!(error_variance_ > 0.0)) throw Error(ErrorKind::DegenerateVariance, "error variance must be positive");
  if (!sigma_.isApprox(sigma_.transpose(), 1e-12))
    throw Error(ErrorKind::InvalidArgument, "covariance must be symmetric");
  if (k > 0) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(sigma_);
    const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
    if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() < -1e-12 * scale).any())
      throw Error(ErrorKind::InvalidArgument, "covariance is not positive semidefinite");
  }
}

std::vector<double> StudentModel::coefficients(double t) const {
  std::vector<double> beta(xi_.size());
  for (std::size_t j = 0; j < beta.size(); ++j) beta[j] = xi_[j] + t * theta_[j];
  return beta;
}

double StudentModel::mean(double t) const {
  const auto beta = coefficients(t);
  double mu = beta[0];
  for (std::size_t j = 0; j < means_.size(); ++j) mu += beta[j + 1] * means_[j];
  return mu;
}

double StudentModel::variance(double t) const {
  const auto beta = coefficients(t);
  double v = error_variance_;
  for (std::size_t j = 0; j < means_.size(); ++j)
    for (std::size_t k = 0; k < means_.size(); ++k)
      v += beta[j + 1] * beta[k + 1] * sigma_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
  return v;
}

StudentModel StudentModel::untuned() const {
  return StudentModel(means_, sigma_, xi_, error_variance_, std::vector<double>(theta_.size(), 0.0), threshold_);
}

double student_pass_probability(const StudentModel& model, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "t must be nonnegative");
  const double v = model.variance(t);
  if (!(v > 0.0)) throw Error(ErrorKind::DegenerateVariance, "V(theta, xi, t) must be positive");
  return 0.5 * std::erfc((model.threshold() - model.mean(t)) / std::sqrt(2.0 * v));
}

double student_actinfo(const StudentModel& model, double t) {
  return std::log(student_pass_probability(model, t)) - std::log(student_pass_probability(model, 0.0));
}

void MachineModel::validate() const {
  if (d < 1 || d > 12) throw Error(ErrorKind::InvalidArgument, "machine needs 1 <= d <= 12");
  if (!(a <= 1.0 / d)) throw Error(ErrorKind::InvalidArgument, "machine needs a <= 1/d");
  if (!(b > 0.0 && std::isfinite(b))) throw Error(ErrorKind::InvalidArgument, "machine needs b > 0");
  if (!(theta >= 0.0)) throw Error(ErrorKind::InvalidArgument, "machine needs theta >= 0");
}

SpacePtr machine_space(int d) {
  const std::size_t m = std::size_t{1} << d;
  std::vector<std::string> labels(m);
  for (std::size_t x = 0; x < m; ++x) {
    labels[x].resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) labels[x][static_cast<std::size_t>(j)] = ((x >> j) & 1U) ? '1' : '0';
  }
  return StateSpace::make(std::move(labels));
}

SpecificityProfile machine_specificity(const SpacePtr& space, double a) {
  const std::size_t m = space->size();
  std::vector<double> f(m);
  for (std::size_t x = 0; x < m; ++x) f[x] = a * std::popcount(x);
  f[m - 1] = 1.0;
  return SpecificityProfile(space, std::move(f), 1.0);
}

ProposalKernel machine_proposal(const SpacePtr& space, int d, double b) {
  const std::size_t m = space->size();
  Matrix q = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t x = 0; x < m; ++x) {
    const int ones = std::popcount(x);
    const double w = ones + b * (d - ones);
    for (int j = 0; j < d; ++j) {
      const std::size_t y = x ^ (std::size_t{1} << j);
      q(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = ((x >> j) & 1U) ? 1.0 / w : b / w;
    }
  }
  return ProposalKernel(space, std::move(q));
}

MachineSystem build_machine(const MachineModel& model) {
  model.validate();
  SpacePtr space = machine_space(model.d);
  SpecificityProfile f = machine_specificity(space, model.a);
  ProposalKernel q = machine_proposal(space, model.d, model.b);
  Distribution p0 = reference_null(q);
  TiltedFamily family(p0, f);
  TargetSet target(space, {space->size() - 1});
  const double ifo = functional_information(p0, target);
  return MachineSystem{space, std::move(f), std::move(q), std::move(p0), std::move(family), std::move(target), ifo};
}

ParametricFamily machine_family(int d, double a) {
  MachineModel{d, a, 1.0, 0.0}.validate();
  SpacePtr space = machine_space(d);
  SpecificityProfile f = machine_specificity(space, a);
  return ParametricFamily(space, {kMachineThetaBounds, kMachineRateBounds}, {1.0, 1.0},
                          [space, f, d](std::span<const double> p) {
                            return tilt(TiltedFamily(reference_null(machine_proposal(space, d, p[1])), f), p[0]);
                          });
}

ParametricFamily machine_null_family(int d) {
  MachineModel{d, 0.0, 1.0, 0.0}.validate();
  SpacePtr space = machine_space(d);
  return ParametricFamily(space, {kMachineRateBounds}, {1.0}, [space, d](std::span<const double> p) {
    return reference_null(machine_proposal(space, d, p[0]));
  });
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw Error(ErrorKind::InvalidArgument, "grid needs step > 0 and hi >= lo");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 0.5)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo + static_cast<double>(i) * step;
  return grid;
}

std::vector<EquilibriumRow> figure_equilibrium_sweep(const MachineModel& model, const std::vector<double>& theta_grid) {
  const MachineSystem sys = build_machine(model);
  for (double theta : theta_grid)
    if (!(theta >= 0.0)) throw Error(ErrorKind::OutOfRange, "theta must be nonnegative");
  std::vector<EquilibriumRow> rows(theta_grid.size());
  kernels::parallel_for(theta_grid.size(), [&](std::size_t i) {
    rows[i] = {theta_grid[i], actinfo_equilibrium(sys.family, sys.target, theta_grid[i]), sys.ifo};
  });
  return rows;
}

std::vector<TimeRow> figure_time_sweep(const MachineModel& model, std::size_t t_max) {
  const MachineSystem sys = build_machine(model);
  const TransitionKernel kernel = build_kernel(sys.p0, sys.f, model.theta, sys.q, AcceptanceRule::MoranSquareRoot);
  const double p0a = target_probability(sys.p0, sys.target);
  const auto unstopped = actinfo_time_series(sys.p0, kernel, sys.target, t_max);
  const auto stopped = actinfo_stopped_series(decompose(kernel, sys.target, sys.p0), p0a, t_max);
  const double eq = actinfo_equilibrium(sys.family, sys.target, model.theta);
  std::vector<TimeRow> rows(t_max + 1);
  for (std::size_t t = 0; t <= t_max; ++t) rows[t] = {t, unstopped[t], stopped[t], eq, sys.ifo};
  return rows;
}

}  // namespace actinfo
