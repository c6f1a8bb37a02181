#include "actinfo/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace actinfo {

namespace {

void check_stochastic(const Matrix& rows, std::size_t m, const char* what) {
  if (static_cast<std::size_t>(rows.rows()) != m || static_cast<std::size_t>(rows.cols()) != m)
    throw Error(ErrorKind::InvalidArgument, std::string(what) + ": matrix is not " + std::to_string(m) + "x" +
                                                std::to_string(m));
  for (std::size_t x = 0; x < m; ++x) {
    double s = 0.0;
    for (std::size_t y = 0; y < m; ++y) {
      const double v = rows(x, y);
      if (!std::isfinite(v) || v < 0.0)
        throw Error(ErrorKind::InvalidArgument, std::string(what) + ": negative or non-finite entry in row " +
                                                    std::to_string(x));
      s += v;
    }
    if (std::abs(s - 1.0) > kMassTolerance)
      throw Error(ErrorKind::InvalidArgument,
                  std::string(what) + ": row " + std::to_string(x) + " sums to " + std::to_string(s));
  }
}

std::vector<char> reachable(const Matrix& rows, bool reverse) {
  const std::size_t m = static_cast<std::size_t>(rows.rows());
  std::vector<char> seen(m, 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const std::size_t x = stack.back();
    stack.pop_back();
    for (std::size_t y = 0; y < m; ++y) {
      const double w = reverse ? rows(y, x) : rows(x, y);
      if (w > 0.0 && !seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  return seen;
}

}  // namespace

ProposalKernel::ProposalKernel(SpacePtr space, Matrix rows) : space_(std::move(space)), rows_(std::move(rows)) {
  if (!space_) throw Error(ErrorKind::InvalidArgument, "proposal kernel without a state space");
  check_stochastic(rows_, space_->size(), "ProposalKernel");
  for (bool reverse : {false, true}) {
    const auto seen = reachable(rows_, reverse);
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw Error(ErrorKind::NotStronglyConnected, "proposal graph is not strongly connected");
  }
}

bool ProposalKernel::is_reciprocal() const {
  const auto m = rows_.rows();
  for (Eigen::Index x = 0; x < m; ++x)
    for (Eigen::Index y = 0; y < m; ++y)
      if ((rows_(x, y) > 0.0) != (rows_(y, x) > 0.0)) return false;
  return true;
}

const char* to_string(AcceptanceRule rule) noexcept {
  return rule == AcceptanceRule::MetropolisHastings ? "metropolis-hastings" : "moran-square-root";
}

TransitionKernel::TransitionKernel(SpacePtr space, Matrix rows, double theta, AcceptanceRule rule)
    : space_(std::move(space)), rows_(std::move(rows)), theta_(theta), rule_(rule) {
  if (!space_) throw Error(ErrorKind::InvalidArgument, "transition kernel without a state space");
  check_stochastic(rows_, space_->size(), "TransitionKernel");
}

TransitionKernel build_kernel(const Distribution& p0, const SpecificityProfile& f, double theta,
                              const ProposalKernel& q, AcceptanceRule rule) {
  require_same_space(p0.space(), f.space(), "build_kernel");
  require_same_space(p0.space(), q.space(), "build_kernel");
  if (!std::isfinite(theta)) throw Error(ErrorKind::InvalidArgument, "build_kernel: theta must be finite");
  const std::size_t m = p0.size();
  for (std::size_t x = 0; x < m; ++x)
    if (!(p0[x] > 0.0)) throw Error(ErrorKind::ZeroNullMass, "P0(" + std::to_string(x) + ") = 0");
  if (rule == AcceptanceRule::MoranSquareRoot && !q.is_reciprocal())
    throw Error(ErrorKind::ReciprocityViolation, "Moran rule needs q(x,y) > 0 <=> q(y,x) > 0");

  // log of exp(theta f(y)) P0(y) q(y,x) / (exp(theta f(x)) P0(x) q(x,y)),
  // -inf when the reverse proposal is impossible.
  std::vector<double> log_w(m);
  for (std::size_t x = 0; x < m; ++x) log_w[x] = theta * f[x] + std::log(p0[x]);
  auto log_ratio = [&](std::size_t x, std::size_t y) {
    const double back = q(y, x);
    if (back == 0.0) return -std::numeric_limits<double>::infinity();
    return log_w[y] - log_w[x] + std::log(back) - std::log(q(x, y));
  };

  double log_c = 0.0;
  if (rule == AcceptanceRule::MoranSquareRoot) {
    double max_log = -std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < m; ++x)
      for (std::size_t y = 0; y < m; ++y)
        if (x != y && q(x, y) > 0.0 && q(y, x) > 0.0) max_log = std::max(max_log, log_ratio(x, y));
    log_c = std::isfinite(max_log) ? -0.5 * max_log : 0.0;
  }

  Matrix rows = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t x = 0; x < m; ++x) {
    double stay = q(x, x);
    for (std::size_t y = 0; y < m; ++y) {
      if (y == x || q(x, y) == 0.0) continue;
      const double lr = log_ratio(x, y);
      double alpha;
      if (rule == AcceptanceRule::MetropolisHastings)
        alpha = lr >= 0.0 ? 1.0 : std::exp(lr);
      else
        alpha = std::min(1.0, std::exp(log_c + 0.5 * lr));
      const double move = alpha * q(x, y);
      rows(x, y) = move;
      stay += q(x, y) - move;
    }
    rows(x, x) = stay;
  }
  return TransitionKernel(p0.space(), std::move(rows), theta, rule);
}

Distribution stationary(const SpacePtr& space, const Matrix& rows) {
  const Eigen::Index m = rows.rows();
  Eigen::MatrixXd system = rows.transpose() - Eigen::MatrixXd::Identity(m, m);
  system.row(m - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(m - 1) = 1.0;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  if (!(lu.rcond() > 1e-13))
    throw Error(ErrorKind::SingularSystem, "stationary system is singular (reducible chain?)");
  Eigen::VectorXd pi = lu.solve(rhs);
  // One step of iterative refinement.
  pi += lu.solve(rhs - system * pi);

  std::vector<double> mass(static_cast<std::size_t>(m));
  double total = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (!std::isfinite(pi(i)) || pi(i) < -1e-12)
      throw Error(ErrorKind::SingularSystem, "stationary solve produced an invalid probability");
    mass[static_cast<std::size_t>(i)] = std::max(0.0, pi(i));
    total += mass[static_cast<std::size_t>(i)];
  }
  for (double& v : mass) v /= total;
  return Distribution(space, std::move(mass));
}

Distribution stationary(const TransitionKernel& kernel) { return stationary(kernel.space(), kernel.rows()); }

Distribution evolve(const Distribution& p0, const TransitionKernel& kernel, std::size_t t) {
  require_same_space(p0.space(), kernel.space(), "evolve");
  if (t == 0) return p0;
  std::vector<double> cur(p0.mass().begin(), p0.mass().end());
  std::vector<double> next(cur.size());
  for (std::size_t s = 0; s < t; ++s) {
    kernels::vec_mat(cur, kernel.rows(), next);
    cur.swap(next);
  }
  double total = 0.0;
  for (double v : cur) total += v;
  for (double& v : cur) v /= total;
  return Distribution(p0.space(), std::move(cur));
}

std::vector<double> actinfo_time_series(const Distribution& p0, const TransitionKernel& kernel, const TargetSet& a,
                                        std::size_t t_max) {
  require_same_space(p0.space(), kernel.space(), "actinfo_time_series");
  require_same_space(p0.space(), a.space(), "actinfo_time_series");
  const double null_mass = target_probability(p0, a);
  if (null_mass <= 0.0) throw Error(ErrorKind::NullTargetZero, "P0(A) = 0");
  const double log_null = std::log(null_mass);

  std::vector<double> out(t_max + 1);
  out[0] = 0.0;
  std::vector<double> cur(p0.mass().begin(), p0.mass().end());
  std::vector<double> next(cur.size());
  for (std::size_t t = 1; t <= t_max; ++t) {
    kernels::vec_mat(cur, kernel.rows(), next);
    cur.swap(next);
    double in = 0.0;
    for (Index i : a.members()) in += cur[i];
    out[t] = in > 0.0 ? std::log(in) - log_null : -std::numeric_limits<double>::infinity();
  }
  return out;
}

double actinfo_at_time(const Distribution& p0, const TransitionKernel& kernel, const TargetSet& a, std::size_t t) {
  return actinfo_time_series(p0, kernel, a, t).back();
}

double moran_fixation(double s, long long population) {
  if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorKind::InvalidArgument, "selection coefficient must be > 0");
  if (population < 1) throw Error(ErrorKind::InvalidArgument, "population size must be >= 1");
  const double n = static_cast<double>(population);
  if (s == 1.0) return 1.0 / n;
  // With u = log s: beta = (1 - e^-u) / (1 - e^-Nu), evaluated in log space.
  const double u = std::log1p(s - 1.0);
  double log_beta;
  if (u > 0.0) {
    log_beta = std::log(-std::expm1(-u)) - std::log(-std::expm1(-n * u));
  } else {
    log_beta = std::log(std::expm1(-u)) + n * u - std::log1p(-std::exp(n * u));
  }
  return std::exp(log_beta);
}

Distribution reference_null(const ProposalKernel& q) { return stationary(q.space(), q.rows()); }

}  // namespace actinfo
