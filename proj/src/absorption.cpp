#include "actinfo/absorption.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace actinfo {

AbsorbingDecomposition decompose(const TransitionKernel& kernel, const TargetSet& a, const Distribution& p0) {
  require_same_space(kernel.space(), a.space(), "decompose");
  require_same_space(kernel.space(), p0.space(), "decompose");
  if (a.empty()) throw Error(ErrorKind::EmptyTarget, "decompose needs a nonempty target");
  const std::size_t m = kernel.size();
  AbsorbingDecomposition dec;
  for (Index x = 0; x < m; ++x)
    if (!a.contains(x)) dec.index_map.push_back(x);
  const std::size_t k = dec.index_map.size();
  if (k == 0) throw Error(ErrorKind::EmptyComplement, "target covers the whole space; T = 0 surely");

  dec.trans_na = Matrix(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  dec.trans_na_a.assign(k, 0.0);
  dec.start_na.assign(k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    const Index x = dec.index_map[i];
    for (std::size_t j = 0; j < k; ++j) dec.trans_na(i, j) = kernel(x, dec.index_map[j]);
    double into = 0.0;
    for (Index y : a.members()) into += kernel(x, y);
    dec.trans_na_a[i] = into;
    dec.start_na[i] = p0[x];
  }
  dec.start_in_A = target_probability(p0, a);
  return dec;
}

std::vector<double> absorption_cdf_series(const AbsorbingDecomposition& dec, std::size_t t_max) {
  std::vector<double> out(t_max + 1);
  std::vector<double> cur = dec.start_na;
  std::vector<double> next(cur.size());
  double absorbed = dec.start_in_A;
  out[0] = absorbed;
  for (std::size_t t = 1; t <= t_max; ++t) {
    double step = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) step += cur[i] * dec.trans_na_a[i];
    absorbed += step;
    out[t] = std::min(1.0, absorbed);
    kernels::vec_mat(cur, dec.trans_na, next);
    cur.swap(next);
  }
  return out;
}

double absorption_cdf(const AbsorbingDecomposition& dec, std::size_t t) {
  return absorption_cdf_series(dec, t).back();
}

std::vector<double> survival_series(const AbsorbingDecomposition& dec, std::size_t t_max) {
  std::vector<double> out(t_max + 1);
  std::vector<double> cur = dec.start_na;
  std::vector<double> next(cur.size());
  for (std::size_t t = 0;; ++t) {
    double s = 0.0;
    for (double v : cur) s += v;
    out[t] = s;
    if (t == t_max) break;
    kernels::vec_mat(cur, dec.trans_na, next);
    cur.swap(next);
  }
  return out;
}

std::vector<double> actinfo_stopped_series(const AbsorbingDecomposition& dec, double p0a, std::size_t t_max) {
  if (!(p0a > 0.0)) throw Error(ErrorKind::NullTargetZero, "P0(A) = 0");
  auto cdf = absorption_cdf_series(dec, t_max);
  const double log_null = std::log(p0a);
  for (double& v : cdf) v = v > 0.0 ? std::log(v) - log_null : -std::numeric_limits<double>::infinity();
  return cdf;
}

double actinfo_stopped(const AbsorbingDecomposition& dec, double p0a, std::size_t t) {
  return actinfo_stopped_series(dec, p0a, t).back();
}

double expected_hitting_time(const AbsorbingDecomposition& dec) {
  const Eigen::Index k = dec.trans_na.rows();
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(k, k) - dec.trans_na;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  if (!(lu.rcond() > 1e-15))
    throw Error(ErrorKind::SingularSystem, "I - Pi_na is singular (target unreachable?)");
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(k);
  Eigen::VectorXd h = lu.solve(ones);
  h += lu.solve(ones - system * h);
  double et = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) et += dec.start_na[static_cast<std::size_t>(i)] * h(i);
  return std::max(0.0, et);
}

double survival_decay_rate(const AbsorbingDecomposition& dec) {
  const Eigen::Index k = dec.trans_na.rows();
  double max_row = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) max_row = std::max(max_row, dec.trans_na.row(i).sum());
  if (max_row < 1.0) return max_row;

  std::vector<double> cur(static_cast<std::size_t>(k), 1.0 / static_cast<double>(k));
  std::vector<double> next(cur.size());
  double rho = 0.0;
  for (int it = 0; it < 20000; ++it) {
    kernels::vec_mat(cur, dec.trans_na, next);
    double norm = 0.0;
    for (double v : next) norm += v;
    if (norm == 0.0) return 0.0;
    for (double& v : next) v /= norm;
    const double change = std::abs(norm - rho);
    rho = norm;
    cur.swap(next);
    if (it > 50 && change < 1e-15) break;
  }
  return std::min(rho, 1.0);
}

std::size_t truncation_horizon(const AbsorbingDecomposition& dec, double tol) {
  const double rho = survival_decay_rate(dec);
  if (rho <= 0.0) return 1;
  if (rho >= 1.0) throw Error(ErrorKind::NoConvergence, "surviving mass does not decay");
  const double t = std::log(tol * (1.0 - rho)) / std::log(rho);
  return static_cast<std::size_t>(std::ceil(std::max(1.0, t)));
}

}  // namespace actinfo
