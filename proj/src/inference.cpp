#include "actinfo/inference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "actinfo/optimize.hpp"

namespace actinfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void set_interval(EstimationResult& r) {
  if (r.degenerate) {
    r.ci_low = r.ci_high = r.estimate;
    return;
  }
  const double half = kNormalQuantile95 * std::sqrt(r.variance / static_cast<double>(r.n));
  r.ci_low = r.estimate - half;
  r.ci_high = r.estimate + half;
}

double hit_fraction(const SampleSet& sample, const TargetSet& a) {
  std::size_t hits = 0;
  for (Index d : sample.draws)
    if (a.contains(d)) ++hits;
  return static_cast<double>(hits) / static_cast<double>(sample.size());
}

void fill_nonparametric(EstimationResult& r, double q_hat, double null_prob) {
  if (q_hat <= 0.0) {
    r.degenerate = true;
    r.estimate = -kInf;
    r.variance = kInf;
    return;
  }
  r.estimate = std::log(q_hat) - std::log(null_prob);
  r.variance = nonparam_variance(q_hat);
}

std::vector<double> log_mass(const Distribution& p) {
  std::vector<double> out(p.size());
  for (Index i = 0; i < p.size(); ++i) out[i] = p[i] > 0.0 ? std::log(p[i]) : -kInf;
  return out;
}

// Mean log-likelihood (1/n) sum_x c_x log P(x).
double mean_log_likelihood(const std::vector<double>& freq, const Distribution& p) {
  double ll = 0.0;
  for (Index i = 0; i < freq.size(); ++i) {
    if (freq[i] == 0.0) continue;
    if (p[i] <= 0.0) return -kInf;
    ll += freq[i] * std::log(p[i]);
  }
  return ll;
}

std::vector<double> frequencies(const SampleSet& s) {
  const auto c = s.counts();
  std::vector<double> f(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) f[i] = static_cast<double>(c[i]) / static_cast<double>(s.size());
  return f;
}

void require_nonconstant(const TiltedFamily& family) {
  const auto& p0 = family.base();
  const auto& f = family.spec();
  double lo = kInf, hi = -kInf;
  for (Index i = 0; i < p0.size(); ++i) {
    if (p0[i] <= 0.0) continue;
    lo = std::min(lo, f[i]);
    hi = std::max(hi, f[i]);
  }
  if (!(hi > lo)) throw Error(ErrorKind::ConstantSpecificity, "f is constant on the support of P0");
}

// Scores psi(x) and score derivatives psi'(x) of log P_params(x) by
// fourth-order central differences with step rel_step * (1 + |param|).
// Entries are NaN where the mass vanishes.
struct ScoreTable {
  std::size_t dim;
  std::vector<std::vector<double>> psi;   // [x][i]
  std::vector<Eigen::MatrixXd> dpsi;      // [x]
  Distribution at_law;
};

constexpr std::array<std::pair<int, double>, 4> kFirst{{{-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}}};
constexpr std::array<std::pair<int, double>, 5> kSecond{
    {{-2, -1.0 / 12}, {-1, 16.0 / 12}, {0, -30.0 / 12}, {1, 16.0 / 12}, {2, -1.0 / 12}}};

ScoreTable score_table(const ParametricFamily& family, std::span<const double> at, bool with_derivative,
                       double rel_step) {
  const std::size_t k = family.dimension();
  std::vector<double> p(at.begin(), at.end());
  std::vector<double> h(k);
  for (std::size_t i = 0; i < k; ++i) h[i] = rel_step * (1.0 + std::abs(p[i]));

  auto shifted = [&](std::initializer_list<std::pair<std::size_t, int>> moves) {
    auto q = p;
    for (auto [i, steps] : moves) q[i] += steps * h[i];
    return log_mass(family(q));
  };

  Distribution center = family(p);
  const auto base = log_mass(center);
  const std::size_t m = base.size();
  ScoreTable out{k, std::vector<std::vector<double>>(m, std::vector<double>(k, 0.0)),
                 std::vector<Eigen::MatrixXd>(with_derivative ? m : 0, Eigen::MatrixXd::Zero(k, k)),
                 std::move(center)};

  for (std::size_t i = 0; i < k; ++i) {
    for (auto [s, c] : kSecond) {
      const auto l = s == 0 ? base : shifted({{i, s}});
      for (std::size_t x = 0; x < m; ++x) {
        if (with_derivative) out.dpsi[x](i, i) += c * l[x] / (h[i] * h[i]);
        for (auto [s1, c1] : kFirst)
          if (s1 == s) out.psi[x][i] += c1 * l[x] / h[i];
      }
    }
    if (!with_derivative) continue;
    for (std::size_t j = 0; j < i; ++j) {
      for (auto [si, ci] : kFirst) {
        for (auto [sj, cj] : kFirst) {
          const auto l = shifted({{i, si}, {j, sj}});
          for (std::size_t x = 0; x < m; ++x) out.dpsi[x](i, j) += ci * cj * l[x] / (h[i] * h[j]);
        }
      }
      for (std::size_t x = 0; x < m; ++x) out.dpsi[x](j, i) = out.dpsi[x](i, j);
    }
  }
  return out;
}

// E[psi | X in A] under the law the table was evaluated at.
Eigen::RowVectorXd conditional_score(const ScoreTable& t, const TargetSet& a) {
  Eigen::RowVectorXd g = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(t.dim));
  double pa = 0.0;
  for (Index x : a.members()) {
    const double px = t.at_law[x];
    if (px <= 0.0) continue;
    pa += px;
    for (std::size_t i = 0; i < t.dim; ++i) g(static_cast<Eigen::Index>(i)) += px * t.psi[x][i];
  }
  if (pa <= 0.0) throw Error(ErrorKind::NullTargetZero, "target has zero probability at the fitted parameters");
  return g / pa;
}

Eigen::MatrixXd checked_inverse(const Eigen::MatrixXd& m, const char* what) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  if (lu.rank() < m.rows() || !m.allFinite())
    throw Error(ErrorKind::SingularSandwich, std::string(what) + " is singular");
  return lu.inverse();
}

}  // namespace

ParametricFamily::ParametricFamily(SpacePtr space, std::vector<ParameterBounds> bounds, std::vector<double> initial,
                                   Evaluator evaluate)
    : space_(std::move(space)), bounds_(std::move(bounds)), initial_(std::move(initial)),
      evaluate_(std::move(evaluate)) {
  if (bounds_.size() > 2)
    throw Error(ErrorKind::InvalidArgument, "parametric families are limited to two parameters");
  if (initial_.size() != bounds_.size())
    throw Error(ErrorKind::InvalidArgument, "initial point does not match the parameter count");
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    if (!(bounds_[i].lower < bounds_[i].upper))
      throw Error(ErrorKind::InvalidArgument, "empty parameter box");
    initial_[i] = std::clamp(initial_[i], bounds_[i].lower, bounds_[i].upper);
  }
}

Distribution ParametricFamily::operator()(std::span<const double> params) const {
  if (params.size() != dimension())
    throw Error(ErrorKind::InvalidArgument, "parameter vector has the wrong length");
  Distribution d = evaluate_(params);
  require_same_space(space_, d.space(), "ParametricFamily");
  return d;
}

ParametricFamily as_parametric(const TiltedFamily& family, double theta_upper) {
  return ParametricFamily(family.space(), {{0.0, theta_upper}}, {1.0},
                          [family](std::span<const double> p) { return tilt(family, p[0]); });
}

ParametricFamily fixed_family(const Distribution& p) {
  return ParametricFamily(p.space(), {}, {}, [p](std::span<const double>) { return p; });
}

double nonparam_variance(double q_a) {
  if (!(q_a > 0.0 && q_a <= 1.0)) throw Error(ErrorKind::OutOfRange, "Q(A) must lie in (0, 1]");
  return q_a >= 1.0 ? 0.0 : (1.0 - q_a) / q_a;
}

double param_variance(const TiltedFamily& family, const TargetSet& a, double theta, double var_q_f) {
  require_same_space(family.space(), a.space(), "param_variance");
  const Distribution p = tilt(family, theta);
  const auto& f = family.spec();
  double pa = 0.0, mean = 0.0, f_in_a = 0.0;
  for (Index i = 0; i < p.size(); ++i) mean += p[i] * f[i];
  for (Index i : a.members()) {
    pa += p[i];
    f_in_a += p[i] * f[i];
  }
  double var = 0.0;
  for (Index i = 0; i < p.size(); ++i) var += p[i] * (f[i] - mean) * (f[i] - mean);
  if (!(pa > 0.0)) throw Error(ErrorKind::NullTargetZero, "P_theta(A) = 0");
  if (!(var > 0.0)) return 0.0;
  const double cov = f_in_a - pa * mean;
  return cov * cov * var_q_f / (pa * pa * var * var);
}

double EstimationResult::standard_error() const { return std::sqrt(variance / static_cast<double>(n)); }

EstimationResult nonparam_actinfo(const SampleSet& sample, const TargetSet& a, double p0a) {
  require_same_space(sample.space, a.space(), "nonparam_actinfo");
  if (!(p0a > 0.0)) throw Error(ErrorKind::NullTargetZero, "P0(A) must be positive");
  if (sample.draws.empty()) throw Error(ErrorKind::InvalidArgument, "empty sample");
  EstimationResult r;
  r.estimator = "nonparametric";
  r.n = sample.size();
  fill_nonparametric(r, hit_fraction(sample, a), p0a);
  set_interval(r);
  return r;
}

double tilt_matching_mean(const TiltedFamily& family, double mean_f) {
  require_nonconstant(family);
  if (mean_f <= tilted_moments(family, 0.0).mean) return 0.0;
  double f_top = -kInf;
  for (Index i = 0; i < family.base().size(); ++i)
    if (family.base()[i] > 0.0) f_top = std::max(f_top, family.spec()[i]);
  if (mean_f >= f_top) return kInf;

  auto score = [&](double theta) { return mean_f - tilted_moments(family, theta).mean; };
  double hi = 1.0;
  while (score(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e12) return kInf;
  }
  double root = 0.0;
  if (!optimize::bisect_decreasing(score, 0.0, hi, 1e-12, 200, root))
    throw Error(ErrorKind::NoConvergence, "score equation for the tilt did not converge");
  return root;
}

double mle_tilt(const SampleSet& sample, const TiltedFamily& family) {
  require_same_space(sample.space, family.space(), "mle_tilt");
  if (sample.draws.empty()) throw Error(ErrorKind::InvalidArgument, "empty sample");
  double mean = 0.0;
  for (Index d : sample.draws) mean += family.spec()[d];
  mean /= static_cast<double>(sample.size());
  return tilt_matching_mean(family, mean);
}

EstimationResult param_actinfo(const SampleSet& sample, const TiltedFamily& family, const TargetSet& a) {
  require_same_space(sample.space, a.space(), "param_actinfo");
  const double p0a = target_probability(family.base(), a);
  if (p0a <= 0.0) throw Error(ErrorKind::NullTargetZero, "P0(A) = 0");
  const double theta = mle_tilt(sample, family);

  EstimationResult r;
  r.estimator = "parametric";
  r.n = sample.size();
  r.theta_hat = theta;
  if (std::isinf(theta)) {
    // Weak limit: P0 conditioned on the states where f is maximal.
    const auto& p0 = family.base();
    double top = -kInf, top_mass = 0.0, top_in_a = 0.0;
    for (Index i = 0; i < p0.size(); ++i)
      if (p0[i] > 0.0) top = std::max(top, family.spec()[i]);
    for (Index i = 0; i < p0.size(); ++i) {
      if (p0[i] <= 0.0 || family.spec()[i] != top) continue;
      top_mass += p0[i];
      if (a.contains(i)) top_in_a += p0[i];
    }
    fill_nonparametric(r, top_in_a / top_mass, p0a);
    if (!r.degenerate) r.variance = 0.0;
    set_interval(r);
    return r;
  }

  const auto& f = family.spec();
  double q_mean = 0.0, q_var = 0.0;
  for (Index d : sample.draws) q_mean += f[d];
  q_mean /= static_cast<double>(sample.size());
  for (Index d : sample.draws) q_var += (f[d] - q_mean) * (f[d] - q_mean);
  q_var /= static_cast<double>(sample.size());

  const double pa = tilted_target_probability(family, a, theta);
  r.estimate = std::log(pa) - std::log(p0a);
  r.variance = param_variance(family, a, theta, q_var);
  set_interval(r);
  return r;
}

double theta_star(const Distribution& q, const TiltedFamily& family) {
  require_same_space(q.space(), family.space(), "theta_star");
  double mean = 0.0;
  for (Index i = 0; i < q.size(); ++i) mean += q[i] * family.spec()[i];
  return tilt_matching_mean(family, mean);
}

TestOutcome ft_test(const EstimationResult& result, double i_min, double p0a) {
  if (!(p0a > 0.0)) throw Error(ErrorKind::NullTargetZero, "P0(A) must be positive");
  TestOutcome t;
  t.i_min = i_min;
  t.p_min = p0a * std::exp(i_min);
  t.estimator = result.estimator;
  t.reject = !is_degenerate(result.estimate) && result.estimate >= i_min;
  return t;
}

NullMaximum p0_max(const std::function<double(double)>& prob, const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "p0_max needs a nonempty grid");
  std::size_t best = 0;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = prob(grid[i]);
    if (values[i] > values[best]) best = i;
  }
  if (grid.size() == 1) return {values[0], {grid[0]}};
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[best + 1 < grid.size() ? best + 1 : best];
  const double tol = 1e-10;
  const double xi = optimize::golden_section_max(prob, std::min(lo, hi), std::max(lo, hi), tol);
  const double v = prob(xi);
  if (v >= values[best]) return {v, {xi}};
  return {values[best], {grid[best]}};
}

NullMaximum p0_max(const ParametricFamily& family0, const TargetSet& a, const std::vector<std::vector<double>>& grid) {
  if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "p0_max needs a nonempty grid");
  auto prob = [&](std::span<const double> xi) { return target_probability(family0(xi), a); };
  if (family0.dimension() == 1) {
    std::vector<double> flat;
    for (const auto& g : grid) flat.push_back(g.at(0));
    std::sort(flat.begin(), flat.end());
    return p0_max([&](double xi) { return prob(std::span<const double>(&xi, 1)); }, flat);
  }
  NullMaximum best{-1.0, {}};
  for (const auto& xi : grid) {
    const double v = prob(xi);
    if (v > best.p0max) best = {v, xi};
  }
  return best;
}

JointFit joint_mle(const SampleSet& sample, const ParametricFamily& family) {
  require_same_space(sample.space, family.space(), "joint_mle");
  if (sample.draws.empty()) throw Error(ErrorKind::InvalidArgument, "empty sample");
  const std::size_t k = family.dimension();
  const auto freq = frequencies(sample);
  auto loglik = [&](std::span<const double> p) { return mean_log_likelihood(freq, family(p)); };

  JointFit fit{family.initial(), 0.0, 0};
  if (k == 0) {
    fit.mean_log_likelihood = loglik(fit.params);
    return fit;
  }
  auto& p = fit.params;
  const auto& box = family.bounds();

  for (std::size_t i = 0; i < k; ++i) {
    auto q = p;
    double lo = kInf, hi = -kInf;
    for (double frac : {0.0, 0.5, 1.0}) {
      q[i] = box[i].lower + frac * (box[i].upper - box[i].lower);
      const double v = loglik(q);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (std::isfinite(hi) && hi - lo <= 1e-12 * (1.0 + std::abs(hi)))
      throw Error(ErrorKind::NonIdentifiable, "log-likelihood is flat along parameter " + std::to_string(i));
  }

  auto sweep = [&] {
    for (std::size_t i = 0; i < k; ++i) {
      auto along = [&](double x) {
        auto q = p;
        q[i] = x;
        return loglik(q);
      };
      p[i] = optimize::line_max(along, box[i].lower, box[i].upper, 1e-11 * (1.0 + std::abs(p[i])));
    }
  };
  auto gradient = [&](const std::vector<double>& at) {
    Eigen::VectorXd g(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
      auto along = [&](double x) {
        auto q = at;
        q[i] = x;
        return loglik(q);
      };
      g(static_cast<Eigen::Index>(i)) = optimize::derivative(along, at[i], box[i].lower, box[i].upper, 1e-4);
    }
    return g;
  };

  constexpr double kChange = 1e-8;
  sweep();
  double current = loglik(p);
  for (int iter = 1; iter <= 500; ++iter) {
    fit.sweeps = iter;
    const auto before = p;
    const Eigen::VectorXd g = gradient(p);
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < k; ++i) {
      const auto gi = g(static_cast<Eigen::Index>(i));
      if ((p[i] <= box[i].lower && gi < 0) || (p[i] >= box[i].upper && gi > 0)) continue;
      free.push_back(i);
    }
    const auto nf = static_cast<Eigen::Index>(free.size());
    bool improved = false;
    if (nf > 0) {
      Eigen::MatrixXd h(nf, nf);
      Eigen::VectorXd gf(nf);
      for (Eigen::Index c = 0; c < nf; ++c) {
        const std::size_t j = free[static_cast<std::size_t>(c)];
        gf(c) = g(static_cast<Eigen::Index>(j));
        const double step = 1e-4 * (1.0 + std::abs(p[j]));
        auto up = p, down = p;
        up[j] = std::min(p[j] + step, box[j].upper);
        down[j] = std::max(p[j] - step, box[j].lower);
        const Eigen::VectorXd diff = (gradient(up) - gradient(down)) / (up[j] - down[j]);
        for (Eigen::Index r = 0; r < nf; ++r) h(r, c) = diff(static_cast<Eigen::Index>(free[static_cast<std::size_t>(r)]));
      }
      h = 0.5 * (h + h.transpose()).eval();
      // Newton direction with the curvature of -H replaced by its magnitude.
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(-h);
      Eigen::VectorXd lambda = eig.eigenvalues().cwiseAbs();
      const double floor = std::max(1e-10, 1e-8 * lambda.maxCoeff());
      lambda = lambda.cwiseMax(floor);
      const Eigen::VectorXd dir =
          eig.eigenvectors() * (eig.eigenvectors().transpose() * gf).cwiseQuotient(lambda);
      auto probe = [&](double s) {
        auto q = p;
        for (Eigen::Index c = 0; c < nf; ++c) {
          const std::size_t j = free[static_cast<std::size_t>(c)];
          q[j] = std::clamp(p[j] + s * dir(c), box[j].lower, box[j].upper);
        }
        return q;
      };
      double best_s = 0.0, best = current;
      for (double s = 1.0; s > 1e-12; s *= 0.5) {
        const double v = loglik(probe(s));
        if (v > best) {
          best = v;
          best_s = s;
          break;
        }
      }
      if (best_s == 1.0) {
        for (double s = 2.0; s <= 1024.0; s *= 2.0) {
          const double v = loglik(probe(s));
          if (!(v > best)) break;
          best = v;
          best_s = s;
        }
      }
      if (best_s > 0.0) {
        p = probe(best_s);
        current = best;
        improved = true;
      }
    }
    if (!improved) {
      sweep();
      current = loglik(p);
    }
    double change = 0.0;
    for (std::size_t i = 0; i < k; ++i) change = std::max(change, std::abs(p[i] - before[i]));
    if (change < kChange) {
      fit.mean_log_likelihood = current;
      return fit;
    }
  }
  throw Error(ErrorKind::NoConvergence, "likelihood ascent did not settle within 500 iterations");
}

double param_variance_nuisance(const SampleSet& sample, const ParametricFamily& family, const TargetSet& a,
                               std::span<const double> at, double rel_step) {
  require_same_space(sample.space, family.space(), "param_variance_nuisance");
  if (!(rel_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "finite-difference step must be positive");
  const std::size_t k = family.dimension();
  if (k == 0) return 0.0;
  const ScoreTable t = score_table(family, at, true, rel_step);
  const Eigen::RowVectorXd g = conditional_score(t, a);

  const auto freq = frequencies(sample);
  const auto kk = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(kk, kk);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(kk, kk);
  for (Index x = 0; x < freq.size(); ++x) {
    if (freq[x] == 0.0) continue;
    if (t.at_law[x] <= 0.0)
      throw Error(ErrorKind::SupportViolation, "sample hits a state with zero model probability");
    Eigen::VectorXd psi(kk);
    for (std::size_t i = 0; i < k; ++i) psi(static_cast<Eigen::Index>(i)) = t.psi[x][i];
    h += freq[x] * t.dpsi[x];
    s += freq[x] * psi * psi.transpose();
  }
  if (!g.allFinite() || !s.allFinite()) throw Error(ErrorKind::SingularSandwich, "non-finite score");
  const Eigen::MatrixXd hinv = checked_inverse(h, "E[psi']");
  const double v = (g * hinv * s * hinv.transpose() * g.transpose())(0, 0);
  return std::max(0.0, v);
}

EstimationResult lower_bound_actinfo(const SampleSet& sample, const TargetSet& a, double p0max,
                                     const ParametricFamily* family, std::optional<double> true_null_target_prob) {
  require_same_space(sample.space, a.space(), "lower_bound_actinfo");
  if (!(p0max > 0.0)) throw Error(ErrorKind::NullTargetZero, "P0max(A) must be positive");
  if (sample.draws.empty()) throw Error(ErrorKind::InvalidArgument, "empty sample");
  EstimationResult r;
  r.n = sample.size();
  if (family == nullptr) {
    r.estimator = "lower-bound-nonparametric";
    fill_nonparametric(r, hit_fraction(sample, a), p0max);
  } else {
    r.estimator = "lower-bound-parametric";
    const JointFit fit = joint_mle(sample, *family);
    if (!fit.params.empty()) r.theta_hat = fit.params[0];
    if (fit.params.size() > 1) r.xi_hat = fit.params[1];
    const double q_hat = target_probability((*family)(fit.params), a);
    if (q_hat <= 0.0) {
      fill_nonparametric(r, 0.0, p0max);
    } else {
      r.estimate = std::log(q_hat) - std::log(p0max);
      r.variance = q_hat >= 1.0 ? 0.0 : param_variance_nuisance(sample, *family, a, fit.params);
    }
  }
  if (true_null_target_prob) r.bias = std::log(*true_null_target_prob) - std::log(p0max);
  set_interval(r);
  return r;
}

EstimationResult two_sample_actinfo(const SampleSet& sample, const SampleSet& null_sample,
                                    const ParametricFamily& family0, const TargetSet& a, bool parametric,
                                    const ParametricFamily* family) {
  require_same_space(sample.space, a.space(), "two_sample_actinfo");
  require_same_space(null_sample.space, family0.space(), "two_sample_actinfo");
  if (sample.draws.empty() || null_sample.draws.empty())
    throw Error(ErrorKind::InvalidArgument, "two-sample estimation needs two nonempty samples");
  if (parametric && family == nullptr)
    throw Error(ErrorKind::InvalidArgument, "parametric two-sample estimation needs a family");

  EstimationResult r;
  r.estimator = parametric ? "two-sample-parametric" : "two-sample-nonparametric";
  r.n = sample.size();
  r.n0 = null_sample.size();
  const double lambda = static_cast<double>(r.n) / static_cast<double>(*r.n0);

  const JointFit null_fit = joint_mle(null_sample, family0);
  if (!null_fit.params.empty()) r.xi_hat = null_fit.params[0];
  const double p0a = target_probability(family0(null_fit.params), a);
  if (p0a <= 0.0) throw Error(ErrorKind::NullModelTargetZero, "fitted null gives the target zero probability");

  double v1 = 0.0;
  if (parametric) {
    const JointFit fit = joint_mle(sample, *family);
    if (!fit.params.empty()) r.theta_hat = fit.params[0];
    const double q_hat = target_probability((*family)(fit.params), a);
    if (q_hat <= 0.0) {
      fill_nonparametric(r, 0.0, p0a);
    } else {
      r.estimate = std::log(q_hat) - std::log(p0a);
      v1 = q_hat >= 1.0 ? 0.0 : param_variance_nuisance(sample, *family, a, fit.params);
    }
  } else {
    fill_nonparametric(r, hit_fraction(sample, a), p0a);
    v1 = r.variance;
  }

  double v2 = 0.0;
  if (family0.dimension() > 0 && !r.degenerate) {
    const ScoreTable t = score_table(family0, null_fit.params, false, 1e-3);
    const Eigen::RowVectorXd g = conditional_score(t, a);
    const auto kk = static_cast<Eigen::Index>(family0.dimension());
    Eigen::MatrixXd info = Eigen::MatrixXd::Zero(kk, kk);
    for (Index x = 0; x < t.psi.size(); ++x) {
      const double px = t.at_law[x];
      if (px <= 0.0) continue;
      Eigen::VectorXd psi(kk);
      for (Eigen::Index i = 0; i < kk; ++i) psi(i) = t.psi[x][static_cast<std::size_t>(i)];
      info += px * psi * psi.transpose();
    }
    v2 = std::max(0.0, (g * checked_inverse(info, "null Fisher information") * g.transpose())(0, 0));
  }
  if (!r.degenerate) r.variance = v1 + lambda * v2;
  set_interval(r);
  return r;
}

}  // namespace actinfo
