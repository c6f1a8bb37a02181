#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "actinfo/absorption.hpp"
#include "actinfo/deviations.hpp"
#include "actinfo/experiments.hpp"
#include "actinfo/inference.hpp"
#include "actinfo/models.hpp"
#define DOCTEST_CONFIG_DISABLE
#include "support.hpp"

using namespace actinfo;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome figure1_anchor() {
  const double ifo = build_machine({5, 0.0, 1.0, 0.0}).ifo;
  return {std::abs(ifo - 3.47) <= 0.01 && std::abs(ifo - 5.0 * std::log(2.0)) < 1e-12, fmt("I_f0=%.6f", ifo)};
}

Outcome figure2_anchor() {
  const double ifo = build_machine({5, 0.0, 0.5, 0.0}).ifo;
  return {std::abs(ifo - 5.09) <= 0.02, fmt("I_f0=%.6f", ifo)};
}

Outcome monotone_equilibrium() {
  const auto grid = uniform_grid(0.0, 10.0, 0.1);
  bool ok = grid.size() == 101;
  double worst_gap = 0.0;
  int violations = 0;
  for (double a : {-0.2, 0.0, 0.2}) {
    for (double b : {0.5, 1.0}) {
      const auto rows = figure_equilibrium_sweep({5, a, b, 0.0}, grid);
      for (std::size_t i = 1; i < rows.size(); ++i)
        if (!(rows[i].iplus > rows[i - 1].iplus)) ++violations;
      const auto far = figure_equilibrium_sweep({5, a, b, 0.0}, {50.0})[0];
      worst_gap = std::max(worst_gap, std::abs(far.iplus - far.ifo));
    }
  }
  ok = ok && violations == 0 && worst_gap < 0.05;
  return {ok, fmt("violations=%d max|I+(50)-I_f0|=%.3g", violations, worst_gap)};
}

Outcome stopped_dynamics() {
  bool ok = true;
  double worst_limit = 0.0, worst_et = 0.0;
  int violations = 0;
  for (double a : {0.2, -0.2}) {
    for (double b : {1.0, 0.5}) {
      const auto sys = build_machine({5, a, b, 2.5});
      const auto k = build_kernel(sys.p0, sys.f, 2.5, sys.q, AcceptanceRule::MoranSquareRoot);
      const auto dec = decompose(k, sys.target, sys.p0);
      const double p0a = target_probability(sys.p0, sys.target);
      const auto plain = actinfo_time_series(sys.p0, k, sys.target, 500);
      const auto stopped = actinfo_stopped_series(dec, p0a, 500);
      if (plain[0] != 0.0 || stopped[0] != 0.0) ++violations;
      for (std::size_t t = 0; t <= 500; ++t) {
        if (stopped[t] < plain[t]) ++violations;
        if (t && stopped[t] < stopped[t - 1]) ++violations;
      }
      worst_limit = std::max(worst_limit, std::abs(actinfo_stopped(dec, p0a, 100000) - sys.ifo));
      const auto series = actinfo_stopped_series(dec, p0a, truncation_horizon(dec, 1e-9));
      double et = 0.0;
      for (double i : series) et += 1.0 - p0a * std::exp(i);
      worst_et = std::max(worst_et, std::abs(et - expected_hitting_time(dec)));
    }
  }
  ok = violations == 0 && worst_limit < 1e-3 && worst_et <= 1e-6;
  return {ok, fmt("violations=%d max|I_s+(1e5)-I_f0|=%.3g max|E(T) series-exact|=%.3g", violations, worst_limit,
                  worst_et)};
}

Outcome equilibrium_correctness() {
  RandomSource rng(2024);
  double worst_balance = 0.0, worst_law = 0.0;
  for (int c = 0; c < 100; ++c) {
    const auto space = StateSpace::indexed(2 + rng.next_u64() % 63);
    const auto fam = testing::random_family(rng, space);
    const auto q = testing::random_proposal(rng, space);
    const double theta = 3.0 * rng.uniform();
    const auto law = tilt(fam, theta);
    for (auto rule : {AcceptanceRule::MetropolisHastings, AcceptanceRule::MoranSquareRoot}) {
      const auto k = build_kernel(fam.base(), fam.spec(), theta, q, rule);
      const auto pi = stationary(k);
      for (Index x = 0; x < space->size(); ++x) {
        worst_law = std::max(worst_law, std::abs(pi[x] - law[x]));
        for (Index y = 0; y < space->size(); ++y)
          worst_balance = std::max(worst_balance, std::abs(law[x] * k(x, y) - law[y] * k(y, x)));
      }
    }
  }
  return {worst_balance <= 1e-12 && worst_law <= 1e-9,
          fmt("max balance residual=%.3g max |pi-P_theta|=%.3g", worst_balance, worst_law)};
}

Outcome moran_bridge() {
  const double at_one = moran_fixation(1.0, 1000);
  const double n = 1000.0, delta = 0.1;
  const double scaled = n * moran_fixation(std::exp(delta / n), 1000);
  const double err = std::abs(scaled - (1.0 + delta / 2.0));
  return {at_one == 1.0 / n && err <= 2e-3, fmt("beta(1)*N=%.17g |N beta - (1+D/2)|=%.3g", at_one * n, err)};
}

Outcome estimator_calibration() {
  CoverageConfig cfg;
  const auto r = coverage_experiment(cfg);
  const bool ok = r.nonparametric_coverage >= 0.93 && r.nonparametric_coverage <= 0.97 &&
                  r.parametric_coverage >= 0.93 && r.parametric_coverage <= 0.97 &&
                  std::abs(r.mean_theta_hat - 1.0) <= 0.02;
  return {ok, fmt("nonparametric=%.3f parametric=%.3f mean theta_hat=%.4f", r.nonparametric_coverage,
                  r.parametric_coverage, r.mean_theta_hat)};
}

Outcome decay() {
  const double c = nonparam_rate(1.0 / 32, std::log(2.0)).rate;
  const auto rows = decay_slope({250, 500, 1000, 2000, 4000}, 1.0 / 32, 1.0 / 16);
  bool shrinking = true;
  for (std::size_t i = 1; i < rows.size(); ++i)
    shrinking = shrinking &&
                std::abs(rows[i].normalized_rate - c) < std::abs(rows[i - 1].normalized_rate - c);
  const double rel = std::abs(rows.back().normalized_rate - c) / c;
  return {std::abs(c - 0.012581) < 5e-7 && rel <= 0.10 && shrinking,
          fmt("C=%.6f rate(4000)=%.6f relative gap=%.4f", c, rows.back().normalized_rate, rel)};
}

Outcome variance_agreement() {
  auto s = StateSpace::indexed(6);
  const Distribution p0(s, {0.3, 0.25, 0.2, 0.1, 0.1, 0.05});
  const double f0 = 2.0;
  const TiltedFamily fam(p0, SpecificityProfile(s, {0, 0, 0, 0, f0, f0}, f0));
  const TargetSet a(s, {4, 5});
  const double theta = 0.8;
  const auto q = tilt(fam, theta);
  const double qa = target_probability(q, a);
  const double tstar = theta_star(q, fam);
  const double vnp = nonparam_variance(qa);
  const double vpar = param_variance(fam, a, tstar, tilted_moments(fam, tstar).variance);
  const double i_min = std::log(2.0);
  const double c = nonparam_rate(target_probability(p0, a), i_min).rate;
  const double c2 = param_rate(fam, a, i_min).rate;
  return {std::abs(vnp - vpar) <= 1e-10 && std::abs(c - c2) <= 1e-10,
          fmt("|V_np-V_par|=%.3g |C-C2|=%.3g", std::abs(vnp - vpar), std::abs(c - c2))};
}

Outcome cosmology() {
  double worst = 0.0;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    const auto r = cosmology_actinfo_bound(CosmologyModel::from_epsilon(1.0, eps));
    worst = std::max(worst, std::abs(r.value - (1.0 - std::log(eps) - std::log(2.0))));
  }
  return {worst <= 0.01, fmt("max deviation=%.3g", worst)};
}

Outcome two_sample() {
  const auto r = two_sample_calibration(TwoSampleConfig{});
  return {r.within_fraction >= 0.99, fmt("within 3 SE: %.3f of %zu", r.within_fraction, r.replicates.size())};
}

Outcome monte_carlo() {
  const auto sys = build_machine({5, 0.2, 0.5, 2.5});
  const auto k = build_kernel(sys.p0, sys.f, 2.5, sys.q, AcceptanceRule::MoranSquareRoot);
  const std::size_t t = 25, reps = 100000;
  const auto free_runs = simulate_replicates(k, sys.p0, t, nullptr, 1234, reps);
  std::vector<double> law(32, 0.0);
  for (const auto& o : free_runs) law[o.final_state] += 1.0 / reps;
  const auto exact = evolve(sys.p0, k, t);
  const double tv_state = testing::total_variation(law, exact.mass());

  const auto stopped_runs = simulate_replicates(k, sys.p0, t, &sys.target, 5678, reps);
  std::vector<double> hits(t + 2, 0.0);
  for (const auto& o : stopped_runs) hits[o.hit_time ? *o.hit_time : t + 1] += 1.0 / reps;
  const auto cdf = absorption_cdf_series(decompose(k, sys.target, sys.p0), t);
  std::vector<double> hit_law(t + 2);
  hit_law[0] = cdf[0];
  for (std::size_t s = 1; s <= t; ++s) hit_law[s] = cdf[s] - cdf[s - 1];
  hit_law[t + 1] = 1.0 - cdf[t];
  const double tv_hit = testing::total_variation(hits, hit_law);
  return {tv_state <= 0.01 && tv_hit <= 0.01, fmt("TV(X_t)=%.4f TV(T)=%.4f", tv_state, tv_hit)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "figure 1 functional information", 1, figure1_anchor},
      {2, "figure 2 functional information", 1, figure2_anchor},
      {3, "equilibrium actinfo increases to I_f0", 10, monotone_equilibrium},
      {4, "stopped search dynamics", 60, stopped_dynamics},
      {5, "equilibrium of both acceptance rules", 30, equilibrium_correctness},
      {6, "moran fixation bridge", 1, moran_bridge},
      {7, "estimator coverage", 180, estimator_calibration},
      {8, "exact significance decay", 5, decay},
      {9, "binary specificity variance and rate agreement", 1, variance_agreement},
      {10, "cosmology bound", 1, cosmology},
      {11, "two-sample null calibration", 120, two_sample},
      {12, "simulation against exact laws", 120, monte_carlo},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = o.ok && secs < c.budget_s;
    failed += ok ? 0 : 1;
    std::printf("%s  %2d  %-48s %s  [%.2fs / %.0fs]\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                c.budget_s);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
