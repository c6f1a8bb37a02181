#include "support.hpp"

#include "actinfo/absorption.hpp"
#include "actinfo/deviations.hpp"
#include "actinfo/inference.hpp"

using namespace actinfo;
using namespace testing;

TEST_SUITE("properties") {
  TEST_CASE("kernels are reversible with the tilted law as equilibrium") {
    RandomSource rng(101);
    for (int c = 0; c < 40; ++c) {
      const auto space = StateSpace::indexed(2 + rng.next_u64() % 40);
      const auto fam = random_family(rng, space);
      const auto q = random_proposal(rng, space);
      const double theta = 3.0 * rng.uniform();
      const auto target = tilt(fam, theta);
      for (auto rule : {AcceptanceRule::MetropolisHastings, AcceptanceRule::MoranSquareRoot}) {
        const auto k = build_kernel(fam.base(), fam.spec(), theta, q, rule);
        double worst = 0.0;
        for (Index x = 0; x < space->size(); ++x)
          for (Index y = 0; y < space->size(); ++y)
            worst = std::max(worst, std::abs(target[x] * k(x, y) - target[y] * k(y, x)));
        CHECK(worst <= 1e-12);
        const auto pi = stationary(k);
        for (Index x = 0; x < space->size(); ++x) CHECK_NEAR(pi[x], target[x], 1e-9);
      }
    }
  }

  TEST_CASE("log partition is convex and tilting composes") {
    RandomSource rng(7);
    for (int c = 0; c < 30; ++c) {
      const auto space = StateSpace::indexed(2 + rng.next_u64() % 20);
      const auto fam = random_family(rng, space);
      const double t1 = 4.0 * rng.uniform(), t2 = 4.0 * rng.uniform();
      const double mid = log_partition(fam, 0.5 * (t1 + t2));
      CHECK(mid <= 0.5 * (log_partition(fam, t1) + log_partition(fam, t2)) + 1e-12);
      const TiltedFamily once(tilt(fam, t1), fam.spec());
      const auto twice = tilt(once, t2);
      const auto direct = tilt(fam, t1 + t2);
      for (Index i = 0; i < space->size(); ++i) CHECK_NEAR(twice[i], direct[i], 1e-12);
      CHECK_NEAR(log_partition(once, t2), log_partition(fam, t1 + t2) - log_partition(fam, t1), 1e-11);

      // mean of f is the slope of log M, variance its curvature
      const double h = 1e-4;
      const auto m = tilted_moments(fam, t1);
      CHECK_NEAR((log_partition(fam, t1 + h) - log_partition(fam, t1 - h)) / (2 * h), m.mean, 1e-7);
      const double curv =
          (log_partition(fam, t1 + h) - 2 * log_partition(fam, t1) + log_partition(fam, t1 - h)) / (h * h);
      CHECK_NEAR(curv, m.variance, 1e-4);
    }
  }

  TEST_CASE("equilibrium actinfo is increasing with the J K decomposition") {
    RandomSource rng(8);
    for (int c = 0; c < 30; ++c) {
      const auto space = StateSpace::indexed(3 + rng.next_u64() % 20);
      const auto fam = random_family(rng, space);
      const auto a = target_set(fam.spec());
      if (a.size() == space->size()) continue;
      double prev = 0.0;
      for (double theta = 0.25; theta <= 6.0; theta += 0.25) {
        const double cur = actinfo_equilibrium(fam, a, theta);
        CHECK(cur > prev);
        prev = cur;
        // d/dtheta I+ = E_theta[f | A] - E_theta[f] = J - K
        const auto p = tilt(fam, theta);
        double pa = 0.0, fa = 0.0;
        for (Index i : a.members()) {
          pa += p[i];
          fa += p[i] * fam.spec()[i];
        }
        const double j = fa / pa;
        const double k = tilted_moments(fam, theta).mean;
        const double h = 1e-5;
        const double slope =
            (actinfo_equilibrium(fam, a, theta + h) - actinfo_equilibrium(fam, a, theta - h)) / (2 * h);
        CHECK(j > k);
        CHECK_NEAR(slope, j - k, 1e-6);
      }
      CHECK(prev < functional_information(fam.base(), a) + 1e-12);
    }
  }

  TEST_CASE("kl divergence and additivity") {
    RandomSource rng(9);
    for (int c = 0; c < 50; ++c) {
      const auto space = StateSpace::indexed(2 + rng.next_u64() % 30);
      const Distribution p(space, random_simplex(rng, space->size(), 0.01));
      const Distribution q(space, random_simplex(rng, space->size()));
      CHECK(kl_divergence(q, p) >= 0.0);
      CHECK(kl_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-15));
      std::vector<Index> left, right;
      for (Index i = 0; i < space->size(); ++i) (rng.uniform() < 0.5 ? left : right).push_back(i);
      if (left.empty() || right.empty()) continue;
      const TargetSet l(space, left), r(space, right);
      CHECK_NEAR(target_probability(q, l) + target_probability(q, r), 1.0, 1e-12);
      CHECK(l.complement().members().size() == right.size());
    }
  }

  TEST_CASE("evolution composes and preserves mass") {
    RandomSource rng(10);
    for (int c = 0; c < 20; ++c) {
      const auto space = StateSpace::indexed(2 + rng.next_u64() % 30);
      const auto fam = random_family(rng, space);
      const auto k = build_kernel(fam.base(), fam.spec(), 1.5, random_proposal(rng, space),
                                  AcceptanceRule::MoranSquareRoot);
      const std::size_t s = rng.next_u64() % 20, t = rng.next_u64() % 20;
      const auto direct = evolve(fam.base(), k, s + t);
      const auto staged = evolve(evolve(fam.base(), k, s), k, t);
      double mass = 0.0;
      for (Index i = 0; i < space->size(); ++i) {
        CHECK_NEAR(direct[i], staged[i], 1e-12);
        mass += direct[i];
      }
      CHECK_NEAR(mass, 1.0, 1e-12);
    }
  }

  TEST_CASE("stopping is conservative") {
    RandomSource rng(11);
    for (int c = 0; c < 20; ++c) {
      const auto space = StateSpace::indexed(3 + rng.next_u64() % 25);
      const auto fam = random_family(rng, space);
      const auto a = target_set(fam.spec());
      if (a.size() == space->size()) continue;
      const auto k = build_kernel(fam.base(), fam.spec(), 2.0, random_proposal(rng, space),
                                  AcceptanceRule::MetropolisHastings);
      const auto dec = decompose(k, a, fam.base());
      const double p0a = target_probability(fam.base(), a);
      const auto stopped = actinfo_stopped_series(dec, p0a, 60);
      const auto plain = actinfo_time_series(fam.base(), k, a, 60);
      for (std::size_t t = 0; t <= 60; ++t) {
        CHECK(stopped[t] >= plain[t] - 1e-12);
        if (t) CHECK(stopped[t] >= stopped[t - 1]);
      }
    }
  }

  TEST_CASE("mle tilt recovers the mean and respects the boundary") {
    RandomSource rng(12);
    for (int c = 0; c < 20; ++c) {
      const auto space = StateSpace::indexed(3 + rng.next_u64() % 15);
      const auto fam = random_family(rng, space);
      const double theta = 2.0 * rng.uniform();
      const double m = tilted_moments(fam, theta).mean;
      CHECK_NEAR(tilt_matching_mean(fam, m), theta, 1e-6);
      CHECK(tilt_matching_mean(fam, tilted_moments(fam, 0.0).mean - 0.1) == 0.0);
      CHECK(std::isinf(tilt_matching_mean(fam, fam.spec().max_value())));
    }
  }

  TEST_CASE("legendre rate is concave in phi and maximized at the matching tilt") {
    RandomSource rng(13);
    for (int c = 0; c < 15; ++c) {
      const auto space = StateSpace::indexed(3 + rng.next_u64() % 15);
      const auto fam = random_family(rng, space);
      const auto a = target_set(fam.spec());
      if (a.size() == space->size()) continue;
      const double p0a = target_probability(fam.base(), a);
      const double i_min = 0.5 * functional_information(fam.base(), a);
      const auto r = param_rate(fam, a, i_min);
      const double m = tilted_moments(fam, *r.theta_min).mean;
      const auto g = [&](double phi) { return phi * m - log_partition(fam, phi); };
      CHECK_NEAR(g(*r.phi_star), r.rate, 1e-10);
      for (double d : {-0.3, -0.01, 0.01, 0.3}) CHECK(g(*r.phi_star + d) <= r.rate + 1e-12);
      for (double phi = 0.0; phi < 5.0; phi += 0.5) CHECK(g(phi + 0.25) >= 0.5 * (g(phi) + g(phi + 0.5)) - 1e-12);
      CHECK(r.rate >= 0.0);
      CHECK(nonparam_rate(p0a, i_min).rate > 0.0);
    }
  }

  TEST_CASE("nonparametric rate is increasing in the threshold and bias") {
    for (double p0a : {1e-4, 1.0 / 32, 0.2, 0.6}) {
      double prev = 0.0;
      const double top = -std::log(p0a);
      for (int i = 1; i < 50; ++i) {
        const double i_min = top * i / 50.0;
        const double c = nonparam_rate(p0a, i_min).rate;
        CHECK(c > prev);
        CHECK(nonparam_rate(p0a, i_min, -0.05).rate > c);
        prev = c;
      }
      CHECK(nonparam_rate(p0a, 0.0).rate == 0.0);
    }
  }
}
