#include "support.hpp"

#include "actinfo/models.hpp"

using namespace actinfo;
using namespace testing;

TEST_SUITE("chains") {
  TEST_CASE("proposal validation") {
    auto s = two_states();
    Matrix bad(2, 2);
    bad << 0.5, 0.6, 1.0, 0.0;
    CHECK_THROWS_AS(ProposalKernel(s, bad), Error);
    Matrix disconnected(2, 2);
    disconnected << 1.0, 0.0, 0.0, 1.0;
    CHECK_THROWS_AS(ProposalKernel(s, disconnected), Error);
    auto s3 = StateSpace::indexed(3);
    Matrix cycle(3, 3);
    cycle << 0, 1, 0, 0, 0, 1, 1, 0, 0;
    const ProposalKernel one_way(s3, cycle);
    CHECK_FALSE(one_way.is_reciprocal());
    CHECK_THROWS_AS(build_kernel(Distribution::uniform(s3), SpecificityProfile(s3, {0, 0, 1}, 1), 1.0, one_way,
                                 AcceptanceRule::MoranSquareRoot),
                    Error);
    CHECK_NOTHROW(build_kernel(Distribution::uniform(s3), SpecificityProfile(s3, {0, 0, 1}, 1), 1.0, one_way,
                               AcceptanceRule::MetropolisHastings));
  }

  TEST_CASE("two-state kernels") {
    const auto fam = two_state_family();
    const auto q = always_other();
    const auto mh = build_kernel(fam.base(), fam.spec(), 1.0, q, AcceptanceRule::MetropolisHastings);
    CHECK(mh(0, 0) == 0.0);
    CHECK(mh(0, 1) == 1.0);
    CHECK_NEAR(mh(1, 0), std::exp(-1.0), 1e-15);
    CHECK_NEAR(mh(1, 1), 1.0 - std::exp(-1.0), 1e-15);
    const auto moran = build_kernel(fam.base(), fam.spec(), 1.0, q, AcceptanceRule::MoranSquareRoot);
    CHECK_NEAR(moran(0, 1), 1.0, 1e-15);
    CHECK_NEAR(moran(1, 0), std::exp(-1.0), 1e-15);

    const auto pi = stationary(mh);
    CHECK_NEAR(pi[0], 1.0 / (1.0 + std::exp(1.0)), 1e-14);
    CHECK_NEAR(pi[1], std::exp(1.0) / (1.0 + std::exp(1.0)), 1e-14);

    const auto p1 = evolve(fam.base(), mh, 1);
    CHECK_NEAR(p1[0], 0.5 * std::exp(-1.0), 1e-15);
    CHECK_NEAR(p1[1], 1.0 - 0.5 * std::exp(-1.0), 1e-15);
    CHECK(evolve(fam.base(), mh, 0)[0] == 0.5);
  }

  TEST_CASE("zero tilt with symmetric proposal is the proposal") {
    auto s = StateSpace::indexed(4);
    Matrix q(4, 4);
    q << 0.2, 0.3, 0.0, 0.5, 0.3, 0.1, 0.6, 0.0, 0.0, 0.6, 0.4, 0.0, 0.5, 0.0, 0.0, 0.5;
    const ProposalKernel prop(s, q);
    const auto k = build_kernel(Distribution::uniform(s), SpecificityProfile(s, {0, 1, 2, 3}, 3), 0.0, prop,
                                AcceptanceRule::MetropolisHastings);
    CHECK(k.rows() == q);
    const auto pi = stationary(k);
    for (Index i = 0; i < 4; ++i) CHECK_NEAR(pi[i], 0.25, 1e-14);
    const auto r = reference_null(prop);
    for (Index i = 0; i < 4; ++i) CHECK_NEAR(r[i], 0.25, 1e-14);
    const TargetSet a(s, {3});
    for (std::size_t t : {0u, 1u, 17u}) CHECK_NEAR(actinfo_at_time(pi, k, a, t), 0.0, 1e-14);
  }

  TEST_CASE("zero null mass is rejected") {
    auto s = two_states();
    CHECK_THROWS_AS(build_kernel(Distribution(s, {1.0, 0.0}), SpecificityProfile(s, {0, 1}, 1), 1.0, always_other(),
                                 AcceptanceRule::MetropolisHastings),
                    Error);
  }

  TEST_CASE("reference null of the machine proposal") {
    const auto sys = build_machine({5, 0.0, 0.5, 0.0});
    CHECK_NEAR(sys.p0[31], 0.0625 / 10.125, 1e-14);
    const auto uniform = build_machine({5, 0.0, 1.0, 0.0});
    for (Index i = 0; i < 32; ++i) CHECK_NEAR(uniform.p0[i], 1.0 / 32.0, 1e-14);
    CHECK_NEAR(reference_null(always_other())[0], 0.5, 1e-15);
  }

  TEST_CASE("time series converges to the equilibrium actinfo") {
    const auto sys = build_machine({5, 0.2, 1.0, 0.0});
    const auto k = build_kernel(sys.p0, sys.f, 2.0, sys.q, AcceptanceRule::MoranSquareRoot);
    const auto series = actinfo_time_series(sys.p0, k, sys.target, 3000);
    CHECK(series[0] == 0.0);
    CHECK_NEAR(series.back(), actinfo_equilibrium(sys.family, sys.target, 2.0), 1e-6);
    CHECK(series[40] == actinfo_at_time(sys.p0, k, sys.target, 40));
    const auto pt = evolve(sys.p0, k, 10000);
    CHECK(total_variation(pt.mass(), stationary(k).mass()) < 1e-8);
  }

  TEST_CASE("moran fixation") {
    CHECK(moran_fixation(1.0, 100) == doctest::Approx(0.01).epsilon(1e-15));
    CHECK_NEAR(moran_fixation(1e9, 50), 1.0 - 1e-9, 1e-12);
    const double n = 1000.0;
    CHECK_NEAR(n * moran_fixation(std::exp(0.1 / n), 1000), 1.05, 1e-3);
    CHECK_NEAR(moran_fixation(1.0 + 1e-12, 100), 0.01, 1e-9);
    CHECK(moran_fixation(0.5, 10) < 0.1);
  }

  TEST_CASE("acceptance rule names") {
    CHECK(std::string(to_string(AcceptanceRule::MetropolisHastings)) == "metropolis-hastings");
    CHECK(std::string(to_string(AcceptanceRule::MoranSquareRoot)) == "moran-square-root");
  }
}
