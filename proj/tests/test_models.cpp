#include "support.hpp"

#include <algorithm>

#include "actinfo/models.hpp"

using namespace actinfo;
using namespace testing;

TEST_SUITE("models") {
  TEST_CASE("cosmology interval probability") {
    const CosmologyModel m(std::log(2.0), std::log(4.0));
    CHECK_NEAR(cosmology_interval_prob(m, 1.0), 0.25, 1e-15);
    CHECK(cosmology_interval_prob(m, 1e-3) < 1e-100);
    CHECK(cosmology_interval_prob(m, 1e12) < 1e-11);
    const CosmologyModel narrow(1.0, 1.02);
    CHECK_NEAR(narrow.epsilon(), 0.0099, 1e-4);
    CHECK_NEAR(cosmology_interval_prob(narrow, 1.01), 2.0 * narrow.epsilon() * std::exp(-1.0), 1e-5);
    CHECK_THROWS_AS(CosmologyModel(2.0, 1.0), Error);
  }

  TEST_CASE("cosmology bound") {
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      const auto r = cosmology_actinfo_bound(CosmologyModel::from_epsilon(1.0, eps));
      CHECK(std::abs(r.value - (1.0 - std::log(eps) - std::log(2.0))) < 0.01);
      CHECK(r.approximation_valid);
      CHECK(r.xi_star > 0.9);
      CHECK(r.xi_star < 1.1);
    }
    const auto wide = cosmology_actinfo_bound(CosmologyModel(0.05, 1.95));
    CHECK_FALSE(wide.approximation_valid);
    CHECK(std::isfinite(wide.value));
  }

  TEST_CASE("student model") {
    Eigen::MatrixXd sigma(1, 1);
    sigma << 1.0;
    const StudentModel m({0.0}, sigma, {0.0, 1.0}, 1.0, {1.0, 0.0}, 2.0);
    CHECK(m.mean(2.0) == 2.0);
    CHECK(m.variance(2.0) == 2.0);
    CHECK_NEAR(student_pass_probability(m, 2.0), 0.5, 1e-15);
    CHECK_NEAR(student_pass_probability(m, 0.0), 0.0786496035251426, 1e-14);
    CHECK(student_pass_probability(m, 0.0) == student_pass_probability(m.untuned(), 5.0));
    CHECK(student_actinfo(m, 0.0) == 0.0);
    CHECK(student_actinfo(m.untuned(), 3.0) == 0.0);
    CHECK_NEAR(student_actinfo(m, 2.0), 1.84960550993325, 1e-12);

    Eigen::MatrixXd indefinite(2, 2);
    indefinite << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(StudentModel({0.0, 0.0}, indefinite, {0, 1, 1}, 1.0, {1, 0, 0}, 2.0), Error);
    Eigen::MatrixXd asym(2, 2);
    asym << 1.0, 0.5, 0.0, 1.0;
    CHECK_THROWS_AS(StudentModel({0.0, 0.0}, asym, {0, 1, 1}, 1.0, {1, 0, 0}, 2.0), Error);
    CHECK_THROWS_AS(StudentModel({0.0}, sigma, {0, 1}, 0.0, {1, 0}, 2.0), Error);
  }

  TEST_CASE("machine construction") {
    const auto sys = build_machine({5, 0.2, 0.5, 0.0});
    CHECK(sys.space->size() == 32);
    CHECK(sys.space->label(31) == "11111");
    CHECK(sys.space->label(1) == "10000");
    CHECK(sys.f[31] == 1.0);
    CHECK_NEAR(sys.f[7], 0.6, 1e-15);
    CHECK(sys.target.size() == 1);
    CHECK(sys.target.contains(31));
    CHECK(sys.q.is_reciprocal());
    for (Eigen::Index i = 0; i < 32; ++i) CHECK_NEAR(sys.q.rows().row(i).sum(), 1.0, 1e-15);
    CHECK_NEAR(sys.ifo, 5.08759633523238, 1e-12);
    CHECK_NEAR(build_machine({5, 0.0, 1.0, 0.0}).ifo, 5.0 * std::log(2.0), 1e-12);
    const auto top = build_machine({5, 0.2, 1.0, 0.0});
    CHECK(std::ranges::equal(top.target.members(), stringent_target(top.f).members()));
    CHECK_THROWS_AS(build_machine({5, 0.3, 1.0, 0.0}), Error);
    CHECK_THROWS_AS(build_machine({13, 0.0, 1.0, 0.0}), Error);
    CHECK_THROWS_AS(build_machine({5, 0.0, 0.0, 0.0}), Error);
    CHECK_NOTHROW(build_machine({5, 0.2, 1.0, 0.0}));
  }

  TEST_CASE("figure sweeps") {
    const auto grid = uniform_grid(0.0, 10.0, 0.1);
    REQUIRE(grid.size() == 101);
    CHECK(grid.back() == doctest::Approx(10.0));
    const auto low = figure_equilibrium_sweep({5, -0.2, 1.0, 0.0}, grid);
    const auto mid = figure_equilibrium_sweep({5, 0.0, 1.0, 0.0}, grid);
    const auto high = figure_equilibrium_sweep({5, 0.2, 1.0, 0.0}, grid);
    CHECK(low[0].iplus == 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      CHECK(low[i].iplus > mid[i].iplus);
      CHECK(mid[i].iplus > high[i].iplus);
      CHECK(high[i].iplus > high[i - 1].iplus);
      CHECK(low[i].iplus < low[i].ifo);
    }
    CHECK_NEAR(figure_equilibrium_sweep({5, 0.0, 0.5, 0.0}, {60.0})[0].iplus, 5.08759633523238, 1e-3);

    for (double a : {0.2, -0.2}) {
      for (double b : {1.0, 0.5}) {
        const auto rows = figure_time_sweep({5, a, b, 2.5}, 500);
        REQUIRE(rows.size() == 501);
        CHECK(rows[0].iplus == 0.0);
        CHECK(rows[0].iplus_stopped == 0.0);
        for (const auto& r : rows) CHECK(r.iplus_stopped >= r.iplus - 1e-12);
      }
    }
    // states are harder to leave when a is small, so stopping adds less
    const auto small_a = figure_time_sweep({5, -0.2, 1.0, 2.5}, 500).back();
    const auto large_a = figure_time_sweep({5, 0.2, 1.0, 2.5}, 500).back();
    CHECK(small_a.iplus_stopped - small_a.iplus < large_a.iplus_stopped - large_a.iplus);
  }

  TEST_CASE("machine families") {
    const auto fam = machine_family(5, 0.2);
    const auto sys = build_machine({5, 0.2, 0.5, 0.0});
    const auto p = fam(std::vector<double>{1.3, 0.5});
    const auto ref = tilt(sys.family, 1.3);
    for (Index i = 0; i < 32; ++i) CHECK_NEAR(p[i], ref[i], 1e-14);
    const auto null = machine_null_family(5)(std::vector<double>{0.5});
    for (Index i = 0; i < 32; ++i) CHECK_NEAR(null[i], sys.p0[i], 1e-15);
  }
}
