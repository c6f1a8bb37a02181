#pragma once

#include <doctest.h>

#include <cmath>
#include <vector>

#include "actinfo/chains.hpp"
#include "actinfo/sampling.hpp"
#include "actinfo/tilting.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))
#define REQUIRE_NEAR(a, b, tol) REQUIRE(std::abs((a) - (b)) <= (tol))

namespace testing {

using namespace actinfo;

inline SpacePtr two_states() { return StateSpace::indexed(2); }

/// P0 uniform on {0, 1}, f = (0, 1), f0 = 1.
inline TiltedFamily two_state_family() {
  auto s = two_states();
  return TiltedFamily(Distribution::uniform(s), SpecificityProfile(s, {0.0, 1.0}, 1.0));
}

inline ProposalKernel always_other() {
  Matrix q(2, 2);
  q << 0.0, 1.0, 1.0, 0.0;
  return ProposalKernel(two_states(), q);
}

inline std::vector<double> random_simplex(RandomSource& rng, std::size_t m, double floor = 0.0) {
  std::vector<double> v(m);
  double total = 0.0;
  for (auto& x : v) total += x = floor + rng.uniform();
  for (auto& x : v) x /= total;
  return v;
}

/// Random reciprocal, strongly connected proposal: a ring plus random chords,
/// with random self-mass.
inline ProposalKernel random_proposal(RandomSource& rng, const SpacePtr& space) {
  const auto m = static_cast<Eigen::Index>(space->size());
  Matrix w = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = (i + 1) % m;
    if (j != i) w(i, j) = w(j, i) = 0.2 + rng.uniform();
  }
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto i = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(m));
    const auto j = static_cast<Eigen::Index>(rng.next_u64() % static_cast<std::uint64_t>(m));
    if (i == j) continue;
    w(i, j) = 0.1 + rng.uniform();
    w(j, i) = 0.1 + rng.uniform();
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    if (rng.uniform() < 0.3) w(i, i) = rng.uniform();
    w.row(i) /= w.row(i).sum();
  }
  return ProposalKernel(space, w);
}

/// Random null with floor-bounded mass and random integer-ish specificity.
inline TiltedFamily random_family(RandomSource& rng, const SpacePtr& space) {
  const std::size_t m = space->size();
  std::vector<double> f(m);
  for (auto& v : f) v = std::floor(rng.uniform() * 6.0) / 2.0;
  f[rng.next_u64() % m] = 3.0;
  return TiltedFamily(Distribution(space, random_simplex(rng, m, 0.05)), SpecificityProfile(space, f, 3.0));
}

inline double total_variation(std::span<const double> p, std::span<const double> q) {
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

}  // namespace testing
