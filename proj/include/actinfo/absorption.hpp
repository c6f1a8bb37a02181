#pragma once

// Searches stopped on first entry into the target: the target is clumped into
// one absorbing state and T = min{t >= 0 : X_t in A} is phase-type.

#include <vector>

#include "actinfo/chains.hpp"

namespace actinfo {

struct AbsorbingDecomposition {
  Matrix trans_na;                  // transitions among non-target states
  std::vector<double> trans_na_a;   // pi(x, A) for x outside A
  std::vector<double> start_na;     // P0 restricted to the complement
  double start_in_A = 0.0;          // P0(A), already absorbed at t = 0
  std::vector<Index> index_map;     // original index of each non-target state

  std::size_t transient_count() const noexcept { return index_map.size(); }
};

/// Throws EmptyComplement when A covers the whole space.
AbsorbingDecomposition decompose(const TransitionKernel& kernel, const TargetSet& a, const Distribution& p0);

/// P(T <= t) = 1 - P0na (Pina)^t 1. Accumulated as start_in_A plus the mass
/// absorbed at each step, which keeps the sequence exactly nondecreasing.
double absorption_cdf(const AbsorbingDecomposition& dec, std::size_t t);

/// absorption_cdf for t = 0..t_max.
std::vector<double> absorption_cdf_series(const AbsorbingDecomposition& dec, std::size_t t_max);

/// Surviving mass P0na (Pina)^t 1 for t = 0..t_max.
std::vector<double> survival_series(const AbsorbingDecomposition& dec, std::size_t t_max);

/// I_s+(theta, t) = log[P(T <= t) / P0(A)].
double actinfo_stopped(const AbsorbingDecomposition& dec, double p0a, std::size_t t);
std::vector<double> actinfo_stopped_series(const AbsorbingDecomposition& dec, double p0a, std::size_t t_max);

/// E(T) = P0na (I - Pina)^-1 1.
double expected_hitting_time(const AbsorbingDecomposition& dec);

/// Bound rho on the decay of the surviving mass: the largest row sum of Pina
/// when it is below 1, else a power-iteration estimate of its spectral radius.
double survival_decay_rate(const AbsorbingDecomposition& dec);

/// Smallest t_max with rho^t_max / (1 - rho) <= tol.
std::size_t truncation_horizon(const AbsorbingDecomposition& dec, double tol);

}  // namespace actinfo
