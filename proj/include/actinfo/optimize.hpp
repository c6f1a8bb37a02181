#pragma once

// Scalar root finding and maximization shared by the estimators and rate
// computations.

#include <functional>

namespace actinfo::optimize {

using ScalarFn = std::function<double(double)>;

/// Golden-section search for the maximizer of a unimodal fn on [lo, hi],
/// stopping when the bracket is narrower than tol.
double golden_section_max(const ScalarFn& fn, double lo, double hi, double tol, int max_iter = 400);

/// Numerical derivative of fn at x restricted to [lo, hi]: five-point central
/// stencil when it fits, otherwise a second-order one-sided stencil.
double derivative(const ScalarFn& fn, double x, double lo, double hi, double rel_step = 1e-3);

/// Line maximizer used by coordinate ascent: golden-section bracketing of the
/// maximum followed by bisection on the sign of the numerical derivative,
/// which resolves the optimum well below the sqrt(eps) limit of comparing
/// function values. Returns a bound when the derivative points outward there.
double line_max(const ScalarFn& fn, double lo, double hi, double tol);

/// Bisection for the root of a strictly decreasing fn on [lo, hi] with
/// fn(lo) >= 0 >= fn(hi); stops when |fn| <= ftol or the bracket collapses.
/// Returns false if max_iter steps pass without meeting either condition.
bool bisect_decreasing(const ScalarFn& fn, double lo, double hi, double ftol, int max_iter, double& root);

}  // namespace actinfo::optimize
