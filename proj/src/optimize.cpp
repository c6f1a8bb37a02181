#include "actinfo/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace actinfo::optimize {

double golden_section_max(const ScalarFn& fn, double lo, double hi, double tol, int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  // The endpoints are never evaluated inside the loop; compare them too so a
  // monotone objective returns its boundary maximizer.
  double best = fc >= fd ? c : d;
  double fbest = std::max(fc, fd);
  const double flo = fn(lo), fhi = fn(hi);
  if (flo > fbest) { best = lo; fbest = flo; }
  if (fhi > fbest) best = hi;
  return best;
}

double derivative(const ScalarFn& fn, double x, double lo, double hi, double rel_step) {
  const double h = rel_step * (1.0 + std::abs(x));
  if (x - 2 * h >= lo && x + 2 * h <= hi)
    return (-fn(x + 2 * h) + 8 * fn(x + h) - 8 * fn(x - h) + fn(x - 2 * h)) / (12 * h);
  if (x + 2 * h <= hi)
    return (-3 * fn(x) + 4 * fn(x + h) - fn(x + 2 * h)) / (2 * h);
  return (3 * fn(x) - 4 * fn(x - h) + fn(x - 2 * h)) / (2 * h);
}

double line_max(const ScalarFn& fn, double lo, double hi, double tol) {
  if (!(hi > lo)) return lo;
  const double width = hi - lo;
  const double coarse = std::max(1e-4 * width, 10 * tol);
  const double x = golden_section_max(fn, lo, hi, coarse);
  double a = std::max(lo, x - coarse);
  double b = std::min(hi, x + coarse);
  const double da = derivative(fn, a, lo, hi);
  const double db = derivative(fn, b, lo, hi);
  if (a == lo && da <= 0.0) return lo;
  if (b == hi && db >= 0.0) return hi;
  if (!(da > 0.0 && db < 0.0)) return x;
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double dm = derivative(fn, m, lo, hi);
    if (dm > 0.0) a = m; else if (dm < 0.0) b = m; else return m;
  }
  return 0.5 * (a + b);
}

bool bisect_decreasing(const ScalarFn& fn, double lo, double hi, double ftol, int max_iter, double& root) {
  double a = lo, b = hi;
  for (int it = 0; it < max_iter; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = fn(m);
    if (std::abs(fm) <= ftol || !(m > a && m < b)) {
      root = m;
      return true;
    }
    if (fm > 0.0) a = m; else b = m;
  }
  root = 0.5 * (a + b);
  return std::abs(fn(root)) <= ftol;
}

}  // namespace actinfo::optimize
