#pragma once

// Local polynomial interpolation and bracketed root solving used for chart
// synchronization and regridding.

#include <cstddef>
#include <span>

namespace hmcf::interp {

/// Lagrange polynomial through (xs[k], ys[k]) evaluated at x. Nodes must be distinct.
double lagrange(std::span<const double> xs, std::span<const double> ys, double x);

/// Lagrange polynomial through equally spaced samples v[k] at abscissae k (index units),
/// evaluated at the fractional index s.
double lagrange_uniform(std::span<const double> v, double s);

/// Root of a continuous function on [lo, hi] with a sign change. Throws
/// Error(InvalidArgument) when the bracket does not straddle a root.
template <class F>
double solve_bracketed(F&& fn, double lo, double hi);

}  // namespace hmcf::interp

#include <boost/math/tools/roots.hpp>
#include <cstdint>

#include "hmcf/error.hpp"

namespace hmcf::interp {

template <class F>
double solve_bracketed(F&& fn, double lo, double hi) {
  const double flo = fn(lo);
  const double fhi = fn(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "root not bracketed");
  }
  std::uintmax_t iters = 200;
  const auto [r0, r1] = boost::math::tools::toms748_solve(
      fn, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (r0 + r1);
}

}  // namespace hmcf::interp
