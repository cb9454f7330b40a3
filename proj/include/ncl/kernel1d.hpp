#pragma once

#include <cmath>

#include "ncl/interval.hpp"

namespace ncl {

/// Fractional order s in (0,1).
struct FractionalOrder {
  double s;

  explicit FractionalOrder(double s_) : s(s_) {
    if (!(s > 0.0 && s < 1.0)) throw validation_error("fractional order requires 0 < s < 1");
  }
};

namespace detail {

// Antiderivative building block t^{1-s}; t >= 0 by construction.
inline double pow1ms(double t, double s) { return std::pow(t, 1.0 - s); }

}  // namespace detail

/// Interaction of two disjoint open intervals under the kernel |x-y|^{-1-s},
/// by the closed-form antiderivative. Infinite outer endpoints are handled by
/// explicit limit formulas; the pair (-inf, .) x (., +inf) diverges.
inline double l_interval(FractionalOrder fo, Interval I, Interval J) {
  if (I.empty() || J.empty()) return 0.0;
  // order: J = (a,b) to the left, I = (c,d) to the right
  if (J.lo > I.lo || (J.lo == I.lo && J.hi > I.hi)) std::swap(I, J);
  const double a = J.lo, b = J.hi, c = I.lo, d = I.hi;
  if (b > c) throw validation_error("intervals overlap");
  const double s = fo.s;
  const double norm = s * (1.0 - s);
  const bool a_inf = std::isinf(a), d_inf = std::isinf(d);
  using detail::pow1ms;
  if (a_inf && d_inf) throw numeric_error("divergent interaction of two outward-infinite intervals");
  if (a_inf) return (pow1ms(d - b, s) - pow1ms(c - b, s)) / norm;
  if (d_inf) return (pow1ms(c - a, s) - pow1ms(c - b, s)) / norm;
  return (pow1ms(c - a, s) - pow1ms(c - b, s) - pow1ms(d - a, s) + pow1ms(d - b, s)) / norm;
}

/// Bilinear extension over interval-set components.
inline double l_sets_1d(FractionalOrder fo, const IntervalSet& A, const IntervalSet& B) {
  if (A.intersects(B)) throw validation_error("interval sets overlap");
  double total = 0.0;
  for (const Interval& a : A.parts())
    for (const Interval& b : B.parts()) total += l_interval(fo, a, b);
  return total;
}

/// Relative interaction: all (A x B) pairs except those entirely outside the domain.
inline double per_s_omega_1d(FractionalOrder fo, const Domain1D& om, const IntervalSet& A,
                             const IntervalSet& B) {
  const Interval w = om.as_interval();
  const IntervalSet a_in = A.intersect(w);
  const IntervalSet b_in = B.intersect(w);
  const IntervalSet a_out = A.subtract(IntervalSet({w}));
  const IntervalSet b_out = B.subtract(IntervalSet({w}));
  if (A.intersects(B)) throw validation_error("interval sets overlap");
  return l_sets_1d(fo, a_in, b_in) + l_sets_1d(fo, a_in, b_out) + l_sets_1d(fo, a_out, b_in);
}

/// Fractional perimeter of a single set relative to the domain.
inline double per_s_1d(FractionalOrder fo, const Domain1D& om, const IntervalSet& E) {
  return per_s_omega_1d(fo, om, E, E.complement());
}

}  // namespace ncl
