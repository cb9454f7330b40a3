#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "ncl/energy.hpp"

namespace ncl {

struct GapScanRow {
  double eps = 0.0;
  double f_original = 0.0;
  double f_competitor = 0.0;
  double gap_direct = 0.0;
  double gap_formula = 0.0;
  bool below_eps0 = false;
};

/// Smallest admissible strip-width threshold with its two 1D constants.
struct EpsilonZeroEstimate {
  double value = 0.0;
  double c0_const = 0.0;  // (2 - 2^{1-s}) / (s(1-s))
  double c1_const = 0.0;  // 2^{1+s} / (s r^s)
};

/// Width threshold below which the one-sided strip strictly reduces the energy:
/// min of the distance to the domain boundary, the pure-phase radius r, and
/// (|alpha_0| C0 / (sigma_01 C1))^{1/s}. Requires alpha_0 < 0.
inline EpsilonZeroEstimate epsilon_zero_1d(FractionalOrder fo, const SigmaWeights& sw, double r,
                                           double dist_to_boundary) {
  const AlphaWeights aw = alphas_from_sigmas(sw);
  if (!(aw.a0 < 0.0))
    throw validation_error("strip threshold needs alpha_0 < 0");
  if (!(r > 0.0)) throw validation_error("pure-phase radius must be positive");
  const double s = fo.s;
  EpsilonZeroEstimate e;
  e.c0_const = (2.0 - std::pow(2.0, 1.0 - s)) / (s * (1.0 - s));
  e.c1_const = std::isinf(r) ? 0.0 : std::pow(2.0, 1.0 + s) / (s * std::pow(r, s));
  const double third =
      e.c1_const == 0.0 ? inf : std::pow(-aw.a0 * e.c0_const / (sw.z01 * e.c1_const), 1.0 / s);
  e.value = std::min(std::min(dist_to_boundary, r), third);
  return e;
}

// ---- competitor construction ----

/// One-sided strip competitor: relabel a strip carved out of phase +1 to phase 0.
/// The two-sided variant accepts any region inside (E_{-1} u E_{+1}) n omega.
inline Partition1D build_strip_competitor(const Partition1D& p, const Interval& strip,
                                          const Domain1D& om, bool two_sided = false) {
  if (strip.empty()) return p;
  if (!(om.a <= strip.lo && strip.hi <= om.b))
    throw validation_error("strip leaves the domain");
  if (two_sided) {
    const IntervalSet allowed =
        p.phase_set(PhaseLabel::minus).unite(p.phase_set(PhaseLabel::plus));
    if (!IntervalSet({strip}).subtract(allowed).empty())
      throw validation_error("strip not inside phases -1 and +1");
    return p.relabel(strip, PhaseLabel::zero);
  }
  const IntervalSet plus = p.phase_set(PhaseLabel::plus);
  if (!IntervalSet({strip}).subtract(plus).empty())
    throw validation_error("strip not inside phase +1");
  return p.relabel(strip, PhaseLabel::zero);
}

inline GridPartition2D build_strip_competitor(const GridPartition2D& g, const CellSet& strip,
                                              bool two_sided = false) {
  if (strip.empty()) return g;
  if (!strip.subtract(g.omega()).empty()) throw validation_error("strip leaves omega");
  if (two_sided) {
    CellSet rest = strip.subtract(g.phase_set(PhaseLabel::plus))
                       .subtract(g.phase_set(PhaseLabel::minus));
    if (!rest.empty()) throw validation_error("strip not inside phases -1 and +1");
  } else {
    if (!strip.subtract(g.phase_set(PhaseLabel::plus)).empty())
      throw validation_error("strip not inside phase +1");
  }
  return g.relabel(strip, PhaseLabel::zero);
}

// ---- closed-form / quadrature gap formulas ----

/// Energy drop of the one-sided strip:
///   -2 alpha_0 L(A, E_{-1}) + sigma_01 [ L(A, E_1^c) - L(A, E_1 \ A) ].
inline double gap_formula_one_sided(FractionalOrder fo, const SigmaWeights& sw,
                                    const Partition1D& p, const Interval& strip) {
  const AlphaWeights aw = alphas_from_sigmas(sw);
  const IntervalSet A({strip});
  const IntervalSet em1 = p.phase_set(PhaseLabel::minus);
  const IntervalSet e1 = p.phase_set(PhaseLabel::plus);
  if (!A.subtract(e1).empty()) throw validation_error("strip not inside phase +1");
  return -2.0 * aw.a0 * l_sets_1d(fo, A, em1) +
         sw.z01 * (l_sets_1d(fo, A, e1.complement()) - l_sets_1d(fo, A, e1.subtract(A)));
}

inline double gap_formula_one_sided(const OffsetWeightTable& tab, const SigmaWeights& sw,
                                    const GridPartition2D& g, const CellSet& strip) {
  const AlphaWeights aw = alphas_from_sigmas(sw);
  const CellSet em1 = g.phase_set(PhaseLabel::minus);
  const CellSet e1 = g.phase_set(PhaseLabel::plus);
  if (!strip.subtract(e1).empty()) throw validation_error("strip not inside phase +1");
  const CellSet e1c = g.phase_complement(PhaseLabel::plus);
  return -2.0 * aw.a0 * detail::l_grid_unchecked(tab, strip, em1) +
         sw.z01 * (detail::l_grid_unchecked(tab, strip, e1c) -
                   detail::l_grid_unchecked(tab, strip, e1.subtract(strip)));
}

/// Energy drop of relabeling A inside (E_{-1} u E_{+1}) n omega:
///   sigma_m10 [ L(E_{-1} n A, E_{-1}^c) - L(E_{-1} n A, E_{-1} \ A) ]
/// + sigma_01  [ L(E_{1} n A, E_{1}^c)  - L(E_{1} n A, E_{1} \ A) ]
/// - 2 alpha_0 [ L(E_{-1} n A, E_1 n A) + L(E_{-1} n A, E_1 \ A) + L(E_1 n A, E_{-1} \ A) ].
inline double gap_formula_two_sided(FractionalOrder fo, const SigmaWeights& sw,
                                    const Partition1D& p, const IntervalSet& A) {
  const AlphaWeights aw = alphas_from_sigmas(sw);
  const IntervalSet em1 = p.phase_set(PhaseLabel::minus);
  const IntervalSet e1 = p.phase_set(PhaseLabel::plus);
  if (!A.subtract(em1.unite(e1)).empty())
    throw validation_error("region not inside phases -1 and +1");
  const IntervalSet am = em1.intersect(A), ap = e1.intersect(A);
  const IntervalSet rm = em1.subtract(A), rp = e1.subtract(A);
  const double t_m = l_sets_1d(fo, am, em1.complement()) - l_sets_1d(fo, am, rm);
  const double t_p = l_sets_1d(fo, ap, e1.complement()) - l_sets_1d(fo, ap, rp);
  const double cross =
      l_sets_1d(fo, am, ap) + l_sets_1d(fo, am, rp) + l_sets_1d(fo, ap, rm);
  return sw.m10 * t_m + sw.z01 * t_p - 2.0 * aw.a0 * cross;
}

inline double gap_formula_two_sided(const OffsetWeightTable& tab, const SigmaWeights& sw,
                                    const GridPartition2D& g, const CellSet& A) {
  const AlphaWeights aw = alphas_from_sigmas(sw);
  const CellSet em1 = g.phase_set(PhaseLabel::minus);
  const CellSet e1 = g.phase_set(PhaseLabel::plus);
  if (!A.subtract(em1).subtract(e1).empty())
    throw validation_error("region not inside phases -1 and +1");
  const CellSet am = A.subtract(e1);   // E_{-1} n A
  const CellSet ap = A.subtract(em1);  // E_{+1} n A
  const CellSet rm = em1.subtract(A), rp = e1.subtract(A);
  using detail::l_grid_unchecked;
  const double t_m = l_grid_unchecked(tab, am, g.phase_complement(PhaseLabel::minus)) -
                     l_grid_unchecked(tab, am, rm);
  const double t_p = l_grid_unchecked(tab, ap, g.phase_complement(PhaseLabel::plus)) -
                     l_grid_unchecked(tab, ap, rp);
  const double cross = l_grid_unchecked(tab, am, ap) + l_grid_unchecked(tab, am, rp) +
                       l_grid_unchecked(tab, ap, rm);
  return sw.m10 * t_m + sw.z01 * t_p - 2.0 * aw.a0 * cross;
}

// ---- scans ----

namespace detail {

/// Pure-phase radius around a breakpoint: distance to the neighboring breakpoints
/// (infinite when x0 is the only one).
inline double pure_phase_radius(const Partition1D& p, double x0) {
  double r = inf;
  for (double x : p.breakpoints())
    if (x != x0) r = std::min(r, std::abs(x - x0));
  return r;
}

}  // namespace detail

inline std::vector<GapScanRow> scan_gap(FractionalOrder fo, const SigmaWeights& sw,
                                        const Partition1D& p, const Domain1D& om, double x0,
                                        const std::vector<double>& eps_list) {
  if (eps_list.empty()) throw validation_error("eps_list must not be empty");
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] > 0.0)) throw validation_error("eps_list entries must be positive");
    if (k > 0 && !(eps_list[k - 1] < eps_list[k]))
      throw validation_error("eps_list must be sorted increasing");
  }
  const AlphaWeights aw = alphas_from_sigmas(sw);
  double eps0 = inf;
  if (aw.a0 < 0.0) {
    const double r = detail::pure_phase_radius(p, x0);
    const double dist = std::min(x0 - om.a, om.b - x0);
    eps0 = epsilon_zero_1d(fo, sw, r, dist).value;
  }
  const double f0 = f_s(fo, sw, p, om).total;
  std::vector<GapScanRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    const Interval strip = strip_region_1d(p, x0, eps);
    const Partition1D q = build_strip_competitor(p, strip, om);
    GapScanRow row;
    row.eps = eps;
    row.f_original = f0;
    row.f_competitor = f_s(fo, sw, q, om).total;
    row.gap_direct = row.f_original - row.f_competitor;
    row.gap_formula = gap_formula_one_sided(fo, sw, p, strip);
    row.below_eps0 = aw.a0 < 0.0 && eps < eps0;
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<GapScanRow> scan_gap(const OffsetWeightTable& tab, const SigmaWeights& sw,
                                        const GridPartition2D& g, const LipschitzGraph& psi,
                                        const std::vector<double>& eps_list) {
  if (eps_list.empty()) throw validation_error("eps_list must not be empty");
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] > 0.0)) throw validation_error("eps_list entries must be positive");
    if (k > 0 && !(eps_list[k - 1] < eps_list[k]))
      throw validation_error("eps_list must be sorted increasing");
  }
  const AlphaWeights aw = alphas_from_sigmas(sw);
  // no closed-form threshold on grids; flag with the generic caps
  const double eps0 = std::min(0.5, psi.R() / 2.0);
  const double f0 = f_s(tab, sw, g).total;
  std::vector<GapScanRow> rows;
  rows.reserve(eps_list.size());
  for (double eps : eps_list) {
    const CellSet strip = strip_region_2d(g, psi, eps);
    const GridPartition2D q = build_strip_competitor(g, strip);
    GapScanRow row;
    row.eps = eps;
    row.f_original = f0;
    row.f_competitor = f_s(tab, sw, q).total;
    row.gap_direct = row.f_original - row.f_competitor;
    row.gap_formula = gap_formula_one_sided(tab, sw, g, strip);
    row.below_eps0 = aw.a0 < 0.0 && eps < eps0;
    rows.push_back(row);
  }
  return rows;
}

/// Least-squares power-law fit of the direct gaps on log-log axes.
struct GapExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  int used = 0;
  int excluded = 0;
};

inline GapExponentFit fit_gap_exponent(const std::vector<GapScanRow>& rows) {
  std::vector<double> xs, ys;
  int excluded = 0;
  for (const GapScanRow& r : rows) {
    if (r.gap_direct > 0.0) {
      xs.push_back(std::log(r.eps));
      ys.push_back(std::log(r.gap_direct));
    } else {
      ++excluded;
    }
  }
  if (xs.size() < 3)
    throw validation_error("exponent fit needs at least 3 rows with positive gaps");
  const auto n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sx += xs[k];
    sy += ys[k];
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  GapExponentFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  for (std::size_t k = 0; k < xs.size(); ++k)
    fit.max_residual = std::max(fit.max_residual,
                                std::abs(ys[k] - fit.slope * xs[k] - fit.intercept));
  fit.used = static_cast<int>(xs.size());
  fit.excluded = excluded;
  return fit;
}

}  // namespace ncl
