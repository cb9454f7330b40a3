#pragma once

#include <string>
#include <utility>

#include "ncl/kernel1d.hpp"
#include "ncl/kernel2d.hpp"
#include "ncl/partition1d.hpp"

namespace ncl {

/// Surface tensions sigma_{i,j} > 0, stored once per unordered pair.
struct SigmaWeights {
  double m10;  // sigma_{-1,0}
  double m11;  // sigma_{-1,1}
  double z01;  // sigma_{0,1}

  SigmaWeights(double m10_, double m11_, double z01_) : m10(m10_), m11(m11_), z01(z01_) {
    if (!(m10 > 0.0 && m11 > 0.0 && z01 > 0.0))
      throw validation_error("surface tensions must be strictly positive");
  }
};

/// Half-sum transforms alpha_i of the surface tensions; alpha_i + alpha_j = sigma_{i,j}.
struct AlphaWeights {
  double am1;
  double a0;
  double a1;

  bool triangle_holds() const { return am1 >= 0.0 && a0 >= 0.0 && a1 >= 0.0; }
};

inline AlphaWeights alphas_from_sigmas(const SigmaWeights& sw) {
  return {0.5 * (sw.m11 + sw.m10 - sw.z01), 0.5 * (sw.m10 + sw.z01 - sw.m11),
          0.5 * (sw.m11 + sw.z01 - sw.m10)};
}

/// Relaxed tensions: direct (-1,1) contact priced as a double transition through 0.
struct SigmaStarWeights {
  double m10;
  double m11;  // = sigma_{-1,0} + sigma_{0,1}
  double z01;
};

inline SigmaStarWeights sigma_star(const SigmaWeights& sw) {
  return {sw.m10, sw.m10 + sw.z01, sw.z01};
}

enum class EnergyForm { s_nonlocal, classical_open, classical_closure, star };

inline std::string form_name(EnergyForm f) {
  switch (f) {
    case EnergyForm::s_nonlocal: return "s-nonlocal";
    case EnergyForm::classical_open: return "classical-open";
    case EnergyForm::classical_closure: return "classical-closure";
    default: return "star";
  }
}

/// The three unweighted pairwise interface terms and the weighted total.
struct EnergyBreakdown {
  double term_m10 = 0.0;  // (-1, 0) interface term
  double term_m11 = 0.0;  // (-1, 1)
  double term_01 = 0.0;   // ( 0, 1)
  double total = 0.0;
  EnergyForm form = EnergyForm::s_nonlocal;
};

/// Per-phase perimeters and the alpha-weighted total.
struct AlphaBreakdown {
  double per_m1 = 0.0;
  double per_0 = 0.0;
  double per_1 = 0.0;
  double total = 0.0;
};

namespace detail {

inline EnergyBreakdown weighted(double t_m10, double t_m11, double t_01, double w_m10,
                                double w_m11, double w_01, EnergyForm form) {
  EnergyBreakdown e;
  e.term_m10 = t_m10;
  e.term_m11 = t_m11;
  e.term_01 = t_01;
  e.total = w_m10 * t_m10 + w_m11 * t_m11 + w_01 * t_01;
  e.form = form;
  return e;
}

}  // namespace detail

// ---- 1D cluster energies (closed forms) ----

inline EnergyBreakdown f_s(FractionalOrder fo, const SigmaWeights& sw, const Partition1D& p,
                           const Domain1D& om) {
  const IntervalSet em1 = p.phase_set(PhaseLabel::minus);
  const IntervalSet e0 = p.phase_set(PhaseLabel::zero);
  const IntervalSet e1 = p.phase_set(PhaseLabel::plus);
  return detail::weighted(per_s_omega_1d(fo, om, em1, e0), per_s_omega_1d(fo, om, em1, e1),
                          per_s_omega_1d(fo, om, e0, e1), sw.m10, sw.m11, sw.z01,
                          EnergyForm::s_nonlocal);
}

inline AlphaBreakdown f_s_alpha(FractionalOrder fo, const AlphaWeights& aw,
                                const Partition1D& p, const Domain1D& om) {
  AlphaBreakdown b;
  b.per_m1 = per_s_1d(fo, om, p.phase_set(PhaseLabel::minus));
  b.per_0 = per_s_1d(fo, om, p.phase_set(PhaseLabel::zero));
  b.per_1 = per_s_1d(fo, om, p.phase_set(PhaseLabel::plus));
  b.total = aw.am1 * b.per_m1 + aw.a0 * b.per_0 + aw.a1 * b.per_1;
  return b;
}

inline EnergyBreakdown f_one(const SigmaWeights& sw, const Partition1D& p, const Domain1D& om,
                             bool closure = false) {
  const auto c = [&](PhaseLabel i, PhaseLabel j) {
    return static_cast<double>(p.classical_pair_count(om, i, j, closure));
  };
  return detail::weighted(c(PhaseLabel::minus, PhaseLabel::zero),
                          c(PhaseLabel::minus, PhaseLabel::plus),
                          c(PhaseLabel::zero, PhaseLabel::plus), sw.m10, sw.m11, sw.z01,
                          closure ? EnergyForm::classical_closure : EnergyForm::classical_open);
}

inline EnergyBreakdown f_star(const SigmaWeights& sw, const Partition1D& p, const Domain1D& om,
                              bool closure = false) {
  const SigmaStarWeights st = sigma_star(sw);
  const auto c = [&](PhaseLabel i, PhaseLabel j) {
    return static_cast<double>(p.classical_pair_count(om, i, j, closure));
  };
  return detail::weighted(c(PhaseLabel::minus, PhaseLabel::zero),
                          c(PhaseLabel::minus, PhaseLabel::plus),
                          c(PhaseLabel::zero, PhaseLabel::plus), st.m10, st.m11, st.z01,
                          EnergyForm::star);
}

/// Both evaluation routes of the squared-difference double integral over
/// (R x R) \ (Om^c x Om^c): the direct phase-pair decomposition with weights (j-i)^2
/// versus the three-term relative-interaction combination. Returns (lhs, rhs).
inline std::pair<double, double> phase_field_identity_check(FractionalOrder fo,
                                                            const Partition1D& p,
                                                            const Domain1D& om) {
  const Interval w = om.as_interval();
  const IntervalSet sets[3] = {p.phase_set(PhaseLabel::minus), p.phase_set(PhaseLabel::zero),
                               p.phase_set(PhaseLabel::plus)};
  const IntervalSet omc({Interval(-inf, om.a), Interval(om.b, inf)});
  double lhs = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      const double wgt = static_cast<double>((a - b) * (a - b));
      // interior pairs once per unordered pair, cross pairs once per ordered pair
      if (a < b) lhs += wgt * l_sets_1d(fo, sets[a].intersect(w), sets[b].intersect(w));
      lhs += wgt * l_sets_1d(fo, sets[a].intersect(w), sets[b].intersect(omc));
    }
  const double rhs = per_s_omega_1d(fo, om, sets[0], sets[1]) +
                     per_s_omega_1d(fo, om, sets[1], sets[2]) +
                     4.0 * per_s_omega_1d(fo, om, sets[0], sets[2]);
  return {lhs, rhs};
}

// ---- 2D cluster energies (offset-table quadrature) ----

inline EnergyBreakdown f_s(const OffsetWeightTable& tab, const SigmaWeights& sw,
                           const GridPartition2D& g) {
  return detail::weighted(per_s_omega_2d(tab, g, PhaseLabel::minus, PhaseLabel::zero),
                          per_s_omega_2d(tab, g, PhaseLabel::minus, PhaseLabel::plus),
                          per_s_omega_2d(tab, g, PhaseLabel::zero, PhaseLabel::plus), sw.m10,
                          sw.m11, sw.z01, EnergyForm::s_nonlocal);
}

inline AlphaBreakdown f_s_alpha(const OffsetWeightTable& tab, const AlphaWeights& aw,
                                const GridPartition2D& g) {
  AlphaBreakdown b;
  b.per_m1 = per_s_2d(tab, g, PhaseLabel::minus);
  b.per_0 = per_s_2d(tab, g, PhaseLabel::zero);
  b.per_1 = per_s_2d(tab, g, PhaseLabel::plus);
  b.total = aw.am1 * b.per_m1 + aw.a0 * b.per_0 + aw.a1 * b.per_1;
  return b;
}

inline EnergyBreakdown f_one(const SigmaWeights& sw, const GridPartition2D& g,
                             bool closure = false) {
  const auto c = [&](PhaseLabel i, PhaseLabel j) {
    return classical_per_pair(g, i, j, closure);
  };
  return detail::weighted(c(PhaseLabel::minus, PhaseLabel::zero),
                          c(PhaseLabel::minus, PhaseLabel::plus),
                          c(PhaseLabel::zero, PhaseLabel::plus), sw.m10, sw.m11, sw.z01,
                          closure ? EnergyForm::classical_closure : EnergyForm::classical_open);
}

inline EnergyBreakdown f_star(const SigmaWeights& sw, const GridPartition2D& g,
                              bool closure = false) {
  const SigmaStarWeights st = sigma_star(sw);
  const auto c = [&](PhaseLabel i, PhaseLabel j) {
    return classical_per_pair(g, i, j, closure);
  };
  return detail::weighted(c(PhaseLabel::minus, PhaseLabel::zero),
                          c(PhaseLabel::minus, PhaseLabel::plus),
                          c(PhaseLabel::zero, PhaseLabel::plus), st.m10, st.m11, st.z01,
                          EnergyForm::star);
}

inline std::pair<double, double> phase_field_identity_check(const OffsetWeightTable& tab,
                                                            const GridPartition2D& g) {
  const CellRect om = g.omega();
  const CellSet sets[3] = {g.phase_set(PhaseLabel::minus), g.phase_set(PhaseLabel::zero),
                           g.phase_set(PhaseLabel::plus)};
  CellSet in[3], out[3];
  for (int k = 0; k < 3; ++k) {
    in[k] = sets[k].intersect(om);
    out[k] = sets[k].subtract(om);
  }
  double lhs = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      const double wgt = static_cast<double>((a - b) * (a - b));
      if (a < b) lhs += wgt * detail::l_grid_unchecked(tab, in[a], in[b]);
      lhs += wgt * detail::l_grid_unchecked(tab, in[a], out[b]);
    }
  const double rhs = per_s_omega_2d(tab, g, PhaseLabel::minus, PhaseLabel::zero) +
                     per_s_omega_2d(tab, g, PhaseLabel::zero, PhaseLabel::plus) +
                     4.0 * per_s_omega_2d(tab, g, PhaseLabel::minus, PhaseLabel::plus);
  return {lhs, rhs};
}

}  // namespace ncl
