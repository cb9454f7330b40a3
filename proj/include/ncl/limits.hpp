#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "ncl/competitor.hpp"
#include "ncl/energy.hpp"

namespace ncl {

/// Volume of the unit ball in k dimensions (1 for k = 0).
inline double omega_measure(int k) {
  if (k < 0) throw validation_error("dimension must be nonnegative");
  if (k == 0) return 1.0;
  if (k == 1) return 2.0;
  if (k == 2) return std::acos(-1.0);
  const double pi = std::acos(-1.0);
  return std::pow(pi, 0.5 * k) / std::tgamma(0.5 * k + 1.0);
}

namespace detail {

/// Adaptive Simpson quadrature.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

/// Kernel normalization constant: 2 (1 - 2^{-s}) (n-1) w_{n-1} Int t^{n-2} (1+t^2)^{-(n+s)/2} dt.
/// For n = 1 the prefactor vanishes; one-dimensional sweeps scale by s(1-s) directly.
inline double nu(int n, double s) {
  if (n != 1 && n != 2) throw validation_error("nu supports n = 1 and n = 2 only");
  if (!(s > 0.0 && s <= 1.0)) throw validation_error("nu requires s in (0, 1]");
  if (n == 1) return 0.0;
  // substitute t = tan(theta): integrand becomes cos(theta)^s on [0, pi/2)
  const double I = detail::integrate([s](double th) { return std::pow(std::cos(th), s); }, 0.0,
                                     0.5 * std::acos(-1.0), 1e-11);
  return 2.0 * (1.0 - std::pow(2.0, -s)) * omega_measure(1) * I;
}

/// What the sweep tracks per value of s.
enum class SweepTarget { energy, per_single, per_pair };

struct SweepSpec {
  SweepTarget target = SweepTarget::energy;
  PhaseLabel phase = PhaseLabel::plus;                       // per_single
  PhaseLabel pair_i = PhaseLabel::minus;                     // per_pair
  PhaseLabel pair_j = PhaseLabel::plus;
};

struct SweepRow {
  double s = 0.0;
  double raw = 0.0;
  double scaled_nu = 0.0;
  double scaled_omega = 0.0;
  double target_open = 0.0;
  double target_closure = 0.0;
  double bound_1d = 0.0;
  bool warn_quadrature = false;
};

namespace detail {

/// Half of the smallest distance between distinct interface points and domain ends.
inline double sweep_radius_1d(const Partition1D& p, const Domain1D& om,
                              const SweepSpec& spec) {
  std::vector<double> pts;
  switch (spec.target) {
    case SweepTarget::energy:
      for (double x : p.breakpoints())
        if (om.a < x && x < om.b) pts.push_back(x);
      break;
    case SweepTarget::per_single: {
      for (std::size_t k = 0; k < p.breakpoints().size(); ++k)
        if (p.labels()[k] == spec.phase || p.labels()[k + 1] == spec.phase) {
          const double x = p.breakpoints()[k];
          if (om.a < x && x < om.b) pts.push_back(x);
        }
      break;
    }
    case SweepTarget::per_pair:
      for (double x : p.interfaces(spec.pair_i, spec.pair_j))
        if (om.a < x && x < om.b) pts.push_back(x);
      break;
  }
  pts.push_back(om.a);
  pts.push_back(om.b);
  std::sort(pts.begin(), pts.end());
  double dmin = inf;
  for (std::size_t k = 1; k < pts.size(); ++k)
    if (pts[k] > pts[k - 1]) dmin = std::min(dmin, pts[k] - pts[k - 1]);
  return 0.5 * dmin;
}

}  // namespace detail

/// Closed-form sweep of the 1D scaled limits: raw value, both normalizations, the
/// classical open/closure targets, and the uniform-estimate bound with the slack
/// constant K fitted at the smallest s and frozen for the rest of the sweep.
inline std::vector<SweepRow> s_sweep(const Partition1D& p, const Domain1D& om,
                                     const SigmaWeights& sw,
                                     const std::vector<double>& s_list,
                                     const SweepSpec& spec = {}) {
  if (s_list.empty()) throw validation_error("s_list must not be empty");
  for (std::size_t k = 0; k < s_list.size(); ++k) {
    if (!(s_list[k] > 0.0 && s_list[k] < 1.0))
      throw validation_error("s_list entries must lie in (0,1)");
    if (k > 0 && !(s_list[k - 1] < s_list[k]))
      throw validation_error("s_list must be sorted increasing");
  }
  const double r = detail::sweep_radius_1d(p, om, spec);
  auto raw_at = [&](FractionalOrder fo) {
    switch (spec.target) {
      case SweepTarget::energy: return f_s(fo, sw, p, om).total;
      case SweepTarget::per_single: return per_s_1d(fo, om, p.phase_set(spec.phase));
      default:
        return per_s_omega_1d(fo, om, p.phase_set(spec.pair_i), p.phase_set(spec.pair_j));
    }
  };
  auto classical_at = [&](bool closure) {
    switch (spec.target) {
      case SweepTarget::energy: return f_one(sw, p, om, closure).total;
      case SweepTarget::per_single:
        return static_cast<double>(p.classical_count(om, spec.phase, closure));
      default:
        return static_cast<double>(
            p.classical_pair_count(om, spec.pair_i, spec.pair_j, closure));
    }
  };
  const double open_v = classical_at(false);
  const double closure_v = classical_at(true);
  std::vector<SweepRow> rows;
  rows.reserve(s_list.size());
  double K = 0.0;
  for (std::size_t k = 0; k < s_list.size(); ++k) {
    const double s = s_list[k];
    SweepRow row;
    row.s = s;
    row.raw = raw_at(FractionalOrder(s));
    row.scaled_nu = s * (1.0 - s) * row.raw;     // one-dimensional limit normalization
    row.scaled_omega = (1.0 - s) * row.raw;      // omega_0 = 1
    row.target_open = open_v;
    row.target_closure = closure_v;
    const double envelope =
        std::abs((2.0 - std::pow(2.0, 1.0 - s)) * std::pow(r, 1.0 - s) - 1.0) * open_v;
    if (k == 0)
      K = std::max(0.0, (std::abs(row.scaled_nu - closure_v) - envelope) / (1.0 - s));
    row.bound_1d = envelope + (1.0 - s) * K;
    rows.push_back(row);
  }
  return rows;
}

/// Quadrature sweep of the 2D scaled limits; rows past s = 0.95 carry the warning flag.
inline std::vector<SweepRow> s_sweep(const GridPartition2D& g, const SigmaWeights& sw,
                                     const std::vector<double>& s_list,
                                     const SweepSpec& spec = {}, int far_cutoff = 8,
                                     int near_depth = 6) {
  if (s_list.empty()) throw validation_error("s_list must not be empty");
  for (std::size_t k = 0; k < s_list.size(); ++k) {
    if (!(s_list[k] > 0.0 && s_list[k] < 1.0))
      throw validation_error("s_list entries must lie in (0,1)");
    if (k > 0 && !(s_list[k - 1] < s_list[k]))
      throw validation_error("s_list must be sorted increasing");
  }
  auto classical_at = [&](bool closure) {
    switch (spec.target) {
      case SweepTarget::energy: return f_one(sw, g, closure).total;
      case SweepTarget::per_single: return classical_per(g, spec.phase, closure);
      default: return classical_per_pair(g, spec.pair_i, spec.pair_j, closure);
    }
  };
  const double open_v = classical_at(false);
  const double closure_v = classical_at(true);
  std::vector<SweepRow> rows;
  rows.reserve(s_list.size());
  for (double s : s_list) {
    const FractionalOrder fo(s);
    const OffsetWeightTable tab = OffsetWeightTable::build(
        fo, g.h(), far_cutoff, near_depth, g.frame().nx - 1, g.frame().ny - 1);
    SweepRow row;
    row.s = s;
    switch (spec.target) {
      case SweepTarget::energy: row.raw = f_s(tab, sw, g).total; break;
      case SweepTarget::per_single: row.raw = per_s_2d(tab, g, spec.phase); break;
      default: row.raw = per_s_omega_2d(tab, g, spec.pair_i, spec.pair_j); break;
    }
    row.scaled_nu = s * (1.0 - s) / nu(2, s) * row.raw;
    row.scaled_omega = (1.0 - s) / omega_measure(1) * row.raw;
    row.target_open = open_v;
    row.target_closure = closure_v;
    row.bound_1d = 0.0;  // one-dimensional bound only
    row.warn_quadrature = s > 0.95;
    rows.push_back(row);
  }
  return rows;
}

/// Phase separation: relabel the two-sided neighborhood of every direct (-1|+1)
/// interface to phase 0 (grids: cells within eps of a shared edge, inside omega).
inline GridPartition2D separate_phases(const GridPartition2D& g, double eps) {
  return g.relabel(interface_neighborhood(g, eps), PhaseLabel::zero);
}

struct DecayRow {
  double s = 0.0;
  double value = 0.0;  // (1-s) Per^s_Om(E_1, E_{-1})
  double bound = 0.0;  // (1-s) C / (s eps^s), C = 2 n w_n |Om|
};

/// Scaled cross interaction of the separated extreme phases along an s-sweep.
inline std::vector<DecayRow> cross_interaction_decay(const Partition1D& p, const Domain1D& om,
                                                     const std::vector<double>& s_list,
                                                     double eps) {
  if (!(eps > 0.0)) throw validation_error("separation width must be positive");
  const double C = 2.0 * 1.0 * omega_measure(1) * om.length();
  std::vector<DecayRow> rows;
  for (double s : s_list) {
    const FractionalOrder fo(s);
    DecayRow row;
    row.s = s;
    row.value = (1.0 - s) * per_s_omega_1d(fo, om, p.phase_set(PhaseLabel::plus),
                                           p.phase_set(PhaseLabel::minus));
    row.bound = (1.0 - s) * C / (s * std::pow(eps, s));
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<DecayRow> cross_interaction_decay(const GridPartition2D& g,
                                                     const std::vector<double>& s_list,
                                                     double eps, int far_cutoff = 8,
                                                     int near_depth = 6) {
  if (!(eps > 0.0)) throw validation_error("separation width must be positive");
  const double om_area = static_cast<double>(g.omega().cell_count()) * g.h() * g.h();
  const double C = 2.0 * 2.0 * omega_measure(2) * om_area;
  std::vector<DecayRow> rows;
  for (double s : s_list) {
    const FractionalOrder fo(s);
    const OffsetWeightTable tab = OffsetWeightTable::build(
        fo, g.h(), far_cutoff, near_depth, g.frame().nx - 1, g.frame().ny - 1);
    DecayRow row;
    row.s = s;
    row.value = (1.0 - s) * per_s_omega_2d(tab, g, PhaseLabel::plus, PhaseLabel::minus);
    row.bound = (1.0 - s) * C / (s * std::pow(eps, s));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ncl
