#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ncl/interval.hpp"
#include "ncl/phase.hpp"

namespace ncl {

/// Three-phase partition of the line: strictly increasing breakpoints x_1 < ... < x_m
/// and m+1 labels, label k covering (x_k, x_{k+1}) with x_0 = -inf, x_{m+1} = +inf.
/// Normalized form: adjacent labels differ.
class Partition1D {
public:
  Partition1D(std::vector<double> breakpoints, std::vector<PhaseLabel> labels) {
    if (labels.size() != breakpoints.size() + 1)
      throw validation_error("partition needs exactly one more label than breakpoints");
    for (double x : breakpoints)
      if (!std::isfinite(x)) throw validation_error("breakpoints must be finite");
    for (std::size_t k = 1; k < breakpoints.size(); ++k)
      if (!(breakpoints[k - 1] < breakpoints[k]))
        throw validation_error("breakpoints must be strictly increasing");
    // normalize: drop breakpoints whose sides carry the same label
    labels_.push_back(labels[0]);
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
      if (labels[k + 1] == labels_.back()) continue;
      breakpoints_.push_back(breakpoints[k]);
      labels_.push_back(labels[k + 1]);
    }
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<PhaseLabel>& labels() const { return labels_; }

  /// Label on the open cell containing x (x not a breakpoint).
  PhaseLabel label_at(double x) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return labels_[static_cast<std::size_t>(it - breakpoints_.begin())];
  }

  /// Union of open intervals carrying the given label.
  IntervalSet phase_set(PhaseLabel p) const {
    std::vector<Interval> out;
    double lo = -inf;
    for (std::size_t k = 0; k < labels_.size(); ++k) {
      const double hi = k < breakpoints_.size() ? breakpoints_[k] : inf;
      if (labels_[k] == p) out.emplace_back(lo, hi);
      lo = hi;
    }
    return IntervalSet(std::move(out));
  }

  /// New partition with the open interval painted over by the given label.
  Partition1D relabel(const Interval& region, PhaseLabel p) const {
    if (region.empty()) return *this;
    std::vector<double> bps = breakpoints_;
    if (std::isfinite(region.lo)) bps.push_back(region.lo);
    if (std::isfinite(region.hi)) bps.push_back(region.hi);
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    std::vector<PhaseLabel> labs;
    for (std::size_t k = 0; k <= bps.size(); ++k) {
      const double lo = k == 0 ? -inf : bps[k - 1];
      const double hi = k == bps.size() ? inf : bps[k];
      const double mid = sample_point(lo, hi);
      labs.push_back(region.lo <= lo && hi <= region.hi ? p : label_at(mid));
    }
    return Partition1D(std::move(bps), std::move(labs));
  }

  Partition1D relabel(const IntervalSet& region, PhaseLabel p) const {
    Partition1D out = *this;
    for (const Interval& v : region.parts()) out = out.relabel(v, p);
    return out;
  }

  /// Breakpoints where the two given phases meet.
  std::vector<double> interfaces(PhaseLabel i, PhaseLabel j) const {
    std::vector<double> out;
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
      const PhaseLabel l = labels_[k], r = labels_[k + 1];
      if ((l == i && r == j) || (l == j && r == i)) out.push_back(breakpoints_[k]);
    }
    return out;
  }

  /// Classical pairwise interface count in the open domain (closure: include x = a, b).
  int classical_pair_count(const Domain1D& om, PhaseLabel i, PhaseLabel j,
                           bool closure) const {
    int n = 0;
    for (double x : interfaces(i, j)) {
      if (om.a < x && x < om.b) ++n;
      else if (closure && (x == om.a || x == om.b)) ++n;
    }
    return n;
  }

  /// Classical one-set interface count: breakpoints where phase i meets anything else.
  int classical_count(const Domain1D& om, PhaseLabel i, bool closure) const {
    int n = 0;
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
      if (labels_[k] != i && labels_[k + 1] != i) continue;
      const double x = breakpoints_[k];
      if (om.a < x && x < om.b) ++n;
      else if (closure && (x == om.a || x == om.b)) ++n;
    }
    return n;
  }

  friend bool operator==(const Partition1D& a, const Partition1D& b) {
    return a.breakpoints_ == b.breakpoints_ && a.labels_ == b.labels_;
  }

private:
  static double sample_point(double lo, double hi) {
    if (std::isinf(lo) && std::isinf(hi)) return 0.0;
    if (std::isinf(lo)) return hi - 1.0;
    if (std::isinf(hi)) return lo + 1.0;
    return 0.5 * (lo + hi);
  }

  std::vector<double> breakpoints_;
  std::vector<PhaseLabel> labels_;
};

/// One-sided strip region at a direct (-1|+1) breakpoint, carved out of phase +1.
inline Interval strip_region_1d(const Partition1D& p, double x0, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw validation_error("strip width must be positive");
  const auto& bps = p.breakpoints();
  const auto it = std::find(bps.begin(), bps.end(), x0);
  if (it == bps.end()) throw validation_error("x0 is not a breakpoint");
  const std::size_t k = static_cast<std::size_t>(it - bps.begin());
  const PhaseLabel l = p.labels()[k], r = p.labels()[k + 1];
  if (l == PhaseLabel::minus && r == PhaseLabel::plus) return {x0, x0 + eps};
  if (l == PhaseLabel::plus && r == PhaseLabel::minus) return {x0 - eps, x0};
  throw validation_error("x0 is not a (-1|+1) interface");
}

/// Two-sided neighborhoods of all direct (-1|+1) breakpoints, relabeled to phase 0.
inline Partition1D separate_phases(const Partition1D& p, double eps) {
  if (!(eps > 0.0)) throw validation_error("separation width must be positive");
  std::vector<Interval> bands;
  for (double x : p.interfaces(PhaseLabel::minus, PhaseLabel::plus))
    bands.emplace_back(x - eps, x + eps);
  return p.relabel(IntervalSet(std::move(bands)), PhaseLabel::zero);
}

}  // namespace ncl
