#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ncl/errors.hpp"

namespace ncl {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Open interval (lo, hi) on the extended real line. Empty iff lo == hi (finite).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
      throw validation_error("interval requires lo <= hi");
    if (std::isinf(lo) && std::isinf(hi) && lo == hi)
      throw validation_error("interval endpoints cannot both be the same infinity");
  }

  bool empty() const { return lo == hi; }
  double length() const { return hi - lo; }
  bool contains(double x) const { return lo < x && x < hi; }
  bool contains(const Interval& other) const {
    return other.empty() || (lo <= other.lo && other.hi <= hi);
  }
};

/// Finite union of disjoint open intervals, sorted, touching pieces merged.
class IntervalSet {
public:
  IntervalSet() = default;
  IntervalSet(std::initializer_list<Interval> parts)
      : IntervalSet(std::vector<Interval>(parts)) {}
  explicit IntervalSet(std::vector<Interval> parts) {
    std::erase_if(parts, [](const Interval& v) { return v.empty(); });
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (const Interval& v : parts) {
      if (!parts_.empty() && v.lo <= parts_.back().hi) {
        parts_.back().hi = std::max(parts_.back().hi, v.hi);
      } else {
        parts_.push_back(v);
      }
    }
  }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  double measure() const {
    double m = 0.0;
    for (const Interval& v : parts_) m += v.length();
    return m;
  }

  bool contains(double x) const {
    for (const Interval& v : parts_)
      if (v.contains(x)) return true;
    return false;
  }

  /// Interiors intersect another set's interiors?
  bool intersects(const IntervalSet& other) const {
    auto a = parts_.begin();
    auto b = other.parts_.begin();
    while (a != parts_.end() && b != other.parts_.end()) {
      if (std::min(a->hi, b->hi) > std::max(a->lo, b->lo)) return true;
      if (a->hi < b->hi) ++a; else ++b;
    }
    return false;
  }

  IntervalSet intersect(const Interval& window) const {
    std::vector<Interval> out;
    for (const Interval& v : parts_) {
      const double lo = std::max(v.lo, window.lo);
      const double hi = std::min(v.hi, window.hi);
      if (lo < hi) out.emplace_back(lo, hi);
    }
    return IntervalSet(std::move(out));
  }

  IntervalSet intersect(const IntervalSet& other) const {
    std::vector<Interval> out;
    for (const Interval& w : other.parts_) {
      for (const Interval& v : intersect(w).parts()) out.push_back(v);
    }
    return IntervalSet(std::move(out));
  }

  /// Complement in the whole line.
  IntervalSet complement() const {
    std::vector<Interval> out;
    double prev = -inf;
    for (const Interval& v : parts_) {
      if (prev < v.lo) out.emplace_back(prev, v.lo);
      prev = v.hi;
    }
    if (prev < inf) out.emplace_back(prev, inf);
    return IntervalSet(std::move(out));
  }

  IntervalSet subtract(const IntervalSet& other) const { return intersect(other.complement()); }

  IntervalSet unite(const IntervalSet& other) const {
    std::vector<Interval> out = parts_;
    out.insert(out.end(), other.parts_.begin(), other.parts_.end());
    return IntervalSet(std::move(out));
  }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    if (a.parts_.size() != b.parts_.size()) return false;
    for (std::size_t k = 0; k < a.parts_.size(); ++k)
      if (a.parts_[k].lo != b.parts_[k].lo || a.parts_[k].hi != b.parts_[k].hi) return false;
    return true;
  }

private:
  std::vector<Interval> parts_;
};

/// Bounded open interval domain (a, b).
struct Domain1D {
  double a;
  double b;

  Domain1D(double a_, double b_) : a(a_), b(b_) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
      throw validation_error("domain requires finite a < b");
  }

  double length() const { return b - a; }
  Interval as_interval() const { return {a, b}; }
  IntervalSet complement_set() const {
    return IntervalSet({Interval(-inf, a), Interval(b, inf)});
  }
};

}  // namespace ncl
