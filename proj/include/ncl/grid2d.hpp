#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ncl/interval.hpp"
#include "ncl/phase.hpp"

namespace ncl {

struct Cell {
  int i;  // column
  int j;  // row

  friend bool operator==(const Cell&, const Cell&) = default;
};

/// Inclusive cell-index rectangle [i0..i1] x [j0..j1].
struct CellRect {
  int i0, j0, i1, j1;

  bool contains(int i, int j) const { return i0 <= i && i <= i1 && j0 <= j && j <= j1; }
  bool contains(const CellRect& o) const {
    return i0 <= o.i0 && o.i1 <= i1 && j0 <= o.j0 && o.j1 <= j1;
  }
  long long cell_count() const {
    return static_cast<long long>(i1 - i0 + 1) * static_cast<long long>(j1 - j0 + 1);
  }
};

/// Uniform cell grid: cell (i,j) covers (x0+i*h, x0+(i+1)*h) x (y0+j*h, y0+(j+1)*h).
struct Frame2D {
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 1.0;
  int nx = 1;
  int ny = 1;

  Frame2D() = default;
  Frame2D(double x0_, double y0_, double h_, int nx_, int ny_)
      : x0(x0_), y0(y0_), h(h_), nx(nx_), ny(ny_) {
    if (!(h > 0.0) || nx < 1 || ny < 1)
      throw validation_error("frame requires h > 0 and nx, ny >= 1");
  }

  double cx(int i) const { return x0 + (i + 0.5) * h; }
  double cy(int j) const { return y0 + (j + 0.5) * h; }
  bool in_bounds(int i, int j) const { return 0 <= i && i < nx && 0 <= j && j < ny; }
  CellRect all() const { return {0, 0, nx - 1, ny - 1}; }
};

/// Set of grid cells stored as maximal row runs, sorted by (row, column).
class CellSet {
public:
  struct Run {
    int j;   // row
    int i0;  // first column
    int i1;  // last column (inclusive)
  };

  CellSet() = default;
  explicit CellSet(std::vector<Run> runs) : runs_(std::move(runs)) { normalize(); }

  static CellSet from_cells(std::vector<Cell> cells) {
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.j != b.j ? a.j < b.j : a.i < b.i; });
    std::vector<Run> runs;
    for (const Cell& c : cells) {
      if (!runs.empty() && runs.back().j == c.j && runs.back().i1 + 1 >= c.i)
        runs.back().i1 = std::max(runs.back().i1, c.i);
      else
        runs.push_back({c.j, c.i, c.i});
    }
    CellSet out;
    out.runs_ = std::move(runs);
    out.count_cells();
    return out;
  }

  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  long long cell_count() const { return ncells_; }
  double volume(double h) const { return static_cast<double>(ncells_) * h * h; }

  bool contains(int i, int j) const {
    for (const Run& r : runs_)
      if (r.j == j && r.i0 <= i && i <= r.i1) return true;
    return false;
  }

  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    out.reserve(static_cast<std::size_t>(ncells_));
    for (const Run& r : runs_)
      for (int i = r.i0; i <= r.i1; ++i) out.push_back({i, r.j});
    return out;
  }

  CellSet intersect(const CellRect& rect) const {
    std::vector<Run> out;
    for (const Run& r : runs_) {
      if (r.j < rect.j0 || r.j > rect.j1) continue;
      const int a = std::max(r.i0, rect.i0), b = std::min(r.i1, rect.i1);
      if (a <= b) out.push_back({r.j, a, b});
    }
    return CellSet(std::move(out));
  }

  CellSet subtract(const CellRect& rect) const {
    std::vector<Run> out;
    for (const Run& r : runs_) {
      if (r.j < rect.j0 || r.j > rect.j1) { out.push_back(r); continue; }
      if (r.i0 < rect.i0) out.push_back({r.j, r.i0, std::min(r.i1, rect.i0 - 1)});
      if (r.i1 > rect.i1) out.push_back({r.j, std::max(r.i0, rect.i1 + 1), r.i1});
    }
    return CellSet(std::move(out));
  }

  CellSet subtract(const CellSet& other) const {
    std::vector<Run> out;
    for (const Run& r : runs_) {
      // collect other-set runs on the same row and cut them away
      std::vector<std::pair<int, int>> keep{{r.i0, r.i1}};
      for (const Run& o : other.runs_) {
        if (o.j != r.j) continue;
        std::vector<std::pair<int, int>> next;
        for (auto [a, b] : keep) {
          if (o.i1 < a || o.i0 > b) { next.emplace_back(a, b); continue; }
          if (a < o.i0) next.emplace_back(a, o.i0 - 1);
          if (b > o.i1) next.emplace_back(o.i1 + 1, b);
        }
        keep = std::move(next);
      }
      for (auto [a, b] : keep) out.push_back({r.j, a, b});
    }
    return CellSet(std::move(out));
  }

  bool intersects(const CellSet& other) const {
    for (const Run& r : runs_)
      for (const Run& o : other.runs_)
        if (r.j == o.j && r.i0 <= o.i1 && o.i0 <= r.i1) return true;
    return false;
  }

private:
  void normalize() {
    std::sort(runs_.begin(), runs_.end(), [](const Run& a, const Run& b) {
      return a.j != b.j ? a.j < b.j : a.i0 < b.i0;
    });
    std::vector<Run> merged;
    for (const Run& r : runs_) {
      if (r.i0 > r.i1) continue;
      if (!merged.empty() && merged.back().j == r.j && merged.back().i1 + 1 >= r.i0)
        merged.back().i1 = std::max(merged.back().i1, r.i1);
      else
        merged.push_back(r);
    }
    runs_ = std::move(merged);
    count_cells();
  }

  void count_cells() {
    ncells_ = 0;
    for (const Run& r : runs_) ncells_ += r.i1 - r.i0 + 1;
  }

  std::vector<Run> runs_;
  long long ncells_ = 0;
};

/// Three-phase labeling of a frame with a designated sub-rectangle omega,
/// kept at least one cell away from the frame boundary.
class GridPartition2D {
public:
  GridPartition2D(Frame2D frame, std::vector<PhaseLabel> labels, CellRect omega)
      : frame_(frame), labels_(std::move(labels)), omega_(omega) {
    if (labels_.size() != static_cast<std::size_t>(frame_.nx) * frame_.ny)
      throw validation_error("grid labels must cover every frame cell");
    if (!(omega_.i0 >= 1 && omega_.j0 >= 1 && omega_.i1 <= frame_.nx - 2 &&
          omega_.j1 <= frame_.ny - 2 && omega_.i0 <= omega_.i1 && omega_.j0 <= omega_.j1))
      throw validation_error("omega must lie strictly inside the frame");
  }

  const Frame2D& frame() const { return frame_; }
  const CellRect& omega() const { return omega_; }
  double h() const { return frame_.h; }

  PhaseLabel label(int i, int j) const { return labels_[idx(i, j)]; }
  void set_label(int i, int j, PhaseLabel p) { labels_[idx(i, j)] = p; }

  CellSet phase_set(PhaseLabel p) const {
    std::vector<CellSet::Run> runs;
    for (int j = 0; j < frame_.ny; ++j) {
      int start = -1;
      for (int i = 0; i < frame_.nx; ++i) {
        const bool in = labels_[idx(i, j)] == p;
        if (in && start < 0) start = i;
        if (!in && start >= 0) { runs.push_back({j, start, i - 1}); start = -1; }
      }
      if (start >= 0) runs.push_back({j, start, frame_.nx - 1});
    }
    return CellSet(std::move(runs));
  }

  /// Complement of one phase within the frame.
  CellSet phase_complement(PhaseLabel p) const {
    std::vector<CellSet::Run> runs;
    for (int j = 0; j < frame_.ny; ++j) {
      int start = -1;
      for (int i = 0; i < frame_.nx; ++i) {
        const bool in = labels_[idx(i, j)] != p;
        if (in && start < 0) start = i;
        if (!in && start >= 0) { runs.push_back({j, start, i - 1}); start = -1; }
      }
      if (start >= 0) runs.push_back({j, start, frame_.nx - 1});
    }
    return CellSet(std::move(runs));
  }

  GridPartition2D relabel(const CellSet& region, PhaseLabel p) const {
    GridPartition2D out = *this;
    for (const CellSet::Run& r : region.runs())
      for (int i = r.i0; i <= r.i1; ++i) out.labels_[out.idx(i, r.j)] = p;
    return out;
  }

  /// Row-major label string, row 0 first, '-','0','+' per cell.
  std::string label_string() const {
    std::string s;
    s.reserve(labels_.size());
    for (int j = 0; j < frame_.ny; ++j)
      for (int i = 0; i < frame_.nx; ++i) s.push_back(phase_char(labels_[idx(i, j)]));
    return s;
  }

  friend bool operator==(const GridPartition2D& a, const GridPartition2D& b) {
    return a.labels_ == b.labels_ && a.omega_.i0 == b.omega_.i0 && a.omega_.j0 == b.omega_.j0 &&
           a.omega_.i1 == b.omega_.i1 && a.omega_.j1 == b.omega_.j1;
  }

private:
  std::size_t idx(int i, int j) const {
    if (!frame_.in_bounds(i, j)) throw validation_error("cell index out of frame");
    return static_cast<std::size_t>(j) * frame_.nx + i;
  }

  Frame2D frame_;
  std::vector<PhaseLabel> labels_;
  CellRect omega_;
};

/// Sampled Lipschitz graph psi over the base segment (-r, r), centered at 0.
/// Samples are uniform, odd in count, with psi(0) = 0, and the discrete Lipschitz
/// constant over all sample pairs must stay below c0*R/(4r).
class LipschitzGraph {
public:
  LipschitzGraph(double r, double R, double c0, std::vector<double> samples)
      : r_(r), R_(R), c0_(c0), samples_(std::move(samples)) {
    if (!(r_ > 0.0) || !(R_ > 0.0)) throw validation_error("graph requires r > 0 and R > 0");
    if (!(c0_ > 0.0 && c0_ < 1.0)) throw validation_error("graph requires c0 in (0,1)");
    if (samples_.size() < 3 || samples_.size() % 2 == 0)
      throw validation_error("graph needs an odd number of samples, at least 3");
    if (samples_[samples_.size() / 2] != 0.0)
      throw validation_error("graph requires psi(0) = 0 at the center sample");
    const double bound = c0_ * R_ / (4.0 * r_);
    const double dx = 2.0 * r_ / static_cast<double>(samples_.size() - 1);
    for (std::size_t a = 0; a < samples_.size(); ++a)
      for (std::size_t b = a + 1; b < samples_.size(); ++b) {
        const double slope = std::abs(samples_[b] - samples_[a]) /
                             (static_cast<double>(b - a) * dx);
        if (slope > bound * (1.0 + 1e-12))
          throw validation_error("graph samples exceed the Lipschitz bound c0*R/(4r)");
      }
  }

  double r() const { return r_; }
  double R() const { return R_; }
  double c0() const { return c0_; }
  const std::vector<double>& samples() const { return samples_; }

  /// Piecewise-linear value at x in [-r, r].
  double value(double x) const {
    const double dx = 2.0 * r_ / static_cast<double>(samples_.size() - 1);
    const double t = (x + r_) / dx;
    const auto k = static_cast<std::size_t>(
        std::clamp(std::floor(t), 0.0, static_cast<double>(samples_.size() - 2)));
    const double w = t - static_cast<double>(k);
    return samples_[k] * (1.0 - w) + samples_[k + 1] * w;
  }

private:
  double r_, R_, c0_;
  std::vector<double> samples_;
};

/// Discrete band { psi(x) < y < psi(x) + eps } over the graph's base, restricted to
/// cells currently labeled +1. Cell membership is by cell center. The band must lie
/// inside omega.
inline CellSet strip_region_2d(const GridPartition2D& g, const LipschitzGraph& psi,
                               double eps) {
  if (!(eps > 0.0)) throw validation_error("strip width must be positive");
  const Frame2D& f = g.frame();
  const CellRect& om = g.omega();
  std::vector<Cell> cells;
  for (int i = 0; i < f.nx; ++i) {
    const double x = f.cx(i);
    if (!(std::abs(x) < psi.r())) continue;
    const double ylo = psi.value(x);
    const double yhi = ylo + eps;
    // continuous band over this column must stay inside omega
    const double om_ylo = f.y0 + om.j0 * f.h;
    const double om_yhi = f.y0 + (om.j1 + 1) * f.h;
    if (i < om.i0 || i > om.i1 || ylo < om_ylo || yhi > om_yhi)
      throw validation_error("strip band leaves omega");
    for (int j = om.j0; j <= om.j1; ++j) {
      const double y = f.cy(j);
      if (ylo < y && y < yhi && g.label(i, j) == PhaseLabel::plus) cells.push_back({i, j});
    }
  }
  return CellSet::from_cells(std::move(cells));
}

/// Omega cells whose centers lie within eps of a shared (+1 | -1) cell edge.
inline CellSet interface_neighborhood(const GridPartition2D& g, double eps) {
  if (!(eps > 0.0)) throw validation_error("neighborhood width must be positive");
  const Frame2D& f = g.frame();
  struct Seg {
    double x0, y0, x1, y1;
  };
  std::vector<Seg> segs;
  auto direct = [&](PhaseLabel a, PhaseLabel b) {
    return (a == PhaseLabel::minus && b == PhaseLabel::plus) ||
           (a == PhaseLabel::plus && b == PhaseLabel::minus);
  };
  for (int j = 0; j < f.ny; ++j)
    for (int i = 0; i < f.nx; ++i) {
      if (i + 1 < f.nx && direct(g.label(i, j), g.label(i + 1, j))) {
        const double x = f.x0 + (i + 1) * f.h;
        segs.push_back({x, f.y0 + j * f.h, x, f.y0 + (j + 1) * f.h});
      }
      if (j + 1 < f.ny && direct(g.label(i, j), g.label(i, j + 1))) {
        const double y = f.y0 + (j + 1) * f.h;
        segs.push_back({f.x0 + i * f.h, y, f.x0 + (i + 1) * f.h, y});
      }
    }
  auto dist2_to_seg = [](double px, double py, const Seg& s) {
    const double vx = s.x1 - s.x0, vy = s.y1 - s.y0;
    const double t = std::clamp(((px - s.x0) * vx + (py - s.y0) * vy) / (vx * vx + vy * vy),
                                0.0, 1.0);
    const double dx = px - (s.x0 + t * vx), dy = py - (s.y0 + t * vy);
    return dx * dx + dy * dy;
  };
  const CellRect& om = g.omega();
  std::vector<Cell> cells;
  for (int j = om.j0; j <= om.j1; ++j)
    for (int i = om.i0; i <= om.i1; ++i) {
      const double px = f.cx(i), py = f.cy(j);
      for (const Seg& s : segs) {
        if (dist2_to_seg(px, py, s) < eps * eps) {
          cells.push_back({i, j});
          break;
        }
      }
    }
  return CellSet::from_cells(std::move(cells));
}

}  // namespace ncl
