#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "ncl/grid2d.hpp"
#include "ncl/kernel1d.hpp"
#include "ncl/parallel.hpp"

namespace ncl {

namespace detail {

/// Pair integral of |x-y|^{-(2+s)} over two separated unit cells at integer offset,
/// by midpoint subdivision of both cells to the given depth. Collapsed to the
/// difference grid: subcell midpoint differences form a lattice with tent counts.
inline double unit_pair_separated(int di, int dj, double s, int depth) {
  const int n = 1 << depth;
  const double eta = 1.0 / n;
  const double expo = -(2.0 + s) / 2.0;
  double total = 0.0;
  std::vector<double> col(2 * n - 1);
  for (int k = -(n - 1); k <= n - 1; ++k)
    col[static_cast<std::size_t>(k + n - 1)] = (n - std::abs(k)) * eta * eta;
  for (int k1 = -(n - 1); k1 <= n - 1; ++k1) {
    const double z1 = k1 * eta + di;
    const double w1 = col[static_cast<std::size_t>(k1 + n - 1)];
    KahanSum row;
    for (int k2 = -(n - 1); k2 <= n - 1; ++k2) {
      const double z2 = k2 * eta + dj;
      row.add(col[static_cast<std::size_t>(k2 + n - 1)] * std::pow(z1 * z1 + z2 * z2, expo));
    }
    total += w1 * row.sum;
  }
  return total;
}

/// Edge- and corner-touching unit-cell pair integrals. One subdivision level maps a
/// touching pair onto separated sub-pairs plus scaled copies of itself, so the
/// touching contribution is closed by its self-similar factor instead of being
/// truncated at the recursion depth.
struct TouchingValues {
  double edge;
  double corner;
};

inline TouchingValues unit_pair_touching(double s, int depth) {
  const double kappa = std::pow(2.0, s - 2.0);  // (1/2)^{2-s} per sub-pair
  const double g02 = unit_pair_separated(0, 2, s, depth);
  const double g12 = unit_pair_separated(1, 2, s, depth);
  const double g03 = unit_pair_separated(0, 3, s, depth);
  const double g13 = unit_pair_separated(1, 3, s, depth);
  const double g22 = unit_pair_separated(2, 2, s, depth);
  const double g23 = unit_pair_separated(2, 3, s, depth);
  const double g33 = unit_pair_separated(3, 3, s, depth);
  const double corner = kappa * (4 * g12 + 2 * g13 + 4 * g22 + 4 * g23 + g33) / (1.0 - kappa);
  const double edge =
      kappa * (2.0 * corner + 4 * g02 + 4 * g12 + 2 * g03 + 2 * g13) / (1.0 - 2.0 * kappa);
  return {edge, corner};
}

}  // namespace detail

/// Translation-invariant cell-pair weights w(di,dj) = h^{2-s} * unit-cell interaction.
/// Offsets with |.|_inf below far_cutoff get subdivided quadrature; farther offsets
/// use the midpoint value |delta|^{-(2+s)}.
class OffsetWeightTable {
public:
  static OffsetWeightTable build(FractionalOrder fo, double h, int far_cutoff = 8,
                                 int near_depth = 6, int max_di = 0, int max_dj = 0) {
    if (!(h > 0.0)) throw validation_error("cell size must be positive");
    if (far_cutoff < 2) throw validation_error("far_cutoff must be at least 2");
    if (near_depth < 0) throw validation_error("near_depth must be nonnegative");
    OffsetWeightTable t;
    t.s_ = fo.s;
    t.h_ = h;
    t.far_cutoff_ = far_cutoff;
    t.near_depth_ = near_depth;
    if (near_depth < 1)
      throw numeric_error("near_depth too small: adjacent-cell quadrature unconverged");
    const auto touch = detail::unit_pair_touching(fo.s, near_depth);
    const auto coarse = detail::unit_pair_touching(fo.s, near_depth - 1);
    if (std::abs(touch.edge - coarse.edge) > 0.01 * touch.edge ||
        std::abs(touch.corner - coarse.corner) > 0.01 * touch.corner)
      throw numeric_error("near_depth too small: adjacent-cell quadrature unconverged");
    t.edge_ = touch.edge;
    t.corner_ = touch.corner;
    t.near_.assign(static_cast<std::size_t>(far_cutoff) * far_cutoff, 0.0);
    for (int a = 0; a < far_cutoff; ++a)
      for (int b = a; b < far_cutoff; ++b) {  // a <= b; symmetric under swap
        if (a == 0 && b == 0) continue;
        double v;
        if (b <= 1) v = (a + b == 1) ? touch.edge : touch.corner;
        else v = detail::unit_pair_separated(a, b, fo.s, near_depth);
        t.near_[static_cast<std::size_t>(a) * far_cutoff + b] = v;
        t.near_[static_cast<std::size_t>(b) * far_cutoff + a] = v;
      }
    t.ensure_extent(std::max(max_di, far_cutoff), std::max(max_dj, far_cutoff));
    return t;
  }

  double s() const { return s_; }
  double h() const { return h_; }
  int far_cutoff() const { return far_cutoff_; }
  int near_depth() const { return near_depth_; }
  int max_di() const { return mi_; }
  int max_dj() const { return mj_; }
  const std::vector<double>& near_block() const { return near_; }

  /// Grow the dense weight array to cover offsets up to (max_di, max_dj).
  void ensure_extent(int max_di, int max_dj) {
    if (max_di <= mi_ && max_dj <= mj_ && !w_.empty()) return;
    mi_ = std::max(max_di, mi_);
    mj_ = std::max(max_dj, mj_);
    stride_ = 2 * mj_ + 1;
    const double scale = std::pow(h_, 2.0 - s_);
    const double expo = -(2.0 + s_) / 2.0;
    w_.assign(static_cast<std::size_t>(2 * mi_ + 1) * stride_, 0.0);
    for (int a = -mi_; a <= mi_; ++a)
      for (int b = -mj_; b <= mj_; ++b) {
        if (a == 0 && b == 0) continue;
        const int aa = std::abs(a), bb = std::abs(b);
        double unit;
        if (aa < far_cutoff_ && bb < far_cutoff_)
          unit = near_[static_cast<std::size_t>(aa) * far_cutoff_ + bb];
        else
          unit = std::pow(static_cast<double>(aa) * aa + static_cast<double>(bb) * bb, expo);
        w_[index(a, b)] = unit * scale;
      }
  }

  double weight(int di, int dj) const {
    if (std::abs(di) > mi_ || std::abs(dj) > mj_)
      throw validation_error("offset outside table extent");
    return w_[index(di, dj)];
  }

  const double* data() const { return w_.data(); }
  int stride() const { return stride_; }
  std::size_t flat_index(int di, int dj) const { return index(di, dj); }

  /// Binary cache: parameter header plus the row-major near block. Round-trips
  /// bit-exactly.
  void save(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw validation_error("cannot open table cache for writing: " + path);
    const char magic[4] = {'N', 'C', 'L', 'W'};
    std::fwrite(magic, 1, 4, f);
    const std::int32_t version = 1;
    std::fwrite(&version, sizeof version, 1, f);
    std::fwrite(&s_, sizeof s_, 1, f);
    std::fwrite(&h_, sizeof h_, 1, f);
    const std::int32_t fc = far_cutoff_, nd = near_depth_;
    std::fwrite(&fc, sizeof fc, 1, f);
    std::fwrite(&nd, sizeof nd, 1, f);
    const std::uint64_t n = near_.size();
    std::fwrite(&n, sizeof n, 1, f);
    std::fwrite(near_.data(), sizeof(double), near_.size(), f);
    std::fclose(f);
  }

  static OffsetWeightTable load(const std::string& path, int max_di = 0, int max_dj = 0) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw validation_error("cannot open table cache: " + path);
    char magic[4];
    std::int32_t version = 0, fc = 0, nd = 0;
    std::uint64_t n = 0;
    OffsetWeightTable t;
    bool ok = std::fread(magic, 1, 4, f) == 4 && magic[0] == 'N' && magic[1] == 'C' &&
              magic[2] == 'L' && magic[3] == 'W' &&
              std::fread(&version, sizeof version, 1, f) == 1 && version == 1 &&
              std::fread(&t.s_, sizeof t.s_, 1, f) == 1 &&
              std::fread(&t.h_, sizeof t.h_, 1, f) == 1 &&
              std::fread(&fc, sizeof fc, 1, f) == 1 && std::fread(&nd, sizeof nd, 1, f) == 1 &&
              std::fread(&n, sizeof n, 1, f) == 1;
    if (ok) {
      t.near_.resize(n);
      ok = std::fread(t.near_.data(), sizeof(double), n, f) == n;
    }
    std::fclose(f);
    if (!ok || n != static_cast<std::uint64_t>(fc) * fc)
      throw validation_error("corrupt table cache: " + path);
    t.far_cutoff_ = fc;
    t.near_depth_ = nd;
    t.edge_ = t.near_[1];
    t.corner_ = t.near_[static_cast<std::size_t>(fc) + 1];
    t.ensure_extent(std::max(max_di, fc), std::max(max_dj, fc));
    return t;
  }

private:
  std::size_t index(int di, int dj) const {
    return static_cast<std::size_t>(di + mi_) * stride_ + static_cast<std::size_t>(dj + mj_);
  }

  double s_ = 0.5;
  double h_ = 1.0;
  int far_cutoff_ = 8;
  int near_depth_ = 6;
  int mi_ = 0, mj_ = 0, stride_ = 0;
  double edge_ = 0.0, corner_ = 0.0;
  std::vector<double> near_;  // unit-cell values, |di|,|dj| < far_cutoff
  std::vector<double> w_;     // dense h-scaled weights
};

namespace detail {

/// Segment-pair sum: all cells of run a against all cells of run b. Cells of equal
/// column difference share one weight, counted with the overlap (tent) multiplicity.
inline double run_pair_sum(const OffsetWeightTable& tab, const CellSet::Run& a,
                           const CellSet::Run& b) {
  const int dj = a.j - b.j;
  const int dlo = a.i0 - b.i1;
  const int dhi = a.i1 - b.i0;
  const int la = a.i1 - a.i0 + 1;
  const int lb = b.i1 - b.i0 + 1;
  const double* w = tab.data() + tab.flat_index(dlo, dj);
  const int stride = tab.stride();
  double sum = 0.0;
  for (int d = dlo; d <= dhi; ++d) {
    const int cnt = std::min(std::min(la, lb), std::min(d - dlo + 1, dhi - d + 1));
    sum += cnt * w[static_cast<std::size_t>(d - dlo) * stride];
  }
  return sum;
}

inline double l_grid_unchecked(const OffsetWeightTable& tab, const CellSet& A,
                               const CellSet& B) {
  if (A.empty() || B.empty()) return 0.0;
  // fixed blocks over A's runs; per-block compensated sums, reduced in block order
  constexpr std::size_t block_runs = 16;
  const std::size_t nblocks = (A.runs().size() + block_runs - 1) / block_runs;
  std::vector<double> partial(nblocks, 0.0);
  for_each_block(nblocks, [&](std::size_t blk) {
    KahanSum acc;
    const std::size_t lo = blk * block_runs;
    const std::size_t hi = std::min(lo + block_runs, A.runs().size());
    for (std::size_t ra = lo; ra < hi; ++ra)
      for (const CellSet::Run& rb : B.runs()) acc.add(run_pair_sum(tab, A.runs()[ra], rb));
    partial[blk] = acc.sum;
  });
  KahanSum total;
  for (double p : partial) total.add(p);
  return total.sum;
}

}  // namespace detail

/// Discrete interaction of two disjoint cell sets under the table weights.
inline double l_grid(const OffsetWeightTable& tab, const CellSet& A, const CellSet& B) {
  if (A.intersects(B)) throw validation_error("cell sets overlap");
  if (A.empty() || B.empty()) return 0.0;
  int ilo = A.runs()[0].i0, ihi = A.runs()[0].i1;
  int jlo = A.runs()[0].j, jhi = A.runs()[0].j;
  auto widen = [&](const CellSet& S) {
    for (const auto& r : S.runs()) {
      ilo = std::min(ilo, r.i0);
      ihi = std::max(ihi, r.i1);
      jlo = std::min(jlo, r.j);
      jhi = std::max(jhi, r.j);
    }
  };
  widen(A);
  widen(B);
  if (ihi - ilo > tab.max_di() || jhi - jlo > tab.max_dj())
    throw validation_error("offset table extent too small for these cell sets");
  return detail::l_grid_unchecked(tab, A, B);
}

namespace detail {

inline void require_frame_extent(const OffsetWeightTable& tab, const Frame2D& f) {
  if (tab.max_di() < f.nx - 1 || tab.max_dj() < f.ny - 1)
    throw validation_error("offset table extent too small for this frame");
}

}  // namespace detail

/// Relative interaction of phases i and j over the frame, omitting pairs entirely
/// outside omega. Interactions reaching beyond the frame are not represented; see
/// truncation_bound.
inline double per_s_omega_2d(const OffsetWeightTable& tab, const GridPartition2D& g,
                             PhaseLabel i, PhaseLabel j, const CellRect& omega) {
  if (i == j) throw validation_error("phases must differ");
  detail::require_frame_extent(tab, g.frame());
  const CellSet A = g.phase_set(i);
  const CellSet B = g.phase_set(j);
  const CellSet a_in = A.intersect(omega);
  const CellSet a_out = A.subtract(omega);
  const CellSet b_in = B.intersect(omega);
  return detail::l_grid_unchecked(tab, a_in, B) + detail::l_grid_unchecked(tab, a_out, b_in);
}

inline double per_s_omega_2d(const OffsetWeightTable& tab, const GridPartition2D& g,
                             PhaseLabel i, PhaseLabel j) {
  return per_s_omega_2d(tab, g, i, j, g.omega());
}

/// Fractional perimeter of one phase against its in-frame complement.
inline double per_s_2d(const OffsetWeightTable& tab, const GridPartition2D& g, PhaseLabel i,
                       const CellRect& omega) {
  detail::require_frame_extent(tab, g.frame());
  const CellSet A = g.phase_set(i);
  const CellSet B = g.phase_complement(i);
  const CellSet a_in = A.intersect(omega);
  const CellSet a_out = A.subtract(omega);
  const CellSet b_in = B.intersect(omega);
  return detail::l_grid_unchecked(tab, a_in, B) + detail::l_grid_unchecked(tab, a_out, b_in);
}

inline double per_s_2d(const OffsetWeightTable& tab, const GridPartition2D& g, PhaseLabel i) {
  return per_s_2d(tab, g, i, g.omega());
}

/// Classical pairwise perimeter: h times the number of shared (i,j) cell edges whose
/// midpoints lie in the open omega rectangle (closure: its closed counterpart).
inline double classical_per_pair(const GridPartition2D& g, PhaseLabel i, PhaseLabel j,
                                 bool closure, const CellRect& om) {
  if (i == j) throw validation_error("phases must differ");
  const Frame2D& f = g.frame();
  auto match = [&](PhaseLabel a, PhaseLabel b) { return (a == i && b == j) || (a == j && b == i); };
  long long edges = 0;
  for (int j2 = 0; j2 < f.ny; ++j2)
    for (int i2 = 0; i2 < f.nx; ++i2) {
      if (i2 + 1 < f.nx && match(g.label(i2, j2), g.label(i2 + 1, j2))) {
        // vertical edge at grid line i2+1, centered in row j2
        const bool x_ok = closure ? (i2 + 1 >= om.i0 && i2 + 1 <= om.i1 + 1)
                                  : (i2 + 1 > om.i0 && i2 + 1 < om.i1 + 1);
        const bool y_ok = om.j0 <= j2 && j2 <= om.j1;
        if (x_ok && y_ok) ++edges;
      }
      if (j2 + 1 < f.ny && match(g.label(i2, j2), g.label(i2, j2 + 1))) {
        const bool y_ok = closure ? (j2 + 1 >= om.j0 && j2 + 1 <= om.j1 + 1)
                                  : (j2 + 1 > om.j0 && j2 + 1 < om.j1 + 1);
        const bool x_ok = om.i0 <= i2 && i2 <= om.i1;
        if (x_ok && y_ok) ++edges;
      }
    }
  return static_cast<double>(edges) * f.h;
}

inline double classical_per_pair(const GridPartition2D& g, PhaseLabel i, PhaseLabel j,
                                 bool closure = false) {
  return classical_per_pair(g, i, j, closure, g.omega());
}

/// Classical perimeter of one phase within omega.
inline double classical_per(const GridPartition2D& g, PhaseLabel i, bool closure,
                            const CellRect& om) {
  double total = 0.0;
  for (PhaseLabel j : all_phases)
    if (j != i) total += classical_per_pair(g, i, j, closure, om);
  return total;
}

inline double classical_per(const GridPartition2D& g, PhaseLabel i, bool closure = false) {
  return classical_per(g, i, closure, g.omega());
}

/// Upper bound on all interactions omitted by truncating beyond the frame, for a
/// domain of om_cells cells at distance >= D from the frame boundary: the kernel
/// tail integral contributes 2*pi*D^{-s}/s per unit area.
inline double truncation_bound(FractionalOrder fo, long long om_cells, double h, double D) {
  if (!(D > 0.0)) throw validation_error("distance to the frame boundary must be positive");
  const double area = static_cast<double>(om_cells) * h * h;
  return 2.0 * std::acos(-1.0) * area / (fo.s * std::pow(D, fo.s));
}

}  // namespace ncl
