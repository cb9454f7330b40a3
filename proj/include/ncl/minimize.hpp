#pragma once

#include <cstdint>
#include <vector>

#include "ncl/competitor.hpp"
#include "ncl/energy.hpp"

namespace ncl {

struct MinimizeReport2D {
  double initial_energy = 0.0;
  double final_energy = 0.0;
  long long moves_accepted = 0;
  bool converged = false;  // a full sweep accepted nothing
  GridPartition2D final_cluster;
  double direct_interface_measure = 0.0;
  bool strip_would_improve = false;
};

namespace detail {

/// Interaction sums of one cell against the three phases (cell itself excluded).
inline void cell_phase_sums(const OffsetWeightTable& tab, const GridPartition2D& g, int ci,
                            int cj, double out[3]) {
  out[0] = out[1] = out[2] = 0.0;
  const Frame2D& f = g.frame();
  for (int j = 0; j < f.ny; ++j) {
    const int dj = cj - j;
    for (int i = 0; i < f.nx; ++i) {
      if (i == ci && j == cj) continue;
      out[to_int(g.label(i, j)) + 1] += tab.weight(ci - i, dj);
    }
  }
}

}  // namespace detail

/// Single-cell greedy descent over omega with frozen exterior labels. Cells are
/// scanned in row-major order; each visit takes the strictly best negative
/// single-cell relabeling (ties toward the lower label), with the move delta from
/// the exact discrete increment identity:
///   delta(i -> j) = (alpha_j - alpha_i) T - 2 alpha_j S_j + 2 alpha_i S_i,
/// where S_k is the cell's interaction with phase k and T their sum.
inline MinimizeReport2D greedy_descent(const OffsetWeightTable& tab, const SigmaWeights& sw,
                                       const GridPartition2D& g, int max_sweeps) {
  if (max_sweeps < 1) throw validation_error("max_sweeps must be at least 1");
  const AlphaWeights aw = alphas_from_sigmas(sw);
  const double alpha[3] = {aw.am1, aw.a0, aw.a1};
  MinimizeReport2D rep{0.0, 0.0, 0, false, g, 0.0, false};
  rep.initial_energy = f_s(tab, sw, g).total;
  GridPartition2D cur = g;
  const CellRect om = g.omega();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    long long accepted = 0;
    for (int j = om.j0; j <= om.j1; ++j)
      for (int i = om.i0; i <= om.i1; ++i) {
        double S[3];
        detail::cell_phase_sums(tab, cur, i, j, S);
        const double T = S[0] + S[1] + S[2];
        const int cu = to_int(cur.label(i, j)) + 1;
        int best = -1;
        double best_delta = 0.0;
        for (int cand = 0; cand < 3; ++cand) {
          if (cand == cu) continue;
          const double delta =
              (alpha[cand] - alpha[cu]) * T - 2.0 * alpha[cand] * S[cand] + 2.0 * alpha[cu] * S[cu];
          if (delta < best_delta) {  // strict improvement; scan order breaks ties low
            best_delta = delta;
            best = cand;
          }
        }
        if (best >= 0) {
          cur.set_label(i, j, phase_from_int(best - 1));
          ++accepted;
        }
      }
    rep.moves_accepted += accepted;
    if (accepted == 0) {
      rep.converged = true;
      break;
    }
  }
  rep.final_energy = f_s(tab, sw, cur).total;
  rep.final_cluster = cur;
  rep.direct_interface_measure =
      classical_per_pair(cur, PhaseLabel::plus, PhaseLabel::minus, false);
  // single-cell moves can stall above a strip insertion; probe a one-layer strip
  if (rep.direct_interface_measure > 0.0) {
    std::vector<Cell> layer;
    for (int j = om.j0; j <= om.j1; ++j)
      for (int i = om.i0; i <= om.i1; ++i) {
        if (cur.label(i, j) != PhaseLabel::plus) continue;
        const bool touches =
            cur.label(i - 1, j) == PhaseLabel::minus || cur.label(i + 1, j) == PhaseLabel::minus ||
            cur.label(i, j - 1) == PhaseLabel::minus || cur.label(i, j + 1) == PhaseLabel::minus;
        if (touches) layer.push_back({i, j});
      }
    if (!layer.empty()) {
      const GridPartition2D probe =
          cur.relabel(CellSet::from_cells(std::move(layer)), PhaseLabel::zero);
      rep.strip_would_improve = f_s(tab, sw, probe).total < rep.final_energy;
    }
  }
  return rep;
}

struct MinimizeReport1D {
  double initial_energy = 0.0;
  double final_energy = 0.0;
  long long moves_accepted = 0;  // incumbent improvements during enumeration
  Partition1D final_cluster;
  double direct_interface_measure = 0.0;
  bool strip_would_improve = false;
};

namespace detail {

inline long long binomial(int n, int k) {
  long long v = 1;
  for (int t = 0; t < k; ++t) v = v * (n - t) / (t + 1);
  return v;
}

/// Deterministic enumeration of interior candidates: k breakpoints from the uniform
/// grid, labels with distinct neighbors, glued onto the exterior data.
template <typename Visit>
void enumerate_candidates(const Domain1D& om, const Partition1D& exterior, int grid_m,
                          int max_breakpoints, Visit&& visit) {
  std::vector<double> grid(grid_m);
  for (int i = 0; i < grid_m; ++i)
    grid[i] = om.a + (i + 1) * om.length() / static_cast<double>(grid_m + 1);
  std::vector<int> combo;
  std::vector<PhaseLabel> seq;
  const auto emit = [&]() {
    Partition1D cand = exterior;
    double lo = om.a;
    for (std::size_t c = 0; c <= combo.size(); ++c) {
      const double hi = c < combo.size() ? grid[combo[c]] : om.b;
      cand = cand.relabel(Interval(lo, hi), seq[c]);
      lo = hi;
    }
    visit(cand);
  };
  const auto labels_rec = [&](auto&& self, std::size_t need) -> void {
    if (need == 0) {
      emit();
      return;
    }
    for (PhaseLabel p : all_phases) {
      if (!seq.empty() && seq.back() == p) continue;
      seq.push_back(p);
      self(self, need - 1);
      seq.pop_back();
    }
  };
  const auto combos_rec = [&](auto&& self, int from, int left) -> void {
    if (left == 0) {
      labels_rec(labels_rec, combo.size() + 1);
      return;
    }
    for (int i = from; i <= grid_m - left; ++i) {
      combo.push_back(i);
      self(self, i + 1, left - 1);
      combo.pop_back();
    }
  };
  for (int k = 0; k <= max_breakpoints; ++k) combos_rec(combos_rec, 0, k);
}

}  // namespace detail

/// Brute-force global minimizer over the grid-restricted candidate class with fixed
/// exterior data. Ties break toward the lexicographically smaller (breakpoints,
/// labels) key.
inline MinimizeReport1D exhaustive_1d(FractionalOrder fo, const SigmaWeights& sw,
                                      const Domain1D& om, const Partition1D& exterior,
                                      int grid_m, int max_breakpoints = 4,
                                      long long cap = 10'000'000) {
  if (grid_m < 1) throw validation_error("grid_m must be at least 1");
  if (max_breakpoints < 0 || max_breakpoints > grid_m)
    throw validation_error("max_breakpoints must lie in [0, grid_m]");
  long long count = 0;
  long long pow2 = 1;
  for (int k = 0; k <= max_breakpoints; ++k, pow2 *= 2)
    count += detail::binomial(grid_m, k) * 3 * pow2;
  if (count > cap) throw numeric_error("candidate class exceeds the search cap");

  auto key_of = [](const Partition1D& p) {
    std::pair<std::vector<double>, std::vector<int>> key;
    key.first = p.breakpoints();
    for (PhaseLabel l : p.labels()) key.second.push_back(to_int(l));
    return key;
  };

  MinimizeReport1D rep{0.0, 0.0, 0, exterior, 0.0, false};
  bool have = false;
  double best_energy = 0.0;
  auto best_key = key_of(exterior);
  Partition1D best = exterior;
  detail::enumerate_candidates(om, exterior, grid_m, max_breakpoints,
                               [&](const Partition1D& cand) {
                                 const double e = f_s(fo, sw, cand, om).total;
                                 const auto key = key_of(cand);
                                 if (!have) {
                                   rep.initial_energy = e;
                                   best_energy = e;
                                   best_key = key;
                                   best = cand;
                                   have = true;
                                 } else if (e < best_energy) {
                                   ++rep.moves_accepted;
                                   best_energy = e;
                                   best_key = key;
                                   best = cand;
                                 } else if (e == best_energy && key < best_key) {
                                   best_key = key;
                                   best = cand;
                                 }
                               });
  rep.final_energy = best_energy;
  rep.final_cluster = best;
  rep.direct_interface_measure = static_cast<double>(
      best.classical_pair_count(om, PhaseLabel::minus, PhaseLabel::plus, false));
  if (rep.direct_interface_measure > 0.0) {
    for (double x0 : best.interfaces(PhaseLabel::minus, PhaseLabel::plus)) {
      if (!(om.a < x0 && x0 < om.b)) continue;
      const double spacing = om.length() / static_cast<double>(grid_m + 1);
      const double delta = std::min(spacing / 4.0, std::min(x0 - om.a, om.b - x0) / 2.0);
      const Interval strip = strip_region_1d(best, x0, delta);
      if (gap_formula_one_sided(fo, sw, best, strip) > 0.0) {
        rep.strip_would_improve = true;
        break;
      }
    }
  }
  return rep;
}

struct GammaMinRow {
  double s = 0.0;
  double scaled_min = 0.0;  // (1-s) F^s of the F^s-minimizer
  double fstar_min = 0.0;   // relaxed-energy minimum over the same class (closed domain)
  double abs_diff = 0.0;
};

/// For each s, the grid-restricted F^s minimizer and its scaled energy, against the
/// relaxed classical minimum over the same class.
inline std::vector<GammaMinRow> gamma_min_convergence_experiment(
    const SigmaWeights& sw, const Domain1D& om, const Partition1D& exterior,
    const std::vector<double>& s_list, int grid_m, int max_breakpoints = 4) {
  const AlphaWeights aw = alphas_from_sigmas(sw);
  if (aw.a0 > 0.0)
    throw validation_error("convergence experiment needs alpha_0 <= 0");
  // relaxed minimizer over the same candidate class
  bool first = true;
  double star_best = 0.0;
  std::pair<std::vector<double>, std::vector<int>> star_key;
  detail::enumerate_candidates(om, exterior, grid_m, max_breakpoints,
                               [&](const Partition1D& cand) {
                                 const double e = f_star(sw, cand, om, true).total;
                                 std::pair<std::vector<double>, std::vector<int>> key;
                                 key.first = cand.breakpoints();
                                 for (PhaseLabel l : cand.labels())
                                   key.second.push_back(to_int(l));
                                 if (first || e < star_best ||
                                     (e == star_best && key < star_key)) {
                                   star_best = e;
                                   star_key = key;
                                   first = false;
                                 }
                               });
  std::vector<GammaMinRow> rows;
  for (double s : s_list) {
    const MinimizeReport1D rep =
        exhaustive_1d(FractionalOrder(s), sw, om, exterior, grid_m, max_breakpoints);
    GammaMinRow row;
    row.s = s;
    row.scaled_min = (1.0 - s) * rep.final_energy;
    row.fstar_min = star_best;
    row.abs_diff = std::abs(row.scaled_min - row.fstar_min);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ncl
