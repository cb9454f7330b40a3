#pragma once

#include <fstream>
#include <iostream>
#include <sstream>

#include "ncl/config.hpp"
#include "ncl/csv.hpp"
#include "ncl/minimize.hpp"

namespace ncl {

namespace detail {

inline std::string s_tag(const ExperimentConfig& c) {
  if (c.s) return fmt_g17(*c.s);
  if (!c.s_list.empty()) {
    std::string out;
    for (std::size_t k = 0; k < c.s_list.size(); ++k) {
      if (k) out.push_back(';');
      out += fmt_g17(c.s_list[k]);
    }
    return out;
  }
  return "-";
}

inline const SigmaWeights& need_sigma(const ExperimentConfig& c) {
  if (!c.sigma) throw validation_error("config field 'sigma': missing");
  return *c.sigma;
}

inline FractionalOrder need_s(const ExperimentConfig& c) {
  if (!c.s) throw validation_error("config field 's': missing");
  return FractionalOrder(*c.s);
}

inline const Domain1D& need_domain(const ExperimentConfig& c) {
  if (!c.domain) throw validation_error("config field 'domain': missing");
  return *c.domain;
}

inline OffsetWeightTable table_for(const ExperimentConfig& c, const GridPartition2D& g,
                                   double s) {
  return OffsetWeightTable::build(FractionalOrder(s), g.h(), c.far_cutoff, c.near_depth,
                                  g.frame().nx - 1, g.frame().ny - 1);
}

inline void emit_breakdown(std::ostream& os, const EnergyBreakdown& e) {
  os << join_csv({form_name(e.form), fmt_g17(e.term_m10), fmt_g17(e.term_m11),
                  fmt_g17(e.term_01), fmt_g17(e.total)});
}

}  // namespace detail

/// Executes one experiment and streams its CSV.
inline void run_experiment(const ExperimentConfig& c, std::ostream& os) {
  os << "# nonlocal-cluster-lab v1, command=" << c.command << ", s=" << detail::s_tag(c)
     << "\n";
  if (c.command == "alphas") {
    const AlphaWeights aw = alphas_from_sigmas(detail::need_sigma(c));
    os << join_csv({"a_m1", "a_0", "a_1", "triangle"});
    os << join_csv({fmt_g17(aw.am1), fmt_g17(aw.a0), fmt_g17(aw.a1),
                    fmt_bool(aw.triangle_holds())});
    return;
  }
  if (c.command == "energy") {
    const SigmaWeights& sw = detail::need_sigma(c);
    os << join_csv({"form", "term_m10", "term_m11", "term_01", "total"});
    if (c.cluster_1d) {
      const Domain1D& om = detail::need_domain(c);
      detail::emit_breakdown(os, f_s(detail::need_s(c), sw, *c.cluster_1d, om));
      detail::emit_breakdown(os, f_one(sw, *c.cluster_1d, om, false));
      detail::emit_breakdown(os, f_one(sw, *c.cluster_1d, om, true));
      detail::emit_breakdown(os, f_star(sw, *c.cluster_1d, om, c.closure));
    } else if (c.cluster_2d) {
      const OffsetWeightTable tab = detail::table_for(c, *c.cluster_2d, detail::need_s(c).s);
      detail::emit_breakdown(os, f_s(tab, sw, *c.cluster_2d));
      detail::emit_breakdown(os, f_one(sw, *c.cluster_2d, false));
      detail::emit_breakdown(os, f_one(sw, *c.cluster_2d, true));
      detail::emit_breakdown(os, f_star(sw, *c.cluster_2d, c.closure));
    } else {
      throw validation_error("config field 'cluster': missing");
    }
    return;
  }
  if (c.command == "strip-scan") {
    const SigmaWeights& sw = detail::need_sigma(c);
    if (c.eps_list.empty()) throw validation_error("config field 'eps_list': missing");
    std::vector<GapScanRow> rows;
    if (c.cluster_1d) {
      if (!c.x0) throw validation_error("config field 'x0': missing");
      rows = scan_gap(detail::need_s(c), sw, *c.cluster_1d, detail::need_domain(c), *c.x0,
                      c.eps_list);
    } else if (c.cluster_2d) {
      if (!c.psi) throw validation_error("config field 'psi': missing");
      const OffsetWeightTable tab = detail::table_for(c, *c.cluster_2d, detail::need_s(c).s);
      rows = scan_gap(tab, sw, *c.cluster_2d, *c.psi, c.eps_list);
    } else {
      throw validation_error("config field 'cluster': missing");
    }
    os << join_csv({"eps", "f_original", "f_competitor", "gap_direct", "gap_formula",
                    "below_eps0"});
    for (const GapScanRow& r : rows)
      os << join_csv({fmt_g17(r.eps), fmt_g17(r.f_original), fmt_g17(r.f_competitor),
                      fmt_g17(r.gap_direct), fmt_g17(r.gap_formula),
                      r.below_eps0 ? "1" : "0"});
    if (rows.size() >= 3) {
      const GapExponentFit fit = fit_gap_exponent(rows);
      os << "# fit_slope=" << fmt_g17(fit.slope) << ", fit_intercept=" << fmt_g17(fit.intercept)
         << ", fit_max_residual=" << fmt_g17(fit.max_residual) << ", used=" << fit.used
         << ", excluded=" << fit.excluded << "\n";
    }
    return;
  }
  if (c.command == "s-sweep") {
    const SigmaWeights& sw = detail::need_sigma(c);
    if (c.s_list.empty()) throw validation_error("config field 's_list': missing");
    std::vector<SweepRow> rows;
    if (c.cluster_1d)
      rows = s_sweep(*c.cluster_1d, detail::need_domain(c), sw, c.s_list, c.sweep);
    else if (c.cluster_2d)
      rows = s_sweep(*c.cluster_2d, sw, c.s_list, c.sweep, c.far_cutoff, c.near_depth);
    else
      throw validation_error("config field 'cluster': missing");
    os << join_csv({"s", "raw", "scaled_nu", "scaled_omega", "target_open", "target_closure",
                    "bound_1d", "warn_quadrature"});
    for (const SweepRow& r : rows)
      os << join_csv({fmt_g17(r.s), fmt_g17(r.raw), fmt_g17(r.scaled_nu),
                      fmt_g17(r.scaled_omega), fmt_g17(r.target_open),
                      fmt_g17(r.target_closure), fmt_g17(r.bound_1d),
                      r.warn_quadrature ? "1" : "0"});
    return;
  }
  if (c.command == "minimize") {
    const SigmaWeights& sw = detail::need_sigma(c);
    os << join_csv({"initial_energy", "final_energy", "moves_accepted",
                    "direct_interface_measure", "strip_would_improve"});
    if (c.cluster_1d) {
      const MinimizeReport1D rep =
          exhaustive_1d(detail::need_s(c), sw, detail::need_domain(c), *c.cluster_1d, c.grid_m,
                        c.max_breakpoints);
      os << join_csv({fmt_g17(rep.initial_energy), fmt_g17(rep.final_energy),
                      std::to_string(rep.moves_accepted),
                      fmt_g17(rep.direct_interface_measure),
                      rep.strip_would_improve ? "1" : "0"});
    } else if (c.cluster_2d) {
      const OffsetWeightTable tab = detail::table_for(c, *c.cluster_2d, detail::need_s(c).s);
      const MinimizeReport2D rep = greedy_descent(tab, sw, *c.cluster_2d, c.max_sweeps);
      os << join_csv({fmt_g17(rep.initial_energy), fmt_g17(rep.final_energy),
                      std::to_string(rep.moves_accepted),
                      fmt_g17(rep.direct_interface_measure),
                      rep.strip_would_improve ? "1" : "0"});
    } else {
      throw validation_error("config field 'cluster': missing");
    }
    return;
  }
  if (c.command == "separate") {
    if (c.s_list.empty()) throw validation_error("config field 's_list': missing");
    std::vector<DecayRow> rows;
    if (c.cluster_1d) {
      const Partition1D sep = separate_phases(*c.cluster_1d, c.eps);
      rows = cross_interaction_decay(sep, detail::need_domain(c), c.s_list, c.eps);
    } else if (c.cluster_2d) {
      const GridPartition2D sep = separate_phases(*c.cluster_2d, c.eps);
      rows = cross_interaction_decay(sep, c.s_list, c.eps, c.far_cutoff, c.near_depth);
    } else {
      throw validation_error("config field 'cluster': missing");
    }
    os << join_csv({"s", "value", "bound"});
    for (const DecayRow& r : rows)
      os << join_csv({fmt_g17(r.s), fmt_g17(r.value), fmt_g17(r.bound)});
    return;
  }
  throw validation_error("unknown command " + c.command);
}

/// Runs a config file; returns the process exit code (0 ok, 1 invalid, 2 numeric).
inline int run_config_file(const std::string& path) {
  try {
    const ExperimentConfig c = load_config(path);
    if (c.output.empty()) {
      run_experiment(c, std::cout);
    } else {
      std::ostringstream buf;
      run_experiment(c, buf);
      std::ofstream out(c.output, std::ios::binary);
      if (!out) throw validation_error("cannot open output file: " + c.output);
      out << buf.str();
    }
    return 0;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  }
}

inline int echo_config_file(const std::string& path) {
  try {
    const ExperimentConfig c = load_config(path);
    std::cout << echo_config(c).dump(2) << "\n";
    return 0;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace ncl
