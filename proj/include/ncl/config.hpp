#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncl/energy.hpp"
#include "ncl/limits.hpp"

namespace ncl {

using json = nlohmann::ordered_json;

/// One experiment invocation: a command plus the geometry and parameters it needs.
struct ExperimentConfig {
  std::string command;
  std::optional<SigmaWeights> sigma;
  std::optional<double> s;
  std::vector<double> s_list;
  std::optional<Partition1D> cluster_1d;
  std::optional<GridPartition2D> cluster_2d;
  std::optional<Domain1D> domain;
  std::vector<double> eps_list;
  std::optional<double> x0;
  std::optional<LipschitzGraph> psi;
  double eps = 0.1;
  int grid_m = 16;
  int max_breakpoints = 4;
  int max_sweeps = 100;
  int far_cutoff = 8;
  int near_depth = 6;
  bool closure = false;
  SweepSpec sweep;
  std::string output;  // empty: stdout
};

namespace detail {

[[noreturn]] inline void bad_field(const std::string& field, const std::string& why) {
  throw validation_error("config field '" + field + "': " + why);
}

inline double as_number(const json& j, const std::string& field) {
  if (!j.is_number()) bad_field(field, "expected a number");
  return j.get<double>();
}

inline std::vector<double> as_number_list(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad_field(field, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(as_number(v, field));
  return out;
}

inline PhaseLabel parse_label(const json& j, const std::string& field) {
  if (j.is_number_integer()) return phase_from_int(j.get<int>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.size() == 1) return phase_from_char(s[0]);
  }
  bad_field(field, "labels are -1/0/1 or \"-\"/\"0\"/\"+\"");
}

inline Partition1D parse_partition(const json& j) {
  for (const auto& [key, _] : j.items())
    if (key != "breakpoints" && key != "labels") bad_field("cluster." + key, "unknown field");
  if (!j.contains("breakpoints") || !j.contains("labels"))
    bad_field("cluster", "1D cluster needs breakpoints and labels");
  std::vector<double> bps;
  for (const auto& v : j.at("breakpoints")) bps.push_back(as_number(v, "cluster.breakpoints"));
  std::vector<PhaseLabel> labs;
  for (const auto& v : j.at("labels")) labs.push_back(parse_label(v, "cluster.labels"));
  return Partition1D(std::move(bps), std::move(labs));
}

inline GridPartition2D parse_grid(const json& j) {
  static const std::set<std::string> known{"h", "nx", "ny", "origin", "omega", "labels"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) bad_field("cluster." + key, "unknown field");
  for (const char* req : {"h", "nx", "ny", "omega", "labels"})
    if (!j.contains(req)) bad_field(std::string("cluster.") + req, "missing");
  const double h = as_number(j.at("h"), "cluster.h");
  const int nx = j.at("nx").get<int>();
  const int ny = j.at("ny").get<int>();
  double ox = 0.0, oy = 0.0;
  if (j.contains("origin")) {
    const auto& o = j.at("origin");
    if (!o.is_array() || o.size() != 2) bad_field("cluster.origin", "expected [x0, y0]");
    ox = as_number(o[0], "cluster.origin");
    oy = as_number(o[1], "cluster.origin");
  }
  const auto& om = j.at("omega");
  if (!om.is_array() || om.size() != 4) bad_field("cluster.omega", "expected [i0,j0,i1,j1]");
  const CellRect rect{om[0].get<int>(), om[1].get<int>(), om[2].get<int>(), om[3].get<int>()};
  const std::string ls = j.at("labels").get<std::string>();
  if (ls.size() != static_cast<std::size_t>(nx) * ny)
    bad_field("cluster.labels", "label string must have nx*ny characters");
  std::vector<PhaseLabel> labels;
  labels.reserve(ls.size());
  for (char c : ls) labels.push_back(phase_from_char(c));
  return GridPartition2D(Frame2D(ox, oy, h, nx, ny), std::move(labels), rect);
}

inline LipschitzGraph parse_psi(const json& j) {
  static const std::set<std::string> known{"r", "R", "c0", "samples"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) bad_field("psi." + key, "unknown field");
  for (const char* req : {"r", "R", "c0", "samples"})
    if (!j.contains(req)) bad_field(std::string("psi.") + req, "missing");
  return LipschitzGraph(as_number(j.at("r"), "psi.r"), as_number(j.at("R"), "psi.R"),
                        as_number(j.at("c0"), "psi.c0"),
                        as_number_list(j.at("samples"), "psi.samples"));
}

inline SweepSpec parse_target(const json& j) {
  SweepSpec spec;
  if (j.is_string() && j.get<std::string>() == "energy") return spec;
  if (j.is_object() && j.contains("phase")) {
    spec.target = SweepTarget::per_single;
    spec.phase = parse_label(j.at("phase"), "target.phase");
    return spec;
  }
  if (j.is_object() && j.contains("pair")) {
    const auto& p = j.at("pair");
    if (!p.is_array() || p.size() != 2) bad_field("target.pair", "expected [i, j]");
    spec.target = SweepTarget::per_pair;
    spec.pair_i = parse_label(p[0], "target.pair");
    spec.pair_j = parse_label(p[1], "target.pair");
    return spec;
  }
  bad_field("target", "expected \"energy\", {\"phase\": i} or {\"pair\": [i, j]}");
}

}  // namespace detail

inline ExperimentConfig parse_config(const json& j) {
  static const std::set<std::string> known{
      "command", "sigma", "s",           "s_list",          "cluster",   "domain",
      "eps_list", "x0",   "psi",         "eps",             "grid_m",    "max_breakpoints",
      "max_sweeps", "far_cutoff", "near_depth", "closure", "target", "output"};
  static const std::set<std::string> commands{"alphas", "energy", "strip-scan",
                                              "s-sweep", "minimize", "separate"};
  if (!j.is_object()) throw validation_error("config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) detail::bad_field(key, "unknown field");
  ExperimentConfig c;
  if (!j.contains("command")) detail::bad_field("command", "missing");
  c.command = j.at("command").get<std::string>();
  if (!commands.count(c.command)) detail::bad_field("command", "unknown command " + c.command);
  if (j.contains("sigma")) {
    const auto& sg = j.at("sigma");
    if (!sg.is_array() || sg.size() != 3)
      detail::bad_field("sigma", "expected [sigma_m10, sigma_m11, sigma_01]");
    c.sigma = SigmaWeights(detail::as_number(sg[0], "sigma"), detail::as_number(sg[1], "sigma"),
                           detail::as_number(sg[2], "sigma"));
  }
  if (j.contains("s")) {
    c.s = detail::as_number(j.at("s"), "s");
    if (!(*c.s > 0.0 && *c.s < 1.0)) detail::bad_field("s", "requires 0 < s < 1");
  }
  if (j.contains("s_list")) c.s_list = detail::as_number_list(j.at("s_list"), "s_list");
  if (j.contains("cluster")) {
    const auto& cl = j.at("cluster");
    if (cl.contains("breakpoints")) c.cluster_1d = detail::parse_partition(cl);
    else c.cluster_2d = detail::parse_grid(cl);
  }
  if (j.contains("domain")) {
    const auto& d = j.at("domain");
    if (!d.is_array() || d.size() != 2) detail::bad_field("domain", "expected [a, b]");
    c.domain = Domain1D(detail::as_number(d[0], "domain"), detail::as_number(d[1], "domain"));
  }
  if (j.contains("eps_list")) c.eps_list = detail::as_number_list(j.at("eps_list"), "eps_list");
  if (j.contains("x0")) c.x0 = detail::as_number(j.at("x0"), "x0");
  if (j.contains("psi")) c.psi = detail::parse_psi(j.at("psi"));
  if (j.contains("eps")) {
    c.eps = detail::as_number(j.at("eps"), "eps");
    if (!(c.eps > 0.0)) detail::bad_field("eps", "must be positive");
  }
  if (j.contains("grid_m")) c.grid_m = j.at("grid_m").get<int>();
  if (j.contains("max_breakpoints")) c.max_breakpoints = j.at("max_breakpoints").get<int>();
  if (j.contains("max_sweeps")) c.max_sweeps = j.at("max_sweeps").get<int>();
  if (j.contains("far_cutoff")) c.far_cutoff = j.at("far_cutoff").get<int>();
  if (j.contains("near_depth")) c.near_depth = j.at("near_depth").get<int>();
  if (j.contains("closure")) c.closure = j.at("closure").get<bool>();
  if (j.contains("target")) c.sweep = detail::parse_target(j.at("target"));
  if (j.contains("output")) c.output = j.at("output").get<std::string>();
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

/// Fully-defaulted normalized view of a parsed config.
inline json echo_config(const ExperimentConfig& c) {
  json j;
  j["command"] = c.command;
  if (c.sigma) j["sigma"] = {c.sigma->m10, c.sigma->m11, c.sigma->z01};
  if (c.s) j["s"] = *c.s;
  if (!c.s_list.empty()) j["s_list"] = c.s_list;
  if (c.cluster_1d) {
    json cl;
    cl["breakpoints"] = c.cluster_1d->breakpoints();
    std::vector<int> labs;
    for (PhaseLabel l : c.cluster_1d->labels()) labs.push_back(to_int(l));
    cl["labels"] = labs;
    j["cluster"] = cl;
  }
  if (c.cluster_2d) {
    const GridPartition2D& g = *c.cluster_2d;
    json cl;
    cl["h"] = g.frame().h;
    cl["nx"] = g.frame().nx;
    cl["ny"] = g.frame().ny;
    cl["origin"] = {g.frame().x0, g.frame().y0};
    cl["omega"] = {g.omega().i0, g.omega().j0, g.omega().i1, g.omega().j1};
    cl["labels"] = g.label_string();
    j["cluster"] = cl;
  }
  if (c.domain) j["domain"] = {c.domain->a, c.domain->b};
  if (!c.eps_list.empty()) j["eps_list"] = c.eps_list;
  if (c.x0) j["x0"] = *c.x0;
  if (c.psi) {
    json p;
    p["r"] = c.psi->r();
    p["R"] = c.psi->R();
    p["c0"] = c.psi->c0();
    p["samples"] = c.psi->samples();
    j["psi"] = p;
  }
  j["eps"] = c.eps;
  j["grid_m"] = c.grid_m;
  j["max_breakpoints"] = c.max_breakpoints;
  j["max_sweeps"] = c.max_sweeps;
  j["far_cutoff"] = c.far_cutoff;
  j["near_depth"] = c.near_depth;
  j["closure"] = c.closure;
  switch (c.sweep.target) {
    case SweepTarget::energy: j["target"] = "energy"; break;
    case SweepTarget::per_single: j["target"] = {{"phase", to_int(c.sweep.phase)}}; break;
    case SweepTarget::per_pair:
      j["target"] = {{"pair", {to_int(c.sweep.pair_i), to_int(c.sweep.pair_j)}}};
      break;
  }
  j["output"] = c.output;
  return j;
}

}  // namespace ncl
