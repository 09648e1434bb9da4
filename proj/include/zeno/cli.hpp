// Copyright 2026 The zenogate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line harness: one subcommand per reproducible result, writing CSV or
// JSON with a provenance header. Reruns with identical arguments produce
// byte-identical output.

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zeno/absorption.hpp"
#include "zeno/encoding.hpp"
#include "zeno/fermion.hpp"
#include "zeno/version.hpp"
#include "zeno/zeno_gate.hpp"

namespace zeno::cli {

using json = nlohmann::ordered_json;

/// Bad arguments or violated preconditions; exit code 2.
class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 12 significant digits, '.' decimal point, independent of the C locale.
inline std::string format_number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  if (res.ec != std::errc{})
    throw std::runtime_error("format_number: conversion failed");
  return std::string(buf, res.ptr);
}

/// Same rounding applied to JSON numbers.
inline double round12(double v) {
  if (!std::isfinite(v))
    return v;
  const std::string s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

inline json complex_matrix_json(const ComplexMatrix &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({round12(m(i, j).real()), round12(m(i, j).imag())}));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Provenance {
  std::string subcommand;
  std::vector<std::pair<std::string, std::string>> parameters;

  void add(const std::string &key, double v) { parameters.emplace_back(key, format_number(v)); }
  void add(const std::string &key, std::uint64_t v) {
    parameters.emplace_back(key, std::to_string(v));
  }
  void add(const std::string &key, int v) { parameters.emplace_back(key, std::to_string(v)); }
  void add(const std::string &key, std::string v) { parameters.emplace_back(key, std::move(v)); }
  void add(const std::string &key, const std::vector<double> &vs) {
    std::string joined;
    for (std::size_t i = 0; i < vs.size(); ++i)
      joined += (i ? "," : "") + format_number(vs[i]);
    parameters.emplace_back(key, joined);
  }

  json to_json() const {
    json params = json::object();
    for (const auto &[k, v] : parameters)
      params[k] = v;
    return json{{"tool", "zenogate"}, {"version", kVersion}, {"subcommand", subcommand},
                {"parameters", params}};
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> r) { rows.push_back(std::move(r)); }
};

inline void write_csv(std::ostream &os, const Provenance &prov, const Table &table) {
  os << "# zenogate " << kVersion << "\n";
  os << "# subcommand: " << prov.subcommand << "\n";
  for (const auto &[k, v] : prov.parameters)
    os << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto &row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

/// Table cells are already formatted strings; numeric-looking cells become
/// JSON numbers.
inline json table_json(const Table &table) {
  json rows = json::array();
  for (const auto &row : table.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      double v = 0.0;
      const auto &cell = row[i];
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec == std::errc{} && res.ptr == cell.data() + cell.size())
        obj[table.columns[i]] = v;
      else
        obj[table.columns[i]] = cell;
    }
    rows.push_back(std::move(obj));
  }
  return rows;
}

inline void write_json(std::ostream &os, const Provenance &prov, const json &data) {
  json doc{{"header", prov.to_json()}, {"data", data}};
  os << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the provenance plus either a table or a
// JSON document.

struct Output {
  Provenance provenance;
  std::optional<Table> table;
  json document;
};

inline std::vector<double> linspace(double stop, int points) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i)
    out.push_back(stop * static_cast<double>(i) / static_cast<double>(points - 1));
  return out;
}

inline Output cmd_rabi(double t_max, int steps) {
  if (!(t_max > 0.0) || !std::isfinite(t_max) || steps < 2)
    throw UsageError("rabi: need t_max > 0 and steps >= 2");
  Output out;
  out.provenance.subcommand = "rabi";
  out.provenance.add("t_max", t_max);
  out.provenance.add("steps", steps);
  Table t{{"t", "P1"}, {}};
  for (const auto &pt : rabi_curve(linspace(t_max, steps)))
    t.add_row({format_number(pt.t), format_number(pt.value)});
  out.table = std::move(t);
  return out;
}

inline Output cmd_hom(double t_max, int steps) {
  if (!(t_max > 0.0) || t_max > kHalfSwapTime + 1e-12 || steps < 2)
    throw UsageError("hom: need 0 < t_max <= pi/4 and steps >= 2");
  Output out;
  out.provenance.subcommand = "hom";
  out.provenance.add("t_max", t_max);
  out.provenance.add("steps", steps);
  Table t{{"t", "P11"}, {}};
  for (const auto &pt : hom_curve(linspace(t_max, steps)))
    t.add_row({format_number(pt.t), format_number(pt.value)});
  out.table = std::move(t);
  return out;
}

inline Output cmd_zeno_sweep(const std::string &mode, const std::vector<double> &n_list) {
  if (n_list.empty())
    throw UsageError("zeno-sweep: empty N list");
  ProtocolFamily family;
  if (mode == "discrete")
    family = ProtocolFamily::discrete;
  else if (mode == "absorption")
    family = ProtocolFamily::absorption;
  else
    throw UsageError("zeno-sweep: mode must be 'discrete' or 'absorption'");
  for (double n : n_list)
    if (!(n >= 1.0) || (family == ProtocolFamily::discrete && n != std::floor(n)))
      throw UsageError("zeno-sweep: N values must be >= 1 (integers for discrete)");

  Output out;
  out.provenance.subcommand = "zeno-sweep";
  out.provenance.add("mode", mode);
  out.provenance.add("n", n_list);
  Table t{{"N", "P_E"}, {}};
  for (const auto &pt : error_curve(family, n_list))
    t.add_row({format_number(pt.n), format_number(pt.error)});
  out.table = std::move(t);
  return out;
}

inline json gate_report_json(const GateReport &g) {
  json success = json::array();
  for (double s : g.success_probability_per_input)
    success.push_back(round12(s));
  return json{{"basis", {"|00>", "|01>", "|10>", "|11>"}},
              {"conditional_map", complex_matrix_json(g.conditional_map)},
              {"unconditional_map", complex_matrix_json(g.unconditional_map)},
              {"success_probability_per_input", success},
              {"error_probability", round12(g.error_probability)},
              {"leakage", round12(g.leakage)},
              {"fidelity_to_target", round12(g.fidelity_to_target)},
              {"unconditional_fidelity", round12(g.unconditional_fidelity)}};
}

inline Output cmd_gate(std::optional<int> n, std::optional<double> tau_D) {
  if (n.has_value() == tau_D.has_value())
    throw UsageError("gate: give exactly one of --n or --tau-d");
  Output out;
  out.provenance.subcommand = "gate";
  ZenoProtocol protocol = ZenoProtocol::discrete(1);
  if (n) {
    if (*n < 1)
      throw UsageError("gate: --n must be >= 1");
    protocol = ZenoProtocol::discrete(*n);
    out.provenance.add("protocol", std::string("discrete"));
    out.provenance.add("n", *n);
  } else {
    if (!(*tau_D > 0.0))
      throw UsageError("gate: --tau-d must be > 0");
    protocol = ZenoProtocol::absorption(*tau_D);
    out.provenance.add("protocol", std::string("absorption"));
    out.provenance.add("tau_D", *tau_D);
  }
  out.provenance.add("interaction_time", protocol.interaction_time);
  out.provenance.add("output_phase", protocol.output_phase);
  out.document = gate_report_json(extract_gate(protocol));
  return out;
}

inline Output cmd_fermion_report(double tau_D, double tau, int n) {
  if (!(tau_D > 0.0) || !(tau_D < tau))
    throw UsageError("fermion-report: need 0 < tau_D < tau");
  if (n < 1)
    throw UsageError("fermion-report: --n must be >= 1");
  Output out;
  out.provenance.subcommand = "fermion-report";
  out.provenance.add("tau_D", tau_D);
  out.provenance.add("tau", tau);
  out.provenance.add("n", n);
  out.provenance.add("t", kHalfSwapTime);

  const EquivalenceReport eq = compare_to_zeno_photons(1.0, kHalfSwapTime, n);
  json per_input = json::array();
  for (double d : eq.deviation)
    per_input.push_back(round12(d));

  const AnticommutatorReport ac = anticommutator_report(tau_D, tau);
  const NoGoReport ng = no_go_demo();
  const ComplexMatrix id = ComplexMatrix::Identity(4, 4);

  out.document = json{
      {"equivalence",
       {{"per_input_deviation", per_input},
        {"single_particle_deviation", round12(eq.single_particle)},
        {"two_particle_deviation", round12(eq.two_particle)}}},
      {"anticommutator",
       {{"deviation", round12(ac.deviation)},
        {"cross_fiber_commutator_deviation", round12(ac.cross_deviation)},
        {"time_averaged_anticommutator", complex_matrix_json(ac.anticommutator)},
        {"time_averaged_a_adag", complex_matrix_json(ac.product_a_adag)},
        {"time_averaged_adag_a", complex_matrix_json(ac.product_adag_a)}}},
      {"no_go",
       {{"device_swap_prime", complex_matrix_json(ng.device_swap_prime)},
        {"fermion_composition", complex_matrix_json(ng.fermion_composition)},
        {"boson_composition", complex_matrix_json(ng.boson_composition)},
        {"fermion_composition_identity_deviation",
         round12(max_abs(ng.fermion_composition - id))},
        {"boson_composition_cz_deviation",
         round12(max_abs(ng.boson_composition - controlled_z_target()))}}}};
  return out;
}

inline Output cmd_rate(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("rate: cannot open parameter file '" + path + "'");
  absorption::AbsorptionParams p;
  try {
    p = absorption::parse_params(in);
  } catch (const absorption::ParseError &e) {
    throw std::runtime_error(path + ":" + e.what());
  }
  const absorption::RateReport r = absorption::two_photon_rate(p);

  Output out;
  out.provenance.subcommand = "rate";
  out.provenance.add("params_file", path);
  out.provenance.add("wavelength", p.wavelength);
  out.provenance.add("tau_R", p.tau_R);
  out.provenance.add("tau_C", p.tau_C);
  out.provenance.add("detuning", p.detuning);
  out.provenance.add("M21", p.M21);
  out.provenance.add("L_p", p.L_p);
  out.provenance.add("core_diameter", p.core_diameter);
  out.provenance.add("N_A", p.N_A);
  out.provenance.add("finesse", p.finesse);
  out.provenance.add("target_error", p.target_error);
  out.document = json{{"sigma0", round12(r.sigma0)},
                      {"area", round12(r.area)},
                      {"sigma0_over_area", round12(r.sigma0 / r.area)},
                      {"f_delta", round12(r.f_delta)},
                      {"f_C", round12(r.f_C)},
                      {"f_P", round12(r.f_P)},
                      {"R2", round12(r.R2)},
                      {"R2_tau_R", round12(r.R2 * p.tau_R)},
                      {"l2", round12(r.l2)},
                      {"device_length", round12(r.device_length)},
                      {"single_photon_loss_factor", round12(r.single_photon_loss_factor)},
                      {"warnings", r.warnings}};
  return out;
}

inline Output cmd_threshold(const std::vector<double> &grid, std::uint64_t trials,
                            std::uint64_t seed) {
  if (grid.empty())
    throw UsageError("threshold: empty p grid");
  for (double p : grid)
    if (!(p > 0.0 && p < 1.0))
      throw UsageError("threshold: p values must lie in (0, 1)");
  if (trials < 1)
    throw UsageError("threshold: --trials must be >= 1");
  Output out;
  out.provenance.subcommand = "threshold";
  out.provenance.add("p", grid);
  out.provenance.add("trials", trials);
  out.provenance.add("seed", seed);
  Table t{{"p", "analytic", "exact_tree", "mc_estimate", "mc_stderr", "trials", "seed"}, {}};
  for (const auto &row : encoding::threshold_sweep(grid, trials, seed)) {
    const auto &r = row.report;
    t.add_row({format_number(r.p), format_number(r.analytic_p_logical),
               format_number(r.exact_tree), format_number(r.mc_estimate),
               format_number(r.mc_stderr), std::to_string(r.trials), std::to_string(r.seed)});
  }
  out.table = std::move(t);
  return out;
}

// ---------------------------------------------------------------------------

/// Parses argv, runs one subcommand, writes the result to --out or `out`.
/// Returns 0 on success, 2 on usage errors, 1 on runtime failures; every
/// failure prints a single diagnostic line to `err`.
inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Zeno-gate simulation harness", "zenogate"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string out_path;
  std::string format;
  auto add_io = [&](CLI::App *sub) {
    sub->add_option("--out", out_path, "Output file (default: stdout)");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  std::function<Output()> action;
  bool tabular = true;

  double rabi_t_max = 2.0 * kPi;
  int rabi_steps = 1000;
  auto *rabi = app.add_subcommand("rabi", "Single-photon transfer between cores, P1(t)");
  rabi->add_option("--t-max", rabi_t_max, "End time in hbar/eps units");
  rabi->add_option("--steps", rabi_steps, "Number of grid points");
  add_io(rabi);
  rabi->callback([&] { action = [&] { return cmd_rabi(rabi_t_max, rabi_steps); }; });

  double hom_t_max = kHalfSwapTime;
  int hom_steps = 101;
  auto *hom = app.add_subcommand("hom", "Two-photon coincidence probability P11(t)");
  hom->add_option("--t-max", hom_t_max, "End time, at most pi/4");
  hom->add_option("--steps", hom_steps, "Number of grid points");
  add_io(hom);
  hom->callback([&] { action = [&] { return cmd_hom(hom_t_max, hom_steps); }; });

  std::string sweep_mode;
  std::vector<double> sweep_n;
  auto *sweep = app.add_subcommand("zeno-sweep", "Error probability versus N");
  sweep->add_option("--mode", sweep_mode, "discrete or absorption")->required();
  sweep->add_option("--n", sweep_n, "Comma-separated N values")->delimiter(',')->required();
  add_io(sweep);
  sweep->callback([&] { action = [&] { return cmd_zeno_sweep(sweep_mode, sweep_n); }; });

  std::optional<int> gate_n;
  std::optional<double> gate_tau;
  auto *gate = app.add_subcommand("gate", "Extract the gate map and compare to sqrt(SWAP')");
  gate->add_option("--n", gate_n, "Number of discrete measurements");
  gate->add_option("--tau-d", gate_tau, "Two-photon decay time (hbar/eps units)");
  add_io(gate);
  gate->callback([&] {
    tabular = false;
    action = [&] { return cmd_gate(gate_n, gate_tau); };
  });

  double fr_tau_D = 0.01, fr_tau = 1.0;
  int fr_n = 1000;
  auto *fermion = app.add_subcommand("fermion-report", "Fermion equivalence, anti-commutators, no-go demo");
  fermion->add_option("--tau-d", fr_tau_D, "Two-photon decay time");
  fermion->add_option("--tau", fr_tau, "Averaging window");
  fermion->add_option("--n", fr_n, "Measurements for the photon comparison");
  add_io(fermion);
  fermion->callback([&] {
    tabular = false;
    action = [&] { return cmd_fermion_report(fr_tau_D, fr_tau, fr_n); };
  });

  std::string rate_params;
  auto *rate = app.add_subcommand("rate", "Two-photon absorption rate from a parameter file");
  rate->add_option("--params,params", rate_params, "key = value file, SI units")->required();
  add_io(rate);
  rate->callback([&] {
    tabular = false;
    action = [&] { return cmd_rate(rate_params); };
  });

  std::vector<double> th_grid{0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
  std::uint64_t th_trials = 100000;
  std::uint64_t th_seed = 1;
  auto *threshold = app.add_subcommand("threshold", "Encoded CNOT failure versus physical failure");
  threshold->add_option("--p", th_grid, "Comma-separated failure probabilities")->delimiter(',');
  threshold->add_option("--trials", th_trials, "Monte Carlo trials per point");
  threshold->add_option("--seed", th_seed, "RNG seed");
  add_io(threshold);
  threshold->callback([&] { action = [&] { return cmd_threshold(th_grid, th_trials, th_seed); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion &) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError &e) {
    std::string msg = e.what();
    if (msg.empty())
      msg = e.get_name();
    err << "zenogate: usage error: " << msg << "\n";
    return 2;
  }

  try {
    if (!tabular && format == "csv")
      throw UsageError("this subcommand only writes json");
    Output result = action();
    const bool as_json = format == "json" || !result.table;

    std::ofstream file;
    std::ostream *sink = &out;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary);
      if (!file)
        throw std::runtime_error("cannot open output file '" + out_path + "'");
      sink = &file;
    }
    if (as_json)
      write_json(*sink, result.provenance,
                 result.table ? table_json(*result.table) : result.document);
    else
      write_csv(*sink, result.provenance, *result.table);
    sink->flush();
    if (!*sink)
      throw std::runtime_error("write failed");
    return 0;
  } catch (const UsageError &e) {
    err << "zenogate: usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    err << "zenogate: usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "zenogate: error: " << e.what() << "\n";
    return 1;
  }
}

} // namespace zeno::cli
