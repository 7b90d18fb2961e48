// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Drives the library from a flat run configuration and renders the result
// as CSV or JSON. Exit codes: 0 success, 1 compute or I/O error, 2 bad config.

#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdim/io.hpp"
#include "qdim/qdim.hpp"

namespace qdim::cli {

enum class Command { Spectrum, Degeneracy, Thermo, DimVsEnergy, Symmetry, Evolve };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitCompute = 1;
inline constexpr int kExitConfig = 2;

struct RunConfig {
  Command command = Command::Thermo;
  int n1 = 0;
  int n2 = 3;
  EnergyConvention convention = EnergyConvention::Unshifted;
  int cutoff_k = 2;
  std::int64_t max_twice_energy = 8;
  double beta_min = 1e-2;
  double beta_max = 50.0;
  int beta_points = 400;
  std::vector<double> betas;  // explicit values override the grid (thermo only)
  bool brute_force = false;   // thermo: sum over the truncated basis instead
  double g = 0.1;
  std::vector<std::string> pairs;
  std::string initial;  // evolve: starting ket; defaults to the first paired ket
  double t_max = 100.0;
  int t_points = 201;
  std::string output_path = "-";
  std::optional<Format> format;  // default depends on the command
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline const char* command_name(Command c) {
  switch (c) {
    case Command::Spectrum: return "spectrum";
    case Command::Degeneracy: return "degeneracy";
    case Command::Thermo: return "thermo";
    case Command::DimVsEnergy: return "dim-vs-energy";
    case Command::Symmetry: return "symmetry";
    case Command::Evolve: return "evolve";
  }
  return "?";
}

inline Format default_format(Command c) {
  switch (c) {
    case Command::Thermo:
    case Command::DimVsEnergy:
    case Command::Evolve: return Format::Csv;
    default: return Format::Json;
  }
}

namespace detail {

inline void validate(const RunConfig& c) {
  if (c.n1 < 0 || c.n2 < 0) throw ConfigError("--n1 and --n2 must be nonnegative");
  if (c.n1 > c.n2) throw ConfigError("--n1 must not exceed --n2");
  if (c.cutoff_k < 0) throw ConfigError("--cutoff-k must be nonnegative");
  if (c.max_twice_energy < 0) throw ConfigError("--max-2e must be nonnegative");
  if (c.command == Command::Thermo || c.command == Command::DimVsEnergy) {
    if (c.betas.empty()) {
      if (!(c.beta_min > 0.0)) throw ConfigError("--beta-min must be positive");
      if (!(c.beta_min < c.beta_max)) throw ConfigError("--beta-min must be below --beta-max");
      if (c.beta_points < 1) throw ConfigError("--beta-points must be at least 1");
    }
    for (double b : c.betas)
      if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("--beta values must be positive");
  }
  if (c.command == Command::Evolve) {
    if (c.t_points < 1) throw ConfigError("--t-points must be at least 1");
    if (!(c.t_max >= 0.0)) throw ConfigError("--t-max must be nonnegative");
    if (!std::isfinite(c.g)) throw ConfigError("--g must be finite");
  }
}

inline std::vector<double> beta_values(const RunConfig& c) {
  if (!c.betas.empty()) return c.betas;
  return log_beta_grid(c.beta_min, c.beta_max, c.beta_points);
}

inline std::string render_spectrum(const RunConfig& c, Format f) {
  auto basis = enumerate_basis({c.n1, c.n2}, c.cutoff_k, c.convention);
  std::ostringstream os;
  if (f == Format::Csv) {
    os << "label,twice_energy,energy\n";
    for (const auto& label : basis->labels()) {
      const auto e = energy_of(label, c.convention);
      os << '"' << to_string(label) << "\"," << e.value << ',' << format_real(e.energy()) << '\n';
    }
    return os.str();
  }
  nlohmann::json states = nlohmann::json::array();
  for (const auto& label : basis->labels()) {
    const auto e = energy_of(label, c.convention);
    states.push_back({{"label", label}, {"twice_energy", e}, {"energy", e.energy()}});
  }
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& [value, count] : eigenvalue_clusters(oscillator_hamiltonian(basis))) {
    const TwiceEnergy level{std::llround(2.0 * value)};
    levels.push_back({{"energy", value},
                      {"twice_energy", level},
                      {"count", count},
                      {"complete", level_is_complete(basis->range(), c.cutoff_k, level, c.convention)}});
  }
  nlohmann::json j = {{"range", basis->range()}, {"convention", c.convention}, {"cutoff_k", c.cutoff_k},
                      {"size", basis->size()},   {"states", states},          {"levels", levels}};
  return j.dump(2) + "\n";
}

inline std::string render_degeneracy(const RunConfig& c, Format f) {
  const DimRange range{c.n1, c.n2};
  std::vector<EnergyLevel> levels;
  for (std::int64_t e = 0; e <= c.max_twice_energy; ++e) {
    auto level = level_degeneracy(range, TwiceEnergy{e}, c.convention);
    if (level.multiplicity > 0) levels.push_back(std::move(level));
  }
  if (f == Format::Csv) {
    std::ostringstream os;
    os << "twice_energy,energy,multiplicity\n";
    for (const auto& l : levels)
      os << l.twice_energy.value << ',' << format_real(l.twice_energy.energy()) << ',' << l.multiplicity << '\n';
    return os.str();
  }
  nlohmann::json j = {{"range", range}, {"convention", c.convention}, {"levels", levels}};
  return j.dump(2) + "\n";
}

inline std::string render_thermo(const RunConfig& c, Format f) {
  const DimRange range{c.n1, c.n2};
  std::vector<ThermalPoint> points;
  if (c.brute_force) {
    const QDBasis basis(range, c.cutoff_k, c.convention);
    for (double b : beta_values(c)) points.push_back(brute_force_thermal(b, basis));
  } else {
    for (double b : beta_values(c)) points.push_back(thermal_point(b, range, c.convention));
  }
  if (f == Format::Csv) {
    std::ostringstream os;
    write_thermal_csv(os, points);
    return os.str();
  }
  nlohmann::json j = {{"range", range}, {"convention", c.convention}, {"points", points}};
  return j.dump(2) + "\n";
}

inline std::string render_curve(const RunConfig& c, Format f) {
  const auto grid = beta_values(c);
  auto curve = dim_vs_energy_curve({c.n1, c.n2}, c.convention, grid);
  if (f == Format::Csv) {
    std::ostringstream os;
    write_thermal_csv(os, curve.points);
    return os.str();
  }
  return nlohmann::json(curve).dump(2) + "\n";
}

inline std::string render_symmetry(const RunConfig& c, Format f) {
  auto report = symmetry_report({c.n1, c.n2}, c.convention, c.max_twice_energy);
  if (f == Format::Csv) {
    std::ostringstream os;
    os << "twice_energy,multiplicity,group,enhanced\n";
    for (const auto& l : report.levels)
      os << l.twice_energy.value << ',' << l.multiplicity << ',' << l.group() << ',' << (l.enhanced ? 1 : 0) << '\n';
    return os.str();
  }
  return nlohmann::json(report).dump(2) + "\n";
}

inline std::string render_evolve(const RunConfig& c, Format f) {
  std::vector<LabelPair> pairs;
  for (const auto& text : c.pairs) {
    try {
      pairs.push_back(parse_label_pair(text));
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
  }
  BasisLabel initial;
  try {
    initial = !c.initial.empty() ? parse_label(c.initial)
              : !pairs.empty()   ? pairs.front().first
                                 : BasisLabel::ground(c.n1);
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
  auto basis = enumerate_basis({c.n1, c.n2}, c.cutoff_k, c.convention);
  auto require_in_basis = [&](const BasisLabel& l) {
    if (!basis->contains(l))
      throw ConfigError("ket " + to_string(l) + " is outside the basis (check --n1/--n2/--cutoff-k)");
  };
  for (const auto& [a, b] : pairs) {
    require_in_basis(a);
    require_in_basis(b);
    if (a == b) throw ConfigError("--pair must couple two distinct kets");
  }
  require_in_basis(initial);

  const auto h = oscillator_hamiltonian(basis) + hopping_interaction(basis, c.g, pairs);
  std::vector<double> times(static_cast<std::size_t>(c.t_points), 0.0);
  for (int i = 1; i < c.t_points; ++i) times[static_cast<std::size_t>(i)] = c.t_max * i / (c.t_points - 1);
  const auto traj = evolve(h, StateVector::basis_state(basis, initial), times);
  if (f == Format::Csv) {
    std::ostringstream os;
    write_trajectory_csv(os, traj);
    return os.str();
  }
  nlohmann::json j = {{"range", basis->range()}, {"convention", c.convention}, {"cutoff_k", c.cutoff_k},
                      {"g", c.g},                {"pairs", c.pairs},           {"initial", initial},
                      {"t", traj.times},         {"mean_dim", traj.mean_dim},  {"norm", traj.norm}};
  return j.dump(2) + "\n";
}

}  // namespace detail

/// Renders the command's output without touching the filesystem.
/// Throws ConfigError for invalid configurations.
inline std::string render(const RunConfig& c) {
  detail::validate(c);
  const Format f = c.format.value_or(default_format(c.command));
  switch (c.command) {
    case Command::Spectrum: return detail::render_spectrum(c, f);
    case Command::Degeneracy: return detail::render_degeneracy(c, f);
    case Command::Thermo: return detail::render_thermo(c, f);
    case Command::DimVsEnergy: return detail::render_curve(c, f);
    case Command::Symmetry: return detail::render_symmetry(c, f);
    case Command::Evolve: return detail::render_evolve(c, f);
  }
  throw ConfigError("unknown command");
}

/// Runs the command and writes its output to c.output_path ("-" is stdout).
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::string text;
  try {
    text = render(c);
  } catch (const ConfigError& e) {
    err << "qdim " << command_name(c.command) << ": " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "qdim " << command_name(c.command) << ": " << e.what() << '\n';
    return kExitCompute;
  }
  if (c.output_path == "-") {
    out << text;
    out.flush();
    return out ? kExitOk : kExitCompute;
  }
  std::ofstream file(c.output_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "qdim " << command_name(c.command) << ": cannot open '" << c.output_path << "' for writing\n";
    return kExitCompute;
  }
  file << text;
  file.close();
  if (!file) {
    err << "qdim " << command_name(c.command) << ": failed writing '" << c.output_path << "'\n";
    return kExitCompute;
  }
  return kExitOk;
}

}  // namespace qdim::cli
