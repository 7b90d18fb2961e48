// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

// Text and JSON forms of labels, reports and curves.
//
// CSV columns:
//   thermal curves  beta,Z,mean_energy,mean_dim
//   trajectories    t,mean_dim,norm
// Reals are written with 17 significant digits so files round-trip exactly.

#pragma once

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qdim/core.hpp"
#include "qdim/dynamics.hpp"
#include "qdim/oscillator.hpp"
#include "qdim/symmetry.hpp"
#include "qdim/thermo.hpp"

namespace qdim {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
inline int parse_nonnegative(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ParseError("bad label '" + std::string(whole) + "': empty integer");
  int value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw ParseError("bad label '" + std::string(whole) + "': expected digits");
    if (value > 100'000'000) throw ParseError("bad label '" + std::string(whole) + "': integer too large");
    value = value * 10 + (c - '0');
  }
  return value;
}
}  // namespace detail

/// Parses `d;k1,...,kd` (and `0;`).
inline BasisLabel parse_label(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError("bad label '" + std::string(text) + "': missing ';'");
  const int d = detail::parse_nonnegative(text.substr(0, semi), text);
  std::vector<int> occ;
  std::string_view rest = text.substr(semi + 1);
  if (!rest.empty()) {
    while (true) {
      const auto comma = rest.find(',');
      occ.push_back(detail::parse_nonnegative(rest.substr(0, comma), text));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  if (occ.size() != static_cast<std::size_t>(d))
    throw ParseError("bad label '" + std::string(text) + "': expected " + std::to_string(d) + " occupations");
  return BasisLabel(d, std::move(occ));
}

/// Parses `a|b`, two labels joined by a bar.
inline LabelPair parse_label_pair(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw ParseError("bad pair '" + std::string(text) + "': missing '|'");
  return {parse_label(text.substr(0, bar)), parse_label(text.substr(bar + 1))};
}

inline EnergyConvention parse_convention(std::string_view text) {
  if (text == "unshifted") return EnergyConvention::Unshifted;
  if (text == "shifted") return EnergyConvention::Shifted;
  throw ParseError("unknown convention '" + std::string(text) + "'");
}

/// %.17g, enough to round-trip any double.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_thermal_csv(std::ostream& os, const std::vector<ThermalPoint>& points) {
  os << "beta,Z,mean_energy,mean_dim\n";
  for (const auto& p : points)
    os << format_real(p.beta) << ',' << format_real(p.z) << ',' << format_real(p.mean_energy) << ','
       << format_real(p.mean_dim) << '\n';
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,mean_dim,norm\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i)
    os << format_real(traj.times[i]) << ',' << format_real(traj.mean_dim[i]) << ',' << format_real(traj.norm[i])
       << '\n';
}

// nlohmann adapters, found by ADL

inline void to_json(nlohmann::json& j, const DimRange& r) { j = {{"n1", r.n1()}, {"n2", r.n2()}}; }
inline DimRange dim_range_from_json(const nlohmann::json& j) { return {j.at("n1").get<int>(), j.at("n2").get<int>()}; }

inline void to_json(nlohmann::json& j, EnergyConvention c) { j = to_string(c); }
inline void from_json(const nlohmann::json& j, EnergyConvention& c) { c = parse_convention(j.get<std::string>()); }

inline void to_json(nlohmann::json& j, const BasisLabel& l) { j = to_string(l); }
inline void from_json(const nlohmann::json& j, BasisLabel& l) { l = parse_label(j.get<std::string>()); }

inline void to_json(nlohmann::json& j, TwiceEnergy e) { j = e.value; }
inline void from_json(const nlohmann::json& j, TwiceEnergy& e) { e.value = j.get<std::int64_t>(); }

inline void to_json(nlohmann::json& j, const EnergyLevel& l) {
  j = {{"twice_energy", l.twice_energy}, {"energy", l.twice_energy.energy()},
       {"multiplicity", l.multiplicity}, {"members", l.members}};
}
inline void from_json(const nlohmann::json& j, EnergyLevel& l) {
  j.at("twice_energy").get_to(l.twice_energy);
  j.at("multiplicity").get_to(l.multiplicity);
  j.at("members").get_to(l.members);
}

inline void to_json(nlohmann::json& j, const Multiplet& m) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [d, count] : m.sector_histogram) hist[std::to_string(d)] = count;
  j = {{"twice_energy", m.twice_energy}, {"energy", m.twice_energy.energy()}, {"multiplicity", m.size()},
       {"members", m.members}, {"sector_histogram", hist}, {"enhanced", m.enhanced}};
}
inline void from_json(const nlohmann::json& j, Multiplet& m) {
  m.twice_energy = j.at("twice_energy").get<TwiceEnergy>();
  m.members = j.at("members").get<std::vector<BasisLabel>>();
  m.sector_histogram.clear();
  for (const auto& [key, count] : j.at("sector_histogram").items()) m.sector_histogram[std::stoi(key)] = count.get<std::size_t>();
  m.enhanced = j.at("enhanced").get<bool>();
}

inline bool operator==(const Multiplet& a, const Multiplet& b) {
  return a.twice_energy == b.twice_energy && a.members == b.members && a.sector_histogram == b.sector_histogram &&
         a.enhanced == b.enhanced;
}

inline void to_json(nlohmann::json& j, const LevelSymmetry& l) {
  j = {{"twice_energy", l.twice_energy}, {"energy", l.twice_energy.energy()},
       {"multiplicity", l.multiplicity}, {"group", l.group()}, {"enhanced", l.enhanced}};
}
inline void from_json(const nlohmann::json& j, LevelSymmetry& l) {
  j.at("twice_energy").get_to(l.twice_energy);
  j.at("multiplicity").get_to(l.multiplicity);
  j.at("enhanced").get_to(l.enhanced);
}
inline bool operator==(const LevelSymmetry& a, const LevelSymmetry& b) {
  return a.twice_energy == b.twice_energy && a.multiplicity == b.multiplicity && a.enhanced == b.enhanced;
}

inline void to_json(nlohmann::json& j, const SymmetryReport& r) {
  j = {{"range", r.range},           {"convention", r.convention}, {"base_group", r.base_group},
       {"sector_groups", r.sector_groups}, {"levels", r.levels}};
}
inline SymmetryReport symmetry_report_from_json(const nlohmann::json& j) {
  SymmetryReport r{dim_range_from_json(j.at("range")), j.at("convention").get<EnergyConvention>(), {}, {}, {}};
  j.at("levels").get_to(r.levels);
  j.at("sector_groups").get_to(r.sector_groups);
  j.at("base_group").get_to(r.base_group);
  return r;
}
inline bool operator==(const SymmetryReport& a, const SymmetryReport& b) {
  return a.range == b.range && a.convention == b.convention && a.levels == b.levels &&
         a.sector_groups == b.sector_groups && a.base_group == b.base_group;
}

inline void to_json(nlohmann::json& j, const ThermalPoint& p) {
  j = {{"beta", p.beta}, {"Z", p.z}, {"mean_energy", p.mean_energy}, {"mean_dim", p.mean_dim}};
}
inline void from_json(const nlohmann::json& j, ThermalPoint& p) {
  j.at("beta").get_to(p.beta);
  j.at("Z").get_to(p.z);
  j.at("mean_energy").get_to(p.mean_energy);
  j.at("mean_dim").get_to(p.mean_dim);
}
inline bool operator==(const ThermalPoint& a, const ThermalPoint& b) {
  return a.beta == b.beta && a.z == b.z && a.mean_energy == b.mean_energy && a.mean_dim == b.mean_dim;
}

inline void to_json(nlohmann::json& j, const ThermalCurve& c) {
  j = {{"range", c.range}, {"convention", c.convention}, {"points", c.points}};
}
inline ThermalCurve thermal_curve_from_json(const nlohmann::json& j) {
  ThermalCurve c{dim_range_from_json(j.at("range")), j.at("convention").get<EnergyConvention>(), {}};
  j.at("points").get_to(c.points);
  return c;
}

}  // namespace qdim
