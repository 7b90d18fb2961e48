// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

#include "qdim/cli.hpp"

namespace {

using qdim::cli::Command;
using qdim::cli::Format;
using qdim::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg, std::string& convention, std::string& format) {
  sub->add_option("--n1", cfg.n1, "lowest dimension")->capture_default_str();
  sub->add_option("--n2", cfg.n2, "highest dimension")->capture_default_str();
  sub->add_option("--convention", convention, "vacuum energy convention")
      ->check(CLI::IsMember({"unshifted", "shifted"}))
      ->capture_default_str();
  sub->add_option("-o,--output", cfg.output_path, "output file, '-' for stdout")->capture_default_str();
  sub->add_option("--format", format, "csv or json (default depends on the command)")
      ->check(CLI::IsMember({"csv", "json"}));
}

void add_beta_grid(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--beta-min", cfg.beta_min, "smallest inverse temperature")->capture_default_str();
  sub->add_option("--beta-max", cfg.beta_max, "largest inverse temperature")->capture_default_str();
  sub->add_option("--beta-points", cfg.beta_points, "log-spaced grid size")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-dimension harmonic oscillator: spectra, thermodynamics, symmetry and dynamics"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string convention = "unshifted";
  std::string format;
  std::map<CLI::App*, Command> commands;

  auto* spectrum = app.add_subcommand("spectrum", "truncated basis with energies and eigenvalue clusters");
  add_common(spectrum, cfg, convention, format);
  spectrum->add_option("--cutoff-k", cfg.cutoff_k, "max total quanta per sector")->capture_default_str();
  commands[spectrum] = Command::Spectrum;

  auto* degeneracy = app.add_subcommand("degeneracy", "exact level multiplicities and members");
  add_common(degeneracy, cfg, convention, format);
  degeneracy->add_option("--max-2e", cfg.max_twice_energy, "highest level, as twice the energy")->capture_default_str();
  commands[degeneracy] = Command::Degeneracy;

  auto* thermo = app.add_subcommand("thermo", "Z, <H0>, <D> on a beta grid");
  add_common(thermo, cfg, convention, format);
  add_beta_grid(thermo, cfg);
  thermo->add_option("--beta", cfg.betas, "explicit beta values (repeatable)");
  thermo->add_flag("--brute-force", cfg.brute_force, "sum over the truncated basis");
  thermo->add_option("--cutoff-k", cfg.cutoff_k, "basis cutoff for --brute-force")->capture_default_str();
  commands[thermo] = Command::Thermo;

  auto* curve = app.add_subcommand("dim-vs-energy", "<D> against <H0>, ordered by energy");
  add_common(curve, cfg, convention, format);
  add_beta_grid(curve, cfg);
  commands[curve] = Command::DimVsEnergy;

  auto* symmetry = app.add_subcommand("symmetry", "per-level mixing groups and enhanced degeneracies");
  add_common(symmetry, cfg, convention, format);
  symmetry->add_option("--max-2e", cfg.max_twice_energy, "highest level, as twice the energy")->capture_default_str();
  commands[symmetry] = Command::Symmetry;

  auto* evolve = app.add_subcommand("evolve", "<D>(t) under H0 plus pairwise hopping");
  add_common(evolve, cfg, convention, format);
  evolve->add_option("--cutoff-k", cfg.cutoff_k, "max total quanta per sector")->capture_default_str();
  evolve->add_option("--g", cfg.g, "hopping amplitude")->capture_default_str();
  evolve->add_option("--pair", cfg.pairs, "coupled kets 'd;k..|d;k..' (repeatable)");
  evolve->add_option("--init", cfg.initial, "initial ket (default: first ket of the first pair)");
  evolve->add_option("--t-max", cfg.t_max, "final time")->capture_default_str();
  evolve->add_option("--t-points", cfg.t_points, "number of evenly spaced times")->capture_default_str();
  commands[evolve] = Command::Evolve;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qdim::cli::kExitConfig;
  }

  for (const auto& [sub, command] : commands)
    if (sub->parsed()) cfg.command = command;
  cfg.convention = qdim::parse_convention(convention);
  if (!format.empty()) cfg.format = format == "csv" ? Format::Csv : Format::Json;
  return qdim::cli::run(cfg);
}
