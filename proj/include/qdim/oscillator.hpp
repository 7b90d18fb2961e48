// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oscillator.hpp
 * @brief The harmonic oscillator with a quantum number of dimensions.
 *
 * H0 = ⊕_d Σ_i (a_i† a_i + 1/2) in units ħω = 1. Energies are half-integers
 * and are carried exactly as 2E. Under the shifted convention each sector
 * is offset by -d/2 so every sector ground sits at E = 0.
 */

#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qdim/combinatorics.hpp"
#include "qdim/core.hpp"

namespace qdim {

/// Exact energy stored as the integer 2E.
struct TwiceEnergy {
  std::int64_t value = 0;

  constexpr double energy() const noexcept { return static_cast<double>(value) / 2.0; }
  friend constexpr auto operator<=>(TwiceEnergy, TwiceEnergy) = default;
};

inline TwiceEnergy energy_of(const BasisLabel& label, EnergyConvention convention) {
  const std::int64_t quanta = label.total_quanta();
  return {convention == EnergyConvention::Unshifted ? label.d + 2 * quanta : 2 * quanta};
}

/// Quanta n in sector d needed to reach 2E, or -1 if that sector has no such level.
inline std::int64_t quanta_for_level(int d, TwiceEnergy level, EnergyConvention convention) {
  const std::int64_t twice_quanta =
      convention == EnergyConvention::Unshifted ? level.value - d : level.value;
  if (twice_quanta < 0 || twice_quanta % 2 != 0) return -1;
  return twice_quanta / 2;
}

/// Diagonal in the occupation basis with entries E(label) under the basis convention.
inline BlockOperator oscillator_hamiltonian(const BasisPtr& basis) {
  BlockOperator::BlockMap blocks;
  for (int d = basis->range().n1(); d <= basis->range().n2(); ++d) {
    const std::size_t off = basis->sector_offset(d);
    const auto n = static_cast<Eigen::Index>(basis->sector_size(d));
    Eigen::VectorXcd diag(n);
    for (Eigen::Index i = 0; i < n; ++i)
      diag(i) = energy_of(basis->label(off + static_cast<std::size_t>(i)), basis->convention()).energy();
    blocks.emplace(BlockOperator::SectorPair{d, d}, diag.asDiagonal().toDenseMatrix());
  }
  return BlockOperator(basis, std::move(blocks), true);
}

struct EnergyLevel {
  TwiceEnergy twice_energy;
  std::size_t multiplicity = 0;
  std::vector<BasisLabel> members;
};

/// Exact, cutoff-free degeneracy of the level 2E over all admissible sectors.
/// Multiplicity is Σ_d C(n_d + d - 1, d - 1); members are listed explicitly
/// in basis order (ascending d, lexicographic occupations).
inline EnergyLevel level_degeneracy(const DimRange& range, TwiceEnergy level, EnergyConvention convention) {
  if (level.value < 0) throw std::invalid_argument("level_degeneracy: twice_energy must be nonnegative");
  EnergyLevel out{level, 0, {}};
  std::uint64_t expected = 0;
  for (int d = range.n1(); d <= range.n2(); ++d) {
    const std::int64_t n = quanta_for_level(d, level, convention);
    if (n < 0) continue;
    expected += weak_compositions_count(n, d);
    for_each_weak_composition(static_cast<int>(n), d, [&](const std::vector<int>& occ) {
      BasisLabel label;
      label.d = d;
      label.occ = occ;
      out.members.push_back(std::move(label));
    });
  }
  out.multiplicity = static_cast<std::size_t>(expected);
  if (out.multiplicity != out.members.size())
    throw std::logic_error("level_degeneracy: enumeration disagrees with binomial count");
  return out;
}

/// True when every member of level 2E has Σk <= cutoff, so a basis with that
/// cutoff represents the whole multiplet.
inline bool level_is_complete(const DimRange& range, int cutoff_k, TwiceEnergy level, EnergyConvention convention) {
  for (int d = range.n1(); d <= range.n2(); ++d) {
    const std::int64_t n = quanta_for_level(d, level, convention);
    if (n > cutoff_k) return false;
  }
  return true;
}

/// Below this β the closed form is replaced by its Laurent series.
inline constexpr double kSmallBeta = 1e-6;

/// Single 1+1-dimensional oscillator partition function e^{-β/2} / (1 - e^{-β}).
inline double z1(double beta) {
  if (!(beta > 0.0)) throw std::domain_error("z1: beta must be positive");
  if (beta < kSmallBeta) return 1.0 / beta - beta / 24.0;
  return std::exp(-0.5 * beta) / -std::expm1(-beta);
}

/// ln Z1(β), finite for all β > 0.
inline double log_z1(double beta) {
  if (!(beta > 0.0)) throw std::domain_error("log_z1: beta must be positive");
  if (beta < kSmallBeta) return std::log(1.0 / beta - beta / 24.0);
  return -0.5 * beta - std::log(-std::expm1(-beta));
}

}  // namespace qdim
