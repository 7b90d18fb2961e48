// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file symmetry.hpp
 * @brief Degenerate multiplets and the unitary mixing they admit.
 *
 * A multiplet whose members span two or more sectors supports unitaries that
 * mix states of different dimensionality while leaving H0 invariant. The
 * per-sector group Π_d G^(d) cannot produce such a degeneracy.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdim/core.hpp"
#include "qdim/oscillator.hpp"

namespace qdim {

struct Multiplet {
  TwiceEnergy twice_energy;
  std::vector<BasisLabel> members;
  std::map<int, std::size_t> sector_histogram;
  bool enhanced = false;

  std::size_t size() const noexcept { return members.size(); }
};

inline Multiplet make_multiplet(TwiceEnergy level, std::vector<BasisLabel> members) {
  Multiplet m{level, std::move(members), {}, false};
  for (const auto& label : m.members) ++m.sector_histogram[label.d];
  m.enhanced = m.sector_histogram.size() >= 2;
  return m;
}

/// Exact multiplets for every occupied level with 2E <= max_twice_energy.
inline std::vector<Multiplet> spectrum_multiplets(const DimRange& range, EnergyConvention convention,
                                                  std::int64_t max_twice_energy) {
  if (max_twice_energy < 0) throw std::invalid_argument("spectrum_multiplets: max_twice_energy must be nonnegative");
  std::vector<Multiplet> out;
  for (std::int64_t e = 0; e <= max_twice_energy; ++e) {
    auto level = level_degeneracy(range, TwiceEnergy{e}, convention);
    if (level.multiplicity == 0) continue;
    out.push_back(make_multiplet(level.twice_energy, std::move(level.members)));
  }
  return out;
}

struct LevelSymmetry {
  TwiceEnergy twice_energy;
  std::size_t multiplicity = 0;
  bool enhanced = false;

  /// Mixing group of the level, U(m).
  std::string group() const { return "U(" + std::to_string(multiplicity) + ")"; }
};

struct SymmetryReport {
  DimRange range{0, 0};
  EnergyConvention convention = EnergyConvention::Unshifted;
  std::vector<LevelSymmetry> levels;
  /// Per-sector groups G^(d) = U(d); U(0) is the trivial group.
  std::vector<int> sector_groups;
  std::string base_group;
};

/// Π_{d=n1}^{n2} U(d) rendered as text, e.g. "U(0) x U(1) x U(2)".
inline std::string base_group_text(const DimRange& range) {
  std::string s;
  for (int d = range.n1(); d <= range.n2(); ++d) {
    if (!s.empty()) s += " x ";
    s += "U(" + std::to_string(d) + ")";
  }
  return s;
}

inline SymmetryReport symmetry_report(const DimRange& range, EnergyConvention convention,
                                      std::int64_t max_twice_energy) {
  SymmetryReport report{range, convention, {}, {}, base_group_text(range)};
  for (int d = range.n1(); d <= range.n2(); ++d) report.sector_groups.push_back(d);
  for (const auto& m : spectrum_multiplets(range, convention, max_twice_energy))
    report.levels.push_back({m.twice_energy, m.size(), m.enhanced});
  return report;
}

/// Unitary on the full space acting on span(members) as
/// |member_a> -> Σ_b u(a,b) |member_b> and as the identity elsewhere.
/// Members are paired with rows of u in the order given.
inline Eigen::MatrixXcd embed_mixing_unitary(const QDBasis& basis, std::span<const BasisLabel> members,
                                             const Eigen::MatrixXcd& u, double unitary_tol = 1e-10) {
  const auto m = static_cast<Eigen::Index>(members.size());
  if (u.rows() != m || u.cols() != m)
    throw std::invalid_argument("embed_mixing_unitary: u must be m x m for m members");
  if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(m, m)).norm() > unitary_tol)
    throw std::invalid_argument("embed_mixing_unitary: u is not unitary");
  std::vector<Eigen::Index> idx;
  idx.reserve(members.size());
  for (const auto& label : members) idx.push_back(static_cast<Eigen::Index>(basis.index_of(label)));
  {
    auto sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("embed_mixing_unitary: repeated member");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index a = 0; a < m; ++a) w(idx[a], idx[a]) = 0.0;
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) w(idx[b], idx[a]) = u(a, b);
  return w;
}

/// ‖W† H W − H‖_F for the embedded mixing unitary W.
inline double mixing_residual(const BlockOperator& h, std::span<const BasisLabel> members, const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd w = embed_mixing_unitary(*h.basis(), members, u);
  const Eigen::MatrixXcd dense = h.to_dense();
  return (w.adjoint() * dense * w - dense).norm();
}

inline constexpr double kMixingInvarianceTol = 1e-9;

/// True iff mixing the members by u leaves h invariant to 1e-9 (Frobenius).
inline bool verify_unitary_mixing(const BlockOperator& h, std::span<const BasisLabel> members,
                                  const Eigen::MatrixXcd& u) {
  return mixing_residual(h, members, u) < kMixingInvarianceTol;
}

inline bool verify_unitary_mixing(const BlockOperator& h, const Multiplet& multiplet, const Eigen::MatrixXcd& u) {
  return verify_unitary_mixing(h, std::span<const BasisLabel>(multiplet.members), u);
}

/// Eigenvalue clusters of a hermitian operator: (value, count) in ascending
/// order, merging neighbours closer than tol.
inline std::vector<std::pair<double, std::size_t>> eigenvalue_clusters(const BlockOperator& h, double tol = 1e-9) {
  if (!h.hermitian()) throw std::invalid_argument("eigenvalue_clusters: operator is not hermitian");
  std::vector<std::pair<double, std::size_t>> out;
  // each block-diagonal sector can be diagonalized independently
  std::vector<double> values;
  if (h.is_block_diagonal()) {
    for (const auto& [key, m] : h.blocks()) {
      if (key.first != key.second) continue;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) values.push_back(es.eigenvalues()(i));
    }
    // sectors with no stored block contribute zeros
    const QDBasis& basis = *h.basis();
    for (int d = basis.range().n1(); d <= basis.range().n2(); ++d)
      if (!h.block(d, d)) values.insert(values.end(), basis.sector_size(d), 0.0);
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense(), Eigen::EigenvaluesOnly);
    values.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  }
  std::sort(values.begin(), values.end());
  for (double v : values) {
    if (!out.empty() && v - out.back().first <= tol) ++out.back().second;
    else out.emplace_back(v, 1);
  }
  return out;
}

}  // namespace qdim
