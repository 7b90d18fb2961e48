// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dynamics.hpp
 * @brief Dimension-mixing interactions and exact unitary time evolution.
 *
 * Evolution uses one eigendecomposition H = V Λ V† of the assembled dense
 * Hamiltonian, after which ψ(t) = V e^{-iΛt} V† ψ0 for any real t.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qdim/core.hpp"

namespace qdim {

using LabelPair = std::pair<BasisLabel, BasisLabel>;

/// Hermitian hopping with amplitude g between each listed pair of kets.
/// Pairs may cross sectors; repeated pairs accumulate.
inline BlockOperator hopping_interaction(const BasisPtr& basis, double g, std::span<const LabelPair> pairs) {
  BlockOperator::BlockMap blocks;
  auto entry = [&](const BasisLabel& row, const BasisLabel& col) -> cplx& {
    const BlockOperator::SectorPair key{row.d, col.d};
    auto it = blocks.find(key);
    if (it == blocks.end()) {
      const auto r = static_cast<Eigen::Index>(basis->sector_size(row.d));
      const auto c = static_cast<Eigen::Index>(basis->sector_size(col.d));
      it = blocks.emplace(key, Eigen::MatrixXcd::Zero(r, c)).first;
    }
    const auto i = static_cast<Eigen::Index>(basis->index_of(row) - basis->sector_offset(row.d));
    const auto j = static_cast<Eigen::Index>(basis->index_of(col) - basis->sector_offset(col.d));
    return it->second(i, j);
  };
  for (const auto& [a, b] : pairs) {
    if (!basis->contains(a)) throw std::out_of_range("hopping_interaction: label " + to_string(a) + " is not in the basis");
    if (!basis->contains(b)) throw std::out_of_range("hopping_interaction: label " + to_string(b) + " is not in the basis");
    if (a == b) throw std::invalid_argument("hopping_interaction: a pair must couple two distinct kets");
    entry(a, b) += g;
    entry(b, a) += g;
  }
  return BlockOperator(basis, std::move(blocks), true);
}

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> mean_dim;
  std::vector<double> norm;
};

inline constexpr std::size_t kDefaultEvolveSizeGuard = 4096;

/// Exact propagator e^{-iHt} from a one-time eigendecomposition.
class Propagator {
 public:
  explicit Propagator(const BlockOperator& h, std::size_t size_guard = kDefaultEvolveSizeGuard) : basis_(h.basis()) {
    if (!h.hermitian()) throw std::invalid_argument("Propagator: Hamiltonian is not flagged hermitian");
    if (basis_->size() > size_guard)
      throw std::length_error("Propagator: basis of " + std::to_string(basis_->size()) +
                              " states exceeds the dense size guard of " + std::to_string(size_guard));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.to_dense());
    if (es.info() != Eigen::Success) throw std::runtime_error("Propagator: eigendecomposition failed");
    energies_ = es.eigenvalues();
    vectors_ = es.eigenvectors();
  }

  const BasisPtr& basis() const noexcept { return basis_; }
  const Eigen::VectorXd& energies() const noexcept { return energies_; }

  StateVector state_at(const StateVector& psi0, double t) const {
    detail::require_same(*basis_, *psi0.basis());
    Eigen::VectorXcd coeffs = vectors_.adjoint() * psi0.amps();
    for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) *= std::polar(1.0, -energies_(i) * t);
    return StateVector(psi0.basis(), vectors_ * coeffs);
  }

 private:
  BasisPtr basis_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

namespace detail {
inline double mean_dimension(const StateVector& psi) {
  const QDBasis& basis = *psi.basis();
  double num = 0.0;
  for (int d = basis.range().n1(); d <= basis.range().n2(); ++d) num += d * psi.sector_weight(d);
  return num;
}
}  // namespace detail

/// ψ(t) = e^{-iHt} ψ0 at each requested time, with <D>(t) and ‖ψ(t)‖.
inline Trajectory evolve(const BlockOperator& h, const StateVector& psi0, std::span<const double> times,
                         std::size_t size_guard = kDefaultEvolveSizeGuard) {
  detail::require_same(*h.basis(), *psi0.basis());
  if (!psi0.is_normalized()) throw std::invalid_argument("evolve: initial state is not normalized");
  if (!times.empty() && times.front() < 0.0) throw std::invalid_argument("evolve: times must start at t >= 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1]) throw std::invalid_argument("evolve: times must be sorted");
  if (h.hermiticity_defect() > BlockOperator::kHermitianTol)
    throw std::invalid_argument("evolve: Hamiltonian is not hermitian");

  const Propagator prop(h, size_guard);
  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  for (double t : times) {
    StateVector psi = prop.state_at(psi0, t);
    traj.norm.push_back(psi.norm());
    traj.mean_dim.push_back(detail::mean_dimension(psi));
    traj.states.push_back(std::move(psi));
  }
  return traj;
}

/// <D^2> - <D>^2.
inline double dimension_variance(const StateVector& psi) {
  if (!psi.is_normalized()) throw std::invalid_argument("dimension_variance: state is not normalized");
  const QDBasis& basis = *psi.basis();
  double m1 = 0.0;
  double m2 = 0.0;
  for (int d = basis.range().n1(); d <= basis.range().n2(); ++d) {
    const double w = psi.sector_weight(d);
    m1 += d * w;
    m2 += static_cast<double>(d) * d * w;
  }
  return std::max(0.0, m2 - m1 * m1);
}

}  // namespace qdim
