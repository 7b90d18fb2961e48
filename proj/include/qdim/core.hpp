// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file core.hpp
 * @brief Truncated direct-sum Hilbert spaces H = ⊕_{d=n1}^{n2} H^(d).
 *
 * Each sector H^(d) is spanned by oscillator occupation kets |d; k1,...,kd>
 * truncated to total quanta Σk <= K, so every level with at most K quanta
 * is fully represented. Sector d = 0 holds the single ket |0;>.
 *
 * Operators are stored as dense blocks keyed by (row sector, column sector).
 * Missing blocks are zero, so a block-diagonal operator never moves amplitude
 * between sectors.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdim/combinatorics.hpp"

namespace qdim {

using cplx = std::complex<double>;

/// Allowed dimension window n1 <= d <= n2.
class DimRange {
 public:
  DimRange(int n1, int n2) : n1_(n1), n2_(n2) {
    if (n1 < 0 || n2 < 0) throw std::invalid_argument("DimRange: dimensions must be nonnegative");
    if (n1 > n2) throw std::invalid_argument("DimRange: n1 must not exceed n2");
  }

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  int sectors() const noexcept { return n2_ - n1_ + 1; }
  bool contains(int d) const noexcept { return d >= n1_ && d <= n2_; }

  friend bool operator==(const DimRange&, const DimRange&) = default;

 private:
  int n1_;
  int n2_;
};

/// Fixed-d vacuum energy: d/2 (Unshifted) or 0 (Shifted).
enum class EnergyConvention { Unshifted, Shifted };

inline const char* to_string(EnergyConvention c) {
  return c == EnergyConvention::Unshifted ? "unshifted" : "shifted";
}

/// One ket |d; k1,...,kd>.
struct BasisLabel {
  int d = 0;
  std::vector<int> occ;

  BasisLabel() = default;
  BasisLabel(int dim, std::vector<int> quanta) : d(dim), occ(std::move(quanta)) {
    if (d < 0) throw std::invalid_argument("BasisLabel: negative dimension");
    if (occ.size() != static_cast<std::size_t>(d))
      throw std::invalid_argument("BasisLabel: occupation list length must equal d");
    if (std::any_of(occ.begin(), occ.end(), [](int k) { return k < 0; }))
      throw std::invalid_argument("BasisLabel: negative occupation");
  }

  /// Sector ground state |d; 0,...,0>.
  static BasisLabel ground(int dim) {
    return BasisLabel(dim, std::vector<int>(static_cast<std::size_t>(std::max(dim, 0)), 0));
  }

  int total_quanta() const noexcept {
    int n = 0;
    for (int k : occ) n += k;
    return n;
  }

  // ascending d, then lexicographic occ
  friend auto operator<=>(const BasisLabel&, const BasisLabel&) = default;
  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

/// Wire syntax `d;k1,k2,...`, with `0;` for the zero-dimensional ket.
inline std::string to_string(const BasisLabel& label) {
  std::string s = std::to_string(label.d) + ";";
  for (std::size_t i = 0; i < label.occ.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(label.occ[i]);
  }
  return s;
}

/// Deterministic enumeration of all kets with n1 <= d <= n2 and Σk <= K,
/// ordered by ascending d then lexicographic occupations.
class QDBasis {
 public:
  QDBasis(DimRange range, int cutoff_k, EnergyConvention convention)
      : range_(range), cutoff_k_(cutoff_k), convention_(convention) {
    if (cutoff_k < 0) throw std::invalid_argument("QDBasis: cutoff must be nonnegative");
    std::size_t total = 0;
    for (int d = range.n1(); d <= range.n2(); ++d) {
      offsets_.push_back(total);
      total += static_cast<std::size_t>(bounded_occupations_count(cutoff_k, d));
    }
    offsets_.push_back(total);
    labels_.reserve(total);
    for (int d = range.n1(); d <= range.n2(); ++d) {
      for_each_bounded_occupation(cutoff_k, d, [&](const std::vector<int>& occ) {
        BasisLabel label;
        label.d = d;
        label.occ = occ;
        labels_.push_back(std::move(label));
      });
    }
  }

  const DimRange& range() const noexcept { return range_; }
  int cutoff_k() const noexcept { return cutoff_k_; }
  EnergyConvention convention() const noexcept { return convention_; }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<BasisLabel>& labels() const noexcept { return labels_; }
  const BasisLabel& label(std::size_t i) const { return labels_.at(i); }

  std::size_t sector_offset(int d) const {
    check_sector(d);
    return offsets_[static_cast<std::size_t>(d - range_.n1())];
  }
  std::size_t sector_size(int d) const {
    check_sector(d);
    const auto s = static_cast<std::size_t>(d - range_.n1());
    return offsets_[s + 1] - offsets_[s];
  }

  /// Position of a label, computed by combinatorial ranking in O(d * k).
  std::optional<std::size_t> find(const BasisLabel& label) const {
    if (!range_.contains(label.d) || label.occ.size() != static_cast<std::size_t>(label.d))
      return std::nullopt;
    int budget = cutoff_k_;
    std::size_t rank = 0;
    for (int i = 0; i < label.d; ++i) {
      const int k = label.occ[static_cast<std::size_t>(i)];
      if (k < 0 || k > budget) return std::nullopt;
      const int rest = label.d - i - 1;
      for (int v = 0; v < k; ++v)
        rank += static_cast<std::size_t>(bounded_occupations_count(budget - v, rest));
      budget -= k;
    }
    return sector_offset(label.d) + rank;
  }

  std::size_t index_of(const BasisLabel& label) const {
    auto idx = find(label);
    if (!idx) throw std::out_of_range("QDBasis: label " + to_string(label) + " is not in the basis");
    return *idx;
  }

  bool contains(const BasisLabel& label) const { return find(label).has_value(); }

  /// Same range, cutoff and convention, hence identical labels and indices.
  bool same_space(const QDBasis& other) const noexcept {
    return range_ == other.range_ && cutoff_k_ == other.cutoff_k_ && convention_ == other.convention_;
  }

 private:
  void check_sector(int d) const {
    if (!range_.contains(d)) throw std::out_of_range("QDBasis: sector outside dimension range");
  }

  DimRange range_;
  int cutoff_k_;
  EnergyConvention convention_;
  std::vector<BasisLabel> labels_;
  std::vector<std::size_t> offsets_;
};

using BasisPtr = std::shared_ptr<const QDBasis>;

inline BasisPtr enumerate_basis(DimRange range, int cutoff_k, EnergyConvention convention) {
  return std::make_shared<const QDBasis>(range, cutoff_k, convention);
}

class BasisMismatch : public std::invalid_argument {
 public:
  BasisMismatch() : std::invalid_argument("operands live on different bases") {}
};

namespace detail {
inline void require_same(const QDBasis& a, const QDBasis& b) {
  if (&a != &b && !a.same_space(b)) throw BasisMismatch();
}
}  // namespace detail

/// Complex amplitudes over a QDBasis.
class StateVector {
 public:
  StateVector(BasisPtr basis, Eigen::VectorXcd amps) : basis_(std::move(basis)), amps_(std::move(amps)) {
    if (!basis_) throw std::invalid_argument("StateVector: null basis");
    if (static_cast<std::size_t>(amps_.size()) != basis_->size())
      throw std::invalid_argument("StateVector: amplitude count does not match basis size");
  }

  static StateVector zero(BasisPtr basis) {
    const auto n = static_cast<Eigen::Index>(basis->size());
    return StateVector(std::move(basis), Eigen::VectorXcd::Zero(n));
  }

  static StateVector basis_state(BasisPtr basis, const BasisLabel& label) {
    const auto i = static_cast<Eigen::Index>(basis->index_of(label));
    auto psi = zero(std::move(basis));
    psi.amps_(i) = 1.0;
    return psi;
  }

  /// Normalized superposition Σ c_j |label_j>.
  static StateVector superposition(BasisPtr basis, std::span<const std::pair<BasisLabel, cplx>> terms) {
    auto psi = zero(basis);
    for (const auto& [label, c] : terms) psi.amps_(static_cast<Eigen::Index>(basis->index_of(label))) += c;
    return psi.normalized();
  }

  const BasisPtr& basis() const noexcept { return basis_; }
  const Eigen::VectorXcd& amps() const noexcept { return amps_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amps_.size()); }

  cplx amplitude(const BasisLabel& label) const {
    return amps_(static_cast<Eigen::Index>(basis_->index_of(label)));
  }

  double norm() const { return amps_.norm(); }

  StateVector normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::domain_error("StateVector: cannot normalize the zero vector");
    return StateVector(basis_, amps_ / n);
  }

  bool is_normalized(double tol = 1e-10) const { return std::abs(amps_.squaredNorm() - 1.0) <= tol; }

  /// Probability weight carried by sector d.
  double sector_weight(int d) const {
    const auto off = static_cast<Eigen::Index>(basis_->sector_offset(d));
    const auto len = static_cast<Eigen::Index>(basis_->sector_size(d));
    return amps_.segment(off, len).squaredNorm();
  }

 private:
  BasisPtr basis_;
  Eigen::VectorXcd amps_;
};

/// Operator on a QDBasis stored as dense blocks between sectors.
///
/// A hermitian-flagged operator is validated on construction:
/// block(d,d') must equal block(d',d)^† within 1e-12.
class BlockOperator {
 public:
  using SectorPair = std::pair<int, int>;
  using BlockMap = std::map<SectorPair, Eigen::MatrixXcd>;

  static constexpr double kHermitianTol = 1e-12;

  BlockOperator(BasisPtr basis, BlockMap blocks, bool hermitian)
      : basis_(std::move(basis)), blocks_(std::move(blocks)), hermitian_(hermitian) {
    if (!basis_) throw std::invalid_argument("BlockOperator: null basis");
    for (const auto& [key, m] : blocks_) {
      const auto rows = static_cast<Eigen::Index>(basis_->sector_size(key.first));
      const auto cols = static_cast<Eigen::Index>(basis_->sector_size(key.second));
      if (m.rows() != rows || m.cols() != cols)
        throw std::invalid_argument("BlockOperator: block shape does not match sector sizes");
    }
    if (hermitian_ && hermiticity_defect() > kHermitianTol)
      throw std::invalid_argument("BlockOperator: flagged hermitian but M != M^dagger");
  }

  static BlockOperator zero(BasisPtr basis, bool hermitian = true) {
    return BlockOperator(std::move(basis), {}, hermitian);
  }

  static BlockOperator identity(BasisPtr basis) {
    BlockMap blocks;
    for (int d = basis->range().n1(); d <= basis->range().n2(); ++d) {
      const auto n = static_cast<Eigen::Index>(basis->sector_size(d));
      blocks.emplace(SectorPair{d, d}, Eigen::MatrixXcd::Identity(n, n));
    }
    return BlockOperator(std::move(basis), std::move(blocks), true);
  }

  const BasisPtr& basis() const noexcept { return basis_; }
  const BlockMap& blocks() const noexcept { return blocks_; }
  bool hermitian() const noexcept { return hermitian_; }

  /// Block (row sector, column sector), or nullptr when it is zero.
  const Eigen::MatrixXcd* block(int row_d, int col_d) const {
    auto it = blocks_.find({row_d, col_d});
    return it == blocks_.end() ? nullptr : &it->second;
  }

  bool is_block_diagonal() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& kv) {
      return kv.first.first == kv.first.second || kv.second.cwiseAbs().maxCoeff() == 0.0;
    });
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& [key, m] : blocks_) s += m.squaredNorm();
    return std::sqrt(s);
  }

  /// max |M - M^dagger| over all entries.
  double hermiticity_defect() const {
    double worst = 0.0;
    for (const auto& [key, m] : blocks_) {
      const Eigen::MatrixXcd* mirror = block(key.second, key.first);
      if (mirror) {
        worst = std::max(worst, (m - mirror->adjoint()).cwiseAbs().maxCoeff());
      } else if (m.size() > 0) {
        worst = std::max(worst, m.cwiseAbs().maxCoeff());
      }
    }
    return worst;
  }

  Eigen::MatrixXcd to_dense() const {
    const auto n = static_cast<Eigen::Index>(basis_->size());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [key, m] : blocks_) {
      const auto r = static_cast<Eigen::Index>(basis_->sector_offset(key.first));
      const auto c = static_cast<Eigen::Index>(basis_->sector_offset(key.second));
      out.block(r, c, m.rows(), m.cols()) = m;
    }
    return out;
  }

  /// Matrix element <row| O |col>.
  cplx element(const BasisLabel& row, const BasisLabel& col) const {
    const auto i = basis_->index_of(row);
    const auto j = basis_->index_of(col);
    const Eigen::MatrixXcd* m = block(row.d, col.d);
    if (!m) return 0.0;
    return (*m)(static_cast<Eigen::Index>(i - basis_->sector_offset(row.d)),
                static_cast<Eigen::Index>(j - basis_->sector_offset(col.d)));
  }

  friend BlockOperator operator+(const BlockOperator& a, const BlockOperator& b) {
    detail::require_same(*a.basis_, *b.basis_);
    BlockMap out = a.blocks_;
    for (const auto& [key, m] : b.blocks_) {
      auto it = out.find(key);
      if (it == out.end()) out.emplace(key, m);
      else it->second += m;
    }
    return BlockOperator(a.basis_, std::move(out), a.hermitian_ && b.hermitian_);
  }

  friend BlockOperator operator-(const BlockOperator& a, const BlockOperator& b) {
    return a + (-1.0) * b;
  }

  friend BlockOperator operator*(double s, const BlockOperator& a) {
    BlockMap out = a.blocks_;
    for (auto& [key, m] : out) m *= s;
    return BlockOperator(a.basis_, std::move(out), a.hermitian_);
  }

  /// Composition: (AB)(r,c) = Σ_m A(r,m) B(m,c).
  friend BlockOperator operator*(const BlockOperator& a, const BlockOperator& b) {
    detail::require_same(*a.basis_, *b.basis_);
    BlockMap out;
    for (const auto& [ka, ma] : a.blocks_) {
      for (const auto& [kb, mb] : b.blocks_) {
        if (ka.second != kb.first) continue;
        const SectorPair key{ka.first, kb.second};
        auto it = out.find(key);
        if (it == out.end()) out.emplace(key, ma * mb);
        else it->second.noalias() += ma * mb;
      }
    }
    return BlockOperator(a.basis_, std::move(out), false);
  }

 private:
  BasisPtr basis_;
  BlockMap blocks_;
  bool hermitian_;
};

/// <k;i| O ψ> = Σ_{d,j} block(k,d)[i,j] ψ(d,j); absent blocks contribute nothing.
inline StateVector apply(const BlockOperator& op, const StateVector& psi) {
  detail::require_same(*op.basis(), *psi.basis());
  const QDBasis& basis = *op.basis();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(psi.amps().size());
  for (const auto& [key, m] : op.blocks()) {
    const auto r = static_cast<Eigen::Index>(basis.sector_offset(key.first));
    const auto c = static_cast<Eigen::Index>(basis.sector_offset(key.second));
    out.segment(r, m.rows()).noalias() += m * psi.amps().segment(c, m.cols());
  }
  return StateVector(psi.basis(), std::move(out));
}

/// <ψ|O|ψ>. The state must be normalized to 1e-10.
inline cplx expectation(const BlockOperator& op, const StateVector& psi) {
  detail::require_same(*op.basis(), *psi.basis());
  if (!psi.is_normalized()) throw std::invalid_argument("expectation: state is not normalized");
  return psi.amps().dot(apply(op, psi).amps());
}

/// D = ⊕ d·I^(d).
inline BlockOperator dimension_operator(const BasisPtr& basis) {
  BlockOperator::BlockMap blocks;
  for (int d = basis->range().n1(); d <= basis->range().n2(); ++d) {
    const auto n = static_cast<Eigen::Index>(basis->sector_size(d));
    blocks.emplace(BlockOperator::SectorPair{d, d}, static_cast<double>(d) * Eigen::MatrixXcd::Identity(n, n));
  }
  return BlockOperator(basis, std::move(blocks), true);
}

inline BlockOperator commutator(const BlockOperator& a, const BlockOperator& b) {
  return a * b - b * a;
}

/// Frobenius norm of AB - BA.
inline double commutator_norm(const BlockOperator& a, const BlockOperator& b) {
  return commutator(a, b).frobenius_norm();
}

enum class LadderKind { Create, Annihilate };

/// Creation or annihilation on mode `mode` (1-based) of sector d.
/// Creation out of the truncated space maps to zero.
inline BlockOperator ladder(const BasisPtr& basis, int d, int mode, LadderKind kind) {
  if (!basis->range().contains(d)) throw std::out_of_range("ladder: sector outside dimension range");
  if (mode < 1 || mode > d) throw std::out_of_range("ladder: mode index must satisfy 1 <= i <= d");
  const std::size_t off = basis->sector_offset(d);
  const auto n = static_cast<Eigen::Index>(basis->sector_size(d));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const auto slot = static_cast<std::size_t>(mode - 1);
  for (Eigen::Index col = 0; col < n; ++col) {
    BasisLabel target = basis->label(off + static_cast<std::size_t>(col));
    const int k = target.occ[slot];
    double amp = 0.0;
    if (kind == LadderKind::Create) {
      target.occ[slot] = k + 1;
      amp = std::sqrt(static_cast<double>(k + 1));
    } else {
      if (k == 0) continue;
      target.occ[slot] = k - 1;
      amp = std::sqrt(static_cast<double>(k));
    }
    auto row = basis->find(target);
    if (!row) continue;  // above the cutoff
    m(static_cast<Eigen::Index>(*row - off), col) = amp;
  }
  BlockOperator::BlockMap blocks;
  blocks.emplace(BlockOperator::SectorPair{d, d}, std::move(m));
  return BlockOperator(basis, std::move(blocks), false);
}

}  // namespace qdim
