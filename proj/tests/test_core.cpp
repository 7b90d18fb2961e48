// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qdim/combinatorics.hpp"
#include "qdim/core.hpp"
#include "qdim/dynamics.hpp"
#include "qdim/oscillator.hpp"

using namespace qdim;
using qdim::testing::brute_labels;
using qdim::testing::random_amplitudes;

namespace {
constexpr auto kUn = EnergyConvention::Unshifted;
constexpr auto kSh = EnergyConvention::Shifted;

BasisLabel L(int d, std::vector<int> occ) { return BasisLabel(d, std::move(occ)); }
}  // namespace

TEST(DimRange, RejectsInvertedOrNegative) {
  EXPECT_THROW(DimRange(3, 1), std::invalid_argument);
  EXPECT_THROW(DimRange(-1, 2), std::invalid_argument);
  EXPECT_NO_THROW(DimRange(0, 0));
  EXPECT_EQ(DimRange(1, 4).sectors(), 4);
}

TEST(BasisLabel, Validation) {
  EXPECT_THROW(L(2, {0}), std::invalid_argument);
  EXPECT_THROW(L(1, {-1}), std::invalid_argument);
  EXPECT_EQ(BasisLabel::ground(3), L(3, {0, 0, 0}));
  EXPECT_EQ(to_string(L(0, {})), "0;");
  EXPECT_EQ(to_string(L(3, {0, 2, 1})), "3;0,2,1");
}

TEST(EnumerateBasis, SingleSector) {
  auto b = enumerate_basis({1, 1}, 2, kUn);
  ASSERT_EQ(b->size(), 3u);
  EXPECT_EQ(b->label(0), L(1, {0}));
  EXPECT_EQ(b->label(1), L(1, {1}));
  EXPECT_EQ(b->label(2), L(1, {2}));
}

TEST(EnumerateBasis, ZeroCutoffKeepsSectorGrounds) {
  auto b = enumerate_basis({0, 3}, 0, kUn);
  ASSERT_EQ(b->size(), 4u);
  for (int d = 0; d <= 3; ++d) EXPECT_EQ(b->label(static_cast<std::size_t>(d)), BasisLabel::ground(d));
}

TEST(EnumerateBasis, SmallMixedBasisMatchesBruteForce) {
  auto b = enumerate_basis({0, 2}, 1, kUn);
  const std::vector<BasisLabel> expected{L(0, {}), L(1, {0}), L(1, {1}), L(2, {0, 0}), L(2, {0, 1}), L(2, {1, 0})};
  EXPECT_EQ(b->labels(), expected);
}

TEST(EnumerateBasis, CountAndOrderAgainstBruteForce) {
  for (int n1 = 0; n1 <= 4; ++n1) {
    for (int n2 = n1; n2 <= 4; ++n2) {
      for (int k = 0; k <= 6; ++k) {
        auto b = enumerate_basis({n1, n2}, k, kSh);
        const auto raw = brute_labels(n1, n2, k);
        ASSERT_EQ(b->size(), raw.size()) << n1 << ' ' << n2 << ' ' << k;
        // odometer order is ascending d then lexicographic, same as the basis
        for (std::size_t i = 0; i < raw.size(); ++i) {
          EXPECT_EQ(b->label(i).d, raw[i].d);
          EXPECT_EQ(b->label(i).occ, raw[i].occ);
        }
        std::uint64_t formula = 0;
        for (int d = n1; d <= n2; ++d)
          for (int n = 0; n <= k; ++n) formula += weak_compositions_count(n, d);
        EXPECT_EQ(b->size(), formula);
      }
    }
  }
}

TEST(EnumerateBasis, IndexRoundTrip) {
  auto b = enumerate_basis({0, 4}, 5, kUn);
  for (std::size_t i = 0; i < b->size(); ++i) ASSERT_EQ(b->index_of(b->label(i)), i);
  EXPECT_FALSE(b->find(L(5, {0, 0, 0, 0, 0})).has_value());
  EXPECT_FALSE(b->find(L(2, {3, 3})).has_value());
  EXPECT_THROW(b->index_of(L(1, {6})), std::out_of_range);
}

TEST(StateVector, NormalizationAndWeights) {
  auto b = enumerate_basis({0, 3}, 1, kUn);
  std::vector<std::pair<BasisLabel, cplx>> terms{{L(1, {0}), 3.0}, {L(3, {0, 0, 0}), 4.0}};
  auto psi = StateVector::superposition(b, terms);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
  EXPECT_NEAR(psi.sector_weight(1), 9.0 / 25.0, 1e-15);
  EXPECT_NEAR(psi.sector_weight(3), 16.0 / 25.0, 1e-15);
  EXPECT_THROW(StateVector::zero(b).normalized(), std::domain_error);
  EXPECT_THROW(StateVector(b, Eigen::VectorXcd::Zero(2)), std::invalid_argument);
}

TEST(Apply, IdentityIsIdentity) {
  auto b = enumerate_basis({0, 3}, 2, kUn);
  std::mt19937_64 rng(7);
  StateVector psi(b, random_amplitudes(static_cast<Eigen::Index>(b->size()), rng));
  auto out = apply(BlockOperator::identity(b), psi);
  EXPECT_LT((out.amps() - psi.amps()).norm(), 1e-15);
}

TEST(Apply, DimensionEigenvalue) {
  auto b = enumerate_basis({0, 3}, 1, kUn);
  auto ket = StateVector::basis_state(b, L(2, {1, 0}));
  auto out = apply(dimension_operator(b), ket);
  EXPECT_LT((out.amps() - 2.0 * ket.amps()).norm(), 1e-15);
}

TEST(Apply, BlockDiagonalNeverLeavesSector) {
  auto b = enumerate_basis({0, 3}, 3, kSh);
  auto h = oscillator_hamiltonian(b) + ladder(b, 2, 1, LadderKind::Create) * ladder(b, 2, 2, LadderKind::Annihilate);
  std::mt19937_64 rng(11);
  for (int d = 0; d <= 3; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b->size()));
      const auto off = static_cast<Eigen::Index>(b->sector_offset(d));
      const auto len = static_cast<Eigen::Index>(b->sector_size(d));
      v.segment(off, len) = random_amplitudes(len, rng);
      auto out = apply(h, StateVector(b, v));
      for (int other = 0; other <= 3; ++other)
        if (other != d) EXPECT_EQ(out.sector_weight(other), 0.0);
    }
  }
}

TEST(Apply, BasisMismatch) {
  auto a = enumerate_basis({0, 2}, 1, kUn);
  auto b = enumerate_basis({0, 2}, 2, kUn);
  EXPECT_THROW(apply(dimension_operator(a), StateVector::basis_state(b, L(0, {}))), BasisMismatch);
  // an equal but separately built basis is the same space
  auto a2 = enumerate_basis({0, 2}, 1, kUn);
  EXPECT_NO_THROW(apply(dimension_operator(a), StateVector::basis_state(a2, L(0, {}))));
}

TEST(DimensionOperator, TrivialForSingleSector) {
  auto b = enumerate_basis({2, 2}, 3, kUn);
  const auto n = static_cast<Eigen::Index>(b->size());
  EXPECT_LT((dimension_operator(b).to_dense() - 2.0 * Eigen::MatrixXcd::Identity(n, n)).norm(), 1e-15);
}

TEST(DimensionOperator, Spectrum) {
  auto b = enumerate_basis({0, 2}, 1, kUn);
  Eigen::VectorXcd diag = dimension_operator(b).to_dense().diagonal();
  std::vector<double> values;
  for (Eigen::Index i = 0; i < diag.size(); ++i) values.push_back(diag(i).real());
  EXPECT_EQ(values, (std::vector<double>{0, 1, 1, 2, 2, 2}));
}

TEST(Expectation, Basics) {
  auto b = enumerate_basis({0, 3}, 1, kUn);
  std::mt19937_64 rng(3);
  StateVector psi(b, random_amplitudes(static_cast<Eigen::Index>(b->size()), rng));
  EXPECT_NEAR(expectation(BlockOperator::identity(b), psi).real(), 1.0, 1e-14);

  auto dim = dimension_operator(b);
  EXPECT_NEAR(expectation(dim, StateVector::basis_state(b, L(3, {0, 0, 0}))).real(), 3.0, 1e-15);

  std::vector<std::pair<BasisLabel, cplx>> pair{{L(1, {0}), 1.0}, {L(3, {0, 0, 0}), 1.0}};
  const cplx v = expectation(dim, StateVector::superposition(b, pair));
  EXPECT_NEAR(v.real(), 2.0, 1e-14);
  EXPECT_LT(std::abs(v.imag()), 1e-10);

  std::vector<std::pair<BasisLabel, cplx>> doublet{{L(1, {1}), 1.0}, {L(3, {0, 0, 0}), 1.0}};
  EXPECT_NEAR(expectation(oscillator_hamiltonian(b), StateVector::superposition(b, doublet)).real(), 1.5, 1e-14);

  EXPECT_THROW(expectation(dim, StateVector(b, 2.0 * psi.amps())), std::invalid_argument);
}

TEST(BlockOperator, HermitianFlagIsValidated) {
  auto b = enumerate_basis({0, 1}, 1, kUn);
  BlockOperator::BlockMap blocks;
  blocks.emplace(BlockOperator::SectorPair{0, 1}, Eigen::MatrixXcd::Ones(1, 2));
  EXPECT_THROW(BlockOperator(b, blocks, true), std::invalid_argument);
  EXPECT_NO_THROW(BlockOperator(b, blocks, false));
  blocks.emplace(BlockOperator::SectorPair{0, 0}, Eigen::MatrixXcd::Ones(2, 2));
  EXPECT_THROW(BlockOperator(b, blocks, false), std::invalid_argument);  // wrong shape
}

TEST(BlockOperator, ConstructorsProduceHermitianOperators) {
  for (auto conv : {kUn, kSh}) {
    auto b = enumerate_basis({0, 4}, 4, conv);
    EXPECT_LT(dimension_operator(b).hermiticity_defect(), 1e-12);
    EXPECT_LT(oscillator_hamiltonian(b).hermiticity_defect(), 1e-12);
    std::vector<LabelPair> pairs{{L(1, {1}), L(3, {0, 0, 0})}, {L(0, {}), L(4, {1, 0, 0, 0})}};
    auto hop = hopping_interaction(b, 0.3, pairs);
    const Eigen::MatrixXcd m = (oscillator_hamiltonian(b) + hop).to_dense();
    EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Commutator, OscillatorCommutesWithDimension) {
  for (auto conv : {kUn, kSh})
    for (int n1 = 0; n1 <= 3; ++n1)
      for (int n2 = n1; n2 <= 4; ++n2) {
        auto b = enumerate_basis({n1, n2}, 3, conv);
        EXPECT_LT(commutator_norm(oscillator_hamiltonian(b), dimension_operator(b)), 1e-12);
      }
  auto b = enumerate_basis({0, 3}, 2, kUn);
  EXPECT_EQ(commutator_norm(dimension_operator(b), dimension_operator(b)), 0.0);
}

TEST(Commutator, CrossSectorHoppingBreaksIt) {
  auto b = enumerate_basis({0, 3}, 2, kUn);
  std::vector<LabelPair> pair{{L(1, {1}), L(3, {0, 0, 0})}};
  const double g = 0.1;
  auto h = oscillator_hamiltonian(b) + hopping_interaction(b, g, pair);
  // [H, D] has entries ±g(3 - 1) at the two coupled positions
  const double expected = std::sqrt(2.0 * (2.0 * g) * (2.0 * g));
  EXPECT_NEAR(commutator_norm(h, dimension_operator(b)), expected, 1e-12);
  EXPECT_NEAR(expected, 2.0 * std::sqrt(2.0) * g, 1e-15);
}

TEST(Ladder, VacuumAnnihilates) {
  auto b = enumerate_basis({0, 3}, 2, kUn);
  for (int d = 1; d <= 3; ++d)
    for (int i = 1; i <= d; ++i) {
      auto out = apply(ladder(b, d, i, LadderKind::Annihilate), StateVector::basis_state(b, BasisLabel::ground(d)));
      EXPECT_EQ(out.norm(), 0.0);
    }
}

TEST(Ladder, CreateThenAnnihilate) {
  auto b = enumerate_basis({0, 3}, 2, kUn);
  auto ket = StateVector::basis_state(b, L(1, {1}));
  auto aadag = ladder(b, 1, 1, LadderKind::Annihilate) * ladder(b, 1, 1, LadderKind::Create);
  auto out = apply(aadag, ket);
  EXPECT_LT((out.amps() - 2.0 * ket.amps()).norm(), 1e-14);
}

TEST(Ladder, TruncatedCreateMapsToZero) {
  auto b = enumerate_basis({2, 2}, 2, kUn);
  auto out = apply(ladder(b, 2, 1, LadderKind::Create), StateVector::basis_state(b, L(2, {1, 1})));
  EXPECT_EQ(out.norm(), 0.0);
}

TEST(Ladder, NumberOperatorsRebuildHamiltonian) {
  auto b = enumerate_basis({0, 4}, 3, kUn);
  auto h = oscillator_hamiltonian(b);
  for (int d = 0; d <= 4; ++d) {
    const auto n = static_cast<Eigen::Index>(b->sector_size(d));
    Eigen::MatrixXcd block = 0.5 * d * Eigen::MatrixXcd::Identity(n, n);
    for (int i = 1; i <= d; ++i) {
      auto number = ladder(b, d, i, LadderKind::Create) * ladder(b, d, i, LadderKind::Annihilate);
      block += *number.block(d, d);
    }
    EXPECT_LT((block - *h.block(d, d)).norm(), 1e-13) << "sector " << d;
  }
}

TEST(Ladder, ModeOutOfRange) {
  auto b = enumerate_basis({0, 3}, 2, kUn);
  EXPECT_THROW(ladder(b, 2, 3, LadderKind::Create), std::out_of_range);
  EXPECT_THROW(ladder(b, 2, 0, LadderKind::Create), std::out_of_range);
  EXPECT_THROW(ladder(b, 4, 1, LadderKind::Create), std::out_of_range);
  EXPECT_THROW(ladder(b, 0, 1, LadderKind::Annihilate), std::out_of_range);
}
