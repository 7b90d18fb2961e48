// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file combinatorics.hpp
 * @brief Binomials and weak-composition enumeration for oscillator occupations.
 *
 * A d-mode oscillator with n quanta has C(n+d-1, d-1) occupation patterns
 * (stars and bars). Occupation lists with bounded total Σk <= K number
 * C(K+d, d). Both counts size and rank the truncated basis.
 */

#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qdim {

/// Exact binomial coefficient; zero outside 0 <= k <= n.
/// Throws std::overflow_error if the value does not fit in 64 bits.
inline std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // C(n-k+i, i) = C(n-k+i-1, i-1) * (n-k+i) / i, exact at every step
    result = result * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (result > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial: result exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

/// Number of ways to put n quanta into d modes. The zero-mode sector has
/// exactly one state, holding zero quanta.
inline std::uint64_t weak_compositions_count(std::int64_t n, std::int64_t d) {
  if (n < 0 || d < 0) return 0;
  if (d == 0) return n == 0 ? 1 : 0;
  return binomial(n + d - 1, d - 1);
}

/// Number of occupation lists of length d with total quanta <= budget.
inline std::uint64_t bounded_occupations_count(std::int64_t budget, std::int64_t d) {
  if (budget < 0 || d < 0) return 0;
  return binomial(budget + d, d);
}

/// Calls fn(const std::vector<int>&) for every length-d list of nonnegative
/// integers with sum exactly n, in lexicographic order.
template <typename Fn>
void for_each_weak_composition(int n, int d, Fn&& fn) {
  if (n < 0 || d < 0) return;
  if (d == 0) {
    if (n == 0) fn(std::vector<int>{});
    return;
  }
  std::vector<int> occ(static_cast<std::size_t>(d), 0);
  // last slot absorbs the remainder; earlier slots count upward
  occ.back() = n;
  while (true) {
    fn(std::as_const(occ));
    // advance: find the rightmost slot (excluding the last) that can grow
    int pos = d - 2;
    while (pos >= 0) {
      if (occ.back() > 0) break;
      --pos;
      // moving left: fold everything right of pos back into the last slot
      if (pos >= 0) {
        occ.back() += occ[static_cast<std::size_t>(pos + 1)];
        occ[static_cast<std::size_t>(pos + 1)] = 0;
      }
    }
    if (pos < 0) return;
    ++occ[static_cast<std::size_t>(pos)];
    --occ.back();
  }
}

/// Calls fn(const std::vector<int>&) for every length-d list of nonnegative
/// integers with sum <= budget, in lexicographic order.
template <typename Fn>
void for_each_bounded_occupation(int budget, int d, Fn&& fn) {
  if (budget < 0 || d < 0) return;
  std::vector<int> occ(static_cast<std::size_t>(d), 0);
  if (d == 0) {
    fn(std::as_const(occ));
    return;
  }
  int total = 0;
  while (true) {
    fn(std::as_const(occ));
    // increment the last slot; on overflow of the budget carry leftwards
    int pos = d - 1;
    while (pos >= 0) {
      if (total < budget) {
        ++occ[static_cast<std::size_t>(pos)];
        ++total;
        break;
      }
      total -= occ[static_cast<std::size_t>(pos)];
      occ[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) return;
  }
}

}  // namespace qdim
