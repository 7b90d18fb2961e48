// Copyright 2026 The qdim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

/**
 * @file thermo.hpp
 * @brief Canonical ensemble of the QD oscillator (k_B = 1, ħω = 1).
 *
 * Each sector factorizes into d independent oscillators, so
 *   Z(β) = Σ_d x^d,  x = Z1(β) (unshifted) or e^{β/2} Z1(β) (shifted),
 *   <D> = Σ_d d x^d / Z,
 *   <H0> = -∂_β ln Z = <D> ε(β),
 * with ε = coth(β/2)/2 (unshifted) or 1/(e^β - 1) (shifted).
 *
 * Sector weights are evaluated in log space relative to the largest term,
 * which keeps x^d finite at both β -> 0 and β -> ∞.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdim/core.hpp"
#include "qdim/oscillator.hpp"

namespace qdim {

struct ThermalPoint {
  double beta = 0.0;
  double z = 0.0;
  double mean_dim = 0.0;
  double mean_energy = 0.0;
};

struct ThermalCurve {
  DimRange range{0, 0};
  EnergyConvention convention = EnergyConvention::Unshifted;
  std::vector<ThermalPoint> points;  // increasing mean_energy
};

namespace detail {

inline void require_positive_beta(double beta, const char* where) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::domain_error(std::string(where) + ": beta must be positive and finite");
}

/// ln x for the per-mode factor x of the given convention.
inline double log_mode_factor(double beta, EnergyConvention convention) {
  const double lz = log_z1(beta);
  return convention == EnergyConvention::Unshifted ? lz : lz + 0.5 * beta;
}

/// Mean energy per mode at inverse temperature β.
inline double mode_energy(double beta, EnergyConvention convention) {
  if (convention == EnergyConvention::Unshifted) return 0.5 / std::tanh(0.5 * beta);
  return 1.0 / std::expm1(beta);
}

struct SectorSums {
  double log_z;     // ln Σ x^d
  double mean_dim;  // Σ d x^d / Σ x^d
};

inline SectorSums sector_sums(double beta, const DimRange& range, EnergyConvention convention) {
  const double lx = log_mode_factor(beta, convention);
  // the largest term is at n1 or n2 because d·ln x is linear in d
  const int edge = lx < 0.0 ? range.n1() : range.n2();
  const double top = edge * lx;
  // <D> as an offset from the dominant edge, so saturation is exact
  double weight = 0.0;
  double offset_weight = 0.0;
  for (int d = range.n1(); d <= range.n2(); ++d) {
    const double w = std::exp(d * lx - top);
    weight += w;
    offset_weight += (d - edge) * w;
  }
  return {top + std::log(weight), edge + offset_weight / weight};
}

}  // namespace detail

/// Z(β) = Σ_{d=n1}^{n2} x^d.
inline double partition_closed(double beta, const DimRange& range, EnergyConvention convention) {
  detail::require_positive_beta(beta, "partition_closed");
  return std::exp(detail::sector_sums(beta, range, convention).log_z);
}

/// ln Z(β), usable where Z itself would overflow.
inline double log_partition_closed(double beta, const DimRange& range, EnergyConvention convention) {
  detail::require_positive_beta(beta, "log_partition_closed");
  return detail::sector_sums(beta, range, convention).log_z;
}

inline ThermalPoint thermal_point(double beta, const DimRange& range, EnergyConvention convention) {
  detail::require_positive_beta(beta, "thermal_point");
  const auto sums = detail::sector_sums(beta, range, convention);
  ThermalPoint p;
  p.beta = beta;
  p.z = std::exp(sums.log_z);
  p.mean_dim = std::clamp(sums.mean_dim, static_cast<double>(range.n1()), static_cast<double>(range.n2()));
  p.mean_energy = p.mean_dim * detail::mode_energy(beta, convention);
  return p;
}

namespace detail {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) comp_ += (sum_ - t) + v;
    else comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

/// Z, <D>, <H0> by explicit Boltzmann summation over every label of a
/// truncated basis. Independent of the closed forms above.
inline ThermalPoint brute_force_thermal(double beta, const QDBasis& basis) {
  detail::require_positive_beta(beta, "brute_force_thermal");
  if (basis.size() == 0) throw std::invalid_argument("brute_force_thermal: empty basis");
  std::int64_t lowest = std::numeric_limits<std::int64_t>::max();
  for (const auto& label : basis.labels())
    lowest = std::min(lowest, energy_of(label, basis.convention()).value);
  const double e0 = static_cast<double>(lowest) / 2.0;

  detail::CompensatedSum z, dim, energy;
  for (const auto& label : basis.labels()) {
    const double e = energy_of(label, basis.convention()).energy();
    const double w = std::exp(-beta * (e - e0));
    z.add(w);
    dim.add(label.d * w);
    energy.add(e * w);
  }
  ThermalPoint p;
  p.beta = beta;
  p.z = std::exp(-beta * e0) * z.value();
  p.mean_dim = dim.value() / z.value();
  p.mean_energy = energy.value() / z.value();
  return p;
}

/// Log-spaced grid of `points` inverse temperatures from beta_min to beta_max.
inline std::vector<double> log_beta_grid(double beta_min, double beta_max, int points) {
  detail::require_positive_beta(beta_min, "log_beta_grid");
  detail::require_positive_beta(beta_max, "log_beta_grid");
  if (points < 1) throw std::invalid_argument("log_beta_grid: need at least one point");
  if (points == 1) return {beta_min};
  if (!(beta_min < beta_max)) throw std::invalid_argument("log_beta_grid: beta_min must be below beta_max");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double lo = std::log(beta_min);
  const double step = (std::log(beta_max) - lo) / (points - 1);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = std::exp(lo + step * i);
  grid.front() = beta_min;
  grid.back() = beta_max;
  return grid;
}

/// Default grid: 400 log-spaced points on [1e-2, 50].
inline std::vector<double> default_beta_grid() { return log_beta_grid(1e-2, 50.0, 400); }

/// <D> against <H0>: one point per β, ordered by increasing mean energy.
inline ThermalCurve dim_vs_energy_curve(const DimRange& range, EnergyConvention convention,
                                        std::span<const double> beta_grid) {
  if (beta_grid.empty()) throw std::invalid_argument("dim_vs_energy_curve: empty beta grid");
  ThermalCurve curve{range, convention, {}};
  curve.points.reserve(beta_grid.size());
  for (double beta : beta_grid) curve.points.push_back(thermal_point(beta, range, convention));
  // <H0> decreases in β, so sorting by descending β orders by energy without
  // relying on floating-point ties in the energy itself
  std::stable_sort(curve.points.begin(), curve.points.end(),
                   [](const ThermalPoint& a, const ThermalPoint& b) { return a.beta > b.beta; });
  return curve;
}

}  // namespace qdim
