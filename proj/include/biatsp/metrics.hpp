// SPDX-License-Identifier: Apache-2.0

/// \file
/// Front quality indicators and reduction statistics.
///
/// GD(A, P) = sqrt(sum_{a in A} d(a, P)^2) / |A| with d the Euclidean
/// distance to the nearest point of P in raw objective units;
/// IGD(A, P) = GD(P, A).

#ifndef BIATSP_METRICS_HPP
#define BIATSP_METRICS_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "biatsp/pareto.hpp"
#include "biatsp/rational.hpp"

namespace biatsp {

namespace detail {

/// Sum over A of the squared distance to the nearest point of P, exact.
inline std::int64_t sum_squared_nearest(std::span<const ObjectiveVector> approx,
                                        std::span<const ObjectiveVector> reference) {
  std::int64_t total = 0;
  for (const auto& a : approx) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& p : reference) {
      const std::int64_t dx = a.d1 - p.d1;
      const std::int64_t dy = a.d2 - p.d2;
      best = std::min(best, dx * dx + dy * dy);
    }
    total += best;
  }
  return total;
}

}  // namespace detail

inline double generational_distance(std::span<const ObjectiveVector> approx, std::span<const ObjectiveVector> reference) {
  if (approx.empty() || reference.empty()) throw std::invalid_argument("generational_distance: empty front");
  const auto sq = detail::sum_squared_nearest(approx, reference);
  return std::sqrt(static_cast<double>(sq)) / static_cast<double>(approx.size());
}

inline double inverted_generational_distance(std::span<const ObjectiveVector> approx,
                                             std::span<const ObjectiveVector> reference) {
  return generational_distance(reference, approx);
}

inline double generational_distance(const ParetoFront& approx, const ParetoFront& reference) {
  const auto a = approx.vectors();
  const auto p = reference.vectors();
  return generational_distance(std::span<const ObjectiveVector>(a), std::span<const ObjectiveVector>(p));
}

inline double inverted_generational_distance(const ParetoFront& approx, const ParetoFront& reference) {
  return generational_distance(reference, approx);
}

/// 100 * (|A| - |reduced|) / |A|.
inline double exclusion_percentage(std::size_t front_size, std::size_t reduced_size) {
  if (front_size == 0) throw std::invalid_argument("exclusion_percentage: empty front");
  if (reduced_size > front_size) throw std::invalid_argument("exclusion_percentage: reduced set larger than front");
  return 100.0 * static_cast<double>(front_size - reduced_size) / static_cast<double>(front_size);
}

inline double exclusion_percentage(const ParetoFront& front, const ParetoFront& reduced) {
  return exclusion_percentage(front.size(), reduced.size());
}

struct Diversity {
  Weight delta1 = 0;  ///< max d1 - min d1
  Weight delta2 = 0;  ///< max d2 - min d2
  std::optional<Rational> delta21;  ///< delta2 / delta1, absent when delta1 = 0
};

inline Diversity diversity_ratios(const ParetoFront& front) {
  if (front.empty()) throw std::invalid_argument("diversity_ratios: empty front");
  Weight lo1 = front[0].objectives.d1, hi1 = lo1;
  Weight lo2 = front[0].objectives.d2, hi2 = lo2;
  for (const auto& e : front) {
    lo1 = std::min(lo1, e.objectives.d1);
    hi1 = std::max(hi1, e.objectives.d1);
    lo2 = std::min(lo2, e.objectives.d2);
    hi2 = std::max(hi2, e.objectives.d2);
  }
  Diversity d{hi1 - lo1, hi2 - lo2, std::nullopt};
  if (d.delta1 != 0) d.delta21 = Rational(d.delta2, d.delta1);
  return d;
}

/// Fraction of reference vectors present in `approx`.
inline double recovery_fraction(const ParetoFront& approx, const ParetoFront& reference) {
  if (reference.empty()) throw std::invalid_argument("recovery_fraction: empty reference front");
  std::size_t hit = 0;
  for (const auto& e : reference) hit += approx.contains(e.objectives) ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(reference.size());
}

}  // namespace biatsp

#endif  // BIATSP_METRICS_HPP
