// SPDX-License-Identifier: Apache-2.0

/// \file
/// Exact Pareto front of small instances by enumerating all (n-1)! tours.

#ifndef BIATSP_EXACT_HPP
#define BIATSP_EXACT_HPP

#include <algorithm>
#include <atomic>
#include <map>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "biatsp/error.hpp"
#include "biatsp/instance.hpp"
#include "biatsp/pareto.hpp"

namespace biatsp {

inline constexpr int kDefaultExactLimit = 12;

/// Bicriteria non-dominated archive keyed by d1. Inserting a vector equal
/// to a stored one keeps the stored representative.
class FrontArchive {
 public:
  /// True if `y` was admitted.
  bool would_admit(const ObjectiveVector& y) const {
    auto it = entries_.upper_bound(y.d1);
    if (it == entries_.begin()) return true;
    --it;  // largest d1 <= y.d1
    return it->second.first > y.d2;
  }

  bool insert(const ObjectiveVector& y, const Tour& tour) {
    if (!would_admit(y)) return false;
    auto it = entries_.lower_bound(y.d1);
    while (it != entries_.end() && it->second.first >= y.d2) it = entries_.erase(it);
    entries_.emplace_hint(it, y.d1, std::make_pair(y.d2, tour));
    return true;
  }

  std::size_t size() const noexcept { return entries_.size(); }

  ParetoFront front() const {
    std::vector<FrontEntry> out;
    out.reserve(entries_.size());
    for (const auto& [d1, rest] : entries_) out.push_back({{d1, rest.first}, rest.second});
    return ParetoFront::from_entries(std::move(out));
  }

 private:
  std::map<Weight, std::pair<Weight, Tour>> entries_;
};

namespace detail {

inline void check_exact_limit(const BiInstance& inst, int n_limit) {
  if (inst.n > n_limit)
    throw ConfigError("exact enumeration refused: n = " + std::to_string(inst.n) + " exceeds the limit of " +
                      std::to_string(n_limit) + " vertices ((n-1)! tours)");
}

/// Depth-first enumeration of all tours whose first arc is 0 -> second,
/// in lexicographic order of the vertex sequence.
class TourEnumerator {
 public:
  TourEnumerator(const BiInstance& inst, FrontArchive& archive)
      : inst_(inst), archive_(archive), n_(inst.n), used_(static_cast<std::size_t>(n_), 0) {}

  void run(Vertex second) {
    path_.assign(1, 0);
    used_.assign(static_cast<std::size_t>(n_), 0);
    used_[0] = 1;
    extend(second, 0, 0);
  }

 private:
  void extend(Vertex v, Weight s1, Weight s2) {
    const Vertex u = path_.back();
    s1 += inst_.w1(u, v);
    s2 += inst_.w2(u, v);
    path_.push_back(v);
    used_[static_cast<std::size_t>(v)] = 1;
    if (static_cast<int>(path_.size()) == n_) {
      const ObjectiveVector y{s1 + inst_.w1(v, 0), s2 + inst_.w2(v, 0)};
      if (archive_.would_admit(y)) archive_.insert(y, Tour{path_});
    } else {
      for (Vertex w = 1; w < n_; ++w)
        if (!used_[static_cast<std::size_t>(w)]) extend(w, s1, s2);
    }
    used_[static_cast<std::size_t>(v)] = 0;
    path_.pop_back();
  }

  const BiInstance& inst_;
  FrontArchive& archive_;
  int n_;
  std::vector<char> used_;
  std::vector<Vertex> path_;
};

}  // namespace detail

/// Exact deduplicated Pareto front. The representative of each vector is
/// the first tour producing it in lexicographic order, independent of the
/// number of worker threads.
inline ParetoFront exact_pareto(const BiInstance& inst, int n_limit = kDefaultExactLimit, int threads = 1) {
  detail::check_exact_limit(inst, n_limit);
  const int n = inst.n;
  // One archive per first arc 0 -> v, merged in v order.
  std::vector<FrontArchive> parts(static_cast<std::size_t>(n));
  std::atomic<int> next{1};
  auto worker = [&] {
    for (int v = next++; v < n; v = next++) {
      detail::TourEnumerator e(inst, parts[static_cast<std::size_t>(v)]);
      e.run(v);
    }
  };
  const int workers = std::clamp(threads, 1, n - 1);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  FrontArchive merged;
  for (int v = 1; v < n; ++v)
    for (const auto& e : parts[static_cast<std::size_t>(v)].front()) merged.insert(e.objectives, e.tour);
  return merged.front();
}

struct BestTour {
  Tour tour;
  Weight value = 0;
};

/// Exact optimum of one criterion, ties broken by the other criterion so
/// the result is Pareto-optimal. Branch and bound on the partial weight.
inline BestTour exact_best(const BiInstance& inst, int criterion, int n_limit = kDefaultExactLimit) {
  detail::check_exact_limit(inst, n_limit);
  if (criterion != 1 && criterion != 2) throw ConfigError("criterion must be 1 or 2");
  const Matrix& w = inst.weights(criterion);
  const Matrix& other = inst.weights(3 - criterion);
  const int n = inst.n;
  std::vector<Vertex> path{0};
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[0] = 1;
  BestTour best;
  Weight best_other = 0;
  bool found = false;

  auto dfs = [&](auto&& self, Weight s, Weight so) -> void {
    if (found && s > best.value) return;  // weights are positive
    const Vertex u = path.back();
    if (static_cast<int>(path.size()) == n) {
      const Weight total = s + w(u, 0);
      const Weight total_other = so + other(u, 0);
      if (!found || total < best.value || (total == best.value && total_other < best_other)) {
        best = {Tour{path}, total};
        best_other = total_other;
        found = true;
      }
      return;
    }
    for (Vertex v = 1; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      self(self, s + w(u, v), so + other(u, v));
      path.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  dfs(dfs, 0, 0);
  return best;
}

}  // namespace biatsp

#endif  // BIATSP_EXACT_HPP
