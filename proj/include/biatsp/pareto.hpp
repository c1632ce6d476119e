// SPDX-License-Identifier: Apache-2.0

/// \file
/// Tours, objective vectors, Pareto dominance and the reduction of a
/// Pareto front by a quantum of information about criteria importance.
///
/// A quantum says criterion i is more important than criterion j with
/// coefficient theta in (0,1). The reduced front is the set of entries that
/// stay non-dominated once D_j is replaced by theta*D_i + (1-theta)*D_j.
/// All comparisons here are exact: theta = p/q and the replaced coordinate
/// is evaluated as the integer p*D_i + (q-p)*D_j.

#ifndef BIATSP_PARETO_HPP
#define BIATSP_PARETO_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "biatsp/error.hpp"
#include "biatsp/instance.hpp"
#include "biatsp/rational.hpp"

namespace biatsp {

/// Hamiltonian circuit as a vertex sequence rotated to start at vertex 0.
/// An empty Tour means "no representative known" (fronts read from files
/// that only list objective vectors).
struct Tour {
  std::vector<Vertex> perm;

  int size() const noexcept { return static_cast<int>(perm.size()); }
  Vertex operator[](std::size_t k) const noexcept { return perm[k]; }
  Vertex next(std::size_t k) const noexcept { return perm[k + 1 == perm.size() ? 0 : k + 1]; }

  friend bool operator==(const Tour&, const Tour&) = default;
  friend auto operator<=>(const Tour&, const Tour&) = default;
};

inline bool is_valid_tour(const Tour& t, int n) {
  if (t.size() != n || n == 0 || t.perm[0] != 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex v : t.perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

/// Rotates an arbitrary cyclic vertex order so it starts at vertex 0.
inline Tour canonical_tour(std::vector<Vertex> order) {
  auto it = std::find(order.begin(), order.end(), 0);
  std::rotate(order.begin(), it, order.end());
  return Tour{std::move(order)};
}

/// successor[v] for every vertex of the tour.
inline std::vector<Vertex> successors(const Tour& t) {
  std::vector<Vertex> succ(t.perm.size());
  for (std::size_t k = 0; k < t.perm.size(); ++k) succ[static_cast<std::size_t>(t[k])] = t.next(k);
  return succ;
}

inline Tour tour_from_successors(const std::vector<Vertex>& succ) {
  Tour t;
  t.perm.reserve(succ.size());
  Vertex v = 0;
  do {
    t.perm.push_back(v);
    v = succ[static_cast<std::size_t>(v)];
  } while (v != 0 && t.perm.size() <= succ.size());
  return t;
}

inline std::string to_string(const Tour& t) {
  std::string s;
  for (std::size_t k = 0; k < t.perm.size(); ++k) {
    if (k) s += '-';
    s += std::to_string(t.perm[k]);
  }
  return s;
}

struct ObjectiveVector {
  Weight d1 = 0;
  Weight d2 = 0;

  Weight operator[](int criterion) const noexcept { return criterion == 1 ? d1 : d2; }

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
  friend auto operator<=>(const ObjectiveVector&, const ObjectiveVector&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const ObjectiveVector& y) {
  return os << '(' << y.d1 << ',' << y.d2 << ')';
}

inline ObjectiveVector evaluate(const BiInstance& inst, const Tour& tour) {
  ObjectiveVector y;
  const std::size_t n = tour.perm.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vertex u = tour[k];
    const Vertex v = tour.next(k);
    y.d1 += inst.w1(u, v);
    y.d2 += inst.w2(u, v);
  }
  return y;
}

/// Single-criterion tour weight.
inline Weight tour_weight(const Matrix& w, const Tour& tour) {
  Weight total = 0;
  for (std::size_t k = 0; k < tour.perm.size(); ++k) total += w(tour[k], tour.next(k));
  return total;
}

/// Pareto relation: a differs from b and is no worse in both coordinates.
constexpr bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) noexcept {
  return a != b && a.d1 <= b.d1 && a.d2 <= b.d2;
}

struct FrontEntry {
  ObjectiveVector objectives;
  Tour tour;

  friend bool operator==(const FrontEntry&, const FrontEntry&) = default;
};

/// Pairwise non-dominated entries with distinct objective vectors, sorted by
/// ascending d1 (hence strictly descending d2).
class ParetoFront {
 public:
  ParetoFront() = default;

  /// Builds a front from entries that are already mutually non-dominated
  /// and distinct; throws FormatError otherwise.
  static ParetoFront from_entries(std::vector<FrontEntry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const FrontEntry& a, const FrontEntry& b) { return a.objectives < b.objectives; });
    for (std::size_t k = 1; k < entries.size(); ++k) {
      const auto& prev = entries[k - 1].objectives;
      const auto& cur = entries[k].objectives;
      if (prev == cur) throw FormatError("front: duplicate objective vector");
      if (!(prev.d1 < cur.d1 && prev.d2 > cur.d2)) throw FormatError("front: entries are not mutually non-dominated");
    }
    ParetoFront f;
    f.entries_ = std::move(entries);
    return f;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const FrontEntry& operator[](std::size_t k) const noexcept { return entries_[k]; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }
  const std::vector<FrontEntry>& entries() const noexcept { return entries_; }

  std::vector<ObjectiveVector> vectors() const {
    std::vector<ObjectiveVector> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.objectives);
    return out;
  }

  bool contains(const ObjectiveVector& y) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), y,
                               [](const FrontEntry& e, const ObjectiveVector& v) { return e.objectives < v; });
    return it != entries_.end() && it->objectives == y;
  }

  friend bool operator==(const ParetoFront&, const ParetoFront&) = default;

 private:
  std::vector<FrontEntry> entries_;
};

/// Keeps the points not dominated by any other point. Equal vectors collapse
/// to the first-seen representative.
inline ParetoFront nondominated_filter(std::span<const FrontEntry> points) {
  // Stable sort by (d1, d2) keeps first-seen order among equal vectors, then
  // a sweep keeps each point whose d2 is strictly below every earlier d2.
  std::vector<std::size_t> order(points.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return points[a].objectives < points[b].objectives; });
  std::vector<FrontEntry> kept;
  Weight best_d2 = std::numeric_limits<Weight>::max();
  for (std::size_t idx : order) {
    const auto& y = points[idx].objectives;
    if (y.d2 < best_d2) {
      kept.push_back(points[idx]);
      best_d2 = y.d2;
    }
  }
  return ParetoFront::from_entries(std::move(kept));
}

inline ParetoFront nondominated_filter(std::span<const ObjectiveVector> points) {
  std::vector<FrontEntry> entries;
  entries.reserve(points.size());
  for (const auto& y : points) entries.push_back({y, {}});
  return nondominated_filter(std::span<const FrontEntry>(entries));
}

// ---------------------------------------------------------------------------
// Quantum of information

enum class Direction {
  first_important,   ///< "1st-2nd": criterion 1 more important than 2
  second_important,  ///< "2nd-1st": criterion 2 more important than 1
};

inline std::string to_string(Direction d) { return d == Direction::first_important ? "1st-2nd" : "2nd-1st"; }

inline Direction parse_direction(std::string_view s) {
  if (s == "1st-2nd" || s == "1-2" || s == "first") return Direction::first_important;
  if (s == "2nd-1st" || s == "2-1" || s == "second") return Direction::second_important;
  throw ConfigError("unknown importance direction '" + std::string(s) + "' (expected 1st-2nd or 2nd-1st)");
}

class QuantumOfInformation {
 public:
  QuantumOfInformation(Direction direction, Rational theta) : direction_(direction), theta_(theta) {
    if (theta_ <= Rational(0) || theta_ >= Rational(1))
      throw ConfigError("coefficient of relative importance must lie in (0,1), got " + theta_.str());
  }

  /// From the compromise amounts: the decision maker accepts +loss on the
  /// less important criterion for -gain on the important one.
  static QuantumOfInformation from_tradeoff(Direction direction, std::int64_t gain, std::int64_t loss) {
    if (gain <= 0 || loss <= 0) throw ConfigError("trade-off amounts must be positive");
    return QuantumOfInformation(direction, Rational(loss, gain + loss));
  }

  Direction direction() const noexcept { return direction_; }
  int important() const noexcept { return direction_ == Direction::first_important ? 1 : 2; }
  int less_important() const noexcept { return direction_ == Direction::first_important ? 2 : 1; }
  const Rational& theta() const noexcept { return theta_; }

  /// Criterion vector after the transformation, as integers: the important
  /// coordinate scaled by q, the less important one replaced by
  /// p*D_i + (q-p)*D_j. Per-coordinate scaling leaves dominance unchanged.
  std::pair<__int128, __int128> transform(const ObjectiveVector& y) const noexcept {
    const __int128 p = theta_.num();
    const __int128 q = theta_.den();
    const __int128 di = y[important()];
    const __int128 dj = y[less_important()];
    return {di, p * di + (q - p) * dj};
  }

  friend bool operator==(const QuantumOfInformation&, const QuantumOfInformation&) = default;

 private:
  Direction direction_;
  Rational theta_;
};

/// Entries of `front` that stay non-dominated under the transformed
/// criterion; returned with their original objective vectors.
inline ParetoFront reduce_front(const ParetoFront& front, const QuantumOfInformation& quantum) {
  const std::size_t m = front.size();
  std::vector<std::pair<__int128, __int128>> t(m);
  for (std::size_t k = 0; k < m; ++k) t[k] = quantum.transform(front[k].objectives);
  std::vector<FrontEntry> kept;
  for (std::size_t a = 0; a < m; ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < m && !dominated; ++b) {
      if (b == a) continue;
      dominated = t[b] != t[a] && t[b].first <= t[a].first && t[b].second <= t[a].second;
    }
    if (!dominated) kept.push_back(front[a]);
  }
  return ParetoFront::from_entries(std::move(kept));
}

// ---------------------------------------------------------------------------
// Analytic results as predicates

/// Smallest theta for which a front lying on y2 = a - k*y1 collapses to a
/// single element: k/(k+1) when criterion 1 is the important one, 1/(k+1)
/// when criterion 2 is.
inline Rational collapse_threshold(Direction direction, const Rational& k) {
  if (k <= Rational(0)) throw ConfigError("slope coefficient k must be positive");
  const Rational denom = k + Rational(1);
  return direction == Direction::first_important ? k / denom : Rational(1) / denom;
}

struct CollinearCover {
  Rational k;     ///< common slope is -k
  int lines = 0;  ///< number of parallel lines y2 = a_l - k*y1 covering all points

  friend bool operator==(const CollinearCover&, const CollinearCover&) = default;
};

/// Minimum number of parallel lines with a common negative slope covering
/// all points. Candidate slopes are all negative pairwise slopes; ties on
/// the line count go to the smaller k. nullopt for fewer than two points or
/// when no pair has a negative slope.
inline std::optional<CollinearCover> check_collinear_front(std::span<const ObjectiveVector> points) {
  if (points.size() < 2) return std::nullopt;
  std::set<Rational> slopes;
  for (std::size_t a = 0; a < points.size(); ++a)
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      const Weight dx = points[b].d1 - points[a].d1;
      const Weight dy = points[b].d2 - points[a].d2;
      if (dx == 0 || dy == 0 || (dx > 0) == (dy > 0)) continue;
      slopes.insert(Rational(-dy, dx));  // k = -dy/dx > 0
    }
  std::optional<CollinearCover> best;
  for (const Rational& k : slopes) {
    std::set<__int128> intercepts;  // q*y2 + p*y1 identifies the line
    for (const auto& y : points)
      intercepts.insert(static_cast<__int128>(k.den()) * y.d2 + static_cast<__int128>(k.num()) * y.d1);
    const int lines = static_cast<int>(intercepts.size());
    if (!best || lines < best->lines) best = CollinearCover{k, lines};  // ascending k: first wins ties
  }
  return best;
}

inline std::optional<CollinearCover> check_collinear_front(const ParetoFront& front) {
  const auto v = front.vectors();
  return check_collinear_front(std::span<const ObjectiveVector>(v));
}

/// Front indices (excluded, excluder) of a pair satisfying
///   (D_i(C') - D_i(C'')) / (D_j(C'') - D_j(C')) >= (1 - theta) / theta
/// with C' = excluded and C'' = excluder; any such pair guarantees that the
/// reduction removes at least one element.
struct ExclusionCertificate {
  std::size_t excluded = 0;
  std::size_t excluder = 0;

  friend bool operator==(const ExclusionCertificate&, const ExclusionCertificate&) = default;
};

inline std::optional<ExclusionCertificate> exclusion_certificate(const ParetoFront& front,
                                                                 const QuantumOfInformation& quantum) {
  const int i = quantum.important();
  const int j = quantum.less_important();
  const __int128 p = quantum.theta().num();
  const __int128 q = quantum.theta().den();
  for (std::size_t a = 0; a < front.size(); ++a)
    for (std::size_t b = 0; b < front.size(); ++b) {
      if (a == b) continue;
      const auto& ya = front[a].objectives;  // C'
      const auto& yb = front[b].objectives;  // C''
      const __int128 num = static_cast<__int128>(ya[i]) - yb[i];
      const __int128 den = static_cast<__int128>(yb[j]) - ya[j];
      if (den <= 0) continue;
      // num/den >= (q-p)/p with den, p > 0
      if (num * p >= (q - p) * den) return ExclusionCertificate{a, b};
    }
  return std::nullopt;
}

/// Upper bounds on the size of the Pareto set: min(l1, l2) with
/// l_i = upper_i - lower_i + 1 for integer criteria, and the number of tours
/// (n-1)! (saturated at UINT64_MAX).
struct CardinalityBounds {
  std::uint64_t value_count_bound = 0;
  std::uint64_t tour_count_bound = 0;
};

struct ObjectiveRange {
  Weight lower = 0;
  Weight upper = 0;
};

inline std::uint64_t saturating_factorial(int m) {
  std::uint64_t f = 1;
  for (int k = 2; k <= m; ++k) {
    if (f > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(k))
      return std::numeric_limits<std::uint64_t>::max();
    f *= static_cast<std::uint64_t>(k);
  }
  return f;
}

inline CardinalityBounds cardinality_bounds(const BiInstance& inst, ObjectiveRange range1, ObjectiveRange range2) {
  if (range1.lower > range1.upper || range2.lower > range2.upper)
    throw ConfigError("cardinality_bounds: lower bound exceeds upper bound");
  const auto l1 = static_cast<std::uint64_t>(range1.upper - range1.lower + 1);
  const auto l2 = static_cast<std::uint64_t>(range2.upper - range2.lower + 1);
  return {std::min(l1, l2), saturating_factorial(inst.n - 1)};
}

/// n * (min weight) and n * (max weight) per criterion.
inline std::pair<ObjectiveRange, ObjectiveRange> crude_objective_ranges(const BiInstance& inst) {
  auto range = [&](const Matrix& w) {
    return ObjectiveRange{inst.n * w.min_off_diagonal(), inst.n * w.max_off_diagonal()};
  };
  return {range(inst.w1), range(inst.w2)};
}

inline CardinalityBounds cardinality_bounds(const BiInstance& inst) {
  auto [r1, r2] = crude_objective_ranges(inst);
  return cardinality_bounds(inst, r1, r2);
}

// ---------------------------------------------------------------------------
// Front CSV: "d1,d2,tour", tour as a dash-separated vertex list.

inline void write_front_csv(std::ostream& os, const ParetoFront& front) {
  os << "d1,d2,tour\n";
  for (const auto& e : front) os << e.objectives.d1 << ',' << e.objectives.d2 << ',' << to_string(e.tour) << '\n';
}

inline ParetoFront read_front_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("front: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "d1,d2,tour") throw FormatError("front: expected header 'd1,d2,tour', found '" + line + "'");
  std::vector<FrontEntry> entries;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto bad = [&](const std::string& why) {
      throw FormatError("front: line " + std::to_string(line_no) + ": " + why);
    };
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) bad("expected three comma-separated fields");
    auto w1 = detail::to_weight(line.substr(0, c1));
    auto w2 = detail::to_weight(line.substr(c1 + 1, c2 - c1 - 1));
    if (!w1 || !w2 || *w1 < 0 || *w2 < 0) bad("objective values must be non-negative integers");
    FrontEntry e{{*w1, *w2}, {}};
    const std::string tour = line.substr(c2 + 1);
    std::size_t pos = 0;
    while (pos < tour.size()) {
      auto dash = tour.find('-', pos);
      if (dash == std::string::npos) dash = tour.size();
      auto v = detail::to_weight(tour.substr(pos, dash - pos));
      if (!v || *v < 0) bad("malformed tour '" + tour + "'");
      e.tour.perm.push_back(static_cast<Vertex>(*v));
      pos = dash + 1;
    }
    if (!e.tour.perm.empty() && !is_valid_tour(e.tour, e.tour.size())) bad("tour is not a permutation starting at 0");
    entries.push_back(std::move(e));
  }
  return ParetoFront::from_entries(std::move(entries));
}

inline std::string to_csv(const ParetoFront& front) {
  std::ostringstream os;
  write_front_csv(os, front);
  return os.str();
}

inline ParetoFront front_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_front_csv(in);
}

}  // namespace biatsp

#endif  // BIATSP_PARETO_HPP
