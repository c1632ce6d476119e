// SPDX-License-Identifier: Apache-2.0

/// \file
/// Experiment harness: theta sweeps over approximation fronts, per-series
/// summary tables, and validation of solver runs against exact fronts.

#ifndef BIATSP_EXPERIMENT_HPP
#define BIATSP_EXPERIMENT_HPP

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include "biatsp/exact.hpp"
#include "biatsp/instance.hpp"
#include "biatsp/metrics.hpp"
#include "biatsp/nsga2.hpp"
#include "biatsp/pareto.hpp"
#include "biatsp/rational.hpp"

namespace biatsp {

/// 1/10, 2/10, ..., 9/10.
inline std::vector<Rational> default_thetas() {
  std::vector<Rational> t;
  for (int k = 1; k <= 9; ++k) t.emplace_back(k, 10);
  return t;
}

inline const std::vector<Direction>& both_directions() {
  static const std::vector<Direction> d{Direction::first_important, Direction::second_important};
  return d;
}

/// Finite decimal when the denominator allows it ("0.3"), "p/q" otherwise.
inline std::string decimal_string(const Rational& r) {
  std::int64_t den = r.den();
  int digits = 0;
  while (den % 10 == 0) {
    den /= 10;
    ++digits;
  }
  while (den % 2 == 0 || den % 5 == 0) {
    if (digits > 17) break;
    den = den % 2 == 0 ? den / 2 : den / 5;
    ++digits;
  }
  if (den != 1) return r.str();
  std::int64_t scale = 1;
  for (int k = 0; k < digits; ++k) scale *= 10;
  const __int128 scaled = static_cast<__int128>(r.num()) * (scale / r.den());
  const bool neg = scaled < 0;
  const auto mag = static_cast<std::uint64_t>(neg ? -scaled : scaled);
  std::string whole = std::to_string(mag / static_cast<std::uint64_t>(scale));
  if (digits == 0) return (neg ? "-" : "") + whole;
  std::string frac = std::to_string(mag % static_cast<std::uint64_t>(scale));
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return (neg ? "-" : "") + whole + "." + frac;
}

inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Series presets

/// Generator spec for a series name of the form S<n>[lo1,hi1][lo2,hi2] or
/// S<n>contr[lo1,hi1][lo2,hi2] (second interval implied by the sum).
inline GeneratorSpec parse_series(const std::string& name, std::uint64_t seed) {
  static const std::regex uniform(R"(S(\d+)\[(\d+),(\d+)\]\[(\d+),(\d+)\])");
  static const std::regex contr(R"(S(\d+)contr\[(\d+),(\d+)\]\[(\d+),(\d+)\])");
  std::smatch m;
  GeneratorSpec spec;
  spec.seed = seed;
  auto num = [&](int k) { return std::stoll(m[k].str()); };
  if (std::regex_match(name, m, contr)) {
    spec.kind = GeneratorKind::contradicting;
    spec.n = static_cast<int>(num(1));
    spec.interval1 = {num(2), num(3)};
    spec.contradiction_sum = spec.interval1.lo + num(5);
    if (spec.contradiction_sum - spec.interval1.hi != num(4))
      throw ConfigError("series '" + name + "': second interval is not the mirror of the first");
    return spec;
  }
  if (std::regex_match(name, m, uniform)) {
    spec.kind = GeneratorKind::uniform;
    spec.n = static_cast<int>(num(1));
    spec.interval1 = {num(2), num(3)};
    spec.interval2 = {num(4), num(5)};
    return spec;
  }
  throw ConfigError("unrecognised series name '" + name + "'");
}

/// `count` instances of a series; instance k uses seed derive_seed(seed, series, k).
inline std::vector<BiInstance> generate_series(const std::string& series, std::uint64_t seed, int count = 5) {
  std::vector<BiInstance> out;
  for (int k = 0; k < count; ++k) {
    GeneratorSpec spec = parse_series(series, derive_seed(seed, series, static_cast<std::uint64_t>(k)) % 1000000007ULL);
    auto inst = generate(spec);
    out.push_back(std::move(inst));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweep rows

struct SweepRow {
  std::string series;
  std::string instance;
  Direction direction = Direction::first_important;
  Rational theta;
  std::optional<double> excluded_pct;  ///< absent for an empty front
  std::size_t n_a = 0;
  std::optional<Rational> delta21;
  std::uint64_t seed = 0;
};

/// One row per (direction, theta) for a single approximation front.
inline std::vector<SweepRow> sweep_front(const std::string& series, const std::string& instance,
                                         const ParetoFront& front, std::uint64_t seed,
                                         const std::vector<Rational>& thetas = default_thetas(),
                                         const std::vector<Direction>& directions = both_directions()) {
  std::vector<SweepRow> rows;
  std::optional<Rational> d21;
  if (!front.empty()) d21 = diversity_ratios(front).delta21;
  for (Direction dir : directions)
    for (const Rational& theta : thetas) {
      SweepRow row{series, instance, dir, theta, std::nullopt, front.size(), d21, seed};
      if (!front.empty()) {
        const ParetoFront reduced = reduce_front(front, QuantumOfInformation(dir, theta));
        row.excluded_pct = exclusion_percentage(front, reduced);
      }
      rows.push_back(std::move(row));
    }
  return rows;
}

inline constexpr const char* kTableHeader = "series,instance,direction,theta,excluded_pct,n_a,delta21,seed";

inline void write_table_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kTableHeader << '\n';
  for (const auto& r : rows) {
    os << r.series << ',' << r.instance << ',' << to_string(r.direction) << ',' << decimal_string(r.theta) << ','
       << (r.excluded_pct ? fixed2(*r.excluded_pct) : std::string("invalid")) << ',' << r.n_a << ','
       << (r.delta21 ? fixed2(r.delta21->to_double()) : std::string("undefined")) << ',' << r.seed << '\n';
  }
}

/// Per (series, direction): mean excluded percentage per theta over the
/// series' fronts, mean front size and mean delta21.
struct SummaryRow {
  std::string series;
  Direction direction = Direction::first_important;
  std::vector<Rational> thetas;
  std::vector<double> excluded_mean;
  double n_a_mean = 0.0;
  std::optional<double> delta21_mean;
};

inline std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows) {
  struct Acc {
    std::vector<Rational> thetas;
    std::map<Rational, std::pair<double, int>> excl;
    std::map<std::pair<std::string, std::uint64_t>, std::pair<std::size_t, std::optional<Rational>>> fronts;
  };
  std::vector<std::pair<std::string, Direction>> order;
  std::map<std::pair<std::string, Direction>, Acc> acc;
  for (const auto& r : rows) {
    const auto key = std::make_pair(r.series, r.direction);
    if (!acc.count(key)) order.push_back(key);
    auto& a = acc[key];
    if (!a.excl.count(r.theta)) a.thetas.push_back(r.theta);
    auto& cell = a.excl[r.theta];
    if (r.excluded_pct) {
      cell.first += *r.excluded_pct;
      cell.second += 1;
    }
    a.fronts[{r.instance, r.seed}] = {r.n_a, r.delta21};
  }
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const auto& a = acc[key];
    SummaryRow s;
    s.series = key.first;
    s.direction = key.second;
    s.thetas = a.thetas;
    for (const auto& t : a.thetas) {
      const auto& cell = a.excl.at(t);
      s.excluded_mean.push_back(cell.second ? cell.first / cell.second : 0.0);
    }
    double na = 0.0, d21 = 0.0;
    int d21_count = 0;
    for (const auto& [_, f] : a.fronts) {
      na += static_cast<double>(f.first);
      if (f.second) {
        d21 += f.second->to_double();
        ++d21_count;
      }
    }
    s.n_a_mean = a.fronts.empty() ? 0.0 : na / static_cast<double>(a.fronts.size());
    if (d21_count) s.delta21_mean = d21 / d21_count;
    out.push_back(std::move(s));
  }
  return out;
}

inline void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& summary) {
  if (summary.empty()) {
    os << "series,direction,n_a_aver,delta21_aver\n";
    return;
  }
  os << "series,direction";
  for (const auto& t : summary.front().thetas) os << ',' << decimal_string(t);
  os << ",n_a_aver,delta21_aver\n";
  for (const auto& s : summary) {
    os << s.series << ',' << to_string(s.direction);
    for (double v : s.excluded_mean) os << ',' << fixed2(v);
    os << ',' << fixed2(s.n_a_mean) << ',' << (s.delta21_mean ? fixed2(*s.delta21_mean) : std::string("undefined"))
       << '\n';
  }
}

// ---------------------------------------------------------------------------
// Running sweeps

struct SweepJob {
  std::string series;
  BiInstance instance;
};

struct SweepConfig {
  EngineConfig engine;
  std::vector<Rational> thetas = default_thetas();
  std::vector<Direction> directions = both_directions();
  int repetitions = 1;
  int threads = 1;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Final fronts in job-major, repetition-minor order.
  std::vector<ParetoFront> fronts;
};

/// Engine seed of repetition `rep` on an instance.
inline std::uint64_t job_seed(std::uint64_t base, const std::string& instance, int rep) {
  return derive_seed(base, instance, static_cast<std::uint64_t>(rep)) % 1000000007ULL;
}

/// Runs the engine once per (job, repetition), concurrently on up to
/// `threads` workers, and sweeps every final front. Output order does not
/// depend on the thread count.
inline SweepResult run_sweep(const std::vector<SweepJob>& jobs, const SweepConfig& config) {
  if (config.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  for (const auto& t : config.thetas)
    if (t <= Rational(0) || t >= Rational(1)) throw ConfigError("theta " + t.str() + " outside (0,1)");
  const std::size_t total = jobs.size() * static_cast<std::size_t>(config.repetitions);
  std::vector<std::vector<SweepRow>> rows(total);
  std::vector<ParetoFront> fronts(total);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      try {
        const auto& job = jobs[k / static_cast<std::size_t>(config.repetitions)];
        const int rep = static_cast<int>(k % static_cast<std::size_t>(config.repetitions));
        EngineConfig ec = config.engine;
        ec.seed = job_seed(config.engine.seed, job.instance.name, rep);
        ec.history_interval = 0;
        RunResult res = run(job.instance, ec);
        rows[k] = sweep_front(job.series, job.instance.name, res.final_front, ec.seed, config.thetas, config.directions);
        fronts[k] = std::move(res.final_front);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(config.threads, static_cast<int>(total)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  SweepResult out;
  for (auto& r : rows) out.rows.insert(out.rows.end(), r.begin(), r.end());
  out.fronts = std::move(fronts);
  return out;
}

// ---------------------------------------------------------------------------
// Validation against the exact front

struct MetricPoint {
  int generation = 0;
  double gd = 0.0;
  double igd = 0.0;
  std::size_t front_size = 0;
};

struct ValidationReport {
  std::size_t exact_size = 0;
  std::size_t final_size = 0;
  double recovery = 0.0;  ///< fraction of exact vectors present in the final front
  std::vector<MetricPoint> trace;

  const MetricPoint& initial() const { return trace.front(); }
  const MetricPoint& final_point() const { return trace.back(); }
  /// final <= initial / 7
  bool gd_decreased_sevenfold() const { return 7.0 * final_point().gd <= initial().gd; }
  bool igd_decreased_sevenfold() const { return 7.0 * final_point().igd <= initial().igd; }
};

inline ValidationReport validate_run(const ParetoFront& exact, const RunResult& run_result) {
  ValidationReport r;
  r.exact_size = exact.size();
  r.final_size = run_result.final_front.size();
  r.recovery = recovery_fraction(run_result.final_front, exact);
  const auto p = exact.vectors();
  for (const auto& snap : run_result.history) {
    r.trace.push_back({snap.generation, generational_distance(snap.front, p), inverted_generational_distance(snap.front, p),
                       snap.front.size()});
  }
  if (r.trace.empty() || r.trace.back().generation != run_result.generations) {
    const auto a = run_result.final_front.vectors();
    r.trace.push_back({run_result.generations, generational_distance(a, p), inverted_generational_distance(a, p), a.size()});
  }
  return r;
}

inline ValidationReport validate_against_exact(const BiInstance& inst, const EngineConfig& config,
                                               int n_limit = kDefaultExactLimit) {
  const ParetoFront exact = exact_pareto(inst, n_limit);
  EngineConfig ec = config;
  if (ec.history_interval == 0) ec.history_interval = 50;
  return validate_run(exact, run(inst, ec));
}

}  // namespace biatsp

#endif  // BIATSP_EXPERIMENT_HPP
