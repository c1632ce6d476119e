// SPDX-License-Identifier: Apache-2.0

// biatsp: instance generation, NSGA-II runs, theta sweeps, front reduction
// and exact validation from the command line.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "biatsp/biatsp.hpp"

namespace {

using namespace biatsp;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  std::string out;
  int threads = 1;
};

struct EngineFlags {
  int population = 100;
  int tournament = 10;
  double mutation = 0.1;
  int iterations = 5000;
  int budget = kDefaultThreeOptBudget;
  int history = 50;
  double time_limit = 0.0;

  EngineConfig config(std::uint64_t seed) const {
    EngineConfig c;
    c.population_size = population;
    c.tournament_size = tournament;
    c.mutation_probability = mutation;
    c.iterations = iterations;
    c.seed = seed;
    c.three_opt_budget = budget;
    c.history_interval = history;
    if (time_limit > 0) c.time_limit_seconds = time_limit;
    return c;
  }
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--population,-N", f.population, "population size")->capture_default_str();
  cmd->add_option("--tournament,-s", f.tournament, "tournament size")->capture_default_str();
  cmd->add_option("--mutation", f.mutation, "per-parent mutation probability")->capture_default_str();
  cmd->add_option("--iterations,-T", f.iterations, "generations")->capture_default_str();
  cmd->add_option("--three-opt-budget", f.budget, "3-opt samples per jump")->capture_default_str();
  cmd->add_option("--history", f.history, "generations between metric samples")->capture_default_str();
  cmd->add_option("--time-limit", f.time_limit, "wall-clock budget in seconds (0 = none)");
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

/// Writes to --out or standard output.
template <class Fn>
void emit(const Globals& g, Fn&& fn) {
  if (g.out.empty() || g.out == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(g.out);
  if (!os) throw DataError("cannot write '" + g.out + "'");
  fn(os);
  if (!os) throw DataError("write to '" + g.out + "' failed");
}

BiInstance load_instance(const std::string& path) {
  auto in = open_in(path);
  return read_instance(in);
}

ParetoFront load_front(const std::string& path) {
  auto in = open_in(path);
  return read_front_csv(in);
}

std::vector<Rational> parse_thetas(const std::string& list) {
  std::vector<Rational> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const Rational t = Rational::parse(tok);
    if (t <= Rational(0) || t >= Rational(1)) throw ConfigError("theta " + tok + " outside (0,1)");
    out.push_back(t);
  }
  if (out.empty()) throw ConfigError("empty theta list");
  return out;
}

std::vector<Direction> parse_directions(const std::string& s) {
  if (s == "both") return both_directions();
  return {parse_direction(s)};
}

std::string stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string kind = "uniform";
  int n = 50;
  std::vector<Weight> i1;
  std::vector<Weight> i2;
  Weight sum = 3;
  std::string from_atsp;
};

void cmd_generate(const Globals& g, const GenerateArgs& a) {
  BiInstance inst;
  if (!a.from_atsp.empty()) {
    auto in = open_in(a.from_atsp);
    inst = derive_second_criterion(parse_tsplib_atsp(in), g.seed);
  } else {
    GeneratorSpec spec;
    spec.n = a.n;
    spec.seed = g.seed;
    spec.contradiction_sum = a.sum;
    if (a.kind == "uniform") {
      spec.kind = GeneratorKind::uniform;
      spec.interval1 = a.i1.empty() ? Interval{1, 10} : Interval{a.i1[0], a.i1[1]};
      spec.interval2 = a.i2.empty() ? Interval{1, 10} : Interval{a.i2[0], a.i2[1]};
    } else if (a.kind == "contr" || a.kind == "contradicting") {
      spec.kind = GeneratorKind::contradicting;
      spec.interval1 = a.i1.empty() ? Interval{1, 2} : Interval{a.i1[0], a.i1[1]};
    } else {
      throw ConfigError("unknown --kind '" + a.kind + "' (uniform|contr)");
    }
    inst = generate(spec);
  }
  emit(g, [&](std::ostream& os) { write_instance(os, inst); });
  std::cerr << "generated " << inst.name << " n=" << inst.n << '\n';
}

void cmd_solve(const Globals& g, const std::string& path, const EngineFlags& f) {
  const BiInstance inst = load_instance(path);
  EngineConfig c = f.config(g.seed);
  c.history_interval = 0;
  const RunResult r = run(inst, c);
  emit(g, [&](std::ostream& os) { write_front_csv(os, r.final_front); });
  std::fprintf(stderr, "instance=%s seed=%llu generations=%d front=%zu seconds=%.3f\n", inst.name.c_str(),
               static_cast<unsigned long long>(r.seed), r.generations, r.final_front.size(), r.wall_seconds);
}

struct SweepArgs {
  std::vector<std::string> instances;
  std::vector<std::string> fronts;
  std::vector<std::string> presets;
  std::string series = "custom";
  int count = 5;
  std::string thetas = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::string directions = "both";
  int repetitions = 1;
  std::string summary;
};

void cmd_sweep(const Globals& g, const SweepArgs& a, const EngineFlags& f) {
  SweepConfig sc;
  sc.engine = f.config(g.seed);
  sc.thetas = parse_thetas(a.thetas);
  sc.directions = parse_directions(a.directions);
  sc.repetitions = a.repetitions;
  sc.threads = g.threads;

  std::vector<SweepJob> jobs;
  for (const auto& p : a.instances) jobs.push_back({a.series, load_instance(p)});
  for (const auto& s : a.presets)
    for (auto& inst : generate_series(s, g.seed, a.count)) jobs.push_back({s, std::move(inst)});

  std::vector<SweepRow> rows;
  for (const auto& p : a.fronts) {
    auto r = sweep_front(a.series, stem(p), load_front(p), g.seed, sc.thetas, sc.directions);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (!jobs.empty()) {
    auto res = run_sweep(jobs, sc);
    rows.insert(rows.end(), res.rows.begin(), res.rows.end());
  }
  if (rows.empty()) throw ConfigError("sweep needs instance files, --front files or --preset series");
  emit(g, [&](std::ostream& os) { write_table_csv(os, rows); });
  const auto summary = summarize(rows);
  if (!a.summary.empty()) {
    std::ofstream os(a.summary);
    if (!os) throw DataError("cannot write '" + a.summary + "'");
    write_summary_csv(os, summary);
  } else {
    write_summary_csv(std::cerr, summary);
  }
}

void cmd_reduce(const Globals& g, const std::string& path, const std::string& theta_text, const std::string& dir_text) {
  const ParetoFront front = load_front(path);
  const QuantumOfInformation quantum(parse_direction(dir_text), Rational::parse(theta_text));
  const ParetoFront reduced = reduce_front(front, quantum);
  emit(g, [&](std::ostream& os) { write_front_csv(os, reduced); });
  if (front.empty()) {
    std::cerr << "empty front\n";
    return;
  }
  std::cerr << "direction=" << to_string(quantum.direction()) << " theta=" << quantum.theta().str()
            << " front=" << front.size() << " reduced=" << reduced.size()
            << " excluded_pct=" << fixed2(exclusion_percentage(front, reduced)) << '\n';
  if (const auto cert = exclusion_certificate(front, quantum)) {
    std::cerr << "certificate: " << front[cert->excluded].objectives << " excluded by "
              << front[cert->excluder].objectives << '\n';
  } else {
    std::cerr << "certificate: none\n";
  }
  if (const auto cover = check_collinear_front(front)) {
    std::cerr << "collinear: k=" << cover->k.str() << " lines=" << cover->lines;
    if (cover->lines == 1)
      std::cerr << " threshold=" << collapse_threshold(quantum.direction(), cover->k).str();
    std::cerr << '\n';
  }
}

void cmd_validate(const Globals& g, const std::string& path, const EngineFlags& f, int limit) {
  const BiInstance inst = load_instance(path);
  EngineConfig c = f.config(g.seed);
  const ParetoFront exact = exact_pareto(inst, limit, g.threads);
  const ValidationReport r = validate_run(exact, run(inst, c));
  emit(g, [&](std::ostream& os) {
    os << "generation,gd,igd,front_size\n";
    for (const auto& p : r.trace) {
      char line[128];
      std::snprintf(line, sizeof line, "%d,%.6f,%.6f,%zu\n", p.generation, p.gd, p.igd, p.front_size);
      os << line;
    }
  });
  auto ratio = [](double a, double b) { return b == 0.0 ? std::string("inf") : fixed2(a / b); };
  std::cerr << "instance=" << inst.name << " exact=" << r.exact_size << " final=" << r.final_size
            << " recovery=" << fixed2(r.recovery) << " gd_ratio=" << ratio(r.initial().gd, r.final_point().gd)
            << " igd_ratio=" << ratio(r.initial().igd, r.final_point().igd)
            << " sevenfold=" << (r.gd_decreased_sevenfold() && r.igd_decreased_sevenfold() ? "yes" : "no") << '\n';
}

void cmd_exact(const Globals& g, const std::string& path, int limit) {
  const BiInstance inst = load_instance(path);
  const ParetoFront f = exact_pareto(inst, limit, g.threads);
  emit(g, [&](std::ostream& os) { write_front_csv(os, f); });
  std::cerr << "instance=" << inst.name << " exact front=" << f.size() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bicriteria ATSP: NSGA-II approximation and Pareto-set reduction"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--out,-o", g.out, "output file (default: standard output)");
  app.add_option("--threads", g.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "write a bicriteria instance file");
  generate_cmd->add_option("--kind", gen.kind, "uniform|contr")->capture_default_str();
  generate_cmd->add_option("--n", gen.n, "number of vertices")->capture_default_str();
  generate_cmd->add_option("--i1", gen.i1, "first-criterion weight interval LO HI (default 1 10, contr 1 2)")->expected(2);
  generate_cmd->add_option("--i2", gen.i2, "second-criterion weight interval LO HI (default 1 10)")->expected(2);
  generate_cmd->add_option("--sum", gen.sum, "w1 + w2 for contradicting instances")->capture_default_str();
  generate_cmd->add_option("--from-atsp", gen.from_atsp, "TSPLIB ATSP file providing the first criterion");

  std::string instance_path, front_path, theta = "0.5", direction = "1st-2nd";
  int limit = kDefaultExactLimit;
  EngineFlags solve_flags, sweep_flags, validate_flags;

  auto* solve_cmd = app.add_subcommand("solve", "run NSGA-II and write the final front");
  solve_cmd->add_option("instance", instance_path, "instance file")->required();
  add_engine_flags(solve_cmd, solve_flags);

  SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "theta sweep over instances or fronts");
  sweep_cmd->add_option("instances", sw.instances, "instance files");
  sweep_cmd->add_option("--front", sw.fronts, "precomputed front CSV files");
  sweep_cmd->add_option("--preset", sw.presets, "series names such as S50[1,10][1,20]");
  sweep_cmd->add_option("--series", sw.series, "series label for files")->capture_default_str();
  sweep_cmd->add_option("--count", sw.count, "instances per preset series")->capture_default_str();
  sweep_cmd->add_option("--thetas", sw.thetas, "comma-separated theta values")->capture_default_str();
  sweep_cmd->add_option("--directions", sw.directions, "both|1st-2nd|2nd-1st")->capture_default_str();
  sweep_cmd->add_option("--repetitions", sw.repetitions, "engine runs per instance")->capture_default_str();
  sweep_cmd->add_option("--summary", sw.summary, "per-series summary CSV (default: standard error)");
  add_engine_flags(sweep_cmd, sweep_flags);

  auto* reduce_cmd = app.add_subcommand("reduce", "reduce a front with a quantum of information");
  reduce_cmd->add_option("front", front_path, "front CSV")->required();
  reduce_cmd->add_option("--theta", theta, "coefficient in (0,1), decimal or p/q")->capture_default_str();
  reduce_cmd->add_option("--direction", direction, "1st-2nd|2nd-1st")->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "compare a run against the exact front");
  validate_cmd->add_option("instance", instance_path, "instance file")->required();
  validate_cmd->add_option("--limit", limit, "largest n to enumerate")->capture_default_str();
  add_engine_flags(validate_cmd, validate_flags);

  auto* exact_cmd = app.add_subcommand("exact", "enumerate the exact Pareto front");
  exact_cmd->add_option("instance", instance_path, "instance file")->required();
  exact_cmd->add_option("--limit", limit, "largest n to enumerate")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*generate_cmd) cmd_generate(g, gen);
    if (*solve_cmd) cmd_solve(g, instance_path, solve_flags);
    if (*sweep_cmd) cmd_sweep(g, sw, sweep_flags);
    if (*reduce_cmd) cmd_reduce(g, front_path, theta, direction);
    if (*validate_cmd) cmd_validate(g, instance_path, validate_flags, limit);
    if (*exact_cmd) cmd_exact(g, instance_path, limit);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
