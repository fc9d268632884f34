#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rcjsu/apsa.hpp"
#include "rcjsu/instance.hpp"
#include "rcjsu/oracle.hpp"
#include "rcjsu/rng.hpp"
#include "rcjsu/scenario.hpp"

namespace rcjsu {

/// Gap of a solver value `a` to the best-known value: (a - best) / a.
/// Both zero is a perfect tie and reports 0. Throws for a <= 0 otherwise
/// (TWT values are nonnegative; a negative or zero `a` with a different best
/// has no meaningful gap).
inline double percentage_diff(double a, double best) {
  if (a == 0.0 && best == 0.0) return 0.0;
  if (a <= 0.0) throw std::invalid_argument("percentage_diff: a must be positive");
  return (a - best) / a;
}

enum class SolverKind { Apsa, Sa1, Oracle };

inline const char* to_string(SolverKind s) {
  switch (s) {
    case SolverKind::Apsa: return "apsa";
    case SolverKind::Sa1: return "sa1";
    default: return "oracle";
  }
}

inline SolverKind solver_from_string(const std::string& s) {
  if (s == "apsa") return SolverKind::Apsa;
  if (s == "sa1") return SolverKind::Sa1;
  if (s == "oracle") return SolverKind::Oracle;
  throw std::invalid_argument("unknown solver '" + s + "' (expected apsa, sa1 or oracle)");
}

/// One experiment cell result; `status` is "ok", "skipped" or "error" and
/// `note` carries the reason for the latter two.
struct ResultRow {
  std::string instance;
  double multiplier = 1.0;
  std::string solver;
  int rep = 0;
  std::uint64_t seed = 0;
  std::string status = "ok";
  double best_mean_twt = 0.0;
  double elapsed = 0.0;
  long iterations = 0;
  std::string note;
};

struct ExperimentConfig {
  std::vector<std::string> instance_paths;
  std::vector<double> multipliers;
  int samples = 10;
  int repetitions = 25;
  double time_limit = 600.0;
  std::vector<SolverKind> solvers{SolverKind::Apsa};
  std::uint64_t base_seed = 1;
  std::string output = "results.csv";
  int jobs = 1;

  // solver parameters (sa1 shares them with pop_size forced to 1)
  int pop_size = 10;
  double rho = 0.9;
  MhParams mh{};
  int beta_len = 5;
  long max_outer_steps = -1;
  int oracle_max_n = 9;
};

inline void validate(const ExperimentConfig& cfg) {
  if (cfg.instance_paths.empty()) throw std::invalid_argument("config: no instances given");
  if (cfg.multipliers.empty()) throw std::invalid_argument("config: no multipliers given");
  if (cfg.repetitions < 1) throw std::invalid_argument("config: repetitions must be >= 1");
  if (cfg.samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  if (cfg.solvers.empty()) throw std::invalid_argument("config: no solvers given");
  if (cfg.jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
}

namespace detail {

inline std::string canonical_multiplier(double m) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", m);
  return buf;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

/// Stable per-cell seed: every (base, instance, multiplier, repetition) cell
/// can be re-run in isolation and experiments resume without replaying.
inline std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& instance,
                                 double multiplier, int rep) {
  std::uint64_t h = fnv1a(std::to_string(base_seed));
  h = fnv1a(instance, h);
  h = fnv1a(detail::canonical_multiplier(multiplier), h);
  h = fnv1a(std::to_string(rep), h);
  return h;
}

/// Plain-text key=value experiment config ('#' comments). Lists are
/// comma-separated; `instance` may repeat.
///
///   instance = data/toy3.rcjsu
///   multipliers = 0.5, 0.8, 1.0
///   solvers = apsa, sa1
///   samples = 10
///   repetitions = 25
///   time_limit = 600
///   base_seed = 1
///   output = results.csv
///   pop_size / rho / t0 / iters / gamma / beta_len / outer_iters / jobs / oracle_max_n
inline ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig cfg;
  cfg.solvers.clear();
  cfg.multipliers.clear();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    auto fail = [&](const std::string& why) {
      throw std::runtime_error("config line " + std::to_string(lineno) + ": " + why);
    };
    try {
      if (key == "instance" || key == "instances") {
        for (const auto& part : detail::split(value, ',')) {
          const std::string p = detail::trim(part);
          if (!p.empty()) cfg.instance_paths.push_back(p);
        }
      } else if (key == "multipliers" || key == "multiplier") {
        for (const auto& part : detail::split(value, ','))
          cfg.multipliers.push_back(std::stod(detail::trim(part)));
      } else if (key == "solvers" || key == "solver") {
        for (const auto& part : detail::split(value, ','))
          cfg.solvers.push_back(solver_from_string(detail::trim(part)));
      } else if (key == "samples") {
        cfg.samples = std::stoi(value);
      } else if (key == "repetitions") {
        cfg.repetitions = std::stoi(value);
      } else if (key == "time_limit") {
        cfg.time_limit = std::stod(value);
      } else if (key == "base_seed") {
        cfg.base_seed = std::stoull(value);
      } else if (key == "output") {
        cfg.output = value;
      } else if (key == "jobs") {
        cfg.jobs = std::stoi(value);
      } else if (key == "pop_size") {
        cfg.pop_size = std::stoi(value);
      } else if (key == "rho") {
        cfg.rho = std::stod(value);
      } else if (key == "t0") {
        cfg.mh.t0 = std::stod(value);
      } else if (key == "iters") {
        cfg.mh.iters = std::stoi(value);
      } else if (key == "gamma") {
        cfg.mh.gamma = std::stod(value);
      } else if (key == "literal_acceptance") {
        cfg.mh.literal_acceptance = value == "1" || value == "true";
      } else if (key == "beta_len") {
        cfg.beta_len = std::stoi(value);
      } else if (key == "outer_iters") {
        cfg.max_outer_steps = std::stol(value);
      } else if (key == "oracle_max_n") {
        cfg.oracle_max_n = std::stoi(value);
      } else {
        fail("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
  if (cfg.solvers.empty()) cfg.solvers.push_back(SolverKind::Apsa);
  if (cfg.multipliers.empty()) cfg.multipliers.push_back(1.0);
  return cfg;
}

inline const char* result_csv_header() {
  return "instance,multiplier,solver,rep,seed,status,best_mean_twt,elapsed_s,iterations,note";
}

inline std::string format_result_row(const ResultRow& r) {
  std::ostringstream out;
  char num[64];
  out << detail::csv_escape(r.instance) << "," << detail::canonical_multiplier(r.multiplier)
      << "," << r.solver << "," << r.rep << "," << r.seed << "," << r.status << ",";
  out << (r.status == "ok" ? detail::format_real(r.best_mean_twt) : "") << ",";
  std::snprintf(num, sizeof num, "%.3f", r.elapsed);
  out << num << "," << r.iterations << "," << detail::csv_escape(r.note);
  return out.str();
}

/// Parses a rows CSV written by format_result_row (header tolerated).
inline std::vector<ResultRow> parse_result_rows(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("instance,", 0) == 0) continue;
    // fields never contain escaped commas except instance/note; parse defensively
    auto fields = detail::split(line, ',');
    if (fields.size() < 10) continue;
    ResultRow r;
    r.instance = fields[0];
    r.multiplier = std::stod(fields[1]);
    r.solver = fields[2];
    r.rep = std::stoi(fields[3]);
    r.seed = std::stoull(fields[4]);
    r.status = fields[5];
    r.best_mean_twt = fields[6].empty() ? 0.0 : std::stod(fields[6]);
    r.elapsed = std::stod(fields[7]);
    r.iterations = std::stol(fields[8]);
    r.note = fields[9];
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace detail {

struct Cell {
  std::size_t instance_idx;
  double multiplier;
  SolverKind solver;
  int rep;
};

inline ResultRow run_cell(const Instance& inst, const ExperimentConfig& cfg,
                          const Cell& cell) {
  ResultRow row;
  row.instance = inst.name;
  row.multiplier = cell.multiplier;
  row.solver = to_string(cell.solver);
  row.rep = cell.rep;
  row.seed = derive_seed(cfg.base_seed, inst.name, cell.multiplier, cell.rep);
  const auto t0 = Clock::now();
  try {
    const UncertaintyScenario scen =
        generate_scenario(inst, cell.multiplier, cfg.samples, row.seed);
    if (cell.solver == SolverKind::Oracle) {
      auto [pi, value] = brute_force_oracle(inst, scen, cfg.oracle_max_n);
      row.best_mean_twt = value.mean_twt;
      long perms = 1;
      for (int k = 2; k <= inst.num_jobs(); ++k) perms *= k;
      row.iterations = perms;
    } else {
      ApsaParams params;
      params.pop_size = cell.solver == SolverKind::Sa1 ? 1 : cfg.pop_size;
      params.time_limit = cfg.time_limit;
      params.rho = cfg.rho;
      params.mh = cfg.mh;
      params.beta_len = std::min(cfg.beta_len, inst.num_jobs() - 1);
      params.seed = row.seed;
      params.max_outer_steps = cfg.max_outer_steps;
      const ApsaResult res = run_apsa(inst, scen, params);
      row.best_mean_twt = res.best_value.mean_twt;
      row.iterations = res.outer_steps;
    }
  } catch (const std::exception& e) {
    row.status = "skipped";
    row.note = e.what();
    // note text travels in a CSV cell
    for (char& c : row.note)
      if (c == ',' || c == '\n') c = ';';
  }
  row.elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  return row;
}

}  // namespace detail

/// Runs every (instance, multiplier, solver, repetition) cell, appending one
/// CSV row per cell to cfg.output as soon as it finishes. Cells already
/// present in the output file are skipped, so an interrupted run resumes
/// where it stopped and a rerun over a complete file changes nothing.
/// Failures (for instance an infeasible multiplier) become "skipped" rows and
/// the run continues. With cfg.jobs > 1 cells run concurrently; per-cell
/// seeding keeps each row's content independent of scheduling.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);

  std::vector<Instance> instances;
  instances.reserve(cfg.instance_paths.size());
  for (const auto& path : cfg.instance_paths) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    instances.push_back(parse_instance(buf.str()));
  }

  auto key_of = [](const std::string& inst, double mult, const std::string& solver,
                   int rep) {
    return inst + "|" + detail::canonical_multiplier(mult) + "|" + solver + "|" +
           std::to_string(rep);
  };

  std::vector<ResultRow> done;
  std::set<std::string> done_keys;
  bool file_existed = false;
  {
    std::ifstream existing(cfg.output);
    if (existing) {
      file_existed = true;
      done = parse_result_rows(existing);
      for (const auto& r : done)
        done_keys.insert(key_of(r.instance, r.multiplier, r.solver, r.rep));
    }
  }

  std::ofstream out(cfg.output, std::ios::app);
  if (!out) throw std::runtime_error("cannot open output file: " + cfg.output);
  if (!file_existed) out << result_csv_header() << "\n" << std::flush;

  std::vector<detail::Cell> todo;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (double mult : cfg.multipliers)
      for (SolverKind solver : cfg.solvers)
        for (int rep = 0; rep < cfg.repetitions; ++rep)
          if (!done_keys.count(key_of(instances[i].name, mult, to_string(solver), rep)))
            todo.push_back({i, mult, solver, rep});

  std::vector<ResultRow> fresh_rows(todo.size());
  std::mutex io_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= todo.size()) return;
      const detail::Cell& cell = todo[k];
      ResultRow row = detail::run_cell(instances[cell.instance_idx], cfg, cell);
      {
        std::lock_guard<std::mutex> lock(io_mutex);
        out << format_result_row(row) << "\n" << std::flush;
      }
      fresh_rows[k] = std::move(row);
    }
  };
  if (cfg.jobs == 1 || todo.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int workers = std::min<int>(cfg.jobs, static_cast<int>(todo.size()));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  done.insert(done.end(), std::make_move_iterator(fresh_rows.begin()),
              std::make_move_iterator(fresh_rows.end()));
  return done;
}

/// Per-(instance, multiplier, solver) aggregate plus the two best-reference
/// gap columns (best single run of any solver, and best per-solver mean).
struct SummaryRow {
  std::string instance;
  double multiplier = 1.0;
  std::string solver;
  int runs = 0;
  double mean_twt = 0.0;
  double best_run = 0.0;       // least single-run value of any solver in the cell
  double best_of_means = 0.0;  // least per-solver mean in the cell
  double pct_vs_best_run = 0.0;
  double pct_vs_best_of_means = 0.0;
};

struct Summary {
  std::vector<SummaryRow> rows;
  std::map<std::string, int> num_best;  // solver -> cells where it attains best_of_means
};

/// Pure aggregation of ok-rows: per (instance x multiplier) cell, each
/// solver's mean and its percentage gap to both best references; ties on the
/// best mean count toward every attainer's num_best.
inline Summary summarise(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("summarise: no rows");
  struct Acc {
    double sum = 0.0;
    int count = 0;
  };
  std::map<std::pair<std::string, std::string>, std::map<std::string, Acc>> cells;
  std::map<std::pair<std::string, std::string>, double> cell_best_run;
  std::map<std::string, double> mult_of;
  std::set<std::string> solvers;
  for (const ResultRow& r : rows) {
    if (r.status != "ok") continue;
    const std::string mkey = detail::canonical_multiplier(r.multiplier);
    const auto key = std::make_pair(r.instance, mkey);
    auto& acc = cells[key][r.solver];
    acc.sum += r.best_mean_twt;
    ++acc.count;
    auto it = cell_best_run.find(key);
    if (it == cell_best_run.end() || r.best_mean_twt < it->second)
      cell_best_run[key] = r.best_mean_twt;
    mult_of[mkey] = r.multiplier;
    solvers.insert(r.solver);
  }

  Summary out;
  for (const std::string& s : solvers) out.num_best[s] = 0;
  for (const auto& [key, per_solver] : cells) {
    double best_of_means = 0.0;
    bool have = false;
    for (const auto& [solver, acc] : per_solver) {
      const double mean = acc.sum / acc.count;
      if (!have || mean < best_of_means) {
        best_of_means = mean;
        have = true;
      }
    }
    for (const auto& [solver, acc] : per_solver) {
      SummaryRow row;
      row.instance = key.first;
      row.multiplier = mult_of[key.second];
      row.solver = solver;
      row.runs = acc.count;
      row.mean_twt = acc.sum / acc.count;
      row.best_run = cell_best_run[key];
      row.best_of_means = best_of_means;
      row.pct_vs_best_run = percentage_diff(row.mean_twt, row.best_run);
      row.pct_vs_best_of_means = percentage_diff(row.mean_twt, best_of_means);
      if (row.mean_twt == best_of_means) ++out.num_best[solver];
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

/// Summary CSV: one row per (instance, multiplier, solver), percentage columns
/// scaled to percent, then one ALL row per solver carrying its num_best count.
inline std::string format_summary(const Summary& summary) {
  std::ostringstream out;
  out << "instance,multiplier,solver,runs,mean_twt,best_run,best_of_means,"
         "pct_vs_best_run,pct_vs_best_of_means,num_best\n";
  char buf[256];
  for (const SummaryRow& r : summary.rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%s,%d,%.6f,%.6f,%.6f,%.4f,%.4f,",
                  detail::csv_escape(r.instance).c_str(),
                  detail::canonical_multiplier(r.multiplier).c_str(), r.solver.c_str(),
                  r.runs, r.mean_twt, r.best_run, r.best_of_means,
                  100.0 * r.pct_vs_best_run, 100.0 * r.pct_vs_best_of_means);
    out << buf << "\n";
  }
  for (const auto& [solver, count] : summary.num_best)
    out << "ALL,,"
        << solver << ",,,,,,," << count << "\n";
  return out.str();
}

}  // namespace rcjsu
