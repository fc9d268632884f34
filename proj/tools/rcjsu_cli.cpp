// Benchmark CLI for the RCJSU solver library: single runs, experiment
// suites, report aggregation, the exhaustive oracle, LP model export and the
// operator-probability simulation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rcjsu/rcjsu.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string format_value(double v) { return rcjsu::detail::format_real(v); }

struct SolveOptions {
  std::string instance_path;
  double multiplier = 1.0;
  int samples = 10;
  std::uint64_t seed = 1;
  double time_limit = 600.0;
  int pop_size = 10;
  double rho = 0.9;
  double t0 = 1500.0;
  int iters = 1000;
  double gamma = 0.5;
  int beta_len = 5;
  bool literal_acceptance = false;
  long outer_iters = -1;
  std::string trace_path;
  std::string scenario_out;
  std::string schedule_out;
};

int run_solve(const SolveOptions& opt) {
  const rcjsu::Instance inst = rcjsu::parse_instance(read_file(opt.instance_path));
  const rcjsu::UncertaintyScenario scen =
      rcjsu::generate_scenario(inst, opt.multiplier, opt.samples, opt.seed);
  if (!opt.scenario_out.empty()) write_file(opt.scenario_out, rcjsu::format_scenario(scen));

  rcjsu::ApsaParams params;
  params.pop_size = opt.pop_size;
  params.time_limit = opt.time_limit;
  params.rho = opt.rho;
  params.mh.t0 = opt.t0;
  params.mh.iters = opt.iters;
  params.mh.gamma = opt.gamma;
  params.mh.literal_acceptance = opt.literal_acceptance;
  params.beta_len = std::min(opt.beta_len, inst.num_jobs() - 1);
  params.seed = opt.seed;
  params.max_outer_steps = opt.outer_iters;
  // a fixed step budget makes the run (and its trace) reproducible
  params.deterministic_timing = opt.outer_iters >= 0;

  std::ofstream trace_file;
  rcjsu::ApsaTraceSink sink;
  if (!opt.trace_path.empty()) {
    trace_file.open(opt.trace_path);
    if (!trace_file) throw std::runtime_error("cannot write trace file: " + opt.trace_path);
    trace_file << "elapsed_s,best_mean_twt,p_b,p_j,p_r\n";
    sink = [&trace_file](double elapsed, double best, const rcjsu::OperatorProbs& p) {
      char head[32];
      std::snprintf(head, sizeof head, "%.6f", elapsed);
      trace_file << head << "," << format_value(best) << "," << format_value(p.beta) << ","
                 << format_value(p.swap) << "," << format_value(p.restart) << "\n";
    };
  }

  const auto started = rcjsu::Clock::now();
  const rcjsu::ApsaResult res = rcjsu::run_apsa(inst, scen, params, sink);
  const double wall = std::chrono::duration<double>(rcjsu::Clock::now() - started).count();

  if (!opt.schedule_out.empty()) {
    std::vector<rcjsu::Schedule> per_sample;
    per_sample.reserve(scen.capacities.size());
    for (double cap : scen.capacities)
      per_sample.push_back(rcjsu::decode(inst, cap, res.best_pi));
    write_file(opt.schedule_out, rcjsu::format_schedules(inst, per_sample));
  }

  std::cout << "instance " << inst.name << "\n";
  std::cout << "jobs " << inst.num_jobs() << "\n";
  std::cout << "machines " << inst.machines << "\n";
  std::cout << "samples " << scen.num_samples() << "\n";
  std::cout << "multiplier " << format_value(opt.multiplier) << "\n";
  std::cout << "seed " << opt.seed << "\n";
  std::cout << "pop_size " << params.pop_size << "\n";
  std::cout << "best_mean_twt " << format_value(res.best_value.mean_twt) << "\n";
  std::cout << "per_sample";
  for (double v : res.best_value.per_sample) std::cout << " " << format_value(v);
  std::cout << "\n";
  std::cout << "permutation";
  for (int j : res.best_pi) std::cout << " " << inst.original_id(j);
  std::cout << "\n";
  std::cout << "outer_steps " << res.outer_steps << "\n";
  std::cout << "mh_proposals " << res.mh_proposals << "\n";
  std::cout << "operator_counts beta=" << res.operator_counts[0]
            << " swap=" << res.operator_counts[1] << " restart=" << res.operator_counts[2]
            << "\n";
  std::cerr << "elapsed_s " << wall << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RCJSU: resource constrained job scheduling under uncertainty"};
  app.require_subcommand(1);

  SolveOptions solve_opt;
  CLI::App* solve = app.add_subcommand("solve", "run the adaptive solver on one instance");
  solve->add_option("--instance", solve_opt.instance_path, "instance file")->required();
  solve->add_option("--multiplier", solve_opt.multiplier, "uncertainty level U_l in (0,1]");
  solve->add_option("--samples", solve_opt.samples, "number of capacity samples");
  solve->add_option("--seed", solve_opt.seed, "random seed");
  solve->add_option("--time-limit", solve_opt.time_limit, "wall clock budget, seconds");
  solve->add_option("--pop-size", solve_opt.pop_size, "population size (1 = plain SA)");
  solve->add_option("--rho", solve_opt.rho, "operator probability decay");
  solve->add_option("--t0", solve_opt.t0, "initial temperature");
  solve->add_option("--iters", solve_opt.iters, "non-improving proposals per MH run");
  solve->add_option("--gamma", solve_opt.gamma, "cooling multiplier");
  solve->add_option("--beta-len", solve_opt.beta_len, "beta-sampling block length");
  solve->add_flag("--literal-acceptance", solve_opt.literal_acceptance,
                  "accept when exp(-delta/T) <= rand(), delta from the incumbent");
  solve->add_option("--outer-iters", solve_opt.outer_iters,
                    "deterministic member-step budget; enables reproducible traces");
  solve->add_option("--trace", solve_opt.trace_path, "progress CSV path");
  solve->add_option("--scenario-out", solve_opt.scenario_out, "write scenario sidecar");
  solve->add_option("--dump-schedule", solve_opt.schedule_out,
                    "write per-sample start times of the best solution");

  std::string bench_config;
  int bench_jobs = 0;
  CLI::App* bench = app.add_subcommand("bench", "run an experiment suite from a config file");
  bench->add_option("--config", bench_config, "key=value experiment config")->required();
  bench->add_option("--jobs", bench_jobs, "override worker count");

  std::string report_rows, report_out;
  CLI::App* report = app.add_subcommand("report", "summarise a rows CSV");
  report->add_option("--rows", report_rows, "rows CSV from bench")->required();
  report->add_option("--out", report_out, "summary CSV path (default stdout)");

  struct {
    std::string instance_path;
    double multiplier = 1.0;
    int samples = 10;
    std::uint64_t seed = 1;
    int max_n = 9;
    std::string scenario_out;
  } oracle_opt;
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive optimum for a small instance");
  oracle->add_option("--instance", oracle_opt.instance_path, "instance file")->required();
  oracle->add_option("--multiplier", oracle_opt.multiplier, "uncertainty level");
  oracle->add_option("--samples", oracle_opt.samples, "number of capacity samples");
  oracle->add_option("--seed", oracle_opt.seed, "scenario seed");
  oracle->add_option("--max-n", oracle_opt.max_n, "refuse instances larger than this");
  oracle->add_option("--scenario-out", oracle_opt.scenario_out, "write scenario sidecar");

  struct {
    std::string instance_path;
    double multiplier = 1.0;
    int samples = 10;
    std::uint64_t seed = 1;
    std::string out;
    std::int64_t var_cap = 2000000;
  } lp_opt;
  CLI::App* export_lp = app.add_subcommand("export-lp", "write the time-indexed model as LP");
  export_lp->add_option("--instance", lp_opt.instance_path, "instance file")->required();
  export_lp->add_option("--multiplier", lp_opt.multiplier, "uncertainty level");
  export_lp->add_option("--samples", lp_opt.samples, "number of capacity samples");
  export_lp->add_option("--seed", lp_opt.seed, "scenario seed");
  export_lp->add_option("--out", lp_opt.out, "LP file path")->required();
  export_lp->add_option("--var-cap", lp_opt.var_cap, "refuse models with more variables");

  struct {
    double pb = 0.65, pj = 0.30, pr = 0.05;
    int steps = 200;
    std::string out;
  } sim_opt;
  CLI::App* probsim = app.add_subcommand("probsim", "operator-probability trajectory CSV");
  probsim->add_option("--pb", sim_opt.pb, "initial beta-sampling probability");
  probsim->add_option("--pj", sim_opt.pj, "initial job-swap probability");
  probsim->add_option("--pr", sim_opt.pr, "initial restart probability");
  probsim->add_option("--steps", sim_opt.steps, "iteration count");
  probsim->add_option("--out", sim_opt.out, "CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(solve_opt);

    if (bench->parsed()) {
      rcjsu::ExperimentConfig cfg = rcjsu::parse_experiment_config(read_file(bench_config));
      if (bench_jobs > 0) cfg.jobs = bench_jobs;
      const auto rows = rcjsu::run_experiment(cfg);
      long ok = 0, skipped = 0;
      for (const auto& r : rows) (r.status == "ok" ? ok : skipped)++;
      std::cout << "rows " << rows.size() << " ok " << ok << " skipped " << skipped
                << " -> " << cfg.output << "\n";
      return 0;
    }

    if (report->parsed()) {
      std::ifstream in(report_rows);
      if (!in) throw std::runtime_error("cannot open rows file: " + report_rows);
      const auto rows = rcjsu::parse_result_rows(in);
      const std::string csv = rcjsu::format_summary(rcjsu::summarise(rows));
      if (report_out.empty())
        std::cout << csv;
      else
        write_file(report_out, csv);
      return 0;
    }

    if (oracle->parsed()) {
      const rcjsu::Instance inst = rcjsu::parse_instance(read_file(oracle_opt.instance_path));
      const auto scen = rcjsu::generate_scenario(inst, oracle_opt.multiplier,
                                                 oracle_opt.samples, oracle_opt.seed);
      if (!oracle_opt.scenario_out.empty())
        write_file(oracle_opt.scenario_out, rcjsu::format_scenario(scen));
      const auto [pi, value] = rcjsu::brute_force_oracle(inst, scen, oracle_opt.max_n);
      std::cout << "instance " << inst.name << "\n";
      std::cout << "optimal_mean_twt " << format_value(value.mean_twt) << "\n";
      std::cout << "permutation";
      for (int j : pi) std::cout << " " << inst.original_id(j);
      std::cout << "\n";
      return 0;
    }

    if (export_lp->parsed()) {
      const rcjsu::Instance inst = rcjsu::parse_instance(read_file(lp_opt.instance_path));
      const auto scen =
          rcjsu::generate_scenario(inst, lp_opt.multiplier, lp_opt.samples, lp_opt.seed);
      write_file(lp_opt.out, rcjsu::export_ip(inst, scen, lp_opt.var_cap));
      const auto st = rcjsu::lp_model_stats(inst, scen);
      std::cout << "variables " << st.variables << "\n";
      std::cout << "rows "
                << st.completion_rows + st.monotone_rows + st.release_rows +
                       st.precedence_rows + st.machine_rows + st.resource_rows
                << " -> " << lp_opt.out << "\n";
      return 0;
    }

    if (probsim->parsed()) {
      const rcjsu::ProbState p0{sim_opt.pb, sim_opt.pj, sim_opt.pr};
      const auto traj = rcjsu::integrate(p0, sim_opt.steps);
      std::ostringstream csv;
      csv << "step,p_b,p_j,p_r\n";
      for (std::size_t k = 0; k < traj.size(); ++k) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu,%.12f,%.12f,%.12f\n", k, traj[k].pb, traj[k].pj,
                      traj[k].pr);
        csv << buf;
      }
      if (sim_opt.out.empty())
        std::cout << csv.str();
      else
        write_file(sim_opt.out, csv.str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
