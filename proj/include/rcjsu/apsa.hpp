#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcjsu/metropolis.hpp"
#include "rcjsu/rng.hpp"
#include "rcjsu/scheduler.hpp"

namespace rcjsu {

/// The three perturbation moves applied between Metropolis-Hastings phases.
enum class PerturbOp { Beta = 0, Swap = 1, Restart = 2 };

inline const char* to_string(PerturbOp op) {
  switch (op) {
    case PerturbOp::Beta: return "beta";
    case PerturbOp::Swap: return "swap";
    default: return "restart";
  }
}

/// Simplex triple driving operator selection; starts at (0.65, 0.30, 0.05).
struct OperatorProbs {
  double beta = 0.65;
  double swap = 0.30;
  double restart = 0.05;

  double sum() const { return beta + swap + restart; }
  bool on_simplex(double tol = 1e-12) const {
    return beta >= 0.0 && swap >= 0.0 && restart >= 0.0 && std::abs(sum() - 1.0) <= tol;
  }
};

struct ApsaParams {
  int pop_size = 10;
  double time_limit = 600.0;  // seconds of wall clock
  double rho = 0.9;
  MhParams mh{};
  int beta_len = 5;
  std::uint64_t seed = 1;

  // Optional deterministic budget: when >= 0 the run stops after exactly this
  // many member steps (unless the wall clock limit hits first), and, with
  // deterministic_timing, history/trace timestamps report the step index
  // instead of wall seconds so repeated runs are byte-identical.
  long max_outer_steps = -1;
  bool deterministic_timing = false;

  // Wall budget for the closing all-pairs local search; < 0 runs it to a
  // local optimum.
  double final_ls_time_limit = -1.0;
};

inline void validate(const ApsaParams& p, int n) {
  validate(p.mh);
  if (p.pop_size < 1) throw std::invalid_argument("ApsaParams: pop_size must be >= 1");
  if (!(p.rho > 0.0 && p.rho < 1.0))
    throw std::invalid_argument("ApsaParams: rho must be in (0, 1)");
  if (p.beta_len < 1 || p.beta_len >= n)
    throw std::invalid_argument("ApsaParams: beta_len must be in [1, n)");
  if (p.time_limit < 0.0) throw std::invalid_argument("ApsaParams: negative time limit");
}

/// `s` independent uniformly random permutations of 0..n-1.
template <class R>
std::vector<Permutation> init_population(int s, int n, R& rng) {
  if (s < 1 || n < 1) throw std::invalid_argument("init_population: s and n must be >= 1");
  std::vector<Permutation> pop;
  pop.reserve(static_cast<std::size_t>(s));
  Permutation base(static_cast<std::size_t>(n));
  std::iota(base.begin(), base.end(), 0);
  for (int i = 0; i < s; ++i) {
    Permutation p = base;
    rng.shuffle(p);
    pop.push_back(std::move(p));
  }
  return pop;
}

/// Deterministic core of beta-sampling: remove the length-`len` block starting
/// at `start` and append it, order preserved; later jobs shift forward.
inline Permutation beta_move(const Permutation& pi, int start, int len) {
  const int n = static_cast<int>(pi.size());
  if (len < 1 || len > n) throw std::invalid_argument("beta_move: bad block length");
  if (start < 0 || start + len > n) throw std::invalid_argument("beta_move: bad block start");
  Permutation out;
  out.reserve(pi.size());
  out.insert(out.end(), pi.begin(), pi.begin() + start);
  out.insert(out.end(), pi.begin() + start + len, pi.end());
  out.insert(out.end(), pi.begin() + start, pi.begin() + start + len);
  return out;
}

/// Moves a contiguous block of `beta_len` jobs to the back of the permutation,
/// block start drawn uniformly from {0, ..., n - beta_len - 1}.
template <class R>
Permutation beta_sampling(const Permutation& pi, int beta_len, R& rng) {
  const int n = static_cast<int>(pi.size());
  if (n <= beta_len) throw std::invalid_argument("beta_sampling: needs n > beta_len");
  const int start = rng.index(n - beta_len);
  return beta_move(pi, start, beta_len);
}

/// Applies `m` single-pair swaps in sequence.
template <class R>
Permutation swap_ops(const Permutation& pi, int m, R& rng) {
  Permutation out = pi;
  for (int k = 0; k < m; ++k) out = swap_jobs(out, rng);
  return out;
}

/// Fresh uniformly random permutation, independent of any current solution.
template <class R>
Permutation random_list(int n, R& rng) {
  if (n < 1) throw std::invalid_argument("random_list: n must be >= 1");
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  rng.shuffle(p);
  return p;
}

/// r < p_b -> Beta; r < p_b + p_j -> Swap; otherwise Restart.
template <class R>
PerturbOp select_operator(const OperatorProbs& probs, R& rng) {
  const double r = rng.uniform01();
  if (r < probs.beta) return PerturbOp::Beta;
  if (r < probs.beta + probs.swap) return PerturbOp::Swap;
  return PerturbOp::Restart;
}

/// Decays the chosen operator's probability by rho and renormalises the
/// triple back onto the simplex.
inline OperatorProbs adapt_probabilities(OperatorProbs probs, PerturbOp chosen, double rho) {
  switch (chosen) {
    case PerturbOp::Beta: probs.beta *= rho; break;
    case PerturbOp::Swap: probs.swap *= rho; break;
    case PerturbOp::Restart: probs.restart *= rho; break;
  }
  const double s = probs.sum();
  probs.beta /= s;
  probs.swap /= s;
  probs.restart /= s;
  return probs;
}

/// Deterministic first-improvement local search over all index pairs (i < j):
/// apply any strictly improving swap and restart the sweep; stop at a sweep
/// with no improvement or at `deadline`. The returned permutation never
/// evaluates worse than the input.
template <class Eval>
Permutation swap_all_job_pairs(Permutation pi, Eval&& eval, Deadline deadline = no_deadline()) {
  const int n = static_cast<int>(pi.size());
  double best = eval(pi);
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < n - 1 && !improved; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (deadline != no_deadline() && Clock::now() >= deadline) return pi;
        std::swap(pi[static_cast<std::size_t>(i)], pi[static_cast<std::size_t>(j)]);
        const double cost = eval(pi);
        if (cost < best) {
          best = cost;
          improved = true;
          break;
        }
        std::swap(pi[static_cast<std::size_t>(i)], pi[static_cast<std::size_t>(j)]);
      }
    }
  }
  return pi;
}

struct HistoryPoint {
  double elapsed = 0.0;  // wall seconds, or the outer step index under deterministic timing
  double best = 0.0;
};

struct ApsaResult {
  Permutation best_pi;
  ObjectiveValue best_value;
  std::vector<HistoryPoint> history;
  std::array<long, 3> operator_counts{};  // indexed by PerturbOp
  std::vector<OperatorProbs> prob_trace;
  long outer_steps = 0;
  long mh_proposals = 0;
};

/// Per-step progress hook (drives the optional CSV trace).
using ApsaTraceSink =
    std::function<void(double elapsed, double best, const OperatorProbs&)>;

/// The outer adaptive population loop. Each member step runs
/// Metropolis-Hastings on the member, updates the global best from the
/// incumbent it returns, perturbs the member with one of three moves chosen by
/// the adaptive probabilities (beta-sampling restarts the member from the
/// global best; the other two diversify the member itself), and decays the
/// chosen probability. After the time or step budget, a deterministic
/// all-pairs swap descent polishes the global best.
///
/// pop_size = 1 is the plain simulated-annealing baseline.
inline ApsaResult run_apsa(const Instance& inst, const UncertaintyScenario& scen,
                           const ApsaParams& params, ApsaTraceSink trace = {}) {
  const int n = inst.num_jobs();
  validate(params, n);
  Evaluator evaluator(inst, scen);
  auto eval = [&evaluator](const Permutation& pi) { return evaluator.mean(pi); };

  const auto t_start = Clock::now();
  // a week-plus budget is effectively unbounded; avoids duration overflow
  const auto deadline =
      params.time_limit >= 1e6
          ? no_deadline()
          : t_start + std::chrono::duration_cast<Clock::duration>(
                          std::chrono::duration<double>(params.time_limit));
  ApsaResult res;
  auto now_stamp = [&] {
    return params.deterministic_timing
               ? static_cast<double>(res.outer_steps)
               : std::chrono::duration<double>(Clock::now() - t_start).count();
  };

  Rng rng(params.seed);
  std::vector<Permutation> population = init_population(params.pop_size, n, rng);
  OperatorProbs probs;
  res.prob_trace.push_back(probs);

  Permutation best_pi = population.front();
  double best_cost = eval(best_pi);
  for (std::size_t i = 1; i < population.size(); ++i) {
    const double c = eval(population[i]);
    if (c < best_cost) {
      best_cost = c;
      best_pi = population[i];
    }
  }
  res.history.push_back({now_stamp(), best_cost});

  auto budget_left = [&] {
    if (Clock::now() >= deadline) return false;
    if (params.max_outer_steps >= 0 && res.outer_steps >= params.max_outer_steps)
      return false;
    return true;
  };

  bool stop = false;
  while (!stop) {
    if (!budget_left()) break;
    for (auto& member : population) {
      if (!budget_left()) {
        stop = true;
        break;
      }
      MhResult mh = metropolis_hastings(member, params.mh, eval, rng, deadline);
      res.mh_proposals += mh.proposals;
      member = std::move(mh.pi);
      if (mh.pi_cost < best_cost) {
        best_cost = mh.pi_cost;
        best_pi = member;
        res.history.push_back({now_stamp(), best_cost});
      }

      const PerturbOp op = select_operator(probs, rng);
      switch (op) {
        case PerturbOp::Beta:
          member = beta_sampling(best_pi, params.beta_len, rng);
          break;
        case PerturbOp::Swap: {
          const int m = std::max(1, static_cast<int>(rng.uniform01() * n));
          member = swap_ops(member, m, rng);
          break;
        }
        case PerturbOp::Restart:
          member = random_list(n, rng);
          break;
      }
      probs = adapt_probabilities(probs, op, params.rho);
      ++res.operator_counts[static_cast<std::size_t>(op)];
      res.prob_trace.push_back(probs);
      ++res.outer_steps;
      if (trace) trace(now_stamp(), best_cost, probs);
    }
  }

  Deadline ls_deadline = no_deadline();
  if (params.final_ls_time_limit >= 0.0 && params.final_ls_time_limit < 1e6)
    ls_deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(params.final_ls_time_limit));
  res.best_pi = swap_all_job_pairs(std::move(best_pi), eval, ls_deadline);
  res.best_value = evaluate(inst, scen, res.best_pi);
  res.history.push_back({now_stamp(), res.best_value.mean_twt});
  return res;
}

}  // namespace rcjsu
