#pragma once

#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "rcjsu/scheduler.hpp"

namespace rcjsu {

using Clock = std::chrono::steady_clock;
using Deadline = Clock::time_point;

inline Deadline no_deadline() { return Deadline::max(); }

/// Inner annealing loop parameters. `iters` is the non-improving proposal
/// budget: any strict improvement resets the stall counter.
///
/// The default acceptance test is the standard Metropolis rule: with
/// delta = f(candidate) - C, accept a non-improving candidate when
/// rand() < exp(-delta/T). `literal_acceptance` switches to the inverted
/// variant sometimes seen in pseudocode (delta taken from the incumbent
/// rather than the candidate, move accepted when exp(-delta/T) <= rand());
/// it degenerates to pure descent and exists for comparison runs.
struct MhParams {
  double t0 = 1500.0;
  int iters = 1000;
  double gamma = 0.5;
  bool literal_acceptance = false;
};

inline void validate(const MhParams& p) {
  if (!(p.t0 > 0.0)) throw std::invalid_argument("MhParams: t0 must be positive");
  if (p.iters < 1) throw std::invalid_argument("MhParams: iters must be >= 1");
  if (!(p.gamma > 0.0 && p.gamma < 1.0))
    throw std::invalid_argument("MhParams: gamma must be in (0, 1)");
}

/// Copy of `pi` with the jobs at two distinct uniformly drawn indices
/// exchanged. Input is untouched.
template <class R>
Permutation swap_jobs(const Permutation& pi, R& rng) {
  const int n = static_cast<int>(pi.size());
  if (n < 2) throw std::invalid_argument("swap_jobs: need at least two jobs");
  const int i = rng.index(n);
  int j = rng.index(n - 1);
  if (j >= i) ++j;
  Permutation out = pi;
  std::swap(out[static_cast<std::size_t>(i)], out[static_cast<std::size_t>(j)]);
  return out;
}

struct MhResult {
  Permutation pi;         // final incumbent
  double pi_cost = 0.0;   // eval of the incumbent
  double best_cost = 0.0; // least eval seen over the whole run
  Permutation best_pi;    // a permutation attaining best_cost
  long proposals = 0;
};

namespace detail {

inline double acceptance_probability(double delta, double temperature) {
  if (delta <= 0.0) return 1.0;
  if (temperature <= 0.0) return 0.0;  // frozen: exp underflow limit
  return std::exp(-delta / temperature);
}

}  // namespace detail

/// Metropolis-Hastings with best-cost tracking, geometric cooling applied on
/// non-improving proposals only, and a stall counter that is reset by every
/// strict improvement. Terminates when `iters` consecutive proposals fail to
/// improve the best cost C, or at `deadline`. Returns the final incumbent;
/// best_cost/best_pi report the least value observed.
///
/// `trace`, when set, receives one line per proposal: iteration, current
/// temperature, best cost.
template <class Eval, class R>
MhResult metropolis_hastings(const Permutation& start, const MhParams& params, Eval&& eval,
                             R& rng, Deadline deadline = no_deadline(),
                             std::ostream* trace = nullptr) {
  validate(params);
  MhResult res;
  res.pi = start;
  res.pi_cost = eval(res.pi);
  res.best_cost = res.pi_cost;  // the input solution is the baseline
  res.best_pi = res.pi;

  double temperature = params.t0;
  int stall = 0;
  while (stall < params.iters) {
    if (deadline != no_deadline() && Clock::now() >= deadline) break;
    Permutation cand = swap_jobs(res.pi, rng);
    const double cand_cost = eval(cand);
    ++res.proposals;
    if (cand_cost < res.best_cost) {
      res.best_cost = cand_cost;
      res.best_pi = cand;
      res.pi = std::move(cand);
      res.pi_cost = cand_cost;
      stall = 0;
    } else {
      ++stall;
      const double delta = params.literal_acceptance ? res.pi_cost - res.best_cost
                                                     : cand_cost - res.best_cost;
      const double p = detail::acceptance_probability(delta, temperature);
      const double u = rng.uniform01();
      const bool accept = params.literal_acceptance ? (p <= u) : (u < p);
      if (accept) {
        res.pi = std::move(cand);
        res.pi_cost = cand_cost;
      }
      temperature *= params.gamma;
    }
    if (trace)
      (*trace) << "mh iter=" << res.proposals << " T=" << temperature
               << " C=" << res.best_cost << "\n";
  }
  return res;
}

}  // namespace rcjsu
