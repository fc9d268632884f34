#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rcjsu/scheduler.hpp"

namespace rcjsu {

/// Ground truth on small instances: evaluates every one of the n!
/// permutations and returns a minimiser. Enumeration is in lexicographic
/// order and only a strict improvement replaces the incumbent, so ties break
/// toward the lexicographically smallest permutation.
inline std::pair<Permutation, ObjectiveValue> brute_force_oracle(
    const Instance& inst, const UncertaintyScenario& scen, int max_n = 9) {
  const int n = inst.num_jobs();
  if (n < 1) throw std::invalid_argument("brute_force_oracle: empty instance");
  if (n > max_n)
    throw std::invalid_argument("brute_force_oracle: n = " + std::to_string(n) +
                                " exceeds max_n = " + std::to_string(max_n));
  Permutation pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  Evaluator ev(inst, scen);
  Permutation best_pi = pi;
  double best = ev.mean(pi);
  while (std::next_permutation(pi.begin(), pi.end())) {
    const double v = ev.mean(pi);
    if (v < best) {
      best = v;
      best_pi = pi;
    }
  }
  return {best_pi, ev.full(best_pi)};
}

}  // namespace rcjsu
