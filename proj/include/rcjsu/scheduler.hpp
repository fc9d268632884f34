#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcjsu/instance.hpp"
#include "rcjsu/scenario.hpp"

namespace rcjsu {

/// A solution: an ordering of all dense job ids 0..n-1.
using Permutation = std::vector<int>;

inline bool is_valid_permutation(const Permutation& pi, int n) {
  if (static_cast<int>(pi.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int j : pi) {
    if (j < 0 || j >= n || seen[static_cast<std::size_t>(j)]) return false;
    seen[static_cast<std::size_t>(j)] = 1;
  }
  return true;
}

/// One decoded sample schedule: integer start times per dense job id, plus the
/// sample capacity it was built against.
struct Schedule {
  std::vector<std::int64_t> starts;
  double capacity = 0.0;
};

/// Mean total weighted tardiness across samples, with the per-sample values
/// kept for reporting.
struct ObjectiveValue {
  double mean_twt = 0.0;
  std::vector<double> per_sample;
};

/// Upper bound on any serial-scheme completion time: every job fits if all of
/// them run back to back after the last release.
inline std::int64_t horizon(const Instance& inst) {
  std::int64_t sum_p = 0, max_r = 0;
  for (const Job& j : inst.jobs) {
    sum_p += j.proc;
    max_r = std::max(max_r, j.release);
  }
  return sum_p + max_r;
}

// Resource feasibility slack: sums of job usages are recomputed along
// different paths (decoder sweep, checker, tests) and must agree on what
// "fits" means despite FP rounding.
inline double capacity_slack(double capacity) {
  return 1e-9 * std::max(1.0, capacity);
}

namespace detail {

// Earliest t >= t0 such that [t, t + len) avoids every blocked interval.
// `blocked` must be sorted by start; intervals are half-open and may overlap.
inline std::int64_t earliest_gap(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& blocked, std::int64_t t0,
    std::int64_t len) {
  std::int64_t t = t0;
  for (const auto& [a, b] : blocked) {
    if (b <= t) continue;
    if (a >= t + len) break;
    t = b;
  }
  return t;
}

/// Scratch buffers reused across decodes (one workspace per evaluation
/// stream; decoding allocates nothing once the buffers are warm).
struct DecodeWorkspace {
  using Interval = std::pair<std::int64_t, std::int64_t>;
  std::vector<std::pair<std::int64_t, double>> events;  // sorted resource deltas
  std::vector<std::vector<Interval>> machine_busy;      // sorted, disjoint per machine
  std::vector<Interval> resource_blocked;
  std::vector<Interval> blocked;
  std::vector<int> waiting;
  std::vector<char> seen;
};

inline void check_permutation(const Permutation& pi, int n, DecodeWorkspace& ws) {
  bool ok = static_cast<int>(pi.size()) == n;
  if (ok) {
    ws.seen.assign(static_cast<std::size_t>(n), 0);
    for (int j : pi) {
      if (j < 0 || j >= n || ws.seen[static_cast<std::size_t>(j)]) {
        ok = false;
        break;
      }
      ws.seen[static_cast<std::size_t>(j)] = 1;
    }
  }
  if (!ok) throw std::invalid_argument("decode: invalid permutation");
}

inline void decode_into(const Instance& inst, double capacity, const Permutation& pi,
                        const PredIndex& preds, DecodeWorkspace& ws,
                        std::vector<std::int64_t>& starts,
                        std::vector<int>* placement_order, bool validate_inputs = true) {
  const int n = inst.num_jobs();
  const double slack = capacity_slack(capacity);
  if (validate_inputs) {
    check_permutation(pi, n, ws);
    for (const Job& j : inst.jobs)
      if (j.resource > capacity + slack)
        throw std::invalid_argument("decode: capacity below the largest job requirement");
  }

  starts.assign(static_cast<std::size_t>(n), -1);
  if (placement_order) {
    placement_order->clear();
    placement_order->reserve(static_cast<std::size_t>(n));
  }

  using Interval = DecodeWorkspace::Interval;
  ws.events.clear();
  if (ws.machine_busy.size() < static_cast<std::size_t>(inst.machines))
    ws.machine_busy.resize(static_cast<std::size_t>(inst.machines));
  for (auto& busy_list : ws.machine_busy) busy_list.clear();
  ws.waiting.clear();

  auto place = [&](int j) {
    const Job& job = inst.jobs[static_cast<std::size_t>(j)];
    std::int64_t t0 = job.release;
    for (int p : preds.of(j)) {
      assert(starts[static_cast<std::size_t>(p)] >= 0);
      t0 = std::max(t0, starts[static_cast<std::size_t>(p)] +
                            inst.jobs[static_cast<std::size_t>(p)].proc);
    }

    // stretches where remaining capacity cannot take this job
    ws.resource_blocked.clear();
    if (job.resource > 0.0 && !ws.events.empty()) {
      double usage = 0.0;
      std::size_t i = 0;
      while (i < ws.events.size()) {
        const std::int64_t at = ws.events[i].first;
        while (i < ws.events.size() && ws.events[i].first == at) usage += ws.events[i++].second;
        if (usage + job.resource > capacity + slack) {
          const std::int64_t until =
              i < ws.events.size() ? ws.events[i].first : at;  // last event always frees
          if (until > t0) ws.resource_blocked.emplace_back(at, until);
        }
      }
    }

    // merge with the busy intervals of the job's machine, keeping start order
    const auto& busy = ws.machine_busy[static_cast<std::size_t>(job.machine)];
    ws.blocked.clear();
    std::merge(busy.begin(), busy.end(), ws.resource_blocked.begin(),
               ws.resource_blocked.end(), std::back_inserter(ws.blocked));

    const std::int64_t t = earliest_gap(ws.blocked, t0, job.proc);
    starts[static_cast<std::size_t>(j)] = t;
    if (placement_order) placement_order->push_back(j);

    auto& machine_list = ws.machine_busy[static_cast<std::size_t>(job.machine)];
    const Interval span{t, t + job.proc};
    machine_list.insert(std::upper_bound(machine_list.begin(), machine_list.end(), span),
                        span);
    if (job.resource > 0.0) {
      auto by_time = [](std::int64_t v, const auto& e) { return v < e.first; };
      ws.events.insert(std::upper_bound(ws.events.begin(), ws.events.end(), t, by_time),
                       {t, job.resource});
      ws.events.insert(
          std::upper_bound(ws.events.begin(), ws.events.end(), t + job.proc, by_time),
          {t + job.proc, -job.resource});
    }
  };

  auto ready = [&](int j) {
    for (int p : preds.of(j))
      if (starts[static_cast<std::size_t>(p)] < 0) return false;
    return true;
  };
  auto drain_waiting = [&] {
    bool placed = true;
    while (placed) {
      placed = false;
      for (std::size_t w = 0; w < ws.waiting.size();) {
        if (ready(ws.waiting[w])) {
          place(ws.waiting[w]);
          ws.waiting.erase(ws.waiting.begin() + static_cast<std::ptrdiff_t>(w));
          placed = true;
        } else {
          ++w;
        }
      }
    }
  };

  for (int j : pi) {
    if (!ready(j)) {
      ws.waiting.push_back(j);
      continue;
    }
    place(j);
    drain_waiting();
  }
  if (!ws.waiting.empty())
    throw std::invalid_argument("decode: precedence graph leaves jobs unschedulable");
}

}  // namespace detail

/// Serial schedule generation: scan `pi` left to right; a job whose
/// predecessors are not all scheduled goes to a waiting list, every other job
/// is placed at the earliest integer start >= its release that keeps its
/// machine exclusive, respects completed predecessors, and keeps the total
/// resource usage within `capacity` at every integer time point of its
/// processing window. After each placement the waiting list is rescanned in
/// insertion order until a full scan places nothing.
///
/// Deterministic; the result satisfies all four schedule invariants (release,
/// precedence, machine exclusivity, resource) by construction.
/// `placement_order`, when given, receives the dense job ids in the order the
/// decoder fixed their start times.
inline Schedule decode(const Instance& inst, double capacity, const Permutation& pi,
                       std::vector<int>* placement_order = nullptr) {
  const PredIndex preds(inst);
  detail::DecodeWorkspace ws;
  Schedule sched;
  sched.capacity = capacity;
  detail::decode_into(inst, capacity, pi, preds, ws, sched.starts, placement_order);
  return sched;
}

/// Total weighted tardiness over explicit start times:
/// sum_j w_j * max(0, start_j + p_j - d_j).
inline double twt(const Instance& inst, const std::vector<std::int64_t>& starts) {
  double total = 0.0;
  for (const Job& j : inst.jobs) {
    const std::int64_t completion = starts[static_cast<std::size_t>(j.id)] + j.proc;
    if (completion > j.due) total += j.weight * static_cast<double>(completion - j.due);
  }
  return total;
}

inline double twt(const Instance& inst, const Schedule& sched) {
  return twt(inst, sched.starts);
}

/// Decodes and scores permutations against one fixed (instance, scenario)
/// pair. Wraps the precedence index and decoder scratch space so repeated
/// evaluations (the solvers' hot loop) allocate nothing.
class Evaluator {
 public:
  Evaluator(const Instance& inst, const UncertaintyScenario& scen)
      : inst_(&inst), scen_(&scen), preds_(inst) {
    double max_g = 0.0;
    for (const Job& j : inst.jobs) max_g = std::max(max_g, j.resource);
    for (double cap : scen.capacities)
      if (max_g > cap + capacity_slack(cap))
        throw std::invalid_argument("Evaluator: a sample capacity is below the largest job");
  }

  double mean(const Permutation& pi) {
    detail::check_permutation(pi, inst_->num_jobs(), ws_);
    double sum = 0.0;
    for (double cap : scen_->capacities) {
      detail::decode_into(*inst_, cap, pi, preds_, ws_, starts_, nullptr, false);
      sum += twt(*inst_, starts_);
    }
    return scen_->capacities.empty() ? 0.0
                                     : sum / static_cast<double>(scen_->capacities.size());
  }

  ObjectiveValue full(const Permutation& pi) {
    detail::check_permutation(pi, inst_->num_jobs(), ws_);
    ObjectiveValue obj;
    obj.per_sample.reserve(scen_->capacities.size());
    for (double cap : scen_->capacities) {
      detail::decode_into(*inst_, cap, pi, preds_, ws_, starts_, nullptr, false);
      obj.per_sample.push_back(twt(*inst_, starts_));
    }
    obj.mean_twt = obj.per_sample.empty()
                       ? 0.0
                       : std::accumulate(obj.per_sample.begin(), obj.per_sample.end(), 0.0) /
                             static_cast<double>(obj.per_sample.size());
    return obj;
  }

  const Instance& instance() const { return *inst_; }
  const UncertaintyScenario& scenario() const { return *scen_; }

 private:
  const Instance* inst_;
  const UncertaintyScenario* scen_;
  PredIndex preds_;
  detail::DecodeWorkspace ws_;
  std::vector<std::int64_t> starts_;
};

/// Objective of a permutation under a scenario: decode one schedule per
/// sample, average the per-sample TWT values. Pure and deterministic.
inline ObjectiveValue evaluate(const Instance& inst, const UncertaintyScenario& scen,
                               const Permutation& pi) {
  Evaluator ev(inst, scen);
  return ev.full(pi);
}

inline double evaluate_mean(const Instance& inst, const UncertaintyScenario& scen,
                            const Permutation& pi) {
  Evaluator ev(inst, scen);
  return ev.mean(pi);
}

/// Debug/golden dump: one `JOB <id> SAMPLE <s> START <t>` line per job, using
/// original job ids.
inline std::string format_schedules(const Instance& inst,
                                    const std::vector<Schedule>& per_sample) {
  std::ostringstream out;
  for (std::size_t s = 0; s < per_sample.size(); ++s)
    for (const Job& j : inst.jobs)
      out << "JOB " << inst.original_id(j.id) << " SAMPLE " << s << " START "
          << per_sample[s].starts[static_cast<std::size_t>(j.id)] << "\n";
  return out.str();
}

}  // namespace rcjsu
