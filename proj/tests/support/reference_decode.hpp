#pragma once

#include <cstdint>
#include <vector>

#include "rcjsu/instance.hpp"
#include "rcjsu/scheduler.hpp"

namespace testsupport {

// Brute-force serial decoder used as the oracle for the event-driven
// production decoder: identical waiting-list semantics, but the earliest
// start is found by trying t = t0, t0+1, t0+2, ... with a from-scratch
// feasibility test at every candidate. Slow and obviously correct.
inline rcjsu::Schedule reference_decode(const rcjsu::Instance& inst, double capacity,
                                        const rcjsu::Permutation& pi) {
  const int n = inst.num_jobs();
  const auto preds = inst.predecessor_lists();
  const double slack = rcjsu::capacity_slack(capacity);
  rcjsu::Schedule sched;
  sched.capacity = capacity;
  sched.starts.assign(static_cast<std::size_t>(n), -1);

  auto fits = [&](int j, std::int64_t t) {
    const rcjsu::Job& job = inst.jobs[static_cast<std::size_t>(j)];
    if (t < job.release) return false;
    for (int p : preds[static_cast<std::size_t>(j)]) {
      const rcjsu::Job& pj = inst.jobs[static_cast<std::size_t>(p)];
      if (t < sched.starts[static_cast<std::size_t>(p)] + pj.proc) return false;
    }
    for (int k = 0; k < n; ++k) {
      if (k == j || sched.starts[static_cast<std::size_t>(k)] < 0) continue;
      const rcjsu::Job& other = inst.jobs[static_cast<std::size_t>(k)];
      if (other.machine != job.machine) continue;
      const std::int64_t s = sched.starts[static_cast<std::size_t>(k)];
      if (!(t + job.proc <= s || s + other.proc <= t)) return false;
    }
    for (std::int64_t q = t; q < t + job.proc; ++q) {
      double usage = job.resource;
      for (int k = 0; k < n; ++k) {
        if (k == j || sched.starts[static_cast<std::size_t>(k)] < 0) continue;
        const rcjsu::Job& other = inst.jobs[static_cast<std::size_t>(k)];
        const std::int64_t s = sched.starts[static_cast<std::size_t>(k)];
        if (s <= q && q < s + other.proc) usage += other.resource;
      }
      if (usage > capacity + slack) return false;
    }
    return true;
  };

  auto place = [&](int j) {
    std::int64_t t = 0;
    while (!fits(j, t)) ++t;
    sched.starts[static_cast<std::size_t>(j)] = t;
  };

  std::vector<int> waiting;
  auto ready = [&](int j) {
    for (int p : preds[static_cast<std::size_t>(j)])
      if (sched.starts[static_cast<std::size_t>(p)] < 0) return false;
    return true;
  };

  for (int j : pi) {
    if (!ready(j)) {
      waiting.push_back(j);
      continue;
    }
    place(j);
    bool placed = true;
    while (placed) {
      placed = false;
      for (std::size_t w = 0; w < waiting.size();) {
        if (ready(waiting[w])) {
          place(waiting[w]);
          waiting.erase(waiting.begin() + static_cast<std::ptrdiff_t>(w));
          placed = true;
        } else {
          ++w;
        }
      }
    }
  }
  return sched;
}

}  // namespace testsupport
