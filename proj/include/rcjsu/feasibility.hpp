#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcjsu/instance.hpp"
#include "rcjsu/scheduler.hpp"

namespace rcjsu {

/// Independent referee for decoded schedules. Deliberately naive — per-job
/// pairwise overlap tests and a unit-step scan of the resource profile — so
/// it shares no code path with the event-driven decoder it audits.
/// Returns every violation found (empty means feasible).
inline std::vector<std::string> check_schedule(const Instance& inst, double capacity,
                                               const Schedule& sched) {
  std::vector<std::string> out;
  const int n = inst.num_jobs();
  if (static_cast<int>(sched.starts.size()) != n) {
    out.push_back("schedule has wrong number of start times");
    return out;
  }

  for (const Job& j : inst.jobs) {
    const std::int64_t s = sched.starts[static_cast<std::size_t>(j.id)];
    if (s < 0) out.push_back("job " + std::to_string(j.id) + " unscheduled");
    if (s < j.release)
      out.push_back("job " + std::to_string(j.id) + " starts before its release time");
  }

  for (auto [a, b] : inst.precedences) {
    const Job& ja = inst.jobs[static_cast<std::size_t>(a)];
    if (sched.starts[static_cast<std::size_t>(b)] <
        sched.starts[static_cast<std::size_t>(a)] + ja.proc)
      out.push_back("precedence " + std::to_string(a) + " -> " + std::to_string(b) +
                    " violated");
  }

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Job& ja = inst.jobs[static_cast<std::size_t>(a)];
      const Job& jb = inst.jobs[static_cast<std::size_t>(b)];
      if (ja.machine != jb.machine) continue;
      const std::int64_t sa = sched.starts[static_cast<std::size_t>(a)];
      const std::int64_t sb = sched.starts[static_cast<std::size_t>(b)];
      const bool disjoint = sa + ja.proc <= sb || sb + jb.proc <= sa;
      if (!disjoint)
        out.push_back("jobs " + std::to_string(a) + " and " + std::to_string(b) +
                      " overlap on machine " + std::to_string(ja.machine));
    }
  }

  std::int64_t makespan = 0;
  for (const Job& j : inst.jobs)
    makespan = std::max(makespan, sched.starts[static_cast<std::size_t>(j.id)] + j.proc);
  const double slack = capacity_slack(capacity);
  for (std::int64_t t = 0; t < makespan; ++t) {
    double usage = 0.0;
    for (const Job& j : inst.jobs) {
      const std::int64_t s = sched.starts[static_cast<std::size_t>(j.id)];
      if (s <= t && t < s + j.proc) usage += j.resource;
    }
    if (usage > capacity + slack) {
      out.push_back("resource limit exceeded at time " + std::to_string(t) + " (" +
                    std::to_string(usage) + " > " + std::to_string(capacity) + ")");
      break;
    }
  }
  return out;
}

}  // namespace rcjsu
