#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcjsu/instance.hpp"
#include "rcjsu/scenario.hpp"
#include "rcjsu/scheduler.hpp"

namespace rcjsu {

/// Breakdown of the exported model, exposed so tests and callers can check
/// the exact per-family row counts analytically.
struct LpModelStats {
  std::int64_t variables = 0;
  std::int64_t completion_rows = 0;   // z_{s,j,D} = 1
  std::int64_t monotone_rows = 0;     // z_{s,j,t} - z_{s,j,t-1} >= 0
  std::int64_t release_rows = 0;      // z_{s,j,t} = 0, t in 1..e_j
  std::int64_t precedence_rows = 0;   // z_{s,b,t} - z_{s,a,t-p_b} <= 0
  std::int64_t machine_rows = 0;      // per machine: at most one job in process
  std::int64_t resource_rows = 0;     // per sample capacity at each time point
};

inline LpModelStats lp_model_stats(const Instance& inst,
                                   const UncertaintyScenario& scen) {
  const std::int64_t n = inst.num_jobs();
  const std::int64_t u = scen.num_samples();
  const std::int64_t D = horizon(inst);
  LpModelStats st;
  st.variables = u * n * (D + 1);
  st.completion_rows = u * n;
  st.monotone_rows = u * n * D;
  for (const Job& j : inst.jobs) {
    const std::int64_t e = j.release + j.proc - 1;
    if (e > 0) st.release_rows += u * e;
  }
  st.precedence_rows = u * static_cast<std::int64_t>(inst.precedences.size()) * (D + 1);
  st.machine_rows = u * inst.machines * (D + 1);
  st.resource_rows = u * (D + 1);
  return st;
}

namespace detail {

// One linear term, " +/- [mag] name"; unit magnitudes drop the coefficient.
inline void lp_term(std::ostringstream& out, double coef, const std::string& name,
                    bool& first) {
  out << (coef < 0.0 ? " - " : (first ? " " : " + "));
  const double mag = coef < 0.0 ? -coef : coef;
  if (mag != 1.0) out << format_real(mag) << " ";
  out << name;
  first = false;
}

}  // namespace detail

/// Writes the time-indexed binary model as CPLEX-style LP text.
///
/// Variables: z_<s>_<j>_<t> = 1 iff job j (dense id) has completed by time t
/// in sample s, for s in 0..u-1, j in 0..n-1, t in 0..D with D the serial
/// horizon. Completion before time 0 is impossible (p_j >= 1) but no
/// constraint family covers t = 0, so z_<s>_<j>_0 is fixed to 0 in the Bounds
/// section. Indices outside 0..D follow the completion semantics: z at t < 0
/// is the constant 0, z at t > D the constant 1 (folded into the RHS).
///
/// The objective averages total weighted tardiness over samples, written with
/// collected (telescoped) coefficients per variable.
///
/// Throws when u * n * (D+1) exceeds `var_cap`.
inline std::string export_ip(const Instance& inst, const UncertaintyScenario& scen,
                             std::int64_t var_cap = 2000000) {
  const int n = inst.num_jobs();
  const int u = scen.num_samples();
  const std::int64_t D = horizon(inst);
  const LpModelStats st = lp_model_stats(inst, scen);
  if (st.variables > var_cap)
    throw std::invalid_argument("export_ip: model needs " + std::to_string(st.variables) +
                                " variables, above the cap of " + std::to_string(var_cap));

  auto var = [](int s, int j, std::int64_t t) {
    return "z_" + std::to_string(s) + "_" + std::to_string(j) + "_" + std::to_string(t);
  };

  std::ostringstream out;
  out << "\\ RCJSU time-indexed model, instance " << inst.name << "\n";
  out << "\\ z_<s>_<j>_<t> = 1 iff job j (dense id) has completed by time t in sample s\n";
  out << "\\ samples " << u << ", jobs " << n << ", horizon D " << D << "\n";
  out << "Minimize\n obj:";

  // sum_{s,j,t} w_j max(0, t - d_j) (z_{s,j,t} - z_{s,j,t-1}) / u, collected per
  // variable: -w_j/u on z_{s,j,t} for d_j <= t < D, +w_j (D - d_j)/u on z_{s,j,D}.
  bool first = true;
  const double inv_u = 1.0 / static_cast<double>(u);
  for (int s = 0; s < u; ++s) {
    for (const Job& j : inst.jobs) {
      if (j.weight == 0.0) continue;
      for (std::int64_t t = std::max<std::int64_t>(j.due, 0); t < D; ++t)
        detail::lp_term(out, -j.weight * inv_u, var(s, j.id, t), first);
      if (D > j.due)
        detail::lp_term(out, j.weight * static_cast<double>(D - j.due) * inv_u,
                        var(s, j.id, D), first);
    }
  }
  if (first) detail::lp_term(out, 0.0, var(0, 0, 0), first);
  out << "\n";

  out << "Subject To\n";
  for (int s = 0; s < u; ++s) {
    // all jobs complete by the horizon
    for (const Job& j : inst.jobs)
      out << " cmpl_" << s << "_" << j.id << ": " << var(s, j.id, D) << " = 1\n";

    // completion persists
    for (const Job& j : inst.jobs)
      for (std::int64_t t = 1; t <= D; ++t)
        out << " mono_" << s << "_" << j.id << "_" << t << ": " << var(s, j.id, t) << " - "
            << var(s, j.id, t - 1) << " >= 0\n";

    // release times: no completion up to e_j = r_j + p_j - 1
    for (const Job& j : inst.jobs) {
      const std::int64_t e = j.release + j.proc - 1;
      for (std::int64_t t = 1; t <= e; ++t)
        out << " rel_" << s << "_" << j.id << "_" << t << ": " << var(s, j.id, t) << " = 0\n";
    }

    // precedences: b cannot complete by t unless a completed by t - p_b
    for (std::size_t c = 0; c < inst.precedences.size(); ++c) {
      const auto [a, b] = inst.precedences[c];
      const std::int64_t pb = inst.jobs[static_cast<std::size_t>(b)].proc;
      for (std::int64_t t = 0; t <= D; ++t) {
        out << " prec_" << s << "_" << c << "_" << t << ": " << var(s, b, t);
        if (t - pb >= 0) out << " - " << var(s, a, t - pb);
        out << " <= 0\n";
      }
    }

    // one job in process per machine at each time point; job j is in process
    // at t iff z_{t+p_j} - z_t = 1
    for (int i = 0; i < inst.machines; ++i) {
      for (std::int64_t t = 0; t <= D; ++t) {
        out << " mach_" << s << "_" << i << "_" << t << ":";
        long clamped = 0;
        bool row_first = true;
        for (const Job& j : inst.jobs) {
          if (j.machine != i) continue;
          if (t + j.proc > D)
            ++clamped;  // z at t + p_j is the constant 1
          else
            detail::lp_term(out, 1.0, var(s, j.id, t + j.proc), row_first);
          detail::lp_term(out, -1.0, var(s, j.id, t), row_first);
        }
        if (row_first) detail::lp_term(out, 0.0, var(s, 0, t), row_first);
        out << " <= " << (1 - clamped) << "\n";
      }
    }

    // shared resource per sample
    const double cap = scen.capacities[static_cast<std::size_t>(s)];
    for (std::int64_t t = 0; t <= D; ++t) {
      out << " res_" << s << "_" << t << ":";
      double clamped_usage = 0.0;
      bool row_first = true;
      for (const Job& j : inst.jobs) {
        if (j.resource == 0.0) continue;
        if (t + j.proc > D)
          clamped_usage += j.resource;
        else
          detail::lp_term(out, j.resource, var(s, j.id, t + j.proc), row_first);
        detail::lp_term(out, -j.resource, var(s, j.id, t), row_first);
      }
      if (row_first) detail::lp_term(out, 0.0, var(s, 0, t), row_first);
      out << " <= " << detail::format_real(cap - clamped_usage) << "\n";
    }
  }

  out << "Bounds\n";
  for (int s = 0; s < u; ++s)
    for (const Job& j : inst.jobs) out << " " << var(s, j.id, 0) << " = 0\n";

  out << "Binaries\n";
  std::int64_t per_line = 0;
  for (int s = 0; s < u; ++s)
    for (const Job& j : inst.jobs)
      for (std::int64_t t = 0; t <= D; ++t) {
        out << " " << var(s, j.id, t);
        if (++per_line % 8 == 0) out << "\n";
      }
  if (per_line % 8 != 0) out << "\n";
  out << "End\n";
  return out.str();
}

}  // namespace rcjsu
