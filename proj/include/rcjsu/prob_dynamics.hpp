#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rcjsu {

/// Point on the 2-simplex for the operator-probability dynamics.
struct ProbState {
  double pb = 0.0;
  double pj = 0.0;
  double pr = 0.0;

  double sum() const { return pb + pj + pr; }
  bool on_simplex(double tol = 1e-12) const {
    return pb >= 0.0 && pj >= 0.0 && pr >= 0.0 && std::abs(sum() - 1.0) <= tol;
  }
};

inline double simplex_distance(const ProbState& a, const ProbState& b) {
  return std::max({std::abs(a.pb - b.pb), std::abs(a.pj - b.pj), std::abs(a.pr - b.pr)});
}

inline ProbState interior_equilibrium() { return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}; }

/// One-step expectation of the decay-and-renormalise update with rho = 0.9:
/// each operator is chosen with its own probability, its weight multiplied by
/// 0.9, and the triple renormalised; the three-term sums below average those
/// outcomes.
///
///   pb' = pb(0.9 pb / (1 - 0.1 pb)) + pj(pb / (1 - 0.1 pj)) + pr(pb / (1 - 0.1 pr))
///
/// and cyclically for pj', pr'. The expectation preserves the simplex only
/// through the identity pb + pj + pr = 1; in floating point the transversal
/// direction is expansive (sum errors roughly double per step), so the output
/// is projected back by dividing by its sum — exact on the simplex.
inline ProbState expected_next(const ProbState& p) {
  const double db = 1.0 - 0.1 * p.pb;
  const double dj = 1.0 - 0.1 * p.pj;
  const double dr = 1.0 - 0.1 * p.pr;
  ProbState out{
      p.pb * (0.9 * p.pb / db) + p.pj * (p.pb / dj) + p.pr * (p.pb / dr),
      p.pj * (0.9 * p.pj / dj) + p.pr * (p.pj / dr) + p.pb * (p.pj / db),
      p.pr * (0.9 * p.pr / dr) + p.pb * (p.pr / db) + p.pj * (p.pr / dj),
  };
  const double s = out.sum();
  if (s > 0.0) {
    out.pb /= s;
    out.pj /= s;
    out.pr /= s;
  }
  return out;
}

/// Right-hand side of the governing differential equations:
///
///   dpb/dt = 0.1 pb ( pj^2/(1-0.1 pj) + pr^2/(1-0.1 pr) - pb(pj+pr)/(1-0.1 pb) )
///
/// and cyclically. On the simplex this equals expected_next(p) - p exactly.
/// The components sum to zero, so the flow preserves the simplex.
inline std::array<double, 3> ode_rhs(const ProbState& p) {
  const double db = 1.0 - 0.1 * p.pb;
  const double dj = 1.0 - 0.1 * p.pj;
  const double dr = 1.0 - 0.1 * p.pr;
  return {
      0.1 * p.pb * (p.pj * p.pj / dj + p.pr * p.pr / dr - p.pb * (p.pj + p.pr) / db),
      0.1 * p.pj * (p.pr * p.pr / dr + p.pb * p.pb / db - p.pj * (p.pb + p.pr) / dj),
      0.1 * p.pr * (p.pb * p.pb / db + p.pj * p.pj / dj - p.pr * (p.pb + p.pj) / dr),
  };
}

/// Iterates expected_next; the map itself is the discrete-time system. The
/// trajectory has steps + 1 states, the initial state included.
inline std::vector<ProbState> integrate(const ProbState& p0, int steps) {
  if (steps < 0) throw std::invalid_argument("integrate: steps must be >= 0");
  if (!p0.on_simplex(1e-9)) throw std::invalid_argument("integrate: p0 not on the simplex");
  std::vector<ProbState> traj;
  traj.reserve(static_cast<std::size_t>(steps) + 1);
  traj.push_back(p0);
  for (int k = 0; k < steps; ++k) traj.push_back(expected_next(traj.back()));
  return traj;
}

/// The seven equilibria of the flow: the three vertices, the three edge
/// midpoints, and the barycentre (the only stable one).
inline const std::array<ProbState, 7>& equilibria() {
  static const std::array<ProbState, 7> eq = {{
      {0.0, 0.0, 1.0},
      {0.0, 1.0, 0.0},
      {1.0, 0.0, 0.0},
      {0.0, 0.5, 0.5},
      {0.5, 0.0, 0.5},
      {0.5, 0.5, 0.0},
      {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0},
  }};
  return eq;
}

/// ode_rhs evaluated at each equilibrium, paired with its max-norm. All seven
/// residuals vanish (numerically below 1e-12).
inline std::vector<std::pair<ProbState, double>> equilibria_residuals() {
  std::vector<std::pair<ProbState, double>> out;
  out.reserve(equilibria().size());
  for (const ProbState& p : equilibria()) {
    const auto rhs = ode_rhs(p);
    const double norm = std::max({std::abs(rhs[0]), std::abs(rhs[1]), std::abs(rhs[2])});
    out.emplace_back(p, norm);
  }
  return out;
}

}  // namespace rcjsu
