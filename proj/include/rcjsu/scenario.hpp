#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcjsu/instance.hpp"
#include "rcjsu/rng.hpp"

namespace rcjsu {

/// One realisation set of the uncertain resource capacity: `capacities[s]` is
/// the limit the s-th sample schedule must respect. Generation parameters are
/// kept so a scenario can be audited and regenerated.
struct UncertaintyScenario {
  std::vector<double> capacities;
  double multiplier = 1.0;
  std::uint64_t seed = 0;
  double u_min = 0.0;

  int num_samples() const { return static_cast<int>(capacities.size()); }

  friend bool operator==(const UncertaintyScenario&, const UncertaintyScenario&) = default;
};

/// Draws `samples` capacities i.i.d. uniformly from the closed interval
/// [u_min(inst), multiplier * G]. Pure function of its arguments: a fixed
/// (inst, multiplier, samples, seed) always yields the same scenario.
/// Throws if the interval is empty (multiplier * G < u_min) or arguments are
/// out of range.
inline UncertaintyScenario generate_scenario(const Instance& inst, double multiplier,
                                             int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("generate_scenario: samples must be >= 1");
  if (!(multiplier > 0.0) || multiplier > 1.0)
    throw std::invalid_argument("generate_scenario: multiplier must be in (0, 1]");
  const double lo = u_min(inst);
  const double hi = multiplier * inst.capacity;
  if (hi < lo)
    throw std::invalid_argument(
        "generate_scenario: infeasible capacity range, multiplier * G = " +
        std::to_string(hi) + " < u_min = " + std::to_string(lo));
  UncertaintyScenario scen;
  scen.multiplier = multiplier;
  scen.seed = seed;
  scen.u_min = lo;
  scen.capacities.reserve(static_cast<std::size_t>(samples));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s)
    scen.capacities.push_back(lo + rng.uniform01_closed() * (hi - lo));
  return scen;
}

/// Builds a scenario whose every sample runs at the instance's nominal
/// capacity — the deterministic problem as a 1+-sample scenario.
inline UncertaintyScenario nominal_scenario(const Instance& inst, int samples = 1) {
  UncertaintyScenario scen;
  scen.multiplier = 1.0;
  scen.seed = 0;
  scen.u_min = u_min(inst);
  scen.capacities.assign(static_cast<std::size_t>(samples), inst.capacity);
  return scen;
}

/// Audit sidecar, plain text:
///   MULTIPLIER <m>
///   SEED <seed>
///   UMIN <u>
///   SAMPLE <s> <capacity>   (x samples)
inline std::string format_scenario(const UncertaintyScenario& scen) {
  std::ostringstream out;
  out << "MULTIPLIER " << detail::format_real(scen.multiplier) << "\n";
  out << "SEED " << scen.seed << "\n";
  out << "UMIN " << detail::format_real(scen.u_min) << "\n";
  for (int s = 0; s < scen.num_samples(); ++s)
    out << "SAMPLE " << s << " "
        << detail::format_real(scen.capacities[static_cast<std::size_t>(s)]) << "\n";
  return out.str();
}

}  // namespace rcjsu
