#pragma once

#include <string>

#include "rcjsu/instance.hpp"
#include "rcjsu/scenario.hpp"

namespace testsupport {

// The 3-job instance used across the suite: one job per machine, capacity 10.
// Dense ids 0, 1, 2 carry file ids 1, 2, 3; jobs 2 and 3 (dense 1, 2) each
// need the full resource, job 1 (dense 0) needs half. The unique optimum
// orders job 3 first, then 2, then 1, with mean TWT 0.1.
inline rcjsu::Instance toy3() {
  rcjsu::Instance inst;
  inst.name = "toy3";
  inst.machines = 3;
  inst.capacity = 10.0;
  inst.jobs = {
      {0, 0, 0, 1, 2, 0.1, 5.0},
      {1, 1, 0, 1, 2, 0.2, 10.0},
      {2, 2, 0, 1, 1, 0.5, 10.0},
  };
  inst.original_ids = {1, 2, 3};
  return inst;
}

inline rcjsu::UncertaintyScenario toy3_scenario(int samples = 1) {
  return rcjsu::nominal_scenario(toy3(), samples);
}

inline std::string data_dir() {
#ifdef RCJSU_DATA_DIR
  return RCJSU_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace testsupport
