#pragma once

#include "rcjsu/apsa.hpp"
#include "rcjsu/feasibility.hpp"
#include "rcjsu/harness.hpp"
#include "rcjsu/instance.hpp"
#include "rcjsu/lp_export.hpp"
#include "rcjsu/metropolis.hpp"
#include "rcjsu/oracle.hpp"
#include "rcjsu/prob_dynamics.hpp"
#include "rcjsu/rng.hpp"
#include "rcjsu/scenario.hpp"
#include "rcjsu/scheduler.hpp"
