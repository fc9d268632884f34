#include <catch2/catch.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "rcjsu/feasibility.hpp"
#include "rcjsu/rng.hpp"
#include "rcjsu/scheduler.hpp"
#include "support/fixtures.hpp"
#include "support/instance_gen.hpp"
#include "support/reference_decode.hpp"

using namespace rcjsu;

namespace {

// Fifteen jobs on three machines (machine = id mod 3), with 2 -> 8 the only
// precedence, mirroring the waiting-list walkthrough: the permutation lists
// job 8 before job 2, so 8 must wait and is placed in the drain pass that
// follows the placement of 2.
Instance waiting_fixture() {
  Instance inst;
  inst.name = "wait15";
  inst.machines = 3;
  inst.capacity = 25.0;
  for (int j = 0; j < 15; ++j) {
    Job job;
    job.id = j;
    job.machine = j % 3;
    job.release = (j * 2) % 5;
    job.proc = 1 + j % 4;
    job.due = job.release + job.proc + j % 6;
    job.weight = 0.1 * (1 + j % 7);
    job.resource = 4.0 + (j * 3) % 11;
    inst.jobs.push_back(job);
  }
  inst.precedences = {{2, 8}};  // both on machine 2
  REQUIRE(validate_instance(inst).empty());
  return inst;
}

}  // namespace

TEST_CASE("decode places the 3-job example at the earliest feasible starts") {
  const Instance inst = testsupport::toy3();
  const Permutation pi = {2, 1, 0};  // jobs 3, 2, 1 in file ids
  const Schedule sched = decode(inst, 10.0, pi);
  CHECK(sched.starts[2] == 0);
  CHECK(sched.starts[1] == 1);
  CHECK(sched.starts[0] == 2);

  // brute force over placements: the unit-step reference decoder
  const Schedule ref = testsupport::reference_decode(inst, 10.0, pi);
  CHECK(sched.starts == ref.starts);
  CHECK(twt(inst, sched) == 0.1);
}

TEST_CASE("decode honours release times") {
  Instance inst;
  inst.name = "one";
  inst.machines = 1;
  inst.capacity = 1.0;
  inst.jobs = {{0, 0, 5, 2, 0, 1.0, 1.0}};
  const Schedule sched = decode(inst, 1.0, {0});
  CHECK(sched.starts[0] == 5);
}

TEST_CASE("decode waiting list releases a job in the pass that schedules its predecessor") {
  const Instance inst = waiting_fixture();
  Permutation pi;
  for (int j : {0, 1, 8, 3, 4, 5, 6, 7, 9, 10, 11, 12, 13, 14, 2}) pi.push_back(j);

  std::vector<int> order;
  const Schedule sched = decode(inst, inst.capacity, pi, &order);
  REQUIRE(order.size() == 15);
  // 8 is skipped when first seen, and placed immediately after 2
  auto pos2 = std::find(order.begin(), order.end(), 2);
  auto pos8 = std::find(order.begin(), order.end(), 8);
  REQUIRE(pos2 != order.end());
  REQUIRE(pos8 != order.end());
  CHECK(pos2 + 1 == pos8);
  CHECK(order[13] == 2);
  CHECK(order[14] == 8);
  CHECK(sched.starts[8] >=
        sched.starts[2] + inst.jobs[2].proc);

  // placed as early as possible: agrees with the unit-step reference
  const Schedule ref = testsupport::reference_decode(inst, inst.capacity, pi);
  CHECK(sched.starts == ref.starts);
  CHECK(check_schedule(inst, inst.capacity, sched).empty());
}

TEST_CASE("decode rejects bad inputs") {
  const Instance inst = testsupport::toy3();
  CHECK_THROWS_AS(decode(inst, 10.0, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(decode(inst, 10.0, {0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(decode(inst, 9.0, {0, 1, 2}), std::invalid_argument);  // job needs 10
}

TEST_CASE("twt sums weighted lateness only") {
  const Instance inst = testsupport::toy3();

  SECTION("frozen values for all six permutations") {
    struct Case {
      Permutation pi;
      double value;
    };
    // enumerated with the reference decoder; minimum 0.1 at (3,2,1)
    const Case cases[] = {
        {{0, 1, 2}, 1.0}, {{0, 2, 1}, 0.7}, {{1, 0, 2}, 1.0},
        {{1, 2, 0}, 0.6}, {{2, 0, 1}, 0.2}, {{2, 1, 0}, 0.1},
    };
    double best = 1e9;
    for (const auto& c : cases) {
      const double via_decoder = twt(inst, decode(inst, 10.0, c.pi));
      const double via_reference =
          twt(inst, testsupport::reference_decode(inst, 10.0, c.pi));
      CHECK(via_decoder == Approx(c.value).margin(1e-12));
      CHECK(via_reference == via_decoder);
      best = std::min(best, via_decoder);
    }
    CHECK(best == 0.1);
  }

  SECTION("on-time schedules cost nothing") {
    Instance inst2 = inst;
    for (auto& j : inst2.jobs) j.due = 100;
    CHECK(twt(inst2, decode(inst2, 10.0, {0, 1, 2})) == 0.0);
  }

  SECTION("weight zero contributes nothing however late") {
    Instance inst2 = inst;
    inst2.jobs[0].weight = 0.0;
    inst2.jobs[0].due = 0;
    const Schedule sched = decode(inst2, 10.0, {2, 1, 0});
    CHECK(twt(inst2, sched) == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("evaluate averages per-sample TWT") {
  const Instance inst = testsupport::toy3();

  SECTION("single nominal sample equals the deterministic objective") {
    const auto obj = evaluate(inst, nominal_scenario(inst, 1), {2, 1, 0});
    REQUIRE(obj.per_sample.size() == 1);
    CHECK(obj.mean_twt == 0.1);
  }

  SECTION("identical capacities give identical per-sample values") {
    const auto obj = evaluate(inst, nominal_scenario(inst, 10), {1, 2, 0});
    REQUIRE(obj.per_sample.size() == 10);
    for (double v : obj.per_sample) CHECK(v == obj.per_sample[0]);
  }

  SECTION("three samples at capacity 10") {
    const auto obj = evaluate(inst, nominal_scenario(inst, 3), {2, 1, 0});
    // averaging three identical 0.1 samples reintroduces one ulp of noise
    CHECK(obj.mean_twt == Approx(0.1).margin(1e-15));
    for (double v : obj.per_sample) CHECK(v == 0.1);
  }

  SECTION("pure: repeated evaluation is identical") {
    const auto scen = nominal_scenario(inst, 4);
    const auto a = evaluate(inst, scen, {0, 2, 1});
    const auto b = evaluate(inst, scen, {0, 2, 1});
    CHECK(a.mean_twt == b.mean_twt);
    CHECK(a.per_sample == b.per_sample);
  }
}

TEST_CASE("random decodes are feasible and match the reference decoder") {
  Rng rng(77);
  Rng perm_rng(78);
  for (int trial = 0; trial < 300; ++trial) {
    testsupport::GenOptions opt;
    opt.jobs = 3 + rng.index(10);
    opt.machines = 1 + rng.index(3);
    opt.prec_prob = 0.3 * rng.uniform01();
    const Instance inst = testsupport::random_instance(rng, opt);
    const double umin = u_min(inst);
    const double cap = umin + rng.uniform01() * (inst.capacity - umin);

    Permutation pi(static_cast<std::size_t>(inst.num_jobs()));
    std::iota(pi.begin(), pi.end(), 0);
    perm_rng.shuffle(pi);

    const Schedule sched = decode(inst, cap, pi);
    INFO("trial " << trial << " instance " << inst.name);
    CHECK(check_schedule(inst, cap, sched).empty());
    const Schedule ref = testsupport::reference_decode(inst, cap, pi);
    CHECK(sched.starts == ref.starts);
  }
}

TEST_CASE("bundled instances decode identically to the reference") {
  Rng rng(11);
  for (const char* name : {"/toy3.rcjsu", "/sample8.rcjsu", "/sample15.rcjsu"}) {
    std::ifstream in(testsupport::data_dir() + name);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    const Instance inst = parse_instance(buf.str());
    const double umin = u_min(inst);
    for (int trial = 0; trial < 25; ++trial) {
      const double cap = umin + rng.uniform01() * (inst.capacity - umin);
      Permutation pi(static_cast<std::size_t>(inst.num_jobs()));
      std::iota(pi.begin(), pi.end(), 0);
      rng.shuffle(pi);
      const Schedule sched = decode(inst, cap, pi);
      CHECK(check_schedule(inst, cap, sched).empty());
      CHECK(sched.starts == testsupport::reference_decode(inst, cap, pi).starts);
    }
  }
}

TEST_CASE("schedule dump uses original ids and sample indices") {
  const Instance inst = testsupport::toy3();
  const Schedule s0 = decode(inst, 10.0, {2, 1, 0});
  const std::string dump = format_schedules(inst, {s0, s0});
  CHECK(dump.find("JOB 3 SAMPLE 0 START 0") != std::string::npos);
  CHECK(dump.find("JOB 1 SAMPLE 1 START 2") != std::string::npos);
}
