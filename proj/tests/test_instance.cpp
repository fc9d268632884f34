#include <catch2/catch.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rcjsu/instance.hpp"
#include "rcjsu/rng.hpp"
#include "rcjsu/scenario.hpp"
#include "support/fixtures.hpp"
#include "support/instance_gen.hpp"

using namespace rcjsu;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("parse_instance reads the 3-job example") {
  const Instance inst = parse_instance(slurp(testsupport::data_dir() + "/toy3.rcjsu"));
  CHECK(inst.name == "toy3");
  CHECK(inst.num_jobs() == 3);
  CHECK(inst.machines == 3);
  CHECK(inst.capacity == 10.0);
  CHECK(inst.jobs[2].weight == 0.5);   // file id 3
  CHECK(inst.jobs[1].resource == 10.0);
  CHECK(inst.original_id(2) == 3);
  CHECK(inst == testsupport::toy3());
}

TEST_CASE("parse_instance rejects an empty jobs section") {
  const std::string text = "NAME x\nMACHINES 1\nCAPACITY 5\nJOBS 0\n";
  CHECK_THROWS_WITH(parse_instance(text), "no jobs");
}

TEST_CASE("parse_instance rejects cross-machine precedences") {
  const std::string text =
      "NAME x\nMACHINES 2\nCAPACITY 5\nJOBS 2\n"
      "JOB 0 0 0 1 1 1.0 1\nJOB 1 1 0 1 1 1.0 1\nPREC 0 1\n";
  CHECK_THROWS_WITH(parse_instance(text), Catch::Contains("crosses machines"));
}

TEST_CASE("parse_instance reports line and column on syntax errors") {
  const std::string text = "NAME x\nMACHINES 1\nCAPACITY 5\nJOBS 1\nJOB 0 0 0 oops 1 1.0 1\n";
  CHECK_THROWS_WITH(parse_instance(text),
                    Catch::Contains("line 5") && Catch::Contains("proc"));
  CHECK_THROWS_WITH(parse_instance("FOO 1\n"), Catch::Contains("unknown directive"));
  CHECK_THROWS_WITH(parse_instance("NAME x\nMACHINES 1\nCAPACITY 5\nJOBS 2\n"
                                   "JOB 0 0 0 1 1 1.0 1\n"),
                    Catch::Contains("JOBS declares 2"));
  CHECK_THROWS_WITH(parse_instance("NAME x\nMACHINES 1\nCAPACITY 5\nJOBS 1\n"
                                   "JOB 0 0 0 1 1 1.0 1\nPREC 0 7\n"),
                    Catch::Contains("unknown job id"));
}

TEST_CASE("validate_instance accepts the example and returns all violations") {
  CHECK(validate_instance(testsupport::toy3()).empty());

  Instance bad = testsupport::toy3();
  bad.jobs[0].machine = 0;
  bad.jobs[1].machine = 0;
  bad.precedences = {{0, 1}, {1, 0}};   // cycle
  bad.jobs[2].resource = 11.0;          // above nominal capacity
  bad.jobs[1].proc = 0;                 // nonpositive processing time
  const auto violations = validate_instance(bad);
  REQUIRE(violations.size() >= 3);
  bool cycle = false, over = false, proc = false;
  for (const auto& v : violations) {
    if (v.find("cycle") != std::string::npos) cycle = true;
    if (v.find("exceeds nominal capacity") != std::string::npos) over = true;
    if (v.find("nonpositive processing") != std::string::npos) proc = true;
  }
  CHECK(cycle);
  CHECK(over);
  CHECK(proc);
}

TEST_CASE("u_min picks the largest resource requirement") {
  CHECK(u_min(testsupport::toy3()) == 10.0);

  Instance single;
  single.machines = 1;
  single.capacity = 1.0;
  single.jobs = {{0, 0, 0, 1, 0, 0.0, 0.0}};
  CHECK(u_min(single) == 0.0);

  Instance three = single;
  three.capacity = 10.0;
  three.jobs = {{0, 0, 0, 1, 0, 0.0, 3.0}, {1, 0, 0, 1, 0, 0.0, 7.0},
                {2, 0, 0, 1, 0, 0.0, 5.0}};
  CHECK(u_min(three) == 7.0);

  Instance empty;
  CHECK_THROWS_AS(u_min(empty), std::invalid_argument);
}

TEST_CASE("generate_scenario is deterministic and respects the range") {
  const Instance inst = testsupport::toy3();

  SECTION("degenerate range forces constant capacities") {
    const auto scen = generate_scenario(inst, 1.0, 10, 42);
    REQUIRE(scen.num_samples() == 10);
    for (double c : scen.capacities) CHECK(c == 10.0);
    CHECK(scen.u_min == 10.0);
  }

  SECTION("infeasible multiplier throws") {
    CHECK_THROWS_AS(generate_scenario(inst, 0.5, 10, 7), std::invalid_argument);
  }

  SECTION("fixed arguments reproduce the same capacities") {
    Instance wide = inst;
    wide.capacity = 40.0;  // u_min 10 < 0.8 * 40
    const auto a = generate_scenario(wide, 0.8, 10, 7);
    const auto b = generate_scenario(wide, 0.8, 10, 7);
    CHECK(a == b);
    for (double c : a.capacities) {
      CHECK(c >= 10.0);
      CHECK(c <= 0.8 * 40.0);
    }
    const auto other_seed = generate_scenario(wide, 0.8, 10, 8);
    CHECK_FALSE(a == other_seed);
  }
}

TEST_CASE("scenario range property holds for random instances") {
  Rng rng(991);
  for (int trial = 0; trial < 60; ++trial) {
    testsupport::GenOptions opt;
    opt.jobs = 3 + rng.index(8);
    opt.machines = 1 + rng.index(3);
    const Instance inst = testsupport::random_instance(rng, opt);
    REQUIRE(validate_instance(inst).empty());
    const double mult = 0.7 + 0.3 * rng.uniform01();
    if (mult * inst.capacity < u_min(inst)) continue;
    const auto scen = generate_scenario(inst, mult, 5, 1000 + trial);
    for (double c : scen.capacities) {
      CHECK(c >= scen.u_min);
      CHECK(c <= mult * inst.capacity);
    }
  }
}

TEST_CASE("scenario sidecar lists header and samples") {
  Instance wide = testsupport::toy3();
  wide.capacity = 40.0;
  const auto scen = generate_scenario(wide, 0.8, 3, 7);
  const std::string text = format_scenario(scen);
  CHECK(text.find("MULTIPLIER 0.8") != std::string::npos);
  CHECK(text.find("SEED 7") != std::string::npos);
  CHECK(text.find("UMIN 10") != std::string::npos);
  CHECK(text.find("SAMPLE 0 ") != std::string::npos);
  CHECK(text.find("SAMPLE 2 ") != std::string::npos);
}

TEST_CASE("serialise then parse round-trips") {
  SECTION("bundled corpus") {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(testsupport::data_dir())) {
      if (entry.path().extension() != ".rcjsu") continue;
      ++seen;
      const Instance inst = parse_instance(slurp(entry.path()));
      CHECK(validate_instance(inst).empty());
      CHECK(parse_instance(serialize_instance(inst)) == inst);
    }
    CHECK(seen >= 3);
  }

  SECTION("random instances") {
    Rng rng(5150);
    for (int trial = 0; trial < 40; ++trial) {
      testsupport::GenOptions opt;
      opt.jobs = 2 + rng.index(12);
      opt.machines = 1 + rng.index(4);
      Instance inst = testsupport::random_instance(rng, opt);
      inst.original_ids.resize(inst.jobs.size());
      for (std::size_t j = 0; j < inst.jobs.size(); ++j)
        inst.original_ids[j] = static_cast<long long>(10 * j + 1);  // sparse file ids
      CHECK(parse_instance(serialize_instance(inst)) == inst);
    }
  }
}
