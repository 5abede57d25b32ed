#include <filesystem>
#include <random>

#include "doctest.h"
#include "rsched/errors.hpp"
#include "rsched/io.hpp"
#include "rsched/policies.hpp"

using namespace rsched;

TEST_CASE("parse instance with explicit ids") {
  const Instance inst = io::parse_instance(
      R"({"jobs":[{"id":7,"r":0.5,"p":1.0,"w":2.0},{"id":3,"r":0.0,"p":0.0,"w":1.5}]})");
  REQUIRE(inst.size() == 2);
  CHECK(inst.jobs()[0] == Job{3, 0.0, 0.0, 1.5});
  CHECK(inst.jobs()[1] == Job{7, 0.5, 1.0, 2.0});
}

TEST_CASE("ids default to file order") {
  const Instance inst = io::parse_instance(
      R"({"jobs":[{"r":2,"p":1,"w":1},{"r":0,"p":1,"w":3}]})");
  CHECK(inst.job(1).release == 2.0);
  CHECK(inst.job(2).weight == 3.0);
}

TEST_CASE("malformed instances") {
  CHECK_THROWS_AS(io::parse_instance("{"), ParseError);
  CHECK_THROWS_AS(io::parse_instance(R"({"tasks":[]})"), ParseError);
  CHECK_THROWS_AS(io::parse_instance(R"({"jobs":[{"r":0,"p":1}]})"), ParseError);
  CHECK_THROWS_AS(io::parse_instance(R"({"jobs":[{"r":0,"p":1,"w":"x"}]})"), ParseError);
  CHECK_THROWS_AS(io::parse_instance(R"({"jobs":[{"r":-1,"p":1,"w":1}]})"), ParseError);
  CHECK_THROWS_AS(io::parse_instance(R"({"jobs":[{"id":1,"r":0,"p":1,"w":1},{"r":0,"p":1,"w":1}]})"),
                  ParseError);
  CHECK_THROWS_AS(io::parse_instance(R"({"jobs":[{"id":1,"r":0,"p":1,"w":1},{"id":1,"r":0,"p":1,"w":1}]})"),
                  ParseError);
}

TEST_CASE("malformed traces") {
  CHECK_THROWS_AS(io::parse_trace(R"({"events":[{"t":0,"kind":"pause","job":1}]})"), ParseError);
  CHECK_THROWS_AS(io::parse_trace(R"({"events":[{"kind":"start","job":1}]})"), ParseError);
  CHECK_THROWS_AS(io::parse_trace(R"({"evts":[]})"), ParseError);
}

TEST_CASE("trace text format") {
  const Trace t = io::parse_trace(
      R"({"events":[{"t":0.0,"kind":"start","job":1},{"t":1.0,"kind":"complete","job":1}],"wc_max":1.0})");
  REQUIRE(t.events.size() == 2);
  CHECK(t.events[1] == TraceEvent{1.0, EventKind::Complete, 1});
  CHECK(t.wc_max == 1.0);
}

TEST_CASE("simulated traces round-trip through JSON and files") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0, 5);
  const auto dir = std::filesystem::temp_directory_path() / "rsched_io_test";
  std::filesystem::create_directories(dir);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<Job> jobs;
    for (int i = 1; i <= 1 + iter % 6; ++i)
      jobs.push_back({i, u(gen), u(gen) / 2.5, 0.1 + u(gen)});
    const Instance inst(jobs);
    auto policy = make_policy(kPolicyNames[iter % 3]);
    const Trace trace = simulate(inst, *policy);

    const Trace back = io::parse_trace(io::serialize_trace(trace));
    CHECK(back == trace);
    CHECK(validate_trace(inst, back).ok());
    CHECK(io::parse_instance(io::serialize_instance(inst)) == inst);

    if (iter % 20 == 0) {
      io::write_trace(dir / "t.json", trace);
      io::write_instance(dir / "i.json", inst);
      CHECK(io::read_trace(dir / "t.json") == trace);
      CHECK(io::read_instance(dir / "i.json") == inst);
    }
  }
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(io::read_instance(dir / "missing.json"), ParseError);
}
