#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "affmech/io.hpp"
#include "affmech/sampling.hpp"

using namespace affmech;
using Eigen::VectorXd;

TEST_CASE("algebraic objects round trip") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const SpaceDesc X = sampling::space(rng, sampling::uniform_int(rng, 0, 4), sampling::uniform_int(rng, 0, 1));
    const SpaceDesc Y = sampling::space(rng, sampling::uniform_int(rng, 0, 4), false);
    const SpecialMorphism Phi = sampling::morphism(rng, X, Y);
    const SpecialMorphism back = morphism_from_json(Json::parse(to_json(Phi).dump()));
    CHECK(back.domain == Phi.domain);
    CHECK(back.codomain == Phi.codomain);
    CHECK(back.F == Phi.F);
    CHECK(back.f == Phi.f);
    CHECK(back.g == Phi.g);
    CHECK(back.t == Phi.t);

    const SpecialAffinePoint a = sampling::point(rng, X);
    const SpecialAffinePoint a2 = point_from_json(Json::parse(to_json(a).dump()));
    CHECK(a2.v == a.v);
    CHECK(a2.r == a.r);
    const DualPoint phi = sampling::dual_point(rng, X);
    const DualPoint phi2 = dual_point_from_json(Json::parse(to_json(phi).dump()));
    CHECK(phi2.f == phi.f);
    CHECK(phi2.space == phi.space);
  }
}

TEST_CASE("format errors name the location") {
  const Json good = {{"space", {{"n", 2}, {"frame", "A"}, {"dual_level", false}}}, {"v", {1, 2}}, {"r", 0}};
  CHECK_NOTHROW(point_from_json(good));

  Json bad = good;
  bad["v"] = {1, 2, 3};
  try {
    point_from_json(bad);
    FAIL("no throw");
  } catch (const FormatError& e) {
    CHECK(e.location() == "/v");
  }
  bad = good;
  bad["v"][1] = "two";
  try {
    point_from_json(bad);
    FAIL("no throw");
  } catch (const FormatError& e) {
    CHECK(e.location() == "/v/1");
  }
  bad = good;
  bad.erase("r");
  CHECK_THROWS_AS(point_from_json(bad), FormatError);
}

TEST_CASE("scenario parsing") {
  const Json j = Json::parse(R"({
    "dim": 2, "metric": "minkowski", "potential": ["x1", 0],
    "mass": 2, "charge": -1, "gauge": "x0^2",
    "x0": [0, 0], "v0": [1, 0]})");
  const Scenario s = scenario_from_json(j);
  CHECK(s.dim == 2);
  CHECK(s.metric.is_minkowski());
  CHECK(s.params.mass == 2);
  CHECK(s.potential[0].value(Eigen::Vector2d(0, 3)) == 3);
  const Scenario back = scenario_from_json(to_json(s));
  CHECK(back.potential[0].to_string() == s.potential[0].to_string());

  Json bad = j;
  bad["potential"][0] = "x1 +";
  try {
    scenario_from_json(bad);
    FAIL("no throw");
  } catch (const FormatError& e) {
    CHECK(e.location() == "/potential/0");
  }
  bad = j;
  bad["potential"][1] = "x5";
  CHECK_THROWS_AS(scenario_from_json(bad), FormatError);
  bad = j;
  bad["mass"] = -1;
  CHECK_THROWS_AS(scenario_from_json(bad), FormatError);
  bad = j;
  bad["metric"] = {{"components", {{"1", "0"}, {"0"}}}};
  CHECK_THROWS_AS(scenario_from_json(bad), FormatError);
}

TEST_CASE("packaged scenarios load") {
  for (const char* name : {"free_particle", "cyclotron", "cyclotron_gauge"}) {
    CAPTURE(name);
    const Scenario s = load_scenario(std::string(AFFMECH_SCENARIO_DIR) + "/" + name + ".json");
    CHECK(s.dim == 4);
  }
  CHECK_THROWS_AS(load_scenario("/nonexistent/file.json"), FormatError);
}

TEST_CASE("trajectory csv round trip") {
  const Trajectory traj = integrate(cyclotron_scenario(1, 1, 1, 0.5), 10, 1e-2);
  std::stringstream ss;
  write_trajectory_csv(ss, traj);
  const CsvTable t = read_csv(ss);
  REQUIRE(t.rows.size() == 11);
  CHECK(t.header.front() == "tau");
  CHECK(t.rows[7][t.column("x1")] == traj.samples[7].x[1]);
  CHECK(t.rows[10][t.column("p2")] == traj.samples[10].p[2]);
  CHECK_THROWS(t.column("nope"));
}
