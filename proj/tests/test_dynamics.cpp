#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "affmech/dynamics.hpp"
#include "affmech/sampling.hpp"

using namespace affmech;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(Eigen::Index(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Scenario flat(int m, double mass, double charge, std::vector<std::string> potential = {}) {
  Scenario s;
  s.dim = m;
  s.metric = Metric::minkowski(m);
  if (potential.empty()) potential.assign(std::size_t(m), "0");
  for (const auto& a : potential) s.potential.push_back(ScalarField::parse(a));
  s.params = {mass, charge};
  s.x0 = VectorXd::Zero(m);
  s.v0 = VectorXd::Unit(m, 0);
  return s;
}

}  // namespace

TEST_CASE("lagrangian hand values") {
  CHECK(lagrangian_eval(flat(2, 1, 0), vec({0, 0}), vec({1, 0})) == 1);
  const Scenario s = flat(2, 1.5, 0);
  const VectorXd v = vec({1.2, 0.5});
  CHECK(lagrangian_eval(s, vec({0, 0}), 3 * v) == doctest::Approx(3 * lagrangian_eval(s, vec({0, 0}), v)));
  CHECK(lagrangian_eval(flat(2, 1, 1, {"2.5", "0"}), vec({0, 0}), vec({1, 0})) == doctest::Approx(-2.5 + 1));
}

TEST_CASE("legendre momentum") {
  const VectorXd p = legendre_momentum(flat(2, 2, 0), vec({0, 0}), vec({1, 0}));
  CHECK(p == vec({2, 0}));
  // Unit shell: p = mass g(v).
  const VectorXd v = vec({1.25, 0.75});
  const VectorXd q = legendre_momentum(flat(2, 3, 0), vec({0, 0}), v);
  CHECK(q[0] == doctest::Approx(3 * 1.25));
  CHECK(q[1] == doctest::Approx(-3 * 0.75));
  CHECK_THROWS_AS(legendre_momentum(flat(2, 1, 0), vec({0, 0}), vec({0.5, 1})), ConstraintError);
}

TEST_CASE("dynamics residual") {
  const Scenario s = flat(2, 2, 0);
  const VectorXd v = vec({1.25, 0.75});
  const VectorXd p = legendre_momentum(s, vec({0, 0}), v);
  CHECK(dynamics_residual(s, vec({0, 0}), p, v, vec({0, 0})).norm() < 1e-15);
  const VectorXd r = dynamics_residual(s, vec({0, 0}), p + vec({0.1, -0.2}), v, vec({0, 0}));
  CHECK(r[0] == doctest::Approx(0.1));
  CHECK(r[1] == doctest::Approx(-0.2));
}

TEST_CASE("hamiltonian family") {
  const Scenario s = flat(2, 1.5, 0);
  CHECK(hamiltonian_family_eval(s, vec({0, 0}), vec({1, 0}), vec({1.5, 0})) == 0);
  CHECK(hamiltonian_family_eval(s, vec({0, 0}), vec({1.25, 0.75}), vec({0, 0})) ==
        doctest::Approx(lagrangian_eval(s, vec({0, 0}), vec({1.25, 0.75}))));
}

TEST_CASE("free particle is a straight line") {
  Scenario s = flat(3, 1, 0);
  s.x0 = vec({0, 1, -1});
  s.v0 = vec({1.25, 0.6, -0.45});
  const Trajectory traj = integrate(s, 200, 0.05);
  REQUIRE(traj.samples.size() == 201);
  for (const Sample& smp : traj.samples) {
    CHECK((smp.x - (s.x0 + smp.tau * s.v0)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("cyclotron closed form") {
  const double B = 2, e = 1, m = 1, u = 0.75;
  const Scenario s = cyclotron_scenario(B, e, m, u);
  const double gamma = std::sqrt(1 + u * u);
  const double h = 1e-3;
  const std::size_t steps = std::size_t(std::ceil(1.05 * 2 * std::numbers::pi * m / (e * B) / h));
  const Trajectory traj = integrate(s, steps, h);
  std::vector<double> t, xs, ys;
  for (const Sample& smp : traj.samples) {
    t.push_back(smp.x[0]);
    xs.push_back(smp.x[1]);
    ys.push_back(smp.x[2]);
  }
  const CircleFit fit = fit_circle(xs, ys);
  CHECK(fit.radius == doctest::Approx(m * u / (e * B)).epsilon(1e-9));
  const auto period = first_turn_time(t, xs, ys, fit.cx, fit.cy);
  REQUIRE(period);
  CHECK(*period == doctest::Approx(2 * std::numbers::pi * gamma * m / (e * B)).epsilon(1e-7));
  CHECK(traj.max_shell_drift < 1e-12);
  CHECK(traj.max_el_residual < 1e-10);
}

TEST_CASE("fit_circle and first_turn_time") {
  std::vector<double> t, xs, ys;
  for (int k = 0; k <= 130; ++k) {
    const double a = 0.05 * k;
    t.push_back(a);
    xs.push_back(1 + 2 * std::cos(a));
    ys.push_back(-1 + 2 * std::sin(a));
  }
  const CircleFit fit = fit_circle(xs, ys);
  CHECK(fit.cx == doctest::Approx(1));
  CHECK(fit.cy == doctest::Approx(-1));
  CHECK(fit.radius == doctest::Approx(2));
  const auto T = first_turn_time(t, xs, ys, 1, -1);
  REQUIRE(T);
  CHECK(*T == doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));
  t.resize(100);
  xs.resize(100);
  ys.resize(100);
  CHECK_FALSE(first_turn_time(t, xs, ys, 1, -1));
}

TEST_CASE("integration aborts with the step index") {
  // g11 vanishes at x1 = 1 and the particle runs into it.
  Scenario s = flat(2, 1, 0);
  s.metric.m = 2;
  s.metric.components = {{ScalarField::constant(1), ScalarField()}, {ScalarField(), ScalarField::parse("x1 - 1")}};
  s.v0 = vec({1.25, 0.75});
  try {
    integrate(s, 100000, 1e-2);
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(e.step() > 0);
  }
}

TEST_CASE("gauge transform") {
  const Scenario s = cyclotron_scenario(1.5, -1, 2, 0.4, 0.2);
  const ScalarField lambda = ScalarField::parse("0.3*x1*x2 + sin(x0) + x3^2");
  const Scenario t = gauge_transform_scenario(s, lambda);
  CHECK(t.gauge.tag != s.gauge.tag);
  const Scenario same = gauge_transform_scenario(s, ScalarField());
  const Trajectory a = integrate(s, 500, 1e-2), b = integrate(t, 500, 1e-2), c = integrate(same, 500, 1e-2);
  for (std::size_t k = 0; k < a.samples.size(); k += 50) {
    CHECK((a.samples[k].x - b.samples[k].x).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((a.samples[k].v - b.samples[k].v).cwiseAbs().maxCoeff() < 1e-10);
    const VectorXd shift = -s.params.charge * lambda.gradient(a.samples[k].x).gradient;
    CHECK((b.samples[k].p - a.samples[k].p - shift).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(c.samples[k].x == a.samples[k].x);
  }
}

TEST_CASE("charge action and lift") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const int m = sampling::uniform_int(rng, 1, 4);
    const double e = sampling::uniform(rng, -2, 2);
    const auto x1 = charge_action(sampling::field(rng, m), m, e);
    REQUIRE(x1);
    CHECK(*x1 == e);
  }
  CHECK(charge_action(ScalarField::parse("x0"), 1, -1) == -1.0);
  const VectorXd lifted = ke_lift(vec({1, 2}), vec({3, 4}), -0.5);
  CHECK(lifted == vec({3, 4, -0.5}));
}

TEST_CASE("curved metric keeps the shell") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 5; ++k) {
    const Scenario s = sampling::scenario(rng, 3, true);
    const Trajectory traj = integrate(s, 1000, 1e-3);
    CHECK(traj.max_shell_drift < 1e-8);
    CHECK(traj.max_el_residual < 1e-10);
  }
}

TEST_CASE("scenario validation") {
  Scenario s = flat(2, 1, 0);
  s.params.mass = 0;
  CHECK_THROWS_AS(s.validate(), Error);
  s = flat(2, 1, 0);
  s.v0 = vec({1});
  CHECK_THROWS_AS(s.validate(), Error);
}
