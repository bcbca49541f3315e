#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "affmech/affine_calculus.hpp"
#include "affmech/sampling.hpp"

using namespace affmech;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(Eigen::Index(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Gauge gauge(const char* text, const char* tag) { return {ScalarField::parse(text), tag}; }

}  // namespace

TEST_CASE("phase differential") {
  CHECK(phase_differential(gauge("0", "a"), vec({1.5})).p[0] == 0);
  CHECK(phase_differential(gauge("x0^2", "a"), vec({2})).p[0] == 4);
  const PhasePoint P = phase_differential(gauge("x0*x1", "a"), vec({2, 3}));
  CHECK(P.p == vec({3, 2}));
  CHECK(P.gauge_tag == "a");

  // Sections whose difference has zero differential at x give the same point.
  const PhasePoint Q = phase_differential(gauge("x0*x1 + (x0 - 2)^2", "a"), vec({2, 3}));
  CHECK(Q.p == P.p);
}

TEST_CASE("gauge change hand values") {
  // lambda = sigma_from - sigma_to = x^3; at x = 2 the momentum moves by 12.
  const Gauge from = gauge("x0^3", "a"), to = gauge("0", "b");
  const PhasePoint P = gauge_change(PhasePoint{vec({2}), vec({1}), "a"}, from, to);
  CHECK(P.p[0] == 13);
  CHECK(P.gauge_tag == "b");
  const ContactPoint C = gauge_change(ContactPoint{vec({2}), vec({1}), 0.5, "a"}, from, to);
  CHECK(C.s == 8.5);

  const Gauge same = gauge("0", "a"), other = gauge("0", "b");
  const ReducedTangent u{vec({1}), vec({2}), 3, ReducedKind::Bar, "a"};
  const ReducedTangent w = gauge_change(u, same, other);
  CHECK(w.sdot == 3);
  CHECK(w.gauge_tag == "b");

  CHECK_THROWS_AS(gauge_change(PhasePoint{vec({2}), vec({1}), "b"}, from, to), GaugeMismatch);
}

TEST_CASE("tilde and bar gauge laws") {
  const Gauge from = gauge("x0^2 + 1", "a"), to = gauge("0", "b");
  const ReducedTangent tilde = gauge_change(ReducedTangent{vec({3}), vec({2}), 1, ReducedKind::Tilde, "a"}, from, to);
  CHECK(tilde.sdot == 1 + 6 * 2);
  const ReducedTangent bar = gauge_change(ReducedTangent{vec({3}), vec({2}), 1, ReducedKind::Bar, "a"}, from, to);
  CHECK(bar.sdot == 1 + 6 * 2 + 10);
}

TEST_CASE("omega and theta") {
  const PhasePoint P{vec({0}), vec({0}), "ref"};
  const PhaseTangent w1{vec({1}), vec({0})}, w2{vec({0}), vec({1})};
  CHECK(omega_eval(P, w1, w2) == -1);
  CHECK(omega_eval(P, w1, w1) == 0);
  CHECK(theta_eval(ContactPoint{vec({0}), vec({0}), 0, "ref"}, w1) == 0);
  CHECK(theta_eval(ContactPoint{vec({0}), vec({2}), 0, "ref"}, PhaseTangent{vec({3}), vec({0})}) == 6);
}

TEST_CASE("pairings and lifts") {
  CHECK(reduced_pairing({vec({0}), vec({1}), "ref"}, 0, {vec({0}), vec({2}), 5, ReducedKind::Tilde, "ref"}) == 3);
  CHECK(reduced_pairing({vec({0}), vec({0}), "ref"}, 0, {vec({0}), vec({0}), 0, ReducedKind::Tilde, "ref"}) == 0);
  CHECK_THROWS_AS(
      reduced_pairing({vec({0}), vec({1}), "ref"}, 0, {vec({1}), vec({2}), 5, ReducedKind::Tilde, "ref"}), Error);
  CHECK_THROWS_AS(
      reduced_pairing({vec({0}), vec({1}), "ref"}, 0, {vec({0}), vec({2}), 5, ReducedKind::Bar, "ref"}), Error);

  CHECK(contact_pairing(gauge("0", "ref"), vec({0}), bar_from_representative(vec({0}), vec({0}), 0, 0)) == 0);
  CHECK(contact_pairing(gauge("x0", "ref"), vec({1}), bar_from_representative(vec({1}), vec({2}), 1, 0.5)) ==
        doctest::Approx(1.5));

  CHECK(horizontal_lift({vec({0}), vec({0}), "ref"}, vec({4})).sdot == 0);
  CHECK(horizontal_lift({vec({0}), vec({3}), "ref"}, vec({2})).sdot == 6);

  const TangentLifts sq = section_tangent_lifts(ScalarField::parse("x0^2"), vec({1}), vec({3}));
  CHECK(sq.tilde == 6);
  CHECK(sq.bar == 7);
  const TangentLifts zero = section_tangent_lifts(ScalarField(), vec({1}), vec({3}));
  CHECK(zero.tilde == 0);
  CHECK(zero.bar == 0);
  const TangentLifts c = section_tangent_lifts(ScalarField::constant(2.5), vec({1}), vec({3}));
  CHECK(c.tilde == 0);
  CHECK(c.bar == 2.5);
}

TEST_CASE("form differential") {
  const AffineOneForm curl{{ScalarField(), ScalarField::parse("x0")}, "ref"};
  MatrixXd expected(2, 2);
  expected << 0, 1, -1, 0;
  CHECK(form_differential(curl, vec({0.3, -2})) == expected);

  const ScalarField sigma = ScalarField::parse("x0^2*x1 + sin(x1)");
  const AffineOneForm exact{{sigma.derivative(0), sigma.derivative(1)}, "ref"};
  CHECK(form_differential(exact, vec({0.7, 0.2})).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("constraint membership") {
  CoordinateConstraint C;
  C.fixed[1] = 0.0;
  const ScalarField zero;
  CHECK(constraint_lagrangian_membership({vec({0.4, 0}), vec({0, 7}), "ref"}, C, zero));
  CHECK_FALSE(constraint_lagrangian_membership({vec({0.4, 0}), vec({0.1, 7}), "ref"}, C, zero));
  CHECK_FALSE(constraint_lagrangian_membership({vec({0.4, 0.2}), vec({0, 7}), "ref"}, C, zero));

  const ScalarField sigma = ScalarField::parse("x0^2 + x0*x1");
  const CoordinateConstraint none;
  CHECK(constraint_lagrangian_membership({vec({1, 2}), vec({4, 1}), "ref"}, none, sigma));
  CHECK_FALSE(constraint_lagrangian_membership({vec({1, 2}), vec({4, 1.5}), "ref"}, none, sigma));
}

TEST_CASE("morse reduction") {
  // No fiber: the graph of d sigma.
  const MorseResult flat = morse_reduce({ScalarField::parse("x0^2 + 3*x1"), 2, 0}, vec({1, 1}), {VectorXd(0)});
  REQUIRE(flat.points.size() == 1);
  CHECK(flat.points[0].point.p == vec({2, 3}));

  // k = 1 toy family F = x u - u^2/2: critical u = x, chi = u, so the
  // Lagrangian submanifold is p = x.
  for (double x : {-1.5, 0.0, 2.0}) {
    const MorseResult r = morse_reduce({ScalarField::parse("x0*x1 - x1^2/2"), 1, 1}, vec({x}),
                                       {vec({x + 3}), vec({x - 1}), vec({x + 1e-10})});
    REQUIRE(r.points.size() == 1);
    CHECK(r.points[0].u[0] == doctest::Approx(x));
    CHECK(r.points[0].point.p[0] == doctest::Approx(x));
    CHECK(r.points[0].morse_regular);
  }

  // Two critical points: F = u^3/3 - x u; u = +-sqrt(x), p = -u.
  const MorseResult two = morse_reduce({ScalarField::parse("x1^3/3 - x0*x1"), 1, 1}, vec({4}), {vec({3}), vec({-3})});
  REQUIRE(two.points.size() == 2);
  CHECK(std::abs(two.points[0].u[0]) == doctest::Approx(2));
  CHECK(two.points[0].point.p[0] == doctest::Approx(-two.points[0].u[0]));

  // u^2 + 1 never vanishes, so every seed fails.
  const MorseResult none = morse_reduce({ScalarField::parse("x1^3/3 + x1 + x0"), 1, 1}, vec({0}), {vec({0})});
  CHECK(none.points.empty());
  CHECK(none.failures.size() == 1);
}

TEST_CASE("closed form reconstruction") {
  const ScalarField sigma = ScalarField::parse("x0^2*x1 + cos(x1)");
  const AffineOneForm alpha{{sigma.derivative(0), sigma.derivative(1)}, "ref"};
  const Reconstruction r = reconstruct_potential(alpha, vec({0, 0}), vec({0.8, -0.6}));
  CHECK(r.value == doctest::Approx(sigma.value(vec({0.8, -0.6})) - 1.0).epsilon(1e-12));
  CHECK((r.gradient - alpha.at(vec({0.8, -0.6}))).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("box and bar") {
  const PhasePoint a{vec({1}), vec({2}), "ref"}, b{vec({3, 4}), vec({5, 6}), "ref"};
  const PhasePoint ab = phase_box(a, b);
  CHECK(ab.x == vec({1, 3, 4}));
  CHECK(ab.p == vec({2, 5, 6}));
  CHECK(phase_bar(a).p[0] == -2);
  const ScalarField boxed = section_box(ScalarField::parse("x0"), 1, ScalarField::parse("x0*x1"));
  CHECK(boxed.value(vec({2, 3, 4})) == 14);
}
