#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "affmech/sampling.hpp"
#include "affmech/special_affine.hpp"

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

const SpaceDesc A1{1, "A", false};
const SpaceDesc A2{2, "A", false};

// Brute-force oracle for the dual: find (F', f', g', t') from the pointwise
// law Phi#(psi)(x) = psi(Phi(x)) by sampling psi and x and solving the
// resulting linear system for the coefficients.
SpecialMorphism brute_force_dual(const SpecialMorphism& Phi, std::mt19937_64& rng) {
  const SpaceDesc X = Phi.domain, Y = Phi.codomain;
  const int n = X.n, k = Y.n;
  // Unknowns: F' (n x k), f' (n), g' (k), t'. Phi#(psi) has coordinates
  // (F' psi.f + f', g'.psi.f + t' + psi.t) as a point of X#.
  const int unknowns = n * k + n + k + 1;
  const int rows = 4 * unknowns + 8;
  MatrixXd M = MatrixXd::Zero(rows, unknowns);
  VectorXd rhs(rows);
  for (int row = 0; row < rows; ++row) {
    const DualPoint psi = sampling::dual_point(rng, Y);
    const SpecialAffinePoint x = sampling::point(rng, X);
    // psi(Phi(x)) = image.t-independent form: x.r - eps_X <image.f, x.v> - image.t
    const double target = evaluate(psi, eval_morphism(Phi, x));
    const double eps = X.epsilon();
    // evaluate(as_dual(point(f', t'')), x) = x.r - eps <f'', x.v> - t'' with
    // f'' = F' psi.f + f', t'' = g'.psi.f + t' + psi.t.
    rhs[row] = target - x.r + psi.t;
    int col = 0;
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) M(row, col++) = -eps * x.v[i] * psi.f[j];
    for (int i = 0; i < n; ++i) M(row, col++) = -eps * x.v[i];
    for (int j = 0; j < k; ++j) M(row, col++) = -psi.f[j];
    M(row, col) = -1.0;
  }
  const VectorXd sol = M.colPivHouseholderQr().solve(rhs);
  SpecialMorphism D{Y.dual(), X.dual(), MatrixXd(n, k), VectorXd(n), VectorXd(k), 0.0};
  int col = 0;
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) D.F(i, j) = sol[col++];
  for (int i = 0; i < n; ++i) D.f[i] = sol[col++];
  for (int j = 0; j < k; ++j) D.g[j] = sol[col++];
  D.t = sol[col];
  return D;
}

}  // namespace

TEST_CASE("pairing_delta hand values") {
  CHECK(pairing_delta({A2, vec({2, -1}), 3}, {A2, vec({1, 4}), 1}) == 0);
  CHECK(pairing_delta({A2, vec({0, 0}), 0}, {A2, vec({0, 0}), 0}) == 0);
  CHECK(pairing_delta({A1, vec({1}), 0}, {A1, vec({1}), 0}) == 1);
  CHECK_THROWS_AS(pairing_delta({A1, vec({1}), 0}, {A2, vec({1, 0}), 0}), DimensionError);
  CHECK_THROWS_AS(pairing_delta({SpaceDesc{1, "B", false}, vec({1}), 0}, {A1, vec({1}), 0}), DimensionError);
}

TEST_CASE("eval_morphism and compose") {
  const SpecialMorphism Phi{A1, A1, MatrixXd::Constant(1, 1, 1), vec({2}), vec({3}), 4};
  const SpecialAffinePoint out = eval_morphism(Phi, {A1, vec({1}), 0});
  CHECK(out.v[0] == 3);
  CHECK(out.r == 7);

  std::mt19937_64 rng(1);
  const SpecialMorphism id = SpecialMorphism::identity(A2);
  const SpecialAffinePoint a = sampling::point(rng, A2);
  const SpecialAffinePoint ia = eval_morphism(id, a);
  CHECK(ia.v == a.v);
  CHECK(ia.r == a.r);
  const SpecialMorphism P = sampling::morphism(rng, A2, A2);
  const SpecialAffinePoint s1 = eval_morphism(P, a.shifted(1.0)), s0 = eval_morphism(P, a);
  CHECK(s1.r == doctest::Approx(s0.r + 1));
  const SpecialMorphism c1 = compose(id, P), c2 = compose(P, id);
  CHECK((c1.F - P.F).norm() == 0);
  CHECK((c2.g - P.g).norm() == 0);
  CHECK(c1.t == P.t);
}

TEST_CASE("dual_morphism matches the brute-force oracle") {
  std::mt19937_64 rng(3);
  const SpecialMorphism hand{A1, A1, MatrixXd::Constant(1, 1, 1), vec({2}), vec({3}), 4};
  const SpecialMorphism D = dual_morphism(hand);
  const SpecialMorphism B = brute_force_dual(hand, rng);
  CHECK((D.F - B.F).norm() < 1e-10);
  CHECK((D.f - B.f).norm() < 1e-10);
  CHECK((D.g - B.g).norm() < 1e-10);
  CHECK(D.t == doctest::Approx(B.t));
  // For A -> A#: (-F^T, -g, -f, -t).
  const SpecialMorphism toDual{A1, A1.dual(), MatrixXd::Constant(1, 1, 1), vec({2}), vec({3}), 4};
  const SpecialMorphism Dd = dual_morphism(toDual);
  CHECK(Dd.F(0, 0) == -1);
  CHECK(Dd.f[0] == -3);
  CHECK(Dd.g[0] == -2);
  CHECK(Dd.t == -4);

  for (int k = 0; k < 40; ++k) {
    const SpaceDesc X = sampling::space(rng, sampling::uniform_int(rng, 0, 4), sampling::uniform_int(rng, 0, 1));
    const SpaceDesc Y = sampling::space(rng, sampling::uniform_int(rng, 0, 4), sampling::uniform_int(rng, 0, 1));
    const SpecialMorphism Phi = sampling::morphism(rng, X, Y);
    const SpecialMorphism Dk = dual_morphism(Phi), Bk = brute_force_dual(Phi, rng);
    CHECK(Dk.domain == Y.dual());
    CHECK(Dk.codomain == X.dual());
    if (X.n && Y.n) CHECK((Dk.F - Bk.F).cwiseAbs().maxCoeff() < 1e-9);
    if (X.n) CHECK((Dk.f - Bk.f).cwiseAbs().maxCoeff() < 1e-9);
    if (Y.n) CHECK((Dk.g - Bk.g).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(Dk.t == doctest::Approx(Bk.t).epsilon(1e-9));
  }
}

TEST_CASE("double dual embedding") {
  const SpecialAffinePoint origin{A2, vec({0, 0}), 0};
  const DualPoint chi = double_dual_embed(origin);
  const DualPoint phi0{A2, vec({0, 0}), 0};
  CHECK(evaluate(chi, as_point(phi0)) == 0);

  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const SpecialAffinePoint a = sampling::point(rng, A2);
    const SpecialAffinePoint back = double_dual_identify(double_dual_embed(a));
    CHECK(back.space == a.space);
    CHECK(back.v == a.v);
    CHECK(back.r == a.r);
    const DualPoint phi = sampling::dual_point(rng, A2);
    CHECK(evaluate(double_dual_embed(a), as_point(phi)) == doctest::Approx(-evaluate(phi, a)));
  }
}

TEST_CASE("is_self_dual hand cases") {
  const SpecialMorphism yes{A1, A1.dual(), MatrixXd::Zero(1, 1), vec({1}), vec({-1}), 0};
  const SelfDualCheck c = is_self_dual(yes);
  CHECK(c.self_dual);
  CHECK(c.criteria_agree);
  SpecialMorphism no = yes;
  no.t = 0.5;
  const SelfDualCheck d = is_self_dual(no);
  CHECK_FALSE(d.self_dual);
  CHECK(d.criteria_agree);
  const SpaceDesc A0{0, "A", false};
  CHECK(is_self_dual({A0, A0.dual(), MatrixXd(0, 0), VectorXd(0), VectorXd(0), 0}).self_dual);
  CHECK_THROWS_AS(is_self_dual({A1, A1, MatrixXd::Zero(1, 1), vec({1}), vec({-1}), 0}), Error);
}

TEST_CASE("self_dual_lift hand cases") {
  const SpecialMorphism one = self_dual_lift(MatrixXd::Zero(1, 1), vec({5}), A1);
  const SpecialAffinePoint out = eval_morphism(one, {A1, vec({2}), 3});
  CHECK(out.v[0] == 5);
  CHECK(out.r == -5 * 2 + 3);

  MatrixXd F(2, 2);
  F << 0, 2, -2, 0;
  const SpecialMorphism two = self_dual_lift(F, vec({1, -1}), A2);
  const SpecialAffinePoint o2 = eval_morphism(two, {A2, vec({0.5, 1.5}), 2});
  CHECK(o2.v[0] == doctest::Approx(2 * 1.5 + 1));
  CHECK(o2.v[1] == doctest::Approx(-2 * 0.5 - 1));
  CHECK(o2.r == doctest::Approx(-0.5 + 1.5 + 2));

  const SpecialMorphism zero = self_dual_lift(MatrixXd::Zero(2, 2), vec({0, 0}), A2);
  const SpecialAffinePoint o3 = eval_morphism(zero, {A2, vec({7, 8}), 9});
  CHECK(o3.v.norm() == 0);
  CHECK(o3.r == 9);

  MatrixXd notskew(2, 2);
  notskew << 1, 0, 0, 0;
  CHECK_THROWS_AS(self_dual_lift(notskew, vec({0, 0}), A2), Error);
}

TEST_CASE("box normal form") {
  const SpaceDesc R0{0, "R", false};
  const SpecialAffinePoint ab = box_normal_form({A1, vec({1}), 2}, {SpaceDesc{1, "B", false}, vec({3}), 4});
  CHECK(ab.v == vec({1, 3}));
  CHECK(ab.r == 6);
  for (double c : {-3.0, 0.25, 10.0}) {
    const SpecialAffinePoint s = box_normal_form({A1, vec({1}), 2 + c}, {SpaceDesc{1, "B", false}, vec({3}), 4 - c});
    CHECK(s.v == ab.v);
    CHECK(s.r == doctest::Approx(6));
  }
  CHECK(box_normal_form({R0, VectorXd(0), 2}, {R0, VectorXd(0), 3}).r == 5);
  CHECK_THROWS_AS(box_space(A1, A1.dual()), Error);
}

TEST_CASE("biaffine parts") {
  std::mt19937_64 rng(5);
  const BiAffineMap constant{MatrixXd::Zero(2, 3), VectorXd::Zero(2), VectorXd::Zero(3), 4.0};
  const BiAffineParts zero = biaffine_parts(constant);
  CHECK(zero.bilinear(vec({1, 2}), vec({1, 2, 3})) == 0);
  CHECK(zero.affine_linear(vec({1, 2}), vec({1, 2, 3})) == 0);
  CHECK(zero.linear_affine(vec({1, 2}), vec({1, 2, 3})) == 0);

  const BiAffineMap prod{MatrixXd::Constant(1, 1, 1), VectorXd::Zero(1), VectorXd::Zero(1), 0};
  const BiAffineParts p = biaffine_parts(prod);
  CHECK(p.bilinear(vec({3}), vec({4})) == 12);
  CHECK(p.affine_linear(vec({2}), vec({5})) == 10);
  CHECK(four_point_difference(prod, vec({0.3}), vec({-1}), vec({3}), vec({4})) == doctest::Approx(12));
}

TEST_CASE("graph_value") {
  std::mt19937_64 rng(6);
  const SpecialMorphism Psi = sampling::morphism(rng, A2, A1);
  const SpecialAffinePoint a = sampling::point(rng, A2);
  const SpecialAffinePoint b = eval_morphism(Psi, a);
  CHECK(graph_value(Psi, a, b) == 0);
  CHECK(graph_value(Psi, a, b.shifted(1)) == doctest::Approx(1));
  CHECK(graph_value(Psi, a, b.shifted(-2.5)) == doctest::Approx(-2.5));
  SpecialAffinePoint off = b;
  off.v[0] += 0.1;
  CHECK_THROWS_AS(graph_value(Psi, a, off), ConstraintError);
}

TEST_CASE("pairing matrices have full rank") {
  for (int n = 0; n <= 6; ++n) {
    const PairingMatrices pm = pairing_matrices(SpaceDesc{n, "A", false});
    CHECK(Eigen::FullPivLU<MatrixXd>(pm.left).rank() == n + 1);
    CHECK(Eigen::FullPivLU<MatrixXd>(pm.right).rank() == n + 1);
  }
}

TEST_CASE("inverse of a singular morphism throws") {
  const SpecialMorphism S{A2, A2, MatrixXd::Zero(2, 2), vec({0, 0}), vec({0, 0}), 0};
  CHECK_THROWS_AS(inverse(S), Error);
}
