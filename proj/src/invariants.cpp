// Kernels of the property suites.

#include <cmath>
#include <limits>

#include "affmech/affine_calculus.hpp"
#include "affmech/canonical_iso.hpp"
#include "affmech/dynamics.hpp"
#include "affmech/sampling.hpp"
#include "affmech/special_affine.hpp"
#include "affmech/verify.hpp"

namespace affmech {
namespace {

namespace smp = sampling;
using Rng = std::mt19937_64;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kFail = std::numeric_limits<double>::infinity();

double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b))); }

double rel(const MatrixXd& a, const MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return kFail;
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff() / (1.0 + std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()));
}

double exact(const MatrixXd& a, const MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return kFail;
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

VectorXd cat(const VectorXd& a, const VectorXd& b) {
  VectorXd out(a.size() + b.size());
  out << a, b;
  return out;
}

double point_diff(const SpecialAffinePoint& a, const SpecialAffinePoint& b) {
  if (!(a.space == b.space)) return kFail;
  return std::max(rel(a.v, b.v), rel(a.r, b.r));
}

bool coin(Rng& rng) { return smp::uniform_int(rng, 0, 1) == 1; }

SpecialMorphism self_dual_part(const SpecialMorphism& Phi) {
  const SpecialMorphism D = dual_morphism(Phi);
  return {Phi.domain, Phi.codomain, (Phi.F + D.F) / 2.0, (Phi.f + D.f) / 2.0, (Phi.g + D.g) / 2.0, (Phi.t + D.t) / 2.0};
}

// ---------------------------------------------------------------- special affine

double sa_dual_involution(Rng& rng) {
  const SpaceDesc X = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpaceDesc Y = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpecialMorphism Phi = smp::morphism(rng, X, Y);
  const SpecialMorphism DD = dual_morphism(dual_morphism(Phi));
  if (!(DD.domain == Phi.domain) || !(DD.codomain == Phi.codomain)) return kFail;
  return std::max({exact(DD.F, Phi.F), exact(DD.f, Phi.f), exact(DD.g, Phi.g), std::abs(DD.t - Phi.t)});
}

double sa_dual_defining_property(Rng& rng) {
  const SpaceDesc X = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpaceDesc Y = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpecialMorphism Phi = smp::morphism(rng, X, Y);
  const SpecialMorphism D = dual_morphism(Phi);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const DualPoint psi = smp::dual_point(rng, Y);
    const SpecialAffinePoint x = smp::point(rng, X);
    const DualPoint pulled = as_dual(eval_morphism(D, as_point(psi)));
    worst = std::max(worst, rel(evaluate(pulled, x), evaluate(psi, eval_morphism(Phi, x))));
  }
  return worst;
}

double sa_self_dual_lift(Rng& rng) {
  const int n = smp::uniform_int(rng, 0, 6);
  const SpaceDesc A = smp::space(rng, n, coin(rng));
  const MatrixXd F = smp::skew(rng, n);
  const VectorXd f = smp::vector(rng, n);
  const SpecialMorphism Phi = self_dual_lift(F, f, A);
  const SelfDualCheck check = is_self_dual(Phi);
  if (!check.self_dual || !check.criteria_agree) return kFail;

  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const SpecialAffinePoint a = smp::point(rng, A), b = smp::point(rng, A);
    const double ba = evaluate(as_dual(eval_morphism(Phi, b)), a);
    const double ab = evaluate(as_dual(eval_morphism(Phi, a)), b);
    worst = std::max(worst, std::abs(ba + ab) / (1.0 + std::abs(ba)));
    worst = std::max(worst, rel(eval_morphism(Phi, a).v, F * a.v + f));
  }

  SpecialMorphism bent = Phi;
  bent.t += smp::uniform(rng, 1e-6, 1.0) * (coin(rng) ? 1 : -1);
  if (is_self_dual(bent).self_dual) return kFail;
  if (n > 0) {
    bent = Phi;
    bent.g[smp::uniform_int(rng, 0, n - 1)] += smp::uniform(rng, 1e-6, 1.0);
    if (is_self_dual(bent).self_dual) return kFail;
  }
  return worst;
}

double sa_self_dual_uniqueness(Rng& rng) {
  const int n = smp::uniform_int(rng, 0, 6);
  const SpaceDesc A = smp::space(rng, n, coin(rng));
  const SpecialMorphism S = self_dual_part(smp::morphism(rng, A, A.dual()));
  const SpecialMorphism L = self_dual_lift(S.F, S.f, A);
  return std::max({exact(S.F, L.F), exact(S.f, L.f), exact(S.g, L.g), std::abs(S.t - L.t)});
}

double sa_self_dual_skew(Rng& rng) {
  const int n = smp::uniform_int(rng, 0, 6);
  const SpaceDesc A = smp::space(rng, n, coin(rng));
  const SpecialMorphism S = self_dual_part(smp::morphism(rng, A, A.dual()));
  if (!is_self_dual(S).self_dual) return kFail;
  return n == 0 ? 0.0 : (S.F + S.F.transpose()).cwiseAbs().maxCoeff();
}

double sa_box_laws(Rng& rng) {
  const bool lvl = coin(rng);
  const SpaceDesc A = smp::space(rng, smp::uniform_int(rng, 0, 4), lvl);
  const SpaceDesc B = smp::space(rng, smp::uniform_int(rng, 0, 4), lvl);
  const SpaceDesc C = smp::space(rng, smp::uniform_int(rng, 0, 4), lvl);
  const SpecialAffinePoint a = smp::point(rng, A), b = smp::point(rng, B), c = smp::point(rng, C);
  const double t = smp::uniform(rng, -3, 3);
  const SpecialAffinePoint ab = box_normal_form(a, b);
  double worst = point_diff(box_normal_form(a.shifted(t), b.shifted(-t)), ab);
  worst = std::max(worst, point_diff(box_swap(ab, A.n), box_normal_form(b, a)));
  const SpecialAffinePoint left = box_normal_form(ab, c), right = box_normal_form(a, box_normal_form(b, c));
  worst = std::max({worst, rel(left.v, right.v), rel(left.r, right.r), rel(ab.r, a.r + b.r)});
  return worst;
}

double sa_box_duality(Rng& rng) {
  const bool lvl = coin(rng);
  const SpaceDesc A = smp::space(rng, smp::uniform_int(rng, 0, 5), lvl);
  const SpaceDesc B = smp::space(rng, smp::uniform_int(rng, 0, 5), lvl);
  const DualPoint phi = smp::dual_point(rng, A), psi = smp::dual_point(rng, B);
  const SpecialAffinePoint a = smp::point(rng, A), b = smp::point(rng, B);
  const SpecialAffinePoint ab = box_normal_form(a, b);
  const double direct = evaluate(phi, a) + evaluate(psi, b);
  const double c = smp::uniform(rng, -3, 3);
  DualPoint phi_c = phi, psi_c = psi;
  phi_c.t += c;
  psi_c.t -= c;
  return std::max(rel(evaluate(box_dual(phi, psi), ab), direct), rel(evaluate(box_dual(phi_c, psi_c), ab), direct));
}

double sa_pairing_nondegenerate(Rng& rng) {
  const int n = smp::uniform_int(rng, 0, 6);
  const PairingMatrices pm = pairing_matrices(smp::space(rng, n, coin(rng)));
  Eigen::FullPivLU<MatrixXd> l(pm.left), r(pm.right);
  return double((n + 1 - l.rank()) + (n + 1 - r.rank()));
}

double sa_prop3_dual_linear(Rng& rng) {
  const SpaceDesc X = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpaceDesc Y = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpecialMorphism Phi = smp::morphism(rng, X, Y);
  const AffineFunction h{smp::vector(rng, Y.n), smp::uniform(rng, -2, 2)};
  const AffineFunction pulled = dual_linear_part(Phi, h);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const VectorXd v = smp::vector(rng, X.n, 2.0);
    worst = std::max(worst, rel(pulled(v), h(Phi.F * v + Phi.f)));
  }
  return worst;
}

double sa_double_dual(Rng& rng) {
  const SpaceDesc A = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpaceDesc B = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpecialAffinePoint a = smp::point(rng, A);
  const DualPoint phi = smp::dual_point(rng, A);
  const DualPoint chi = double_dual_embed(a);
  double worst = rel(evaluate(chi, as_point(phi)), -evaluate(phi, a));
  worst = std::max(worst, point_diff(double_dual_identify(chi), a));

  const SpecialMorphism Phi = smp::morphism(rng, A, B);
  const SpecialMorphism PhiDD = dual_morphism(dual_morphism(Phi));
  const DualPoint psi = smp::dual_point(rng, B);
  const DualPoint image = as_dual(eval_morphism(PhiDD, as_point(chi)));
  return std::max(worst, rel(evaluate(image, as_point(psi)), -evaluate(psi, eval_morphism(Phi, a))));
}

double sa_compose_inverse(Rng& rng) {
  const SpaceDesc X = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpaceDesc Y = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpaceDesc Z = smp::space(rng, smp::uniform_int(rng, 0, 6), coin(rng));
  const SpecialMorphism Phi = smp::morphism(rng, X, Y), Psi = smp::morphism(rng, Y, Z);
  const SpecialAffinePoint a = smp::point(rng, X);
  double worst = point_diff(eval_morphism(compose(Psi, Phi), a), eval_morphism(Psi, eval_morphism(Phi, a)));

  SpecialMorphism G = smp::morphism(rng, X, X);
  G.F = smp::invertible(rng, X.n);
  worst = std::max(worst, point_diff(eval_morphism(compose(inverse(G), G), a), a));
  return worst;
}

double sa_biaffine(Rng& rng) {
  const int n1 = smp::uniform_int(rng, 1, 5), n2 = smp::uniform_int(rng, 1, 5);
  const BiAffineMap F{smp::matrix(rng, n1, n2), smp::vector(rng, n1), smp::vector(rng, n2), smp::uniform(rng, -1, 1)};
  const BiAffineParts parts = biaffine_parts(F);
  const VectorXd a1 = smp::vector(rng, n1, 2), a2 = smp::vector(rng, n2, 2);
  const VectorXd v1 = smp::vector(rng, n1, 2), v2 = smp::vector(rng, n2, 2);
  double worst = rel(four_point_difference(F, a1, a2, v1, v2), parts.bilinear(v1, v2));
  worst = std::max(worst, rel(parts.affine_linear(a1, v2), F(a1, a2 + v2) - F(a1, a2)));
  worst = std::max(worst, rel(parts.linear_affine(v1, a2), F(a1 + v1, a2) - F(a1, a2)));
  return worst;
}

double sa_graph_value(Rng& rng) {
  const SpaceDesc X = smp::space(rng, smp::uniform_int(rng, 0, 6), false);
  const SpaceDesc Y = smp::space(rng, smp::uniform_int(rng, 0, 6), false);
  const SpecialMorphism Psi = smp::morphism(rng, X, Y);
  const SpecialAffinePoint a = smp::point(rng, X);
  const double rho = smp::uniform(rng, -5, 5);
  return rel(graph_value(Psi, a, eval_morphism(Psi, a).shifted(rho)), rho);
}

// ---------------------------------------------------------------- calculus

Gauge random_gauge(Rng& rng, int m, const std::string& tag) { return {smp::field(rng, m), tag}; }

VectorXd sample_x(Rng& rng, int m) {
  thread_local Chart chart;
  chart = Chart::cube(m, 1.0);
  return chart.sample(rng);
}

double calc_field_fd(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 4);
  const ScalarField phi = smp::field(rng, m);
  const VectorXd x = sample_x(rng, m);
  const FieldDerivs d = field_derivs(phi, x);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    VectorXd xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    worst = std::max(worst, rel(d.gradient[i], (phi.value(xp) - phi.value(xm)) / (2 * h)));
    const VectorXd col = (phi.gradient(xp).gradient - phi.gradient(xm).gradient) / (2 * h);
    worst = std::max(worst, rel(MatrixXd(d.hessian.col(i)), MatrixXd(col)));
  }
  return worst;
}

double calc_gauge_functoriality(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 4);
  const Gauge a = random_gauge(rng, m, "a"), b = random_gauge(rng, m, "b"), c = random_gauge(rng, m, "c");
  const VectorXd x = sample_x(rng, m);
  const VectorXd p = smp::vector(rng, m), v = smp::vector(rng, m);

  const PhasePoint P{x, p, "c"};
  const PhasePoint P2 = gauge_change(gauge_change(P, c, a), a, b), P1 = gauge_change(P, c, b);
  double worst = rel(P1.p, P2.p);

  const ContactPoint C{x, p, 0.7, "c"};
  const ContactPoint C2 = gauge_change(gauge_change(C, c, a), a, b), C1 = gauge_change(C, c, b);
  worst = std::max({worst, rel(C1.p, C2.p), rel(C1.s, C2.s)});

  for (const ReducedKind kind : {ReducedKind::Tilde, ReducedKind::Bar}) {
    const ReducedTangent u{x, v, 1.3, kind, "c"};
    worst = std::max(worst, rel(gauge_change(gauge_change(u, c, a), a, b).sdot, gauge_change(u, c, b).sdot));
  }

  AffineOneForm alpha{{}, "c"};
  for (int i = 0; i < m; ++i) alpha.components.push_back(smp::polynomial(rng, m, 2));
  const AffineOneForm A2 = gauge_change(gauge_change(alpha, c, a), a, b), A1 = gauge_change(alpha, c, b);
  worst = std::max(worst, rel(A1.at(x), A2.at(x)));

  if (P1.gauge_tag != "b" || P2.gauge_tag != "b") return kFail;
  return worst;
}

double calc_omega_gauge_invariance(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 4);
  const Gauge a = random_gauge(rng, m, "a"), b = random_gauge(rng, m, "b");
  const PhasePoint P{sample_x(rng, m), smp::vector(rng, m), "a"};
  const PhaseTangent w1{smp::vector(rng, m), smp::vector(rng, m)}, w2{smp::vector(rng, m), smp::vector(rng, m)};
  const PhasePoint Q = gauge_change(P, a, b);
  return rel(omega_eval(P, w1, w2), omega_eval(Q, gauge_change(w1, P, a, b), gauge_change(w2, P, a, b)));
}

double calc_dtheta_omega(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 4);
  const Gauge a = random_gauge(rng, m, "a"), b = random_gauge(rng, m, "b");
  const VectorXd x = sample_x(rng, m), p = smp::vector(rng, m);
  const PhaseTangent w1{smp::vector(rng, m), smp::vector(rng, m)}, w2{smp::vector(rng, m), smp::vector(rng, m)};
  const double h = 1e-5;

  // theta along a constant vector field w, at (x, p) moved by eps * u.
  auto theta_at = [&](bool changed, const PhaseTangent& u, double eps, const PhaseTangent& w) {
    const ContactPoint c{x + eps * u.dx, p + eps * u.dp, 0.0, "a"};
    return theta_eval(changed ? gauge_change(c, a, b) : c, w);
  };
  auto dtheta = [&](bool changed) {
    const double d12 = (theta_at(changed, w1, h, w2) - theta_at(changed, w1, -h, w2)) / (2 * h);
    const double d21 = (theta_at(changed, w2, h, w1) - theta_at(changed, w2, -h, w1)) / (2 * h);
    return d12 - d21;
  };
  const double omega = omega_eval(PhasePoint{x, p, "a"}, w1, w2);
  return std::max(rel(dtheta(false), omega), rel(dtheta(true), omega));
}

double calc_pairing_invariance(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 4);
  const Gauge a = random_gauge(rng, m, "a"), b = random_gauge(rng, m, "b");
  const VectorXd x = sample_x(rng, m), v = smp::vector(rng, m);
  const double sdot = smp::uniform(rng, -2, 2), s = smp::uniform(rng, -2, 2), rho = smp::uniform(rng, -2, 2);

  // A section through the jet: sigma_c = s0 + p.(y - x) + quadratic vanishing at x.
  const VectorXd p = smp::vector(rng, m);
  const double s0 = smp::uniform(rng, -2, 2);
  ScalarField sigma_c = ScalarField::constant(s0);
  for (int i = 0; i < m; ++i) {
    const ScalarField di = ScalarField::variable(i) - ScalarField::constant(x[i]);
    sigma_c = sigma_c + ScalarField::constant(p[i]) * di + ScalarField::constant(smp::uniform(rng, -1, 1)) * di * di;
  }
  const FieldGradient g = sigma_c.gradient(x);

  const PhasePoint P{x, p, "a"};
  const ReducedTangent u{x, v, sdot, ReducedKind::Tilde, "a"};
  const double value = reduced_pairing(P, rho, u);
  double worst = rel(value, sdot - g.gradient.dot(v) + rho);
  worst = std::max(worst, rel(value, reduced_pairing(gauge_change(P, a, b), rho, gauge_change(u, a, b))));

  const Gauge gc{sigma_c, "a"};
  const double bar = contact_pairing(gc, x, bar_from_representative(x, v, sdot, s, "a"));
  const double r = smp::uniform(rng, -3, 3);
  worst = std::max(worst, rel(bar, g.gradient.dot(v) - sdot + g.value - s));
  worst = std::max(worst, rel(bar, contact_pairing(gc, x, bar_from_representative(x, v, sdot - r, s + r, "a"))));
  const ContactPoint c = contact_element(gc, x);
  worst = std::max(worst, rel(bar, contact_pairing(gauge_change(c, a, b),
                                                   gauge_change(bar_from_representative(x, v, sdot, s, "a"), a, b))));
  return worst;
}

double calc_horizontal_lift(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 6);
  const PhasePoint P{smp::vector(rng, m), smp::vector(rng, m, 3), "ref"};
  const VectorXd v = smp::vector(rng, m, 3);
  return std::abs(reduced_pairing(P, 0.0, horizontal_lift(P, v)));
}

double calc_tangent_lifts(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 4);
  const ScalarField sigma = smp::field(rng, m);
  const VectorXd x = sample_x(rng, m), v = smp::vector(rng, m);
  const TangentLifts lifts = section_tangent_lifts(sigma, x, v);
  ScalarField dT;
  for (int i = 0; i < m; ++i) dT = dT + ScalarField::variable(m + i) * sigma.derivative(i);
  const double tilde = dT.value(cat(x, v));
  const ReducedTangent rep = bar_from_representative(x, v, tilde, sigma.value(x));
  return std::max(rel(lifts.tilde, tilde), rel(lifts.bar, rep.sdot));
}

double calc_form_differential(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 4);
  const ScalarField sigma = smp::field(rng, m);
  const VectorXd x = sample_x(rng, m);
  AffineOneForm exact_form{{}, "a"}, alpha{{}, "a"};
  for (int i = 0; i < m; ++i) {
    exact_form.components.push_back(sigma.derivative(i));
    alpha.components.push_back(smp::field(rng, m));
  }
  double worst = rel(form_differential(exact_form, x), MatrixXd::Zero(m, m));
  const Gauge a = random_gauge(rng, m, "a"), b = random_gauge(rng, m, "b");
  worst = std::max(worst, rel(form_differential(gauge_change(alpha, a, b), x), form_differential(alpha, x)));
  return worst;
}

double calc_prop5_box(Rng& rng) {
  const int m1 = smp::uniform_int(rng, 1, 3), m2 = smp::uniform_int(rng, 1, 3);
  const PhasePoint P1{smp::vector(rng, m1), smp::vector(rng, m1), "ref"};
  const PhasePoint P2{smp::vector(rng, m2), smp::vector(rng, m2), "ref"};
  auto tangent = [&](int m) { return PhaseTangent{smp::vector(rng, m), smp::vector(rng, m)}; };
  const PhaseTangent a1 = tangent(m1), b1 = tangent(m1), a2 = tangent(m2), b2 = tangent(m2);
  const double sum = omega_eval(P1, a1, b1) + omega_eval(P2, a2, b2);
  double worst = rel(omega_eval(phase_box(P1, P2), phase_box(a1, a2), phase_box(b1, b2)), sum);
  worst = std::max(worst, rel(omega_eval(phase_bar(P1), phase_bar(a1), phase_bar(b1)), -omega_eval(P1, a1, b1)));
  return worst;
}

double calc_props67_box(Rng& rng) {
  const int m1 = smp::uniform_int(rng, 1, 3), m2 = smp::uniform_int(rng, 1, 3);
  const ScalarField s1 = smp::field(rng, m1), s2 = smp::field(rng, m2);
  const VectorXd x1 = sample_x(rng, m1), x2 = sample_x(rng, m2);
  const VectorXd v1 = smp::vector(rng, m1), v2 = smp::vector(rng, m2);
  const TangentLifts l1 = section_tangent_lifts(s1, x1, v1), l2 = section_tangent_lifts(s2, x2, v2);
  const TangentLifts lb = section_tangent_lifts(section_box(s1, m1, s2), cat(x1, x2), cat(v1, v2));
  double worst = std::max(rel(lb.tilde, l1.tilde + l2.tilde), rel(lb.bar, l1.bar + l2.bar));

  const PhasePoint P1{x1, smp::vector(rng, m1), "ref"}, P2{x2, smp::vector(rng, m2), "ref"};
  const ReducedTangent boxed = tangent_box(horizontal_lift(P1, v1), horizontal_lift(P2, v2));
  const ReducedTangent direct = horizontal_lift(phase_box(P1, P2), cat(v1, v2));
  worst = std::max({worst, rel(boxed.sdot, direct.sdot), rel(boxed.v, direct.v)});

  const ReducedTangent bar1 = bar_from_representative(x1, v1, l1.tilde, s1.value(x1));
  const ReducedTangent bar2 = bar_from_representative(x2, v2, l2.tilde, s2.value(x2));
  worst = std::max(worst, rel(tangent_box(bar1, bar2).sdot, lb.bar));
  return worst;
}

double calc_closed_exact(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 3);
  const ScalarField sigma = smp::field(rng, m);
  AffineOneForm alpha{{}, "ref"};
  for (int i = 0; i < m; ++i) alpha.components.push_back(sigma.derivative(i));
  const VectorXd base = VectorXd::Zero(m), x = sample_x(rng, m);
  const Reconstruction rec = reconstruct_potential(alpha, base, x);
  return std::max(rel(rec.gradient, alpha.at(x)), rel(rec.value, sigma.value(x) - sigma.value(base)));
}

double calc_morse(Rng& rng) {
  // Toy family F(x; u) = x u - u^2 / 2: critical u = x, chi = x.
  const double x = smp::uniform(rng, -2, 2);
  const MorseFamily toy{ScalarField::parse("x0*x1 - x1^2/2"), 1, 1};
  const MorseResult r = morse_reduce(toy, VectorXd::Constant(1, x), {VectorXd::Constant(1, x - 1.3), VectorXd::Constant(1, x + 2.0)});
  if (r.points.size() != 1 || !r.failures.empty()) return kFail;
  double worst = std::max(std::abs(r.points[0].point.p[0] - x), r.points[0].residual);

  // Quadratic family sigma(x) + u.(Bx + c) + u.Qu/2: u* = -Q^-1 (Bx + c), chi = grad sigma + B^T u*.
  const int m = smp::uniform_int(rng, 1, 3), k = smp::uniform_int(rng, 1, 3);
  const ScalarField sigma = smp::field(rng, m);
  const MatrixXd B = smp::matrix(rng, k, m), Q0 = smp::invertible(rng, k);
  const MatrixXd Q = Q0 + Q0.transpose();
  const VectorXd c = smp::vector(rng, k);
  ScalarField F = sigma;
  for (int i = 0; i < k; ++i) {
    ScalarField lin = ScalarField::constant(c[i]);
    for (int j = 0; j < m; ++j) lin = lin + ScalarField::constant(B(i, j)) * ScalarField::variable(j);
    F = F + ScalarField::variable(m + i) * lin;
    for (int j = 0; j < k; ++j) {
      F = F + ScalarField::constant(0.5 * Q(i, j)) * ScalarField::variable(m + i) * ScalarField::variable(m + j);
    }
  }
  const VectorXd xb = sample_x(rng, m);
  const VectorXd ustar = -Q.lu().solve(B * xb + c);
  const MorseResult q = morse_reduce({F, m, k}, xb, {smp::vector(rng, k, 2.0)});
  if (q.points.size() != 1 || !q.failures.empty()) return kFail;
  worst = std::max({worst, rel(q.points[0].u, ustar), q.points[0].residual,
                    rel(q.points[0].point.p, sigma.gradient(xb).gradient + B.transpose() * ustar)});
  return worst;
}

double calc_constraint_membership(Rng& rng) {
  const int m = smp::uniform_int(rng, 2, 4);
  const ScalarField sigma = smp::field(rng, m);
  CoordinateConstraint C;
  const int nfixed = smp::uniform_int(rng, 1, m - 1);
  while (int(C.fixed.size()) < nfixed) C.fixed[smp::uniform_int(rng, 0, m - 1)] = smp::uniform(rng, -0.5, 0.5);
  VectorXd x = sample_x(rng, m);
  for (const auto& [i, c] : C.fixed) x[i] = c;
  VectorXd p = sigma.gradient(x).gradient;
  int free_index = -1;
  for (int i = 0; i < m; ++i) {
    if (C.fixed.count(i)) p[i] = smp::uniform(rng, -3, 3);
    else free_index = i;
  }
  if (!constraint_lagrangian_membership({x, p, "ref"}, C, sigma)) return kFail;
  VectorXd bad_p = p;
  bad_p[free_index] += 1e-3;
  if (constraint_lagrangian_membership({x, bad_p, "ref"}, C, sigma)) return kFail;
  VectorXd bad_x = x;
  bad_x[C.fixed.begin()->first] += 1e-3;
  if (constraint_lagrangian_membership({bad_x, p, "ref"}, C, sigma)) return kFail;
  return 0.0;
}

// ---------------------------------------------------------------- canonical

ContactPointA random_contact(Rng& rng, int m, int n) {
  return {smp::vector(rng, m, 2), smp::vector(rng, n, 2), smp::vector(rng, m, 2), smp::vector(rng, n, 2),
          smp::uniform(rng, -2, 2)};
}

ContactTangentA random_contact_tangent(Rng& rng, int m, int n) {
  return {smp::vector(rng, m), smp::vector(rng, n), smp::vector(rng, m), smp::vector(rng, n), smp::uniform(rng, -1, 1)};
}

double contact_diff(const ContactPointA& a, const ContactPointA& b) {
  return std::max({rel(a.x, b.x), rel(a.y, b.y), rel(a.p, b.p), rel(a.pi, b.pi), rel(a.r, b.r)});
}

double contact_diff(const ContactPointADual& a, const ContactPointADual& b) {
  return std::max({rel(a.x, b.x), rel(a.f, b.f), rel(a.q, b.q), rel(a.chi, b.chi), rel(a.t, b.t)});
}

double can_legendre_roundtrip(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 3), n = smp::uniform_int(rng, 1, 4);
  const ContactPointA c = random_contact(rng, m, n);
  const ContactPointADual d{smp::vector(rng, m, 2), smp::vector(rng, n, 2), smp::vector(rng, m, 2),
                            smp::vector(rng, n, 2), smp::uniform(rng, -2, 2)};
  return std::max(contact_diff(legendre_psi_inverse(legendre_psi(c)), c),
                  contact_diff(legendre_psi(legendre_psi_inverse(d)), d));
}

double can_liouville(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 3), n = smp::uniform_int(rng, 1, 4);
  const ContactPointA c = random_contact(rng, m, n);
  const ContactTangentA w = random_contact_tangent(rng, m, n);
  return std::abs(liouville_defect(c, w)) / (1.0 + std::abs(theta_A(c, w)));
}

double can_symplectic(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 3), n = smp::uniform_int(rng, 1, 4);
  const ContactPointA c = random_contact(rng, m, n);
  const ContactTangentA w1 = random_contact_tangent(rng, m, n), w2 = random_contact_tangent(rng, m, n);
  const ContactTangentADual d1 = legendre_psi_tangent(c, w1), d2 = legendre_psi_tangent(c, w2);
  double worst = rel(omega_A(w1, w2), omega_ADual(d1, d2));
  worst = std::max({worst, graph_equations_residual(c, legendre_psi(c)), generating_residual(c)});

  // The differential against central differences (exact for this quadratic map).
  auto moved = [&](double e) {
    ContactPointA q = c;
    q.x += e * w1.dx; q.y += e * w1.dy; q.p += e * w1.dp; q.pi += e * w1.dpi; q.r += e * w1.dr;
    return legendre_psi(q);
  };
  const ContactPointADual plus = moved(1.0), minus = moved(-1.0);
  worst = std::max({worst, rel(VectorXd((plus.f - minus.f) / 2), d1.df), rel(VectorXd((plus.chi - minus.chi) / 2), d1.dchi),
                    rel((plus.t - minus.t) / 2, d1.dt)});
  return worst;
}

double can_frame_independence(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 3), n = smp::uniform_int(rng, 1, 4);
  const SpaceDesc A{n, "A", false};
  SpecialMorphism G = smp::morphism(rng, A, A);
  G.F = smp::invertible(rng, n);
  const SpecialMorphism H = dual_morphism(inverse(G));
  const ContactPointA c = random_contact(rng, m, n);
  return contact_diff(legendre_psi(contact_lift(G, c)), contact_lift(H, legendre_psi(c)));
}

double can_projection(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 3), n = smp::uniform_int(rng, 1, 4);
  const ContactPointA c = random_contact(rng, m, n);
  const SpecialAffinePoint b = smp::point(rng, SpaceDesc{n, "A", false});
  const double via_dual = pairing_delta(projection_to_dual(c), b);
  const double via_bar = contact_pairing(ContactPoint{c.y, c.pi, c.r, "ref"}, chi_bar(c.y, b));
  return rel(via_dual, via_bar);
}

TTR random_ttr(Rng& rng) {
  return {smp::uniform(rng, -5, 5), smp::uniform(rng, -5, 5), smp::uniform(rng, -5, 5), smp::uniform(rng, -5, 5)};
}

double can_kappa_homomorphisms(Rng& rng) {
  const TTR u = random_ttr(rng);
  const TTR k = kappa(u);
  const TTR kk = kappa(k);
  return std::abs(chi1(k) - chi1(u)) + std::abs(chi2(k) - chi3(u)) + std::abs(kk.r - u.r) + std::abs(kk.rdot - u.rdot) +
         std::abs(kk.rp - u.rp) + std::abs(kk.rdotp - u.rdotp);
}

double iterated_diff(const IteratedTangent& a, const IteratedTangent& b) {
  if (a.kind != b.kind) return kFail;
  return std::max({exact(a.x, b.x), exact(a.xdot, b.xdot), exact(a.xp, b.xp), exact(a.xdotp, b.xdotp),
                   std::abs(a.rho - b.rho)});
}

double can_kappa_diagrams(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 4);
  const FullIteratedTangent u{smp::vector(rng, m, 3), smp::vector(rng, m, 3), smp::vector(rng, m, 3),
                              smp::vector(rng, m, 3), random_ttr(rng)};
  const FullIteratedTangent ku = kappa(u);
  const IteratedTangent tt = reduce(u, IteratedKind::TildeTilde), bt = reduce(u, IteratedKind::BarTilde);
  double worst = iterated_diff(kappa_reduced(tt, ReducedKind::Tilde), reduce(ku, IteratedKind::TildeTilde));
  worst = std::max(worst, iterated_diff(kappa_reduced(kappa_reduced(tt, ReducedKind::Tilde), ReducedKind::Tilde), tt));
  const IteratedTangent kb = kappa_reduced(bt, ReducedKind::Bar);
  worst = std::max(worst, iterated_diff(kb, reduce(ku, IteratedKind::TildeBar)));
  worst = std::max(worst, iterated_diff(kappa_reduced_inverse(kb), bt));
  // Base projections: (x, x') before the flip is (x, xdot) after it.
  worst = std::max({worst, exact(bt.xp, kb.xdot), exact(bt.xdot, kb.xp), exact(bt.x, kb.x)});
  return worst;
}

TangentPhasePoint random_tangent_phase(Rng& rng, int m, const std::string& tag) {
  return {sample_x(rng, m), smp::vector(rng, m), smp::vector(rng, m), smp::vector(rng, m), tag};
}

double can_alpha_gauge(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 4);
  const Gauge a = random_gauge(rng, m, "a"), b = random_gauge(rng, m, "b");
  const TangentPhasePoint w = random_tangent_phase(rng, m, "a");
  const ReducedPhasePoint one = alpha_Z(gauge_change(w, a, b));
  const ReducedPhasePoint two = gauge_change(alpha_Z(w), a, b);
  if (one.gauge_tag != two.gauge_tag) return kFail;
  return std::max(rel(one.a, two.a), rel(one.b, two.b));
}

AffineOneForm random_form(Rng& rng, int m) {
  AffineOneForm phi{{}, "ref"};
  for (int i = 0; i < m; ++i) phi.components.push_back(smp::field(rng, m));
  return phi;
}

double can_complete_lift(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 3);
  const AffineOneForm phi = random_form(rng, m);
  const VectorXd x = sample_x(rng, m), xdot = smp::vector(rng, m);
  MatrixXd J(m, m);  // J(j, i) = d_i phi_j
  for (int j = 0; j < m; ++j) J.row(j) = phi.components[std::size_t(j)].gradient(x).gradient.transpose();
  const ReducedPhasePoint image = alpha_Z({x, phi.at(x), xdot, J * xdot, "ref"});
  return rel(complete_lift_form(phi).at(cat(x, xdot)), cat(image.a, image.b));
}

double can_eq96(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 3);
  const AffineOneForm phi = random_form(rng, m);
  const VectorXd x = sample_x(rng, m), xdot = smp::vector(rng, m);
  const AffineOneForm lift = complete_lift_form(phi);
  const VectorXd z = cat(x, xdot);
  const MatrixXd dT = tangent_lift_two_form(phi, x, xdot);

  const double h = 1e-5;
  MatrixXd J(2 * m, 2 * m);  // J(b, a) = d_a lift_b, central differences
  for (int a = 0; a < 2 * m; ++a) {
    VectorXd zp = z, zm = z;
    zp[a] += h;
    zm[a] -= h;
    J.col(a) = (lift.at(zp) - lift.at(zm)) / (2 * h);
  }
  const MatrixXd fd = J.transpose() - J;
  return std::max(rel(form_differential(lift, z), dT), rel(fd, dT));
}

double can_prop8(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 3);
  const TangentPhasePoint w = random_tangent_phase(rng, m, "ref");
  const AffineOneForm lifted = complete_lift_form(liouville_form(m));
  VectorXd z(4 * m);
  z << w.x, w.p, w.xdot, w.pdot;
  double worst = rel(lifted.at(z), alpha_theta_pullback(w));
  worst = std::max(worst, rel(form_differential(lifted, z), alpha_omega_pullback(m)));
  worst = std::max(worst, rel(tangent_lift_two_form(liouville_form(m), cat(w.x, w.p), cat(w.xdot, w.pdot)),
                              alpha_omega_pullback(m)));
  return worst;
}

double can_tangent_pairing(Rng& rng) {
  const SpaceDesc A = smp::space(rng, smp::uniform_int(rng, 0, 5), coin(rng));
  const SpaceDesc B = smp::space(rng, smp::uniform_int(rng, 0, 5), coin(rng));
  const SpecialMorphism Phi = smp::morphism(rng, A, B);
  const SpecialMorphism D = dual_morphism(Phi);
  const SpecialAffinePoint a = smp::point(rng, A);
  const DualPoint psi = smp::dual_point(rng, B);
  const AffineTangent da{smp::vector(rng, A.n), smp::uniform(rng, -1, 1)};
  const AffineTangent dpsi{smp::vector(rng, B.n), smp::uniform(rng, -1, 1)};

  const double lhs = tangent_pairing(psi, dpsi, eval_morphism(Phi, a), tangent_map(Phi, da));
  const DualPoint pulled = as_dual(eval_morphism(D, as_point(psi)));
  const double rhs = tangent_pairing(pulled, tangent_map(D, dpsi), a, da);

  // Derivative of the pairing along the line, exact for central differences.
  const SpecialAffinePoint b = eval_morphism(Phi, a);
  const AffineTangent db = tangent_map(Phi, da);
  auto delta_at = [&](double e) {
    const DualPoint q{psi.space, psi.f + e * dpsi.dv, psi.t + e * dpsi.dr};
    return pairing_delta(q, SpecialAffinePoint{b.space, b.v + e * db.dv, b.r + e * db.dr});
  };
  const double fd = (delta_at(1.0) - delta_at(-1.0)) / 2.0;
  return std::max(rel(lhs, rhs), rel(lhs, fd));
}

// ---------------------------------------------------------------- dynamics

Scenario random_scenario(Rng& rng) { return smp::scenario(rng, smp::uniform_int(rng, 2, 4), coin(rng)); }

double dyn_charge_action(Rng& rng) {
  const int m = smp::uniform_int(rng, 1, 4);
  const ScalarField sigma = smp::field(rng, m);
  const double e = smp::uniform(rng, -3, 3);
  const auto x1 = charge_action(sigma, m, e);
  const auto xm1 = charge_action(sigma, m, -1.0);
  if (!x1 || !xm1) return kFail;
  return std::abs(*x1 - e) + std::abs(*xm1 + 1.0);
}

double dyn_ke_membership(Rng& rng) {
  const Scenario s = random_scenario(rng);
  IntegrateOptions opt;
  opt.diagnostics = false;
  const Trajectory traj = integrate(s, 20, 1e-2, opt);
  double worst = 0.0;
  for (const Sample& smp_ : traj.samples) {
    const VectorXd lifted = ke_lift(smp_.x, smp_.p, s.params.charge);
    worst = std::max({worst, std::abs(lifted[s.dim] - s.params.charge), exact(lifted.head(s.dim), smp_.p)});
  }
  return worst;
}

double dyn_legendre_inversion(Rng& rng) {
  const Scenario s = random_scenario(rng);
  const VectorXd x = smp::vector(rng, s.dim, 0.5);
  const VectorXd v = smp::timelike(rng, s.metric, x) * smp::uniform(rng, 0.5, 2.0);
  const VectorXd p = legendre_momentum(s, x, v);
  const MatrixXd G = s.metric.at(x);
  VectorXd A(s.dim);
  for (int i = 0; i < s.dim; ++i) A[i] = s.potential[std::size_t(i)].value(x);
  const VectorXd Ae = -s.params.charge * A;
  // mass v = sqrt(g(v, v)) g^-1 (p - A_e)
  return rel(VectorXd(s.params.mass * v), VectorXd(std::sqrt(v.dot(G * v)) * G.lu().solve(p - Ae)));
}

double dyn_el_residual(Rng& rng) {
  const Scenario s = random_scenario(rng);
  const ParticleModel model(s);
  const VectorXd x = smp::vector(rng, s.dim, 0.5);
  const VectorXd v = smp::timelike(rng, s.metric, x);
  const VectorXd p = legendre_momentum(s, x, v);
  const VectorXd pdot = model.momentum_rate(x, v, model.acceleration(x, v));
  const VectorXd r = dynamics_residual(model, x, p, v, pdot);
  double worst = r.cwiseAbs().maxCoeff() / (1.0 + p.cwiseAbs().maxCoeff() + pdot.cwiseAbs().maxCoeff());
  // Stationarity of the Hamiltonian family at the Legendre image.
  const MorseFamily fam = hamiltonian_family(s);
  VectorXd z(3 * s.dim);
  z << x, p, v;
  const VectorXd g = fam.F.gradient(z).gradient.tail(s.dim);
  return std::max(worst, g.cwiseAbs().maxCoeff() / (1.0 + p.cwiseAbs().maxCoeff()));
}

double dyn_morse_legendre(Rng& rng) {
  const Scenario s = random_scenario(rng);
  const VectorXd x = smp::vector(rng, s.dim, 0.5);
  const VectorXd v = smp::timelike(rng, s.metric, x);
  const VectorXd p = legendre_momentum(s, x, v);
  const VectorXd seed = v * smp::uniform(rng, 0.7, 1.5) + smp::vector(rng, s.dim, 0.05);
  const MorseResult r = morse_reduce(hamiltonian_family(s), cat(x, p), {seed});
  if (r.points.empty()) return kFail;
  double worst = 0.0;
  for (const CriticalPoint& c : r.points) {
    worst = std::max({worst, rel(legendre_momentum(s, x, c.u), p), c.residual});
  }
  return worst;
}

double dyn_gauge_invariance(Rng& rng) {
  const Scenario s = random_scenario(rng);
  const ScalarField lambda = smp::polynomial(rng, s.dim, 3, 0.5);
  const Scenario t = gauge_transform_scenario(s, lambda);
  IntegrateOptions opt;
  opt.diagnostics = false;
  const Trajectory a = integrate(s, 40, 1e-2, opt), b = integrate(t, 40, 1e-2, opt);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.samples.size(); ++k) {
    const Sample &sa = a.samples[k], &sb = b.samples[k];
    const VectorXd shift = -s.params.charge * lambda.gradient(sa.x).gradient;
    worst = std::max({worst, rel(sa.x, sb.x), rel(sa.v, sb.v), rel(VectorXd(sb.p - sa.p), shift)});
  }
  // D_e membership residual at the last state, in both gauges.
  const Sample &la = a.samples.back(), &lb = b.samples.back();
  const ParticleModel ma(s), mb(t);
  const VectorXd ra = dynamics_residual(ma, la.x, la.p, la.v, ma.momentum_rate(la.x, la.v, ma.acceleration(la.x, la.v)));
  const VectorXd rb = dynamics_residual(mb, lb.x, lb.p, lb.v, mb.momentum_rate(lb.x, lb.v, mb.acceleration(lb.x, lb.v)));
  return std::max(worst, rel(ra, rb));
}

double dyn_shell_conservation(Rng& rng) {
  const Scenario s = cyclotron_scenario(smp::uniform(rng, 0.5, 2.0), smp::uniform(rng, 0.5, 1.5) * (coin(rng) ? 1 : -1),
                                        smp::uniform(rng, 0.5, 2.0), smp::uniform(rng, 0.1, 1.0), smp::uniform(rng, -0.5, 0.5));
  IntegrateOptions opt;
  opt.diagnostics = false;
  return integrate(s, 1000, 1e-3, opt).max_shell_drift;
}

double dyn_free_particle(Rng& rng) {
  const int m = smp::uniform_int(rng, 2, 4);
  Scenario s;
  s.dim = m;
  s.metric = Metric::minkowski(m);
  s.potential.assign(std::size_t(m), ScalarField());
  s.params = {smp::uniform(rng, 0.5, 2), 0.0};
  s.x0 = smp::vector(rng, m);
  s.v0 = smp::timelike(rng, s.metric, s.x0);
  const double h = smp::uniform(rng, 1e-3, 1e-1);
  IntegrateOptions opt;
  opt.diagnostics = false;
  const Trajectory traj = integrate(s, 100, h, opt);
  double worst = 0.0;
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    const Sample& smp_ = traj.samples[k];
    const double err = (smp_.x - (s.x0 + smp_.tau * s.v0)).cwiseAbs().maxCoeff();
    worst = std::max(worst, err / double(k));
  }
  return worst;
}

}  // namespace

const std::vector<Invariant>& invariant_registry() {
  static const std::vector<Invariant> registry = {
      {"special_affine", "dual_involution", 1e-12, sa_dual_involution},
      {"special_affine", "dual_defining_property", 1e-12, sa_dual_defining_property},
      {"special_affine", "self_dual_lift", 1e-12, sa_self_dual_lift},
      {"special_affine", "self_dual_uniqueness", 0.0, sa_self_dual_uniqueness},
      {"special_affine", "self_dual_skew", 1e-12, sa_self_dual_skew},
      {"special_affine", "box_laws", 1e-12, sa_box_laws},
      {"special_affine", "box_duality", 1e-12, sa_box_duality},
      {"special_affine", "pairing_nondegenerate", 0.0, sa_pairing_nondegenerate},
      {"special_affine", "dual_linear_part", 1e-12, sa_prop3_dual_linear},
      {"special_affine", "double_dual", 1e-12, sa_double_dual},
      {"special_affine", "compose_inverse", 1e-12, sa_compose_inverse},
      {"special_affine", "biaffine_parts", 1e-12, sa_biaffine},
      {"special_affine", "graph_value", 1e-12, sa_graph_value},
      {"calculus", "field_derivs_fd", 1e-6, calc_field_fd},
      {"calculus", "gauge_functoriality", 1e-12, calc_gauge_functoriality},
      {"calculus", "omega_gauge_invariance", 1e-9, calc_omega_gauge_invariance},
      {"calculus", "dtheta_omega", 1e-6, calc_dtheta_omega},
      {"calculus", "pairing_invariance", 1e-12, calc_pairing_invariance},
      {"calculus", "horizontal_lift", 1e-12, calc_horizontal_lift},
      {"calculus", "tangent_lifts", 1e-12, calc_tangent_lifts},
      {"calculus", "form_differential", 1e-12, calc_form_differential},
      {"calculus", "box_omega", 1e-12, calc_prop5_box},
      {"calculus", "box_tangents", 1e-12, calc_props67_box},
      {"calculus", "closed_exact", 1e-8, calc_closed_exact},
      {"calculus", "morse_reduce", 1e-10, calc_morse},
      {"calculus", "constraint_membership", 0.0, calc_constraint_membership},
      {"canonical", "legendre_roundtrip", 1e-12, can_legendre_roundtrip},
      {"canonical", "liouville", 1e-12, can_liouville},
      {"canonical", "symplectic_graph", 1e-12, can_symplectic},
      {"canonical", "frame_independence", 1e-12, can_frame_independence},
      {"canonical", "projection_to_dual", 1e-12, can_projection},
      {"canonical", "kappa_homomorphisms", 0.0, can_kappa_homomorphisms},
      {"canonical", "kappa_diagrams", 0.0, can_kappa_diagrams},
      {"canonical", "alpha_gauge", 1e-12, can_alpha_gauge},
      {"canonical", "complete_lift", 1e-12, can_complete_lift},
      {"canonical", "tangent_lift_two_form", 1e-6, can_eq96},
      {"canonical", "alpha_pullbacks", 1e-9, can_prop8},
      {"canonical", "tangent_pairing", 1e-12, can_tangent_pairing},
      {"dynamics", "charge_action", 0.0, dyn_charge_action},
      {"dynamics", "ke_membership", 0.0, dyn_ke_membership},
      {"dynamics", "legendre_inversion", 1e-12, dyn_legendre_inversion},
      {"dynamics", "el_residual", 1e-10, dyn_el_residual},
      {"dynamics", "morse_legendre", 1e-10, dyn_morse_legendre},
      {"dynamics", "gauge_invariance", 1e-8, dyn_gauge_invariance},
      {"dynamics", "shell_conservation", 1e-8, dyn_shell_conservation},
      {"dynamics", "free_particle", 1e-12, dyn_free_particle},
  };
  return registry;
}

}  // namespace affmech
