#include "affmech/canonical_iso.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace affmech {
namespace {

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

void check_point(const ContactPointA& c) {
  if (c.p.size() != c.x.size() || c.pi.size() != c.y.size()) throw DimensionError("contact point blocks do not match");
}

void check_point(const ContactPointADual& d) {
  if (d.q.size() != d.x.size() || d.chi.size() != d.f.size()) throw DimensionError("dual contact point blocks do not match");
}

void check_same_shape(const IteratedTangent& u) {
  const auto m = u.x.size();
  if (u.xdot.size() != m || u.xp.size() != m || u.xdotp.size() != m) throw DimensionError("iterated tangent blocks differ");
}

Eigen::MatrixXd inverse_transpose(const Eigen::MatrixXd& F) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(F);
  if (F.rows() > 0 && !lu.isInvertible()) throw Error("contact lift needs an invertible linear part");
  return F.rows() > 0 ? Eigen::MatrixXd(lu.inverse().transpose()) : Eigen::MatrixXd(0, 0);
}

}  // namespace

ContactPointADual legendre_psi(const ContactPointA& c) {
  check_point(c);
  return {c.x, c.pi, c.p, -c.y, c.r - c.pi.dot(c.y)};
}

ContactPointA legendre_psi_inverse(const ContactPointADual& d) {
  check_point(d);
  return {d.x, -d.chi, d.q, d.f, d.t - d.f.dot(d.chi)};
}

ContactTangentADual legendre_psi_tangent(const ContactPointA& c, const ContactTangentA& w) {
  return {w.dx, w.dpi, w.dp, -w.dy, w.dr - w.dpi.dot(c.y) - c.pi.dot(w.dy)};
}

double theta_A(const ContactPointA& c, const ContactTangentA& w) { return c.p.dot(w.dx) + c.pi.dot(w.dy); }

double theta_ADual(const ContactPointADual& d, const ContactTangentADual& w) {
  return d.q.dot(w.dx) + d.chi.dot(w.df);
}

double liouville_defect(const ContactPointA& c, const ContactTangentA& w) {
  const ContactPointADual d = legendre_psi(c);
  const ContactTangentADual dw = legendre_psi_tangent(c, w);
  return theta_A(c, w) - theta_ADual(d, dw) - (w.dr - dw.dt);
}

double omega_A(const ContactTangentA& w1, const ContactTangentA& w2) {
  return w1.dp.dot(w2.dx) - w2.dp.dot(w1.dx) + w1.dpi.dot(w2.dy) - w2.dpi.dot(w1.dy);
}

double omega_ADual(const ContactTangentADual& w1, const ContactTangentADual& w2) {
  return w1.dq.dot(w2.dx) - w2.dq.dot(w1.dx) + w1.dchi.dot(w2.df) - w2.dchi.dot(w1.df);
}

double graph_equations_residual(const ContactPointA& c, const ContactPointADual& d) {
  return std::max({max_abs(c.y + d.chi), max_abs(c.p - d.q), max_abs(c.pi - d.f), max_abs(c.x - d.x)});
}

double generating_residual(const ContactPointA& c) {
  check_point(c);
  const int m = int(c.x.size()), n = int(c.y.size());
  // delta(x, y, f) = -<f, y>, variables laid out as x, y, f.
  ScalarField delta;
  for (int a = 0; a < n; ++a) delta = delta - ScalarField::variable(m + n + a) * ScalarField::variable(m + a);
  const ContactPointADual d = legendre_psi(c);
  Eigen::VectorXd z(m + 2 * n);
  z << c.x, c.y, d.f;
  const Eigen::VectorXd g = delta.gradient(z).gradient;
  return std::max({max_abs(d.q - c.p - g.head(m)), max_abs(-c.pi - g.segment(m, n)), max_abs(d.chi - g.tail(n))});
}

DualPoint projection_to_dual(const ContactPointA& c) {
  const ContactPointADual d = legendre_psi(c);
  return {SpaceDesc{int(c.y.size()), "A", false}, d.f, d.t};
}

ReducedTangent chi_bar(const Eigen::VectorXd& y, const SpecialAffinePoint& b) {
  if (b.v.size() != y.size()) throw DimensionError("chi_bar: point and base differ in dimension");
  return {y, b.v - y, b.r, ReducedKind::Bar, "ref"};
}

ContactPointA contact_lift(const SpecialMorphism& G, const ContactPointA& c) {
  check_point(c);
  if (G.F.cols() != c.y.size() || G.F.rows() != c.y.size()) throw DimensionError("contact_lift: morphism size");
  return {c.x, G.F * c.y + G.f, c.p, inverse_transpose(G.F) * (c.pi + G.g), c.r + G.g.dot(c.y) + G.t};
}

ContactPointADual contact_lift(const SpecialMorphism& H, const ContactPointADual& d) {
  check_point(d);
  if (H.F.cols() != d.f.size() || H.F.rows() != d.f.size()) throw DimensionError("contact_lift: morphism size");
  return {d.x, H.F * d.f + H.f, d.q, inverse_transpose(H.F) * (d.chi + H.g), d.t + H.g.dot(d.f) + H.t};
}

TTR kappa(const TTR& u) { return {u.r, u.rp, u.rdot, u.rdotp}; }

FullIteratedTangent kappa(const FullIteratedTangent& u) { return {u.x, u.xp, u.xdot, u.xdotp, kappa(u.r)}; }

IteratedTangent reduce(const FullIteratedTangent& u, IteratedKind kind) {
  double rho = 0.0;
  switch (kind) {
    case IteratedKind::TildeTilde: rho = chi1(u.r); break;
    case IteratedKind::TildeBar: rho = chi2(u.r); break;
    case IteratedKind::BarTilde: rho = chi3(u.r); break;
  }
  return {u.x, u.xdot, u.xp, u.xdotp, rho, kind};
}

IteratedTangent kappa_reduced(const IteratedTangent& u, ReducedKind kind) {
  check_same_shape(u);
  if (kind == ReducedKind::Tilde) {
    if (u.kind != IteratedKind::TildeTilde) throw DimensionError("tilde flip expects a tilde-tilde tangent");
    return {u.x, u.xp, u.xdot, u.xdotp, u.rho, IteratedKind::TildeTilde};
  }
  if (u.kind != IteratedKind::BarTilde) throw DimensionError("bar flip expects a bar-tilde tangent");
  return {u.x, u.xp, u.xdot, u.xdotp, u.rho, IteratedKind::TildeBar};
}

IteratedTangent kappa_reduced_inverse(const IteratedTangent& u) {
  check_same_shape(u);
  if (u.kind != IteratedKind::TildeBar) throw DimensionError("inverse bar flip expects a tilde-bar tangent");
  return {u.x, u.xp, u.xdot, u.xdotp, u.rho, IteratedKind::BarTilde};
}

ReducedPhasePoint alpha_Z(const TangentPhasePoint& w) {
  const auto m = w.x.size();
  if (w.p.size() != m || w.xdot.size() != m || w.pdot.size() != m) throw DimensionError("alpha_Z: block sizes differ");
  return {w.x, w.xdot, w.pdot, w.p, w.gauge_tag};
}

TangentPhasePoint gauge_change(const TangentPhasePoint& w, const Gauge& from, const Gauge& to) {
  if (w.gauge_tag != from.tag) throw GaugeMismatch("tangent phase point is not in gauge '" + from.tag + "'");
  const FieldDerivs l = (from.sigma - to.sigma).derivs(w.x);
  return {w.x, w.p + l.gradient, w.xdot, w.pdot + l.hessian * w.xdot, to.tag};
}

ReducedPhasePoint gauge_change(const ReducedPhasePoint& u, const Gauge& from, const Gauge& to) {
  if (u.gauge_tag != from.tag) throw GaugeMismatch("reduced phase point is not in gauge '" + from.tag + "'");
  const int m = int(u.x.size());
  const ScalarField dT = tangent_lift_function(from.sigma - to.sigma, m);
  Eigen::VectorXd z(2 * m);
  z << u.x, u.xdot;
  const Eigen::VectorXd g = dT.gradient(z).gradient;
  return {u.x, u.xdot, u.a + g.head(m), u.b + g.tail(m), to.tag};
}

ScalarField tangent_lift_function(const ScalarField& sigma, int m) {
  ScalarField out;
  for (int i = 0; i < m; ++i) out = out + ScalarField::variable(m + i) * sigma.derivative(i);
  return out;
}

AffineOneForm complete_lift_form(const AffineOneForm& phi) {
  const int m = int(phi.components.size());
  AffineOneForm out{std::vector<ScalarField>(std::size_t(2 * m)), phi.gauge_tag};
  for (int j = 0; j < m; ++j) {
    out.components[std::size_t(j)] = tangent_lift_function(phi.components[std::size_t(j)], m);
    out.components[std::size_t(m + j)] = phi.components[std::size_t(j)];
  }
  return out;
}

Eigen::MatrixXd tangent_lift_two_form(const AffineOneForm& phi, const Eigen::VectorXd& x, const Eigen::VectorXd& xdot) {
  const int m = int(phi.components.size());
  if (x.size() != m || xdot.size() != m) throw DimensionError("tangent_lift_two_form: dimension mismatch");
  std::vector<FieldDerivs> d;
  d.reserve(std::size_t(m));
  for (const auto& c : phi.components) d.push_back(c.derivs(x));
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const auto& di = d[std::size_t(i)];
      const auto& dj = d[std::size_t(j)];
      const double w = dj.gradient[i] - di.gradient[j];
      double lifted = 0.0;
      for (int k = 0; k < m; ++k) lifted += xdot[k] * (dj.hessian(k, i) - di.hessian(k, j));
      M(i, j) = lifted;
      M(m + i, j) = w;
      M(j, m + i) = -w;
    }
  }
  return M;
}

AffineOneForm liouville_form(int m) {
  AffineOneForm theta{std::vector<ScalarField>(std::size_t(2 * m)), "ref"};
  for (int j = 0; j < m; ++j) theta.components[std::size_t(j)] = ScalarField::variable(m + j);
  return theta;
}

Eigen::VectorXd alpha_theta_pullback(const TangentPhasePoint& w) {
  const auto m = w.x.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(4 * m);
  out.segment(0, m) = w.pdot;
  out.segment(2 * m, m) = w.p;
  return out;
}

Eigen::MatrixXd alpha_omega_pullback(int m) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(4 * m, 4 * m);
  for (int i = 0; i < m; ++i) {
    D(3 * m + i, i) = 1.0;
    D(i, 3 * m + i) = -1.0;
    D(m + i, 2 * m + i) = 1.0;
    D(2 * m + i, m + i) = -1.0;
  }
  return D;
}

double tangent_pairing(const DualPoint& phi, const AffineTangent& dphi, const SpecialAffinePoint& a,
                       const AffineTangent& da) {
  if (!(phi.space == a.space)) throw DimensionError("tangent_pairing: spaces differ");
  const double eps = a.space.epsilon();
  return dphi.dr - da.dr + eps * (dphi.dv.dot(a.v) + phi.f.dot(da.dv));
}

AffineTangent tangent_map(const SpecialMorphism& Phi, const AffineTangent& w) {
  if (w.dv.size() != Phi.F.cols()) throw DimensionError("tangent_map: tangent does not match the domain");
  return {Phi.F * w.dv, Phi.g.dot(w.dv) + w.dr};
}

}  // namespace affmech
