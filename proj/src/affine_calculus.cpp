#include "affmech/affine_calculus.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

namespace affmech {
namespace {

void require_tag(const std::string& got, const Gauge& expected) {
  if (got != expected.tag) throw GaugeMismatch("object in gauge '" + got + "' handed to '" + expected.tag + "'");
}

void require_same_base(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double tol) {
  if (a.size() != b.size()) throw DimensionError("base points of different dimension");
  if (a.size() > 0 && (a - b).cwiseAbs().maxCoeff() > tol) throw DimensionError("objects over different base points");
}

ScalarField difference(const Gauge& from, const Gauge& to) { return from.sigma - to.sigma; }

FieldGradient grad_at(const ScalarField& f, const Eigen::VectorXd& x) { return f.gradient(x); }

double inf_norm(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace

Chart Chart::cube(int m, double half_width) {
  return {m, Eigen::VectorXd::Constant(m, -half_width), Eigen::VectorXd::Constant(m, half_width)};
}

bool Chart::contains(const Eigen::VectorXd& x) const {
  if (x.size() != m) return false;
  return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
}

Eigen::VectorXd Chart::sample(std::mt19937_64& rng, double margin) const {
  Eigen::VectorXd x(m);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < m; ++i) {
    const double w = upper[i] - lower[i];
    x[i] = lower[i] + w * (margin + (1.0 - 2.0 * margin) * unit(rng));
  }
  return x;
}

Eigen::VectorXd AffineOneForm::at(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) out[Eigen::Index(i)] = components[i].value(x);
  return out;
}

FieldDerivs field_derivs(const ScalarField& phi, const Eigen::VectorXd& x) { return phi.derivs(x); }

PhasePoint phase_differential(const Gauge& sigma, const Eigen::VectorXd& x) {
  return {x, grad_at(sigma.sigma, x).gradient, sigma.tag};
}

ContactPoint contact_element(const Gauge& sigma, const Eigen::VectorXd& x) {
  const FieldGradient g = grad_at(sigma.sigma, x);
  return {x, g.gradient, g.value, sigma.tag};
}

PhasePoint gauge_change(const PhasePoint& P, const Gauge& from, const Gauge& to) {
  require_tag(P.gauge_tag, from);
  return {P.x, P.p + grad_at(difference(from, to), P.x).gradient, to.tag};
}

ContactPoint gauge_change(const ContactPoint& c, const Gauge& from, const Gauge& to) {
  require_tag(c.gauge_tag, from);
  const FieldGradient l = grad_at(difference(from, to), c.x);
  return {c.x, c.p + l.gradient, c.s + l.value, to.tag};
}

ReducedTangent gauge_change(const ReducedTangent& u, const Gauge& from, const Gauge& to) {
  require_tag(u.gauge_tag, from);
  const FieldGradient l = grad_at(difference(from, to), u.x);
  ReducedTangent out = u;
  out.sdot += l.gradient.dot(u.v);
  if (u.kind == ReducedKind::Bar) out.sdot += l.value;
  out.gauge_tag = to.tag;
  return out;
}

AffineOneForm gauge_change(const AffineOneForm& alpha, const Gauge& from, const Gauge& to) {
  require_tag(alpha.gauge_tag, from);
  const ScalarField lambda = difference(from, to);
  AffineOneForm out{alpha.components, to.tag};
  for (std::size_t i = 0; i < out.components.size(); ++i) {
    out.components[i] = out.components[i] + lambda.derivative(int(i));
  }
  return out;
}

PhaseTangent gauge_change(const PhaseTangent& w, const PhasePoint& P, const Gauge& from, const Gauge& to) {
  require_tag(P.gauge_tag, from);
  const FieldDerivs l = difference(from, to).derivs(P.x);
  return {w.dx, w.dp + l.hessian * w.dx};
}

double omega_eval(const PhasePoint& P, const PhaseTangent& w1, const PhaseTangent& w2) {
  const auto m = P.x.size();
  if (w1.dx.size() != m || w1.dp.size() != m || w2.dx.size() != m || w2.dp.size() != m) {
    throw DimensionError("omega_eval: tangent vectors do not match the phase point");
  }
  return w1.dp.dot(w2.dx) - w2.dp.dot(w1.dx);
}

double theta_eval(const ContactPoint& c, const PhaseTangent& w) {
  if (w.dx.size() != c.p.size()) throw DimensionError("theta_eval: tangent does not match the point");
  return c.p.dot(w.dx);
}

double reduced_pairing(const PhasePoint& P, double rho, const ReducedTangent& u, double base_tol) {
  if (u.kind != ReducedKind::Tilde) throw DimensionError("reduced_pairing expects a tilde reduced tangent");
  if (P.gauge_tag != u.gauge_tag) throw GaugeMismatch("reduced_pairing across gauges");
  require_same_base(P.x, u.x, base_tol);
  return u.sdot - P.p.dot(u.v) + rho;
}

double contact_pairing(const ContactPoint& c, const ReducedTangent& u, double base_tol) {
  if (u.kind != ReducedKind::Bar) throw DimensionError("contact_pairing expects a bar reduced tangent");
  if (c.gauge_tag != u.gauge_tag) throw GaugeMismatch("contact_pairing across gauges");
  require_same_base(c.x, u.x, base_tol);
  return c.p.dot(u.v) - u.sdot + c.s;
}

double contact_pairing(const Gauge& sigma, const Eigen::VectorXd& x, const ReducedTangent& u) {
  return contact_pairing(contact_element(sigma, x), u);
}

ReducedTangent bar_from_representative(const Eigen::VectorXd& x, const Eigen::VectorXd& v, double sdot, double s,
                                       const std::string& gauge_tag) {
  return {x, v, sdot + s, ReducedKind::Bar, gauge_tag};
}

ReducedTangent horizontal_lift(const PhasePoint& P, const Eigen::VectorXd& v) {
  if (v.size() != P.p.size()) throw DimensionError("horizontal_lift: velocity does not match the point");
  return {P.x, v, P.p.dot(v), ReducedKind::Tilde, P.gauge_tag};
}

TangentLifts section_tangent_lifts(const ScalarField& sigma, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  const FieldGradient g = sigma.gradient(x);
  if (v.size() != x.size()) throw DimensionError("section_tangent_lifts: velocity does not match the point");
  const double dt = g.gradient.dot(v);
  return {dt, dt + g.value};
}

Eigen::MatrixXd form_differential(const AffineOneForm& alpha, const Eigen::VectorXd& x) {
  const auto m = Eigen::Index(alpha.components.size());
  if (x.size() != m) throw DimensionError("form_differential: form and point differ in dimension");
  Eigen::MatrixXd J(m, m);  // J(i, j) = d_j alpha_i
  for (Eigen::Index i = 0; i < m; ++i) J.row(i) = alpha.components[std::size_t(i)].gradient(x).gradient.transpose();
  return J.transpose() - J;
}

bool constraint_lagrangian_membership(const PhasePoint& P, const CoordinateConstraint& C, const ScalarField& sigma,
                                      double tol) {
  const auto m = P.x.size();
  if (P.p.size() != m) throw DimensionError("phase point with mismatched x and p");
  for (const auto& [i, c] : C.fixed) {
    if (i < 0 || i >= m) throw DimensionError("constraint on coordinate " + std::to_string(i) + " outside the chart");
    if (std::abs(P.x[i] - c) > tol) return false;
  }
  const Eigen::VectorXd g = sigma.gradient(P.x).gradient;
  for (Eigen::Index j = 0; j < m; ++j) {
    if (C.fixed.count(int(j))) continue;
    if (std::abs(P.p[j] - g[j]) > tol * (1.0 + std::abs(g[j]))) return false;
  }
  return true;
}

MorseResult morse_reduce(const MorseFamily& family, const Eigen::VectorXd& x, const std::vector<Eigen::VectorXd>& seeds,
                         const MorseOptions& opt) {
  const int n = family.base_dim, k = family.fiber_dim;
  if (x.size() != n) throw DimensionError("morse_reduce: base point has the wrong dimension");
  MorseResult out;

  auto join = [&](const Eigen::VectorXd& u) {
    Eigen::VectorXd z(n + k);
    z << x, u;
    return z;
  };

  if (k == 0) {
    const FieldGradient g = family.F.gradient(x);
    out.points.push_back({Eigen::VectorXd(0), {x, g.gradient.head(n), "ref"}, 0.0, true});
    return out;
  }

  for (std::size_t s = 0; s < seeds.size(); ++s) {
    const std::string label = "seed " + std::to_string(s) + ": ";
    if (seeds[s].size() != k) throw DimensionError(label + "fiber seed has the wrong dimension");
    Eigen::VectorXd u = seeds[s];
    FieldDerivs d;
    try {
      d = family.F.derivs(join(u));
    } catch (const ExpressionError& e) {
      out.failures.push_back(label + "family undefined at the seed (" + e.what() + ")");
      continue;
    }
    bool converged = false, stalled = false;
    for (int it = 0; it <= opt.max_iterations; ++it) {
      Eigen::VectorXd g = d.gradient.tail(k);
      const double gn = g.norm();
      if (gn <= opt.gradient_tol) {
        converged = true;
        break;
      }
      if (it == opt.max_iterations) break;
      const Eigen::MatrixXd H = d.hessian.bottomRightCorner(k, k);
      const Eigen::VectorXd step = -Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(H).solve(g);
      bool accepted = false;
      for (double a = 1.0; a > 1e-10; a *= 0.5) {
        const Eigen::VectorXd trial = u + a * step;
        try {
          FieldDerivs dt = family.F.derivs(join(trial));
          if (std::isfinite(dt.value) && dt.gradient.tail(k).norm() < gn) {
            u = trial;
            d = std::move(dt);
            accepted = true;
            break;
          }
        } catch (const ExpressionError&) {
          // left the domain; shorten the step
        }
      }
      if (!accepted) {
        stalled = true;
        out.failures.push_back(label + "line search stalled at |grad| = " + std::to_string(gn));
        break;
      }
    }
    if (!converged) {
      if (!stalled) {
        out.failures.push_back(label + "no convergence after " + std::to_string(opt.max_iterations) + " iterations");
      }
      continue;
    }

    CriticalPoint cp;
    cp.u = u;
    cp.point = {x, d.gradient.head(n), "ref"};
    cp.residual = d.gradient.tail(k).norm();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(d.hessian.bottomRows(k));
    lu.setThreshold(1e-9);
    cp.morse_regular = lu.rank() == k;
    if (!cp.morse_regular) {
      out.failures.push_back(label + "Morse condition violated (rank " + std::to_string(lu.rank()) + " < " +
                             std::to_string(k) + ")");
    }
    const bool duplicate = std::any_of(out.points.begin(), out.points.end(), [&](const CriticalPoint& q) {
      return inf_norm(q.point.p - cp.point.p) <= opt.merge_radius && inf_norm(q.u - cp.u) <= opt.merge_radius;
    });
    if (!duplicate) out.points.push_back(std::move(cp));
  }
  return out;
}

PhasePoint phase_box(const PhasePoint& a, const PhasePoint& b) {
  if (a.gauge_tag != b.gauge_tag) throw GaugeMismatch("phase_box across gauges");
  Eigen::VectorXd x(a.x.size() + b.x.size()), p(a.p.size() + b.p.size());
  x << a.x, b.x;
  p << a.p, b.p;
  return {x, p, a.gauge_tag};
}

PhaseTangent phase_box(const PhaseTangent& a, const PhaseTangent& b) {
  Eigen::VectorXd dx(a.dx.size() + b.dx.size()), dp(a.dp.size() + b.dp.size());
  dx << a.dx, b.dx;
  dp << a.dp, b.dp;
  return {dx, dp};
}

PhasePoint phase_bar(const PhasePoint& P) { return {P.x, -P.p, P.gauge_tag}; }
PhaseTangent phase_bar(const PhaseTangent& w) { return {w.dx, -w.dp}; }

ReducedTangent tangent_box(const ReducedTangent& a, const ReducedTangent& b) {
  if (a.kind != b.kind) throw DimensionError("tangent_box of different reduced kinds");
  if (a.gauge_tag != b.gauge_tag) throw GaugeMismatch("tangent_box across gauges");
  Eigen::VectorXd x(a.x.size() + b.x.size()), v(a.v.size() + b.v.size());
  x << a.x, b.x;
  v << a.v, b.v;
  return {x, v, a.sdot + b.sdot, a.kind, a.gauge_tag};
}

ScalarField section_box(const ScalarField& sigma, int m, const ScalarField& sigma_prime) {
  return sigma + sigma_prime.shifted(m);
}

Reconstruction reconstruct_potential(const AffineOneForm& alpha, const Eigen::VectorXd& base, const Eigen::VectorXd& x) {
  using boost::math::quadrature::gauss;
  const auto m = Eigen::Index(alpha.components.size());
  if (base.size() != m || x.size() != m) throw DimensionError("reconstruct_potential: dimension mismatch");
  const Eigen::VectorXd d = x - base;

  Reconstruction out;
  out.value = gauss<double, 30>::integrate(
      [&](double t) { return alpha.at(base + t * d).dot(d); }, 0.0, 1.0);
  out.gradient.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.gradient[i] = gauss<double, 30>::integrate(
        [&](double t) {
          const Eigen::VectorXd y = base + t * d;
          double acc = alpha.components[std::size_t(i)].value(y);
          for (Eigen::Index j = 0; j < m; ++j) acc += t * alpha.components[std::size_t(j)].gradient(y).gradient[i] * d[j];
          return acc;
        },
        0.0, 1.0);
  }
  return out;
}

}  // namespace affmech
