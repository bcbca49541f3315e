#include "affmech/dynamics.hpp"

#include <cmath>
#include <numbers>

namespace affmech {
namespace {

double quadratic(const Eigen::MatrixXd& G, const Eigen::VectorXd& v) { return v.dot(G * v); }

Eigen::VectorXd potential_at(const Scenario& s, const Eigen::VectorXd& x) {
  Eigen::VectorXd A(s.dim);
  for (int i = 0; i < s.dim; ++i) A[i] = s.potential[std::size_t(i)].value(x);
  return A;
}

void require_dim(const Scenario& s, const Eigen::VectorXd& a, const char* what) {
  if (a.size() != s.dim) {
    throw DimensionError(std::string(what) + " has " + std::to_string(a.size()) + " components, scenario has " +
                         std::to_string(s.dim));
  }
}

double on_shell(const Scenario& s, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  require_dim(s, x, "position");
  require_dim(s, v, "velocity");
  const double gvv = quadratic(s.metric.at(x), v);
  if (!(gvv > 0.0)) throw ConstraintError("C", "velocity is not timelike (g(v,v) = " + std::to_string(gvv) + ")");
  return gvv;
}

}  // namespace

Metric Metric::minkowski(int m) { return Metric{{}, m}; }

Eigen::MatrixXd Metric::at(const Eigen::VectorXd& x) const {
  if (is_minkowski()) {
    Eigen::MatrixXd G = -Eigen::MatrixXd::Identity(m, m);
    if (m > 0) G(0, 0) = 1.0;
    return G;
  }
  Eigen::MatrixXd G(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) G(i, j) = components[std::size_t(i)][std::size_t(j)].value(x);
  return G;
}

const ScalarField& Metric::component(int i, int j) const { return components[std::size_t(i)][std::size_t(j)]; }

void Scenario::validate() const {
  if (dim < 1) throw DimensionError("scenario dimension must be at least 1");
  if (metric.m != dim) throw DimensionError("metric dimension differs from the scenario");
  if (!metric.is_minkowski()) {
    if (metric.components.size() != std::size_t(dim)) throw DimensionError("metric needs " + std::to_string(dim) + " rows");
    for (const auto& row : metric.components)
      if (row.size() != std::size_t(dim)) throw DimensionError("metric row of the wrong length");
  }
  if (potential.size() != std::size_t(dim)) throw DimensionError("potential needs " + std::to_string(dim) + " components");
  if (x0.size() != dim || v0.size() != dim) throw DimensionError("initial data of the wrong dimension");
  if (!(params.mass > 0.0)) throw Error("mass must be positive");
  const Eigen::MatrixXd G = metric.at(x0);
  if ((G - G.transpose()).cwiseAbs().maxCoeff() > 1e-12) throw Error("metric is not symmetric at x0");
}

ParticleModel::ParticleModel(const Scenario& s) : s_(s), m_(s.dim) {
  s_.validate();
  const int m = m_;
  auto v = [m](int i) { return ScalarField::variable(m + i); };
  ScalarField gvv;
  if (s_.metric.is_minkowski()) {
    gvv = v(0) * v(0);
    for (int i = 1; i < m; ++i) gvv = gvv - v(i) * v(i);
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) gvv = gvv + s_.metric.component(i, j) * v(i) * v(j);
  }
  ScalarField coupling;
  for (int i = 0; i < m; ++i) coupling = coupling + s_.potential[std::size_t(i)] * v(i);
  L_ = ScalarField::constant(-s_.params.charge) * coupling + s_.params.mass * sqrt(gvv);
  for (int j = 0; j < m; ++j) p_.push_back(L_.derivative(m + j));
}

double ParticleModel::shell(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const {
  return quadratic(s_.metric.at(x), v);
}

Eigen::VectorXd ParticleModel::acceleration(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const {
  const int m = m_;
  const Eigen::MatrixXd G = s_.metric.at(x);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);

  if (!s_.metric.is_minkowski()) {
    // dG[k](i, j) = d_k g_ij
    std::vector<Eigen::MatrixXd> dG(std::size_t(m), Eigen::MatrixXd(m, m));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const Eigen::VectorXd g = s_.metric.component(i, j).gradient(x).gradient;
        for (int k = 0; k < m; ++k) dG[std::size_t(k)](i, j) = g[k];
      }
    }
    for (int i = 0; i < m; ++i) {
      double acc = 0.0;
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k)
          acc += (dG[std::size_t(k)](i, j) - 0.5 * dG[std::size_t(i)](j, k)) * v[j] * v[k];
      rhs[i] -= acc;
    }
  }

  if (s_.params.charge != 0.0) {
    Eigen::MatrixXd J(m, m);  // J(i, k) = d_k A_i
    for (int i = 0; i < m; ++i) J.row(i) = s_.potential[std::size_t(i)].gradient(x).gradient.transpose();
    const Eigen::MatrixXd F = J.transpose() - J;
    rhs -= (s_.params.charge / s_.params.mass) * (F * v);
  }
  return G.partialPivLu().solve(rhs);
}

Eigen::VectorXd ParticleModel::momentum_rate(const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                             const Eigen::VectorXd& a) const {
  Eigen::VectorXd z(2 * m_), zdot(2 * m_);
  z << x, v;
  zdot << v, a;
  Eigen::VectorXd out(m_);
  for (int j = 0; j < m_; ++j) out[j] = p_[std::size_t(j)].gradient(z).gradient.dot(zdot);
  return out;
}

double lagrangian_eval(const Scenario& s, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  const double gvv = on_shell(s, x, v);
  return -s.params.charge * potential_at(s, x).dot(v) + s.params.mass * std::sqrt(gvv);
}

Eigen::VectorXd legendre_momentum(const Scenario& s, const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  const double gvv = on_shell(s, x, v);
  return -s.params.charge * potential_at(s, x) + s.params.mass * (s.metric.at(x) * v) / std::sqrt(gvv);
}

Eigen::VectorXd dynamics_residual(const ParticleModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                                  const Eigen::VectorXd& xdot, const Eigen::VectorXd& pdot) {
  const Scenario& s = model.scenario();
  on_shell(s, x, xdot);
  require_dim(s, p, "momentum");
  require_dim(s, pdot, "momentum rate");
  const int m = s.dim;
  Eigen::VectorXd z(2 * m);
  z << x, xdot;
  const Eigen::VectorXd dL = model.lagrangian().gradient(z).gradient;
  Eigen::VectorXd r(2 * m);
  r << p - dL.tail(m), pdot - dL.head(m);
  return r;
}

Eigen::VectorXd dynamics_residual(const Scenario& s, const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                                  const Eigen::VectorXd& xdot, const Eigen::VectorXd& pdot) {
  return dynamics_residual(ParticleModel(s), x, p, xdot, pdot);
}

Trajectory integrate(const Scenario& s, std::size_t steps, double h, const IntegrateOptions& opt) {
  if (steps < 1) throw Error("integrate needs at least one step");
  if (!(h > 0.0)) throw Error("integrate needs a positive step size");
  const ParticleModel model(s);
  const int m = s.dim;

  Eigen::VectorXd x = s.x0;
  Eigen::VectorXd v = s.v0 / std::sqrt(on_shell(s, s.x0, s.v0));

  Trajectory traj;
  traj.samples.reserve(steps + 1);
  auto record = [&](std::size_t k) {
    Sample smp;
    smp.tau = double(k) * h;
    smp.x = x;
    smp.v = v;
    smp.p = legendre_momentum(s, x, v);
    smp.shell = model.shell(x, v);
    if (opt.diagnostics) {
      const Eigen::VectorXd a = model.acceleration(x, v);
      const Eigen::VectorXd r = dynamics_residual(model, x, smp.p, v, model.momentum_rate(x, v, a));
      smp.el_residual = r.cwiseAbs().maxCoeff();
    }
    traj.max_shell_drift = std::max(traj.max_shell_drift, std::abs(smp.shell - 1.0));
    traj.max_el_residual = std::max(traj.max_el_residual, smp.el_residual);
    traj.samples.push_back(std::move(smp));
  };

  auto deriv = [&](const Eigen::VectorXd& y, std::size_t k) {
    const Eigen::VectorXd xs = y.head(m), vs = y.tail(m);
    if (std::abs(s.metric.at(xs).determinant()) <= opt.det_tol) throw IntegrationError(k, "metric is degenerate");
    Eigen::VectorXd dy(2 * m);
    dy << vs, model.acceleration(xs, vs);
    return dy;
  };

  try {
    record(0);
    Eigen::VectorXd y(2 * m);
    for (std::size_t k = 1; k <= steps; ++k) {
      y << x, v;
      const Eigen::VectorXd k1 = deriv(y, k);
      const Eigen::VectorXd k2 = deriv(y + 0.5 * h * k1, k);
      const Eigen::VectorXd k3 = deriv(y + 0.5 * h * k2, k);
      const Eigen::VectorXd k4 = deriv(y + h * k3, k);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      x = y.head(m);
      v = y.tail(m);
      const double shell = model.shell(x, v);
      if (!std::isfinite(shell) || std::abs(shell - 1.0) > opt.shell_tol) {
        throw IntegrationError(k, "mass shell violated, g(v,v) = " + std::to_string(shell));
      }
      record(k);
    }
  } catch (const ExpressionError& e) {
    throw IntegrationError(traj.samples.size(), e.what());
  }
  return traj;
}

double hamiltonian_family_eval(const Scenario& s, const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                               const Eigen::VectorXd& p) {
  require_dim(s, p, "momentum");
  return lagrangian_eval(s, x, v) - p.dot(v);
}

MorseFamily hamiltonian_family(const Scenario& s) {
  const ParticleModel model(s);
  const int m = s.dim;
  std::vector<ScalarField> repl;
  for (int i = 0; i < m; ++i) repl.push_back(ScalarField::variable(i));
  for (int i = 0; i < m; ++i) repl.push_back(ScalarField::variable(2 * m + i));
  ScalarField F = model.lagrangian().substitute(repl);
  for (int i = 0; i < m; ++i) F = F - ScalarField::variable(m + i) * ScalarField::variable(2 * m + i);
  return {F, 2 * m, m};
}

Scenario gauge_transform_scenario(const Scenario& s, const ScalarField& lambda) {
  if (lambda.arity() > s.dim) throw DimensionError("gauge function uses coordinates outside the chart");
  Scenario out = s;
  for (int i = 0; i < s.dim; ++i) out.potential[std::size_t(i)] = s.potential[std::size_t(i)] + lambda.derivative(i);
  out.gauge.sigma = s.gauge.sigma - lambda;
  out.gauge.tag = s.gauge.tag + "+d(" + lambda.to_string() + ")";
  const std::optional<double> x1 = charge_action(out.gauge.sigma, s.dim, s.params.charge);
  if (!x1 || *x1 != s.params.charge) throw Error("charge action check failed on the transformed gauge");
  return out;
}

std::optional<double> charge_action(const ScalarField& sigma, int m, double e) {
  if (sigma.arity() > m) throw DimensionError("section depends on the fiber coordinate");
  const ScalarField f = sigma + ScalarField::constant(e) * ScalarField::variable(m);
  return f.derivative(m).constant_value();
}

Eigen::VectorXd ke_lift(const Eigen::VectorXd& x, const Eigen::VectorXd& p, double e) {
  const int m = int(x.size());
  if (p.size() != m) throw DimensionError("ke_lift: momentum and point differ in dimension");
  ScalarField h = ScalarField::constant(e) * ScalarField::variable(m);
  for (int i = 0; i < m; ++i) h = h + ScalarField::constant(p[i]) * (ScalarField::variable(i) - ScalarField::constant(x[i]));
  Eigen::VectorXd z = Eigen::VectorXd::Zero(m + 1);
  z.head(m) = x;
  return h.gradient(z).gradient;
}

Scenario cyclotron_scenario(double B, double charge, double mass, double u_perp, double u_par) {
  Scenario s;
  s.dim = 4;
  s.metric = Metric::minkowski(4);
  s.potential = {ScalarField(), ScalarField::constant(-0.5 * B) * ScalarField::variable(2),
                 ScalarField::constant(0.5 * B) * ScalarField::variable(1), ScalarField()};
  s.params = {mass, charge};
  s.x0 = Eigen::VectorXd::Zero(4);
  s.v0 = Eigen::VectorXd(4);
  s.v0 << std::sqrt(1.0 + u_perp * u_perp + u_par * u_par), u_perp, 0.0, u_par;
  return s;
}

CircleFit fit_circle(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = Eigen::Index(xs.size());
  if (n < 3 || ys.size() != xs.size()) throw DimensionError("fit_circle needs at least three points");
  Eigen::Map<const Eigen::VectorXd> X(xs.data(), n), Y(ys.data(), n);
  const double mx = X.mean(), my = Y.mean();
  const Eigen::VectorXd u = X.array() - mx, w = Y.array() - my;
  Eigen::MatrixXd M(n, 3);
  M << u, w, Eigen::VectorXd::Ones(n);
  const Eigen::VectorXd rhs = -(u.array().square() + w.array().square()).matrix();
  const Eigen::Vector3d c = M.colPivHouseholderQr().solve(rhs);
  CircleFit fit;
  const double a = -0.5 * c[0], b = -0.5 * c[1];
  fit.cx = a + mx;
  fit.cy = b + my;
  fit.radius = std::sqrt(a * a + b * b - c[2]);
  const Eigen::VectorXd dist = ((u.array() - a).square() + (w.array() - b).square()).sqrt();
  fit.rms = std::sqrt((dist.array() - fit.radius).square().mean());
  return fit;
}

std::optional<double> first_turn_time(const std::vector<double>& t, const std::vector<double>& xs,
                                      const std::vector<double>& ys, double cx, double cy) {
  if (t.size() != xs.size() || t.size() != ys.size() || t.empty()) return std::nullopt;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double prev = std::atan2(ys[0] - cy, xs[0] - cx);
  double swept = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) {
    const double ang = std::atan2(ys[k] - cy, xs[k] - cx);
    double d = ang - prev;
    if (d > std::numbers::pi) d -= two_pi;
    if (d < -std::numbers::pi) d += two_pi;
    const double next = swept + d;
    if (std::abs(next) >= two_pi) {
      const double frac = (two_pi - std::abs(swept)) / std::abs(d);
      return t[k - 1] + frac * (t[k] - t[k - 1]);
    }
    swept = next;
    prev = ang;
  }
  return std::nullopt;
}

}  // namespace affmech
