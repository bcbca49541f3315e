#pragma once

// A relativistic charged particle on a chart with metric g (signature
// +,-,...,-) and potential A. The Lagrangian
//
//     L(x, v) = -e <A(x), v> + mass * sqrt(g_x(v, v))
//
// is positively homogeneous in v; trajectories are integrated in proper time,
// where g(v, v) = 1 is a first integral of
//
//     a = g^-1 [ -(d_k g_ij - 1/2 d_i g_jk) v^j v^k - (e/mass) F_ik v^k ],
//     F_ik = d_i A_k - d_k A_i.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "affmech/affine_calculus.hpp"
#include "affmech/expression.hpp"

namespace affmech {

struct Metric {
  /// Row-major m x m component fields; empty means Minkowski.
  std::vector<std::vector<ScalarField>> components;
  int m = 0;

  static Metric minkowski(int m);
  bool is_minkowski() const { return components.empty(); }
  Eigen::MatrixXd at(const Eigen::VectorXd& x) const;
  const ScalarField& component(int i, int j) const;
};

struct ParticleParams {
  double mass = 1.0;
  double charge = 0.0;
};

struct Scenario {
  int dim = 0;
  Metric metric;
  std::vector<ScalarField> potential;
  ParticleParams params;
  Gauge gauge{ScalarField(), "ref"};
  Eigen::VectorXd x0;
  Eigen::VectorXd v0;

  /// Throws on inconsistent sizes or nonpositive mass.
  void validate() const;
};

struct Sample {
  double tau = 0.0;
  Eigen::VectorXd x, v, p;
  double shell = 0.0;        // g(v, v)
  double el_residual = 0.0;  // max-norm of dynamics_residual at the sample
};

struct Trajectory {
  std::vector<Sample> samples;
  double max_shell_drift = 0.0;
  double max_el_residual = 0.0;
};

struct IntegrateOptions {
  double shell_tol = 1e-6;   // abort when |g(v,v) - 1| exceeds this
  double det_tol = 1e-12;    // abort when |det g| drops below this
  bool diagnostics = true;   // fill el_residual
};

/// Compiled form of a scenario: the Lagrangian and momenta as fields over
/// (x, v), 2m variables.
class ParticleModel {
 public:
  explicit ParticleModel(const Scenario& s);

  const Scenario& scenario() const { return s_; }
  int dim() const { return m_; }
  const ScalarField& lagrangian() const { return L_; }
  const ScalarField& momentum(int j) const { return p_[std::size_t(j)]; }

  double shell(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const;
  /// Proper-time acceleration.
  Eigen::VectorXd acceleration(const Eigen::VectorXd& x, const Eigen::VectorXd& v) const;
  /// d p / d tau along (x, v) with acceleration a.
  Eigen::VectorXd momentum_rate(const Eigen::VectorXd& x, const Eigen::VectorXd& v, const Eigen::VectorXd& a) const;

 private:
  Scenario s_;
  int m_;
  ScalarField L_;
  std::vector<ScalarField> p_;
};

double lagrangian_eval(const Scenario& s, const Eigen::VectorXd& x, const Eigen::VectorXd& v);
Eigen::VectorXd legendre_momentum(const Scenario& s, const Eigen::VectorXd& x, const Eigen::VectorXd& v);
/// (p - dL/dv, pdot - dL/dx) at w = (x, p, xdot, pdot).
Eigen::VectorXd dynamics_residual(const Scenario& s, const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                                  const Eigen::VectorXd& xdot, const Eigen::VectorXd& pdot);
Eigen::VectorXd dynamics_residual(const ParticleModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                                  const Eigen::VectorXd& xdot, const Eigen::VectorXd& pdot);

/// Classical RK4 in proper time from (x0, v0 / sqrt(g(v0, v0))).
Trajectory integrate(const Scenario& s, std::size_t steps, double h, const IntegrateOptions& opt = {});

/// L(v) - <p, v>.
double hamiltonian_family_eval(const Scenario& s, const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                               const Eigen::VectorXd& p);
/// The same family as a Morse family with base (x, p) and fiber v.
MorseFamily hamiltonian_family(const Scenario& s);

/// A -> A + d lambda, gauge section sigma -> sigma - lambda, tag updated.
Scenario gauge_transform_scenario(const Scenario& s, const ScalarField& lambda);

/// X_1 applied to the charge-e pullback of sigma: the symbolic derivative of
/// sigma(x) + e s along the fiber coordinate s (variable index m). Returns its
/// value if it folds to a constant.
std::optional<double> charge_action(const ScalarField& sigma, int m, double e);

/// Un-reduced covector (p, p_s) on Z over the phase point (x, p) of the
/// charge-e phase bundle; p_s = <p-hat, X_1>.
Eigen::VectorXd ke_lift(const Eigen::VectorXd& x, const Eigen::VectorXd& p, double e);

// Closed forms and measurements for the constant magnetic field.

/// 3+1 Minkowski, A = (0, -B x2 / 2, B x1 / 2, 0), initial proper velocity
/// transverse part u_perp along x1.
Scenario cyclotron_scenario(double B, double charge, double mass, double u_perp, double u_par = 0.0);

struct CircleFit {
  double cx = 0.0, cy = 0.0, radius = 0.0;
  double rms = 0.0;
};
/// Algebraic least-squares circle through the points.
CircleFit fit_circle(const std::vector<double>& xs, const std::vector<double>& ys);

/// Coordinate time at which the transverse angle about (cx, cy) first
/// completes one turn, by linear interpolation; nullopt if it never does.
std::optional<double> first_turn_time(const std::vector<double>& t, const std::vector<double>& xs,
                                      const std::vector<double>& ys, double cx, double cy);

}  // namespace affmech
