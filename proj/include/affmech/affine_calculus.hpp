#pragma once

// Phase, contact and reduced tangent bundles of a trivial affine line bundle
// Z = M x R over a single chart. Every coordinate point carries the tag of the
// gauge (trivializing section) it was written in; the gauge-change laws below
// stand in for transition functions.
//
// Conventions: theta = p_i dx^i, so omega(w1, w2) = <dp1, dx2> - <dp2, dx1>.
// A tilde reduced tangent (x, v, sdot) pairs with (p, rho) in PZ x R as
// sdot - <p, v> + rho. A bar reduced tangent stores S = sdot + s, the quantity
// left invariant by the shifted R-action on TZ.

#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "affmech/error.hpp"
#include "affmech/expression.hpp"

namespace affmech {

struct Chart {
  int m = 1;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static Chart cube(int m, double half_width);
  bool contains(const Eigen::VectorXd& x) const;
  /// Uniform sample from the box shrunk by `margin` of its width on each side.
  Eigen::VectorXd sample(std::mt19937_64& rng, double margin = 0.05) const;
};

struct Gauge {
  ScalarField sigma;
  std::string tag = "ref";
};

struct PhasePoint {
  Eigen::VectorXd x;
  Eigen::VectorXd p;
  std::string gauge_tag = "ref";
};

struct ContactPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd p;
  double s = 0.0;
  std::string gauge_tag = "ref";

  PhasePoint phase() const { return {x, p, gauge_tag}; }
};

enum class ReducedKind { Tilde, Bar };

struct ReducedTangent {
  Eigen::VectorXd x;
  Eigen::VectorXd v;
  double sdot = 0.0;  // for Bar: the invariant sdot + s
  ReducedKind kind = ReducedKind::Tilde;
  std::string gauge_tag = "ref";
};

struct AffineOneForm {
  std::vector<ScalarField> components;
  std::string gauge_tag = "ref";

  Eigen::VectorXd at(const Eigen::VectorXd& x) const;
};

/// A tangent vector (dx, dp) to PZ.
struct PhaseTangent {
  Eigen::VectorXd dx;
  Eigen::VectorXd dp;
};

FieldDerivs field_derivs(const ScalarField& phi, const Eigen::VectorXd& x);

PhasePoint phase_differential(const Gauge& sigma, const Eigen::VectorXd& x);
/// The 1-jet (x, d sigma(x), sigma(x)) as a point of CZ.
ContactPoint contact_element(const Gauge& sigma, const Eigen::VectorXd& x);

/// Rewrites `obj` from gauge `from` into gauge `to`, with lambda = from - to.
PhasePoint gauge_change(const PhasePoint& P, const Gauge& from, const Gauge& to);
ContactPoint gauge_change(const ContactPoint& c, const Gauge& from, const Gauge& to);
ReducedTangent gauge_change(const ReducedTangent& u, const Gauge& from, const Gauge& to);
AffineOneForm gauge_change(const AffineOneForm& alpha, const Gauge& from, const Gauge& to);
/// Tangent map of the phase gauge change at P: dp += Hess(lambda) dx.
PhaseTangent gauge_change(const PhaseTangent& w, const PhasePoint& P, const Gauge& from, const Gauge& to);

double omega_eval(const PhasePoint& P, const PhaseTangent& w1, const PhaseTangent& w2);
double theta_eval(const ContactPoint& c, const PhaseTangent& w);

/// sdot - <p, v> + rho.
double reduced_pairing(const PhasePoint& P, double rho, const ReducedTangent& u, double base_tol = 1e-12);
/// <p, v> - S + s for c = contact_element(sigma, x).
double contact_pairing(const ContactPoint& c, const ReducedTangent& u, double base_tol = 1e-12);
double contact_pairing(const Gauge& sigma, const Eigen::VectorXd& x, const ReducedTangent& u);

/// Bar class of the un-reduced tangent (x, s; v, sdot).
ReducedTangent bar_from_representative(const Eigen::VectorXd& x, const Eigen::VectorXd& v, double sdot, double s,
                                       const std::string& gauge_tag = "ref");

ReducedTangent horizontal_lift(const PhasePoint& P, const Eigen::VectorXd& v);

struct TangentLifts {
  double tilde = 0.0;
  double bar = 0.0;
};
TangentLifts section_tangent_lifts(const ScalarField& sigma, const Eigen::VectorXd& x, const Eigen::VectorXd& v);

/// (d alpha)_ij = d_i alpha_j - d_j alpha_i.
Eigen::MatrixXd form_differential(const AffineOneForm& alpha, const Eigen::VectorXd& x);

/// An affine coordinate subspace {x_i = c_i}.
struct CoordinateConstraint {
  std::map<int, double> fixed;
};

/// Membership of P in the Lagrangian submanifold generated by sigma on C.
/// sigma is a field on the whole chart; only its derivatives along the free
/// coordinates at P.x matter.
bool constraint_lagrangian_membership(const PhasePoint& P, const CoordinateConstraint& C, const ScalarField& sigma,
                                      double tol = 1e-12);

/// A family over base x fiber: variables x0..x{base-1} are base coordinates,
/// the next `fiber_dim` are fiber coordinates.
struct MorseFamily {
  ScalarField F;
  int base_dim = 1;
  int fiber_dim = 0;
};

struct MorseOptions {
  int max_iterations = 100;
  double gradient_tol = 1e-12;
  double merge_radius = 1e-8;
};

struct CriticalPoint {
  Eigen::VectorXd u;
  PhasePoint point;
  double residual = 0.0;      // |fiber gradient|
  bool morse_regular = true;  // rank [F_ub | F_uu] == fiber_dim
};

struct MorseResult {
  std::vector<CriticalPoint> points;
  std::vector<std::string> failures;
};

MorseResult morse_reduce(const MorseFamily& family, const Eigen::VectorXd& x, const std::vector<Eigen::VectorXd>& seeds,
                         const MorseOptions& opt = {});

PhasePoint phase_box(const PhasePoint& a, const PhasePoint& b);
PhaseTangent phase_box(const PhaseTangent& a, const PhaseTangent& b);
/// The conjugate bundle: same x, negated momentum.
PhasePoint phase_bar(const PhasePoint& P);
PhaseTangent phase_bar(const PhaseTangent& w);
ReducedTangent tangent_box(const ReducedTangent& a, const ReducedTangent& b);
/// sigma (x) sigma' on the product chart: sigma(x) + sigma'(x').
ScalarField section_box(const ScalarField& sigma, int m, const ScalarField& sigma_prime);

struct Reconstruction {
  double value = 0.0;
  Eigen::VectorXd gradient;
};
/// sigma(x) = integral of alpha along the segment from `base` to x, with its
/// exact gradient.
Reconstruction reconstruct_potential(const AffineOneForm& alpha, const Eigen::VectorXd& base, const Eigen::VectorXd& x);

}  // namespace affmech
