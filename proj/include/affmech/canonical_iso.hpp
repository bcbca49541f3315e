#pragma once

// The affine Legendre map Psi_A: CA -> CA#, the flips of iterated reduced
// tangents, and the affine Tulczyjew map alpha_Z with complete lifts.
//
// A special affine bundle A -> E-bar over a chart is written with base
// coordinates x (m of them) and fiber coordinates y (n of them); CA carries
// (x, y, p, pi, r) and CA# carries (x, f, q, chi, t).

#include <string>

#include <Eigen/Dense>

#include "affmech/affine_calculus.hpp"
#include "affmech/special_affine.hpp"

namespace affmech {

struct ContactPointA {
  Eigen::VectorXd x, y, p, pi;
  double r = 0.0;
};

struct ContactPointADual {
  Eigen::VectorXd x, f, q, chi;
  double t = 0.0;
};

/// Tangent vectors to CA and CA#, same block layout as the points.
struct ContactTangentA {
  Eigen::VectorXd dx, dy, dp, dpi;
  double dr = 0.0;
};
struct ContactTangentADual {
  Eigen::VectorXd dx, df, dq, dchi;
  double dt = 0.0;
};

/// (x, y, p, pi, r) -> (x, f = pi, q = p, chi = -y, t = r - <pi, y>).
ContactPointADual legendre_psi(const ContactPointA& c);
ContactPointA legendre_psi_inverse(const ContactPointADual& d);
/// Differential of Psi_A at c.
ContactTangentADual legendre_psi_tangent(const ContactPointA& c, const ContactTangentA& w);

/// p dx + pi dy.
double theta_A(const ContactPointA& c, const ContactTangentA& w);
/// q dx + chi df.
double theta_ADual(const ContactPointADual& d, const ContactTangentADual& w);
/// theta_A(w) - Psi^*(theta_A#)(w) - d(r - t o Psi)(w). Zero by Liouville
/// form preservation; the last term is the change of trivializing fiber
/// coordinate between the two sides.
double liouville_defect(const ContactPointA& c, const ContactTangentA& w);

/// omega on the phase part (x, y, p, pi) and (x, f, q, chi).
double omega_A(const ContactTangentA& w1, const ContactTangentA& w2);
double omega_ADual(const ContactTangentADual& w1, const ContactTangentADual& w2);

/// Max residual of the graph equations y = -chi, p = q, pi = f.
double graph_equations_residual(const ContactPointA& c, const ContactPointADual& d);
/// Max residual of the graph of Psi against the generating function -<f, y>.
double generating_residual(const ContactPointA& c);

/// Point of A# over x obtained as mu o Psi_A: (f, t) = (pi, r - <pi, y>).
DualPoint projection_to_dual(const ContactPointA& c);
/// The bar reduced tangent at y representing the point b of the fiber.
ReducedTangent chi_bar(const Eigen::VectorXd& y, const SpecialAffinePoint& b);

/// Contact lift of a fiberwise special morphism G: A -> A acting on CA.
ContactPointA contact_lift(const SpecialMorphism& G, const ContactPointA& c);
/// Contact lift of H: A# -> A# acting on CA#.
ContactPointADual contact_lift(const SpecialMorphism& H, const ContactPointADual& d);

// Iterated tangents of M x R, in full and reduced form.

/// Coordinates (r, rdot, r', rdot') on TTR.
struct TTR {
  double r = 0.0, rdot = 0.0, rp = 0.0, rdotp = 0.0;
};
inline double chi1(const TTR& u) { return u.rdotp; }
inline double chi2(const TTR& u) { return u.rdot + u.rdotp; }
inline double chi3(const TTR& u) { return u.rdotp + u.rp; }
/// The canonical flip of TTR: (r, rdot, r', rdot') -> (r, r', rdot, rdot').
TTR kappa(const TTR& u);

enum class IteratedKind { TildeTilde, TildeBar, BarTilde };

struct FullIteratedTangent {
  Eigen::VectorXd x, xdot, xp, xdotp;
  TTR r;
};

struct IteratedTangent {
  Eigen::VectorXd x, xdot, xp, xdotp;
  double rho = 0.0;  // chi1, chi2 or chi3 of the R-part, per kind
  IteratedKind kind = IteratedKind::TildeTilde;
};

FullIteratedTangent kappa(const FullIteratedTangent& u);
IteratedTangent reduce(const FullIteratedTangent& u, IteratedKind kind);

/// Tilde: T~T~Z -> T~T~Z. Bar: T-bar T~Z (kind BarTilde) -> T~T-bar Z (kind TildeBar).
IteratedTangent kappa_reduced(const IteratedTangent& u, ReducedKind kind);
/// Inverse of the bar flip, TildeBar -> BarTilde.
IteratedTangent kappa_reduced_inverse(const IteratedTangent& u);

// alpha_Z and complete lifts.

/// A point (x, p) of PZ with a tangent vector (xdot, pdot).
struct TangentPhasePoint {
  Eigen::VectorXd x, p, xdot, pdot;
  std::string gauge_tag = "ref";
};

/// A covector (a, b) at (x, xdot) of the phase bundle of T~Z.
struct ReducedPhasePoint {
  Eigen::VectorXd x, xdot, a, b;
  std::string gauge_tag = "ref";
};

ReducedPhasePoint alpha_Z(const TangentPhasePoint& w);

/// Gauge change on TPZ: the tangent of the PZ gauge change.
TangentPhasePoint gauge_change(const TangentPhasePoint& w, const Gauge& from, const Gauge& to);
/// Gauge change on PT~Z induced by the lifted section d_T lambda.
ReducedPhasePoint gauge_change(const ReducedPhasePoint& u, const Gauge& from, const Gauge& to);

/// d_T~ phi: a 1-form on TM (2m variables, x then xdot) with components
/// (sum_i xdot^i d_i phi_j, phi_j).
AffineOneForm complete_lift_form(const AffineOneForm& phi);
/// d_T sigma = sum_i xdot^i d_i sigma on TM.
ScalarField tangent_lift_function(const ScalarField& sigma, int m);
/// d_T of the 2-form d phi at (x, xdot), as a 2m x 2m matrix.
Eigen::MatrixXd tangent_lift_two_form(const AffineOneForm& phi, const Eigen::VectorXd& x, const Eigen::VectorXd& xdot);

/// theta_Z = p dx on PZ as a 1-form in 2m variables (x then p).
AffineOneForm liouville_form(int m);
/// Components of alpha^* theta_{T~Z} on TPZ in the order (x, p, xdot, pdot).
Eigen::VectorXd alpha_theta_pullback(const TangentPhasePoint& w);
/// Matrix of alpha^* omega_{T~Z} on TPZ in the order (x, p, xdot, pdot).
Eigen::MatrixXd alpha_omega_pullback(int m);

// The pairing of A# and A lifted to tangent vectors.

struct AffineTangent {
  Eigen::VectorXd dv;
  double dr = 0.0;
};
/// dt - dr + eps (<df, v> + <f, dv>) for tangents at phi and a.
double tangent_pairing(const DualPoint& phi, const AffineTangent& dphi, const SpecialAffinePoint& a,
                       const AffineTangent& da);
/// (F dv, <g, dv> + dr).
AffineTangent tangent_map(const SpecialMorphism& Phi, const AffineTangent& w);

}  // namespace affmech
