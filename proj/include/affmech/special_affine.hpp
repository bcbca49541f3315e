#pragma once

// Finite-dimensional special affine spaces in frozen coordinates.
//
// A point of a special affine space A is stored as (v, r) in V x R, where the
// distinguished vector is (0, 1). An element of the dual A# (a morphism A -> I)
// is stored as (f, t) and acts on a primal point by
//
//     phi(v, r) = r - <f, v> - t,
//
// so the canonical pairing Delta_A(phi, a) = -phi(a) = t - r + <f, v>.
//
// SpaceDesc carries a dual-level flag: A.dual().dual() == A. Points of a
// double dual are written in the coordinates of the original space through
// the canonical isomorphism A -> A##, which reads (v, r) -> (-v, r) in native
// dual coordinates. Evaluation of a dual element therefore picks up the sign
// epsilon = +1 on primal-level spaces and -1 on dual-level ones:
//
//     psi(x) = x.r - epsilon * <psi.f, x.v> - psi.t.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "affmech/error.hpp"

namespace affmech {

struct SpaceDesc {
  int n = 0;
  std::string frame = "A";
  bool dual_level = false;

  SpaceDesc dual() const { return {n, frame, !dual_level}; }
  /// +1 for primal-level spaces, -1 for dual-level ones.
  double epsilon() const { return dual_level ? -1.0 : 1.0; }

  friend bool operator==(const SpaceDesc&, const SpaceDesc&) = default;
};

std::string describe(const SpaceDesc& s);

struct SpecialAffinePoint {
  SpaceDesc space;
  Eigen::VectorXd v;
  double r = 0.0;

  /// The R-action a + t * v1.
  SpecialAffinePoint shifted(double t) const { return {space, v, r + t}; }
};

/// An element of space.dual(); `space` is the primal A it acts on.
struct DualPoint {
  SpaceDesc space;
  Eigen::VectorXd f;
  double t = 0.0;
};

/// Phi(v, r) = (F v + f, g.v + t + r).
struct SpecialMorphism {
  SpaceDesc domain;
  SpaceDesc codomain;
  Eigen::MatrixXd F;
  Eigen::VectorXd f;
  Eigen::VectorXd g;
  double t = 0.0;

  static SpecialMorphism identity(const SpaceDesc& space);
};

/// F(x, y) = x^T B y + rowA.x + rowB.y + c.
struct BiAffineMap {
  Eigen::MatrixXd B;
  Eigen::VectorXd rowA;
  Eigen::VectorXd rowB;
  double c = 0.0;

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

SpecialAffinePoint as_point(const DualPoint& phi);
DualPoint as_dual(const SpecialAffinePoint& p);

/// phi(a) with phi in a.space#.
double evaluate(const DualPoint& phi, const SpecialAffinePoint& a);

/// Delta_A(phi, a) = -phi(a).
double pairing_delta(const DualPoint& phi, const SpecialAffinePoint& a);

SpecialAffinePoint eval_morphism(const SpecialMorphism& Phi, const SpecialAffinePoint& a);

/// Psi o Phi.
SpecialMorphism compose(const SpecialMorphism& Psi, const SpecialMorphism& Phi);

/// Inverse of a morphism with invertible linear part.
SpecialMorphism inverse(const SpecialMorphism& Phi);

/// Phi#: codomain# -> domain#, Phi#(psi) = psi o Phi.
SpecialMorphism dual_morphism(const SpecialMorphism& Phi);

/// The element chi of A## with chi(phi) = -phi(a). Stored in the coordinates
/// of A, so the native coordinates of A#'s dual are (-v, r).
DualPoint double_dual_embed(const SpecialAffinePoint& a);
/// Inverse of double_dual_embed.
SpecialAffinePoint double_dual_identify(const DualPoint& chi);

struct SelfDualCheck {
  bool self_dual = false;
  double grid_residual = 0.0;         // max |Phi(b)(a) + Phi(a)(b)| over the test grid
  double coefficient_residual = 0.0;  // max-norm of Phi - Phi#
  bool criteria_agree = true;
};

/// Phi must map its domain A into A#.
SelfDualCheck is_self_dual(const SpecialMorphism& Phi, double tol = 1e-12);

/// The unique self-dual lift of v -> F v + f (F skew).
SpecialMorphism self_dual_lift(const Eigen::MatrixXd& F, const Eigen::VectorXd& f, const SpaceDesc& space,
                               double skew_tol = 1e-10);

/// Normal form of A box B: (v_a, v_b, r + s).
SpaceDesc box_space(const SpaceDesc& a, const SpaceDesc& b);
SpecialAffinePoint box_normal_form(const SpecialAffinePoint& a, const SpecialAffinePoint& b);
/// phi (+) psi as an element of (A box B)#.
DualPoint box_dual(const DualPoint& phi, const DualPoint& psi);
/// The canonical swap A box B -> B box A.
SpecialAffinePoint box_swap(const SpecialAffinePoint& ab, int n_a);

struct AffineLinearPart {  // (a, v2) -> a^T B v2 + rowB.v2
  Eigen::MatrixXd B;
  Eigen::VectorXd rowB;
  double operator()(const Eigen::VectorXd& a, const Eigen::VectorXd& v2) const { return a.dot(B * v2) + rowB.dot(v2); }
};
struct LinearAffinePart {  // (v1, b) -> v1^T B b + rowA.v1
  Eigen::MatrixXd B;
  Eigen::VectorXd rowA;
  double operator()(const Eigen::VectorXd& v1, const Eigen::VectorXd& b) const { return v1.dot(B * b) + rowA.dot(v1); }
};
struct BilinearPart {
  Eigen::MatrixXd B;
  double operator()(const Eigen::VectorXd& v1, const Eigen::VectorXd& v2) const { return v1.dot(B * v2); }
};

struct BiAffineParts {
  AffineLinearPart affine_linear;
  LinearAffinePart linear_affine;
  BilinearPart bilinear;
};

BiAffineParts biaffine_parts(const BiAffineMap& F);

/// F(a1+v1, a2+v2) - F(a1+v1, a2) + F(a1, a2) - F(a1, a2+v2).
double four_point_difference(const BiAffineMap& F, const Eigen::VectorXd& a1, const Eigen::VectorXd& a2,
                             const Eigen::VectorXd& v1, const Eigen::VectorXd& v2);

/// rho with b = Psi(a) + rho w1. Throws when the base parts are off the graph.
double graph_value(const SpecialMorphism& Psi, const SpecialAffinePoint& a, const SpecialAffinePoint& b,
                   double tol = 1e-12);

/// Linear parts of Phi_l: A# -> (A-bar)# and Phi_r: A-bar -> A## induced by
/// Delta_A, sampled on an affine frame. Both are (n+1) x (n+1).
struct PairingMatrices {
  Eigen::MatrixXd left;
  Eigen::MatrixXd right;
};
PairingMatrices pairing_matrices(const SpaceDesc& space);

/// An affine function v -> <linear, v> + constant on a base space.
struct AffineFunction {
  Eigen::VectorXd linear;
  double constant = 0.0;
  double operator()(const Eigen::VectorXd& v) const { return linear.dot(v) + constant; }
};

/// V(Phi#) acting on an affine function on the codomain base (the model space
/// of codomain#), returned as an affine function on the domain base.
AffineFunction dual_linear_part(const SpecialMorphism& Phi, const AffineFunction& on_codomain);

}  // namespace affmech
