#include "affmech/special_affine.hpp"

#include <algorithm>
#include <cmath>

namespace affmech {
namespace {

void require_space(const SpaceDesc& expected, const SpaceDesc& got, const char* what) {
  if (!(expected == got)) {
    throw DimensionError(std::string(what) + ": expected " + describe(expected) + ", got " + describe(got));
  }
}

void require_size(Eigen::Index expected, Eigen::Index got, const char* what) {
  if (expected != got) {
    throw DimensionError(std::string(what) + ": expected length " + std::to_string(expected) + ", got " +
                         std::to_string(got));
  }
}

void check_shape(const SpecialMorphism& Phi) {
  const int n = Phi.domain.n, m = Phi.codomain.n;
  if (Phi.F.rows() != m || Phi.F.cols() != n || Phi.f.size() != m || Phi.g.size() != n) {
    throw DimensionError("morphism quadruple does not match " + describe(Phi.domain) + " -> " +
                         describe(Phi.codomain));
  }
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Deterministic sample points used by the self-duality grid test.
SpecialAffinePoint grid_point(const SpaceDesc& space, int k) {
  SpecialAffinePoint p{space, Eigen::VectorXd(space.n), std::cos(0.9 * k + 0.3)};
  for (int i = 0; i < space.n; ++i) p.v[i] = 2.0 * std::sin(1.3 * k + 0.7 * i + 0.1);
  return p;
}

}  // namespace

std::string describe(const SpaceDesc& s) {
  return s.frame + "[" + std::to_string(s.n) + "]" + (s.dual_level ? "#" : "");
}

SpecialMorphism SpecialMorphism::identity(const SpaceDesc& space) {
  return {space, space, Eigen::MatrixXd::Identity(space.n, space.n), Eigen::VectorXd::Zero(space.n),
          Eigen::VectorXd::Zero(space.n), 0.0};
}

double BiAffineMap::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return x.dot(B * y) + rowA.dot(x) + rowB.dot(y) + c;
}

SpecialAffinePoint as_point(const DualPoint& phi) { return {phi.space.dual(), phi.f, phi.t}; }
DualPoint as_dual(const SpecialAffinePoint& p) { return {p.space.dual(), p.v, p.r}; }

double evaluate(const DualPoint& phi, const SpecialAffinePoint& a) {
  require_space(phi.space, a.space, "evaluate");
  require_size(a.space.n, a.v.size(), "point");
  require_size(a.space.n, phi.f.size(), "dual point");
  return a.r - a.space.epsilon() * phi.f.dot(a.v) - phi.t;
}

double pairing_delta(const DualPoint& phi, const SpecialAffinePoint& a) { return -evaluate(phi, a); }

SpecialAffinePoint eval_morphism(const SpecialMorphism& Phi, const SpecialAffinePoint& a) {
  require_space(Phi.domain, a.space, "eval_morphism");
  check_shape(Phi);
  require_size(Phi.domain.n, a.v.size(), "point");
  return {Phi.codomain, Phi.F * a.v + Phi.f, Phi.g.dot(a.v) + Phi.t + a.r};
}

SpecialMorphism compose(const SpecialMorphism& Psi, const SpecialMorphism& Phi) {
  require_space(Psi.domain, Phi.codomain, "compose");
  check_shape(Psi);
  check_shape(Phi);
  return {Phi.domain,
          Psi.codomain,
          Psi.F * Phi.F,
          Psi.F * Phi.f + Psi.f,
          Phi.F.transpose() * Psi.g + Phi.g,
          Psi.g.dot(Phi.f) + Psi.t + Phi.t};
}

SpecialMorphism inverse(const SpecialMorphism& Phi) {
  check_shape(Phi);
  if (Phi.domain.n != Phi.codomain.n) throw DimensionError("inverse of a morphism between different dimensions");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(Phi.F);
  if (Phi.domain.n > 0 && !lu.isInvertible()) throw Error("inverse: linear part is singular");
  const Eigen::MatrixXd Finv = Phi.domain.n > 0 ? lu.inverse() : Eigen::MatrixXd(0, 0);
  const Eigen::VectorXd h = Finv * Phi.f;
  return {Phi.codomain, Phi.domain, Finv, -h, -(Finv.transpose() * Phi.g), Phi.g.dot(h) - Phi.t};
}

SpecialMorphism dual_morphism(const SpecialMorphism& Phi) {
  check_shape(Phi);
  const double ex = Phi.domain.epsilon();
  const double ey = Phi.codomain.epsilon();
  return {Phi.codomain.dual(), Phi.domain.dual(), ex * ey * Phi.F.transpose(), -ex * Phi.g, ey * Phi.f, -Phi.t};
}

DualPoint double_dual_embed(const SpecialAffinePoint& a) { return {a.space.dual(), a.v, a.r}; }

SpecialAffinePoint double_dual_identify(const DualPoint& chi) { return {chi.space.dual(), chi.f, chi.t}; }

SelfDualCheck is_self_dual(const SpecialMorphism& Phi, double tol) {
  require_space(Phi.domain.dual(), Phi.codomain, "is_self_dual codomain");
  check_shape(Phi);
  SelfDualCheck out;
  constexpr int kGrid = 5;
  for (int i = 0; i < kGrid; ++i) {
    const SpecialAffinePoint a = grid_point(Phi.domain, i);
    const DualPoint phi_a = as_dual(eval_morphism(Phi, a));
    for (int j = 0; j < kGrid; ++j) {
      const SpecialAffinePoint b = grid_point(Phi.domain, j + kGrid);
      const DualPoint phi_b = as_dual(eval_morphism(Phi, b));
      out.grid_residual = std::max(out.grid_residual, std::abs(evaluate(phi_b, a) + evaluate(phi_a, b)));
    }
  }
  const SpecialMorphism D = dual_morphism(Phi);
  out.coefficient_residual = std::max({max_abs(Phi.F - D.F), max_abs(Phi.f - D.f), max_abs(Phi.g - D.g),
                                       std::abs(Phi.t - D.t)});
  const bool grid_ok = out.grid_residual <= tol;
  const bool coeff_ok = out.coefficient_residual <= tol;
  out.criteria_agree = grid_ok == coeff_ok;
  out.self_dual = grid_ok && coeff_ok;
  return out;
}

SpecialMorphism self_dual_lift(const Eigen::MatrixXd& F, const Eigen::VectorXd& f, const SpaceDesc& space,
                               double skew_tol) {
  if (F.rows() != space.n || F.cols() != space.n || f.size() != space.n) {
    throw DimensionError("self_dual_lift: data does not match " + describe(space));
  }
  if (max_abs(F + F.transpose()) > skew_tol) throw Error("self_dual_lift: linear part is not skew");
  return {space, space.dual(), F, f, -space.epsilon() * f, 0.0};
}

SpaceDesc box_space(const SpaceDesc& a, const SpaceDesc& b) {
  if (a.dual_level != b.dual_level) throw DimensionError("box of spaces at different dual levels");
  return {a.n + b.n, "box(" + a.frame + "," + b.frame + ")", a.dual_level};
}

SpecialAffinePoint box_normal_form(const SpecialAffinePoint& a, const SpecialAffinePoint& b) {
  Eigen::VectorXd v(a.v.size() + b.v.size());
  v << a.v, b.v;
  return {box_space(a.space, b.space), v, a.r + b.r};
}

DualPoint box_dual(const DualPoint& phi, const DualPoint& psi) {
  Eigen::VectorXd f(phi.f.size() + psi.f.size());
  f << phi.f, psi.f;
  return {box_space(phi.space, psi.space), f, phi.t + psi.t};
}

SpecialAffinePoint box_swap(const SpecialAffinePoint& ab, int n_a) {
  const int n_b = int(ab.v.size()) - n_a;
  if (n_b < 0) throw DimensionError("box_swap: split index past the end");
  Eigen::VectorXd v(ab.v.size());
  v << ab.v.tail(n_b), ab.v.head(n_a);
  SpaceDesc space = ab.space;
  // box(A,B) -> box(B,A) when the frame is a plain box label.
  const std::string& fr = space.frame;
  if (fr.rfind("box(", 0) == 0 && fr.back() == ')') {
    int depth = 0;
    for (std::size_t i = 4; i + 1 < fr.size(); ++i) {
      if (fr[i] == '(') ++depth;
      if (fr[i] == ')') --depth;
      if (fr[i] == ',' && depth == 0) {
        space.frame = "box(" + fr.substr(i + 1, fr.size() - i - 2) + "," + fr.substr(4, i - 4) + ")";
        break;
      }
    }
  }
  return {space, v, ab.r};
}

BiAffineParts biaffine_parts(const BiAffineMap& F) {
  return {{F.B, F.rowB}, {F.B, F.rowA}, {F.B}};
}

double four_point_difference(const BiAffineMap& F, const Eigen::VectorXd& a1, const Eigen::VectorXd& a2,
                             const Eigen::VectorXd& v1, const Eigen::VectorXd& v2) {
  return F(a1 + v1, a2 + v2) - F(a1 + v1, a2) + F(a1, a2) - F(a1, a2 + v2);
}

double graph_value(const SpecialMorphism& Psi, const SpecialAffinePoint& a, const SpecialAffinePoint& b, double tol) {
  require_space(Psi.codomain, b.space, "graph_value");
  const SpecialAffinePoint image = eval_morphism(Psi, a);
  const double off = image.v.size() == 0 ? 0.0 : (image.v - b.v).cwiseAbs().maxCoeff();
  if (off > tol * (1.0 + (image.v.size() == 0 ? 0.0 : image.v.cwiseAbs().maxCoeff()))) {
    throw ConstraintError("gr", "base point is off the graph of the underlying map");
  }
  return b.r - image.r;
}

PairingMatrices pairing_matrices(const SpaceDesc& space) {
  const int n = space.n;
  const SpaceDesc dual_space = space;  // DualPoint.space is the primal
  PairingMatrices out{Eigen::MatrixXd(n + 1, n + 1), Eigen::MatrixXd(n + 1, n + 1)};

  // Frame points a_0 = origin, a_k = e_k; dual frame phi_0 = 0, phi_k = e_k.
  auto frame_point = [&](int k) {
    SpecialAffinePoint a{space, Eigen::VectorXd::Zero(n), 0.0};
    if (k > 0) a.v[k - 1] = 1.0;
    return a;
  };
  auto frame_dual = [&](int k) {
    DualPoint phi{dual_space, Eigen::VectorXd::Zero(n), 0.0};
    if (k > 0) phi.f[k - 1] = 1.0;
    return phi;
  };
  // Coordinate directions: j < n moves v_j (resp. f_j), j == n moves r (resp. t).
  auto moved_point = [&](SpecialAffinePoint a, int j) {
    if (j < n) a.v[j] += 1.0;
    else a.r += 1.0;
    return a;
  };
  auto moved_dual = [&](DualPoint phi, int j) {
    if (j < n) phi.f[j] += 1.0;
    else phi.t += 1.0;
    return phi;
  };

  const DualPoint phi0 = frame_dual(0);
  const SpecialAffinePoint a0 = frame_point(0);
  for (int k = 0; k <= n; ++k) {
    for (int j = 0; j <= n; ++j) {
      out.left(k, j) = pairing_delta(moved_dual(phi0, j), frame_point(k)) - pairing_delta(phi0, frame_point(k));
      out.right(k, j) = pairing_delta(frame_dual(k), moved_point(a0, j)) - pairing_delta(frame_dual(k), a0);
    }
  }
  return out;
}

AffineFunction dual_linear_part(const SpecialMorphism& Phi, const AffineFunction& on_codomain) {
  check_shape(Phi);
  require_size(Phi.codomain.n, on_codomain.linear.size(), "affine function");
  const SpecialMorphism D = dual_morphism(Phi);
  // Model vector (h, u) of Y# is the function w -> eps_Y <h, w> + u.
  const double ex = Phi.domain.epsilon(), ey = Phi.codomain.epsilon();
  const Eigen::VectorXd h = ey * on_codomain.linear;
  const double u = on_codomain.constant;
  return {ex * (D.F * h), D.g.dot(h) + u};
}

}  // namespace affmech
