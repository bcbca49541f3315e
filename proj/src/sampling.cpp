#include "affmech/sampling.hpp"

#include <cmath>

namespace affmech::sampling {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Eigen::VectorXd vector(std::mt19937_64& rng, Eigen::Index n, double scale) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(rng, -scale, scale);
  return v;
}

Eigen::MatrixXd matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double scale) {
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = uniform(rng, -scale, scale);
  return M;
}

Eigen::MatrixXd skew(std::mt19937_64& rng, Eigen::Index n, double scale) {
  const Eigen::MatrixXd M = matrix(rng, n, n, scale);
  Eigen::MatrixXd S(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    S(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      S(i, j) = M(i, j);
      S(j, i) = -M(i, j);
    }
  }
  return S;
}

Eigen::MatrixXd invertible(std::mt19937_64& rng, Eigen::Index n) {
  return Eigen::MatrixXd::Identity(n, n) + matrix(rng, n, n, 0.4 / std::sqrt(double(std::max<Eigen::Index>(n, 1))));
}

SpaceDesc space(std::mt19937_64& rng, int n, bool dual_level) {
  return {n, "F" + std::to_string(uniform_int(rng, 0, 9)), dual_level};
}

SpecialAffinePoint point(std::mt19937_64& rng, const SpaceDesc& s) { return {s, vector(rng, s.n, 2.0), uniform(rng, -2, 2)}; }

DualPoint dual_point(std::mt19937_64& rng, const SpaceDesc& primal) {
  return {primal, vector(rng, primal.n, 2.0), uniform(rng, -2, 2)};
}

SpecialMorphism morphism(std::mt19937_64& rng, const SpaceDesc& domain, const SpaceDesc& codomain) {
  return {domain,
          codomain,
          matrix(rng, codomain.n, domain.n),
          vector(rng, codomain.n),
          vector(rng, domain.n),
          uniform(rng, -1, 1)};
}

ScalarField polynomial(std::mt19937_64& rng, int m, int degree, double scale) {
  ScalarField out = ScalarField::constant(uniform(rng, -scale, scale));
  const int terms = 2 * m + 2;
  for (int t = 0; t < terms; ++t) {
    const int d = uniform_int(rng, 1, degree);
    ScalarField mono = ScalarField::constant(uniform(rng, -scale, scale));
    for (int k = 0; k < d; ++k) mono = mono * ScalarField::variable(uniform_int(rng, 0, m - 1));
    out = out + mono;
  }
  return out;
}

ScalarField field(std::mt19937_64& rng, int m) {
  auto linear = [&]() {
    ScalarField l = ScalarField::constant(uniform(rng, -1, 1));
    for (int i = 0; i < m; ++i) l = l + ScalarField::constant(uniform(rng, -1, 1)) * ScalarField::variable(i);
    return l;
  };
  ScalarField out = polynomial(rng, m, 3, 0.5);
  out = out + ScalarField::constant(uniform(rng, -1, 1)) * sin(linear());
  out = out + ScalarField::constant(uniform(rng, -1, 1)) * cos(linear());
  out = out + ScalarField::constant(uniform(rng, -0.5, 0.5)) * exp(ScalarField::constant(0.3) * linear());
  return out;
}

Scenario scenario(std::mt19937_64& rng, int m, bool curved) {
  Scenario s;
  s.dim = m;
  if (curved) {
    s.metric.m = m;
    s.metric.components.assign(std::size_t(m), std::vector<ScalarField>(std::size_t(m)));
    for (int i = 0; i < m; ++i) {
      ScalarField arg = ScalarField::constant(uniform(rng, -1, 1));
      for (int k = 0; k < m; ++k) arg = arg + ScalarField::constant(uniform(rng, -0.5, 0.5)) * ScalarField::variable(k);
      const ScalarField bump = ScalarField::constant(1.0) + ScalarField::constant(uniform(rng, -0.1, 0.1)) * sin(arg);
      s.metric.components[std::size_t(i)][std::size_t(i)] = i == 0 ? bump : -bump;
    }
  } else {
    s.metric = Metric::minkowski(m);
  }
  for (int i = 0; i < m; ++i) s.potential.push_back(polynomial(rng, m, 2, 0.5));
  s.params = {uniform(rng, 0.5, 2.0), uniform(rng, -1.5, 1.5)};
  s.gauge = {polynomial(rng, m, 2, 0.5), "ref"};
  s.x0 = vector(rng, m, 0.5);
  s.v0 = timelike(rng, s.metric, s.x0);
  return s;
}

Eigen::VectorXd timelike(std::mt19937_64& rng, const Metric& g, const Eigen::VectorXd& x, double speed) {
  const Eigen::MatrixXd G = g.at(x);
  for (;;) {
    Eigen::VectorXd v(x.size());
    v[0] = 1.0;
    const Eigen::VectorXd w = vector(rng, x.size() - 1, 1.0);
    const double nw = w.norm();
    v.tail(x.size() - 1) = nw > 0 ? Eigen::VectorXd(w * (uniform(rng, 0.0, speed) / nw)) : w;
    const double gvv = v.dot(G * v);
    if (gvv > 0.05) return v / std::sqrt(gvv);
  }
}

}  // namespace affmech::sampling
