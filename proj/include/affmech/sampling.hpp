#pragma once

// Seeded random instances for property checks.

#include <random>

#include <Eigen/Dense>

#include "affmech/dynamics.hpp"
#include "affmech/expression.hpp"
#include "affmech/special_affine.hpp"

namespace affmech::sampling {

double uniform(std::mt19937_64& rng, double lo, double hi);
int uniform_int(std::mt19937_64& rng, int lo, int hi);  // inclusive

Eigen::VectorXd vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0);
Eigen::MatrixXd matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0);
Eigen::MatrixXd skew(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0);
/// Well-conditioned: identity plus a small perturbation.
Eigen::MatrixXd invertible(std::mt19937_64& rng, Eigen::Index n);

SpaceDesc space(std::mt19937_64& rng, int n, bool dual_level = false);
SpecialAffinePoint point(std::mt19937_64& rng, const SpaceDesc& s);
DualPoint dual_point(std::mt19937_64& rng, const SpaceDesc& primal);
SpecialMorphism morphism(std::mt19937_64& rng, const SpaceDesc& domain, const SpaceDesc& codomain);

/// A smooth field in x0..x{m-1}: a random cubic plus a few sin/cos/exp
/// terms, defined everywhere.
ScalarField field(std::mt19937_64& rng, int m);
/// A random polynomial of degree <= `degree`.
ScalarField polynomial(std::mt19937_64& rng, int m, int degree, double scale = 1.0);

/// Minkowski or a mildly curved diagonal metric, random smooth potential.
Scenario scenario(std::mt19937_64& rng, int m, bool curved);
/// Unit timelike vector for the metric at x, with spatial part of size <= speed.
Eigen::VectorXd timelike(std::mt19937_64& rng, const Metric& g, const Eigen::VectorXd& x, double speed = 0.8);

}  // namespace affmech::sampling
