#pragma once

#include <span>
#include <vector>

#include "hypefcm/linalg.hpp"

// Gyrovector arithmetic on the alpha-parameterized Poincare ball
//
//   D_alpha^p = { v in R^p : alpha * ||v||^2 < 1 },   radius 1/sqrt(alpha).
//
// alpha > 0 selects a hyperbolic geometry; alpha = 0 is accepted only by the
// operations that have a well-defined Euclidean limit (mobius_add,
// mobius_scalar, exp_map, log_map), where they degenerate to vector addition
// and scaling.

namespace hypefcm {

/// Curvature parameter of the ball. Finite, non-negative.
class Curvature {
public:
    explicit Curvature(double alpha);
    double alpha() const { return alpha_; }
    bool euclidean() const { return alpha_ == 0.0; }

private:
    double alpha_;
};

/// A validated point of D_alpha^p. Construction clamps points that are on or
/// numerically past the boundary back inside (radial rescale to
/// alpha*||v||^2 = 1 - 1e-10), so downstream tanh^-1 arguments stay finite.
class BallPoint {
public:
    BallPoint(Vec coords, Curvature curvature);

    std::span<const double> coords() const { return coords_; }
    double alpha() const { return alpha_; }
    Curvature curvature() const { return Curvature(alpha_); }
    std::size_t dim() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }

private:
    Vec coords_;
    double alpha_;
};

/// Element of the tangent space at `base`. Any finite vector of matching
/// dimension is valid.
struct TangentVector {
    Vec coords;
    BallPoint base;

    TangentVector(Vec c, BallPoint b);
    std::size_t dim() const { return coords.size(); }
};

/// Mobius addition v (+)_alpha w. Non-commutative, non-associative.
BallPoint mobius_add(const BallPoint& v, const BallPoint& w);

/// Mobius scalar multiple lambda (x)_alpha v; lambda may be any finite real.
BallPoint mobius_scalar(double lambda, const BallPoint& v);

/// Geodesic distance d_H(v, w) = (2/sqrt(alpha)) tanh^-1(sqrt(alpha) ||-v (+) w||).
/// Requires alpha > 0.
double hyperbolic_distance(const BallPoint& v, const BallPoint& w);

/// Riemannian logarithm of y at base x, in the tangent space at x.
TangentVector log_map(const BallPoint& x, const BallPoint& y);

/// Riemannian exponential of tangent vector v at its base point.
BallPoint exp_map(const TangentVector& v);

/// Distance on the unit Poincare disc/ball via the acosh form
///   d = acosh(1 + 2||x-y||^2 / ((1-||x||^2)(1-||y||^2))).
/// Unit ball only (alpha = 1); used as an independent check against
/// hyperbolic_distance.
double disc_distance_acosh(std::span<const double> x, std::span<const double> y);

/// Isometric lift of a unit-ball point onto the hyperboloid
///   x0 = (1+||x||^2)/(1-||x||^2),  xi = 2 x_i/(1-||x||^2),
/// satisfying -x0^2 + sum xi^2 = -1. Requires alpha = 1.
Vec to_hyperboloid(const BallPoint& x);

/// Hyperboloid-model distance d = acosh(-<a, b>_M) with the Minkowski inner
/// product <a,b>_M = -a0 b0 + sum ai bi. Inputs must satisfy the hyperboloid
/// constraint; the acosh argument is clamped at 1 against rounding.
double hyperboloid_distance(std::span<const double> a, std::span<const double> b);

/// One row of a Euclidean-limit report: deviations of exp/log from their
/// flat-space counterparts at a given alpha.
struct LimitSample {
    double alpha;
    double exp_deviation;  // || exp_x(y - x) - y ||
    double log_deviation;  // || log_x(y) - (y - x) ||
};

/// Evaluates exp/log at base x toward target y across a decreasing alpha
/// sequence and reports how far each sits from the Euclidean limit.
/// Deviations must vanish as alpha -> 0.
std::vector<LimitSample> euclidean_limit_check(const Vec& x, const Vec& y,
                                               std::span<const double> alpha_sequence);

}  // namespace hypefcm
