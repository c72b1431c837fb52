#include "hypefcm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hypefcm {

namespace {

// Keep tanh^-1 arguments strictly below 1 so boundary-adjacent points yield
// large finite distances instead of inf/NaN.
constexpr double kAtanhCap = 1.0 - 1e-15;
// Construction-time boundary clamp threshold on alpha*||v||^2.
constexpr double kBoundaryTol = 1e-10;

double safe_atanh(double t) {
    return std::atanh(std::clamp(t, 0.0, kAtanhCap));
}

void require_same_chart(const BallPoint& a, const BallPoint& b, const char* op) {
    if (a.alpha() != b.alpha())
        throw std::invalid_argument(std::string(op) + ": curvature mismatch");
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

double conformal_factor(const BallPoint& x) {
    return 2.0 / (1.0 - x.alpha() * norm_sq(x.coords()));
}

Vec add(std::span<const double> a, std::span<const double> b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(std::span<const double> a, std::span<const double> b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scaled(std::span<const double> a, double s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = s * a[i];
    return r;
}

BallPoint negated(const BallPoint& v) {
    return BallPoint(scaled(v.coords(), -1.0), v.curvature());
}

}  // namespace

Curvature::Curvature(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw std::invalid_argument("Curvature: alpha must be finite and >= 0");
}

BallPoint::BallPoint(Vec coords, Curvature curvature)
    : coords_(std::move(coords)), alpha_(curvature.alpha()) {
    if (coords_.empty())
        throw std::invalid_argument("BallPoint: empty coordinate vector");
    if (!all_finite(coords_))
        throw std::invalid_argument("BallPoint: non-finite coordinate");
    if (alpha_ == 0.0) return;  // Euclidean limit chart covers all of R^p
    double r2 = alpha_ * norm_sq(coords_);
    if (r2 >= 1.0 - kBoundaryTol) {
        double shrink = std::sqrt((1.0 - kBoundaryTol) / r2);
        for (double& c : coords_) c *= shrink;
    }
}

TangentVector::TangentVector(Vec c, BallPoint b) : coords(std::move(c)), base(std::move(b)) {
    if (coords.size() != base.dim())
        throw std::invalid_argument("TangentVector: dimension mismatch with base point");
    if (!all_finite(coords))
        throw std::invalid_argument("TangentVector: non-finite coordinate");
}

BallPoint mobius_add(const BallPoint& v, const BallPoint& w) {
    require_same_chart(v, w, "mobius_add");
    double a = v.alpha();
    if (a == 0.0) return BallPoint(add(v.coords(), w.coords()), v.curvature());

    double vw = dot(v.coords(), w.coords());
    double v2 = norm_sq(v.coords());
    double w2 = norm_sq(w.coords());
    double cv = 1.0 + 2.0 * a * vw + a * w2;
    double cw = 1.0 - a * v2;
    double den = 1.0 + 2.0 * a * vw + a * a * v2 * w2;

    Vec out(v.dim());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (cv * v[i] + cw * w[i]) / den;
    return BallPoint(std::move(out), v.curvature());
}

BallPoint mobius_scalar(double lambda, const BallPoint& v) {
    if (!std::isfinite(lambda))
        throw std::invalid_argument("mobius_scalar: non-finite scalar");
    double a = v.alpha();
    if (a == 0.0) return BallPoint(scaled(v.coords(), lambda), v.curvature());

    double r = norm(v.coords());
    if (r == 0.0) return v;
    double sa = std::sqrt(a);
    double mag = std::tanh(lambda * safe_atanh(sa * r)) / sa;
    return BallPoint(scaled(v.coords(), mag / r), v.curvature());
}

double hyperbolic_distance(const BallPoint& v, const BallPoint& w) {
    require_same_chart(v, w, "hyperbolic_distance");
    double a = v.alpha();
    if (a == 0.0)
        throw std::invalid_argument("hyperbolic_distance: alpha must be positive");
    double sa = std::sqrt(a);
    double gyro = norm(mobius_add(negated(v), w).coords());
    return 2.0 / sa * safe_atanh(sa * gyro);
}

TangentVector log_map(const BallPoint& x, const BallPoint& y) {
    require_same_chart(x, y, "log_map");
    double a = x.alpha();
    if (a == 0.0) return TangentVector(sub(y.coords(), x.coords()), x);

    BallPoint u = mobius_add(negated(x), y);
    double nu = norm(u.coords());
    if (nu == 0.0) return TangentVector(Vec(x.dim(), 0.0), x);

    double sa = std::sqrt(a);
    double lam = conformal_factor(x);
    double coef = 2.0 / (sa * lam) * safe_atanh(sa * nu) / nu;
    return TangentVector(scaled(u.coords(), coef), x);
}

BallPoint exp_map(const TangentVector& v) {
    const BallPoint& x = v.base;
    double a = x.alpha();
    if (a == 0.0) return BallPoint(add(x.coords(), v.coords), x.curvature());

    double nv = norm(v.coords);
    if (nv == 0.0) return x;

    double sa = std::sqrt(a);
    double lam = conformal_factor(x);
    double mag = std::tanh(sa * lam * nv / 2.0) / (sa * nv);
    BallPoint step(scaled(v.coords, mag), x.curvature());
    return mobius_add(x, step);
}

double disc_distance_acosh(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("disc_distance_acosh: dimension mismatch");
    double x2 = norm_sq(x);
    double y2 = norm_sq(y);
    if (x2 >= 1.0 || y2 >= 1.0)
        throw std::invalid_argument("disc_distance_acosh: point outside the unit ball");
    double d2 = norm_sq(sub(x, y));
    double arg = 1.0 + 2.0 * d2 / ((1.0 - x2) * (1.0 - y2));
    return std::acosh(std::max(arg, 1.0));
}

Vec to_hyperboloid(const BallPoint& x) {
    if (x.alpha() != 1.0)
        throw std::invalid_argument("to_hyperboloid: defined for the unit ball (alpha = 1)");
    double s = 1.0 - norm_sq(x.coords());
    Vec out(x.dim() + 1);
    out[0] = (1.0 + norm_sq(x.coords())) / s;
    for (std::size_t i = 0; i < x.dim(); ++i) out[i + 1] = 2.0 * x[i] / s;
    return out;
}

double hyperboloid_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("hyperboloid_distance: dimension mismatch");
    if (a.size() < 2)
        throw std::invalid_argument("hyperboloid_distance: need ambient dimension >= 2");
    double m = -a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) m += a[i] * b[i];
    return std::acosh(std::max(-m, 1.0));
}

std::vector<LimitSample> euclidean_limit_check(const Vec& x, const Vec& y,
                                               std::span<const double> alpha_sequence) {
    if (x.size() != y.size())
        throw std::invalid_argument("euclidean_limit_check: dimension mismatch");
    std::vector<LimitSample> report;
    report.reserve(alpha_sequence.size());
    for (double a : alpha_sequence) {
        Curvature c(a);
        BallPoint bx(x, c), by(y, c);
        Vec v = sub(by.coords(), bx.coords());

        BallPoint reached = exp_map(TangentVector(v, bx));
        double exp_dev = norm(sub(reached.coords(), by.coords()));

        TangentVector lg = log_map(bx, by);
        double log_dev = norm(sub(lg.coords, v));

        report.push_back({a, exp_dev, log_dev});
    }
    return report;
}

}  // namespace hypefcm
