#include "hypefcm/embedding.hpp"

#include <cmath>
#include <stdexcept>

namespace hypefcm {

Matrix standardize(const Matrix& x) {
    if (x.rows() == 0 || x.cols() == 0)
        throw std::invalid_argument("standardize: empty matrix");
    Matrix out = x;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) mean += x(i, j);
        mean /= static_cast<double>(x.rows());
        double var = 0.0;
        for (std::size_t i = 0; i < x.rows(); ++i) {
            double d = x(i, j) - mean;
            var += d * d;
        }
        var /= static_cast<double>(x.rows());
        double sd = std::sqrt(var);
        for (std::size_t i = 0; i < x.rows(); ++i) {
            out(i, j) = x(i, j) - mean;
            if (sd > 0.0) out(i, j) /= sd;
        }
    }
    return out;
}

std::vector<BallPoint> embed(const Matrix& x, Curvature curvature,
                             const EmbeddingConfig& config) {
    if (x.rows() == 0 || x.cols() == 0)
        throw std::invalid_argument("embed: empty matrix");
    if (!all_finite(x.flat()))
        throw std::invalid_argument("embed: non-finite value in input");
    double a = curvature.alpha();
    if (a <= 0.0)
        throw std::invalid_argument("embed: alpha must be positive");
    if (!(config.margin > 0.0 && config.margin < 1.0))
        throw std::invalid_argument("embed: margin must lie in (0, 1)");

    Matrix work = config.zscore ? standardize(x) : x;

    Vec mean(work.cols(), 0.0);
    for (std::size_t i = 0; i < work.rows(); ++i)
        for (std::size_t j = 0; j < work.cols(); ++j) mean[j] += work(i, j);
    for (double& m : mean) m /= static_cast<double>(work.rows());

    double max_norm = 0.0;
    for (std::size_t i = 0; i < work.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < work.cols(); ++j) {
            double d = work(i, j) - mean[j];
            s += d * d;
        }
        max_norm = std::max(max_norm, std::sqrt(s));
    }

    // all rows identical: everything sits at the origin
    double scale = max_norm > 0.0 ? config.margin / (std::sqrt(a) * max_norm) : 0.0;

    std::vector<BallPoint> out;
    out.reserve(work.rows());
    for (std::size_t i = 0; i < work.rows(); ++i) {
        Vec c(work.cols());
        for (std::size_t j = 0; j < work.cols(); ++j)
            c[j] = (work(i, j) - mean[j]) * scale;
        out.emplace_back(std::move(c), curvature);
    }
    return out;
}

}  // namespace hypefcm
