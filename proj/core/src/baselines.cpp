#include "hypefcm/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hypefcm/hypefcm.hpp"
#include "init_common.hpp"

namespace hypefcm {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void validate_common(const Matrix& points, std::size_t clusters, std::size_t max_iters,
                     const char* op) {
    if (points.rows() == 0 || points.cols() == 0)
        throw std::invalid_argument(std::string(op) + ": no points");
    if (!all_finite(points.flat()))
        throw std::invalid_argument(std::string(op) + ": non-finite value in input");
    if (clusters < 1 || clusters > points.rows())
        throw std::invalid_argument(std::string(op) + ": clusters must satisfy 1 <= c <= n");
    if (max_iters < 1)
        throw std::invalid_argument(std::string(op) + ": max_iters must be >= 1");
}

}  // namespace

ClusteringRun fcm_run(const Matrix& points, const FcmConfig& config) {
    validate_common(points, config.clusters, config.max_iters, "fcm_run");
    if (!(config.fuzziness > 1.0) || !std::isfinite(config.fuzziness))
        throw std::invalid_argument("fcm_run: fuzziness must exceed 1");
    if (!(config.tol > 0.0))
        throw std::invalid_argument("fcm_run: tol must be positive");

    std::size_t n = points.rows(), p = points.cols(), c = config.clusters;
    double m = config.fuzziness;

    std::mt19937_64 rng(config.seed);
    Matrix w = detail::dirichlet_rows(n, c, rng);
    Matrix centroids(c, p);
    {
        auto idx = detail::sample_distinct(n, c, rng);
        for (std::size_t j = 0; j < c; ++j)
            std::copy_n(points.row(idx[j]).data(), p, centroids.row(j).data());
    }

    ClusteringRun result;
    Matrix u(n, c);
    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        for (std::size_t j = 0; j < c; ++j) {
            Vec acc(p, 0.0);
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double wm = std::pow(w(i, j), m);
                for (std::size_t d = 0; d < p; ++d) acc[d] += wm * points(i, d);
                total += wm;
            }
            if (total == 0.0) continue;  // keep previous centroid
            for (std::size_t d = 0; d < p; ++d) centroids(j, d) = acc[d] / total;
        }

        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < c; ++j)
                u(i, j) = sq_dist(points.row(i), centroids.row(j));

        Matrix w_next(n, c);
        double inv_exp = 1.0 / (m - 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t zeros = 0;
            for (std::size_t j = 0; j < c; ++j)
                if (u(i, j) == 0.0) ++zeros;
            if (zeros > 0) {
                for (std::size_t j = 0; j < c; ++j)
                    w_next(i, j) = u(i, j) == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
                continue;
            }
            for (std::size_t j = 0; j < c; ++j) {
                double denom = 0.0;
                for (std::size_t l = 0; l < c; ++l)
                    denom += std::pow(u(i, j) / u(i, l), inv_exp);
                w_next(i, j) = 1.0 / denom;
            }
        }

        double delta = frobenius_diff(w_next, w);
        double j_m = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < c; ++j)
                j_m += std::pow(w_next(i, j), m) * u(i, j);
        result.trace.push_back({j_m, delta});

        w = std::move(w_next);
        if (delta <= config.tol) {
            result.converged = true;
            break;
        }
    }

    result.iterations = result.trace.size();
    result.labels = defuzzify(w);
    result.weights = std::move(w);
    result.alpha = 0.0;
    result.centroids.reserve(c);
    for (std::size_t j = 0; j < c; ++j)
        result.centroids.emplace_back(centroids.row(j).begin(), centroids.row(j).end());
    return result;
}

ClusteringRun kmeans_run(const Matrix& points, const KMeansConfig& config) {
    validate_common(points, config.clusters, config.max_iters, "kmeans_run");
    std::size_t n = points.rows(), p = points.cols(), c = config.clusters;

    std::mt19937_64 rng(config.seed);
    Matrix centroids(c, p);
    {
        auto idx = detail::sample_distinct(n, c, rng);
        for (std::size_t j = 0; j < c; ++j)
            std::copy_n(points.row(idx[j]).data(), p, centroids.row(j).data());
    }

    ClusteringRun result;
    std::vector<int> labels(n, -1);
    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        std::size_t changed = 0;
        double inertia = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < c; ++j) {
                double d = sq_dist(points.row(i), centroids.row(j));
                if (d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
            if (labels[i] != static_cast<int>(best)) ++changed;
            labels[i] = static_cast<int>(best);
            inertia += best_d;
        }
        result.trace.push_back({inertia, static_cast<double>(changed)});
        if (changed == 0) {
            result.converged = true;
            break;
        }

        Matrix sums(c, p);
        std::vector<std::size_t> counts(c, 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto row = points.row(i);
            auto dst = sums.row(static_cast<std::size_t>(labels[i]));
            for (std::size_t d = 0; d < p; ++d) dst[d] += row[d];
            ++counts[static_cast<std::size_t>(labels[i])];
        }
        std::vector<std::size_t> taken;
        for (std::size_t j = 0; j < c; ++j) {
            if (counts[j] > 0) {
                for (std::size_t d = 0; d < p; ++d) centroids(j, d) = sums(j, d) / counts[j];
                continue;
            }
            // re-seed at the point farthest from its own centroid
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (std::find(taken.begin(), taken.end(), i) != taken.end()) continue;
                double d = sq_dist(points.row(i),
                                   centroids.row(static_cast<std::size_t>(labels[i])));
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            taken.push_back(far);
            std::copy_n(points.row(far).data(), p, centroids.row(j).data());
        }
    }

    result.iterations = result.trace.size();
    result.labels = labels;
    result.weights = Matrix(n, c);
    for (std::size_t i = 0; i < n; ++i)
        result.weights(i, static_cast<std::size_t>(labels[i])) = 1.0;
    result.alpha = 0.0;
    result.centroids.reserve(c);
    for (std::size_t j = 0; j < c; ++j)
        result.centroids.emplace_back(centroids.row(j).begin(), centroids.row(j).end());
    return result;
}

}  // namespace hypefcm
