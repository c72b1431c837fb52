#include "hypefcm/hypefcm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "init_common.hpp"

namespace hypefcm {

namespace {

void require_uniform_chart(const EmbeddedPoints& points, const char* op) {
    if (points.empty())
        throw std::invalid_argument(std::string(op) + ": no points");
    double alpha = points.front().alpha();
    std::size_t dim = points.front().dim();
    if (alpha <= 0.0)
        throw std::invalid_argument(std::string(op) + ": alpha must be positive");
    for (const auto& p : points) {
        if (p.alpha() != alpha)
            throw std::invalid_argument(std::string(op) + ": mixed curvatures");
        if (p.dim() != dim)
            throw std::invalid_argument(std::string(op) + ": mixed dimensions");
    }
}

void require_fuzziness(double m, const char* op) {
    if (!(m > 1.0) || !std::isfinite(m))
        throw std::invalid_argument(std::string(op) + ": fuzziness must exceed 1");
}

// Membership row over an explicit set of usable columns. Zero distances take
// the whole row, split equally.
void fill_row(std::span<double> w_row, std::span<const double> u_row,
              const std::vector<std::size_t>& usable, double m) {
    for (std::size_t j = 0; j < w_row.size(); ++j) w_row[j] = 0.0;

    std::size_t zeros = 0;
    for (std::size_t j : usable)
        if (u_row[j] == 0.0) ++zeros;
    if (zeros > 0) {
        for (std::size_t j : usable)
            if (u_row[j] == 0.0) w_row[j] = 1.0 / static_cast<double>(zeros);
        return;
    }

    double inv_exp = 1.0 / (m - 1.0);
    for (std::size_t j : usable) {
        double denom = 0.0;
        for (std::size_t l : usable)
            denom += std::pow(u_row[j] / u_row[l], inv_exp);
        w_row[j] = 1.0 / denom;
    }
}

}  // namespace

Matrix init_weights(std::size_t n, std::size_t c, std::uint64_t seed) {
    if (n == 0 || c == 0)
        throw std::invalid_argument("init_weights: n and c must be positive");
    std::mt19937_64 rng(seed);
    return detail::dirichlet_rows(n, c, rng);
}

std::vector<BallPoint> update_centroids(const EmbeddedPoints& points, const Matrix& weights,
                                        const std::vector<BallPoint>& previous,
                                        double fuzziness) {
    require_uniform_chart(points, "update_centroids");
    require_fuzziness(fuzziness, "update_centroids");
    std::size_t n = points.size(), c = previous.size();
    if (weights.rows() != n || weights.cols() != c)
        throw std::invalid_argument("update_centroids: weight shape mismatch");

    std::vector<BallPoint> next;
    next.reserve(c);
    for (std::size_t j = 0; j < c; ++j) {
        const BallPoint& v = previous[j];
        Vec tangent(v.dim(), 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double wm = std::pow(weights(i, j), fuzziness);
            if (wm == 0.0) continue;
            TangentVector lg = log_map(v, points[i]);
            for (std::size_t d = 0; d < tangent.size(); ++d)
                tangent[d] += wm * lg.coords[d];
            total += wm;
        }
        if (total == 0.0) {
            next.push_back(v);  // nothing assigned here, stay put
            continue;
        }
        for (double& t : tangent) t /= total;
        next.push_back(exp_map(TangentVector(std::move(tangent), v)));
    }
    return next;
}

DistanceMatrix compute_distances(const EmbeddedPoints& points,
                                 const std::vector<BallPoint>& centroids) {
    require_uniform_chart(points, "compute_distances");
    if (centroids.empty())
        throw std::invalid_argument("compute_distances: no centroids");
    std::size_t n = points.size(), c = centroids.size();
    DistanceMatrix out;
    out.values = Matrix(n, c);
    out.kept.assign(n * c, 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            double d = hyperbolic_distance(points[i], centroids[j]);
            out.values(i, j) = d * d;
        }
    }
    return out;
}

void apply_filtration(DistanceMatrix& distances, std::size_t k, FiltrationMode mode) {
    if (mode == FiltrationMode::off) return;
    std::size_t n = distances.rows(), c = distances.cols();
    if (k < 1)
        throw std::invalid_argument("apply_filtration: k must be >= 1");

    if (mode == FiltrationMode::per_centroid) {
        if (k > n)
            throw std::invalid_argument("apply_filtration: k exceeds point count");
        if (k == n) return;
        std::vector<std::size_t> order(n);
        for (std::size_t j = 0; j < c; ++j) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) {
                                 return distances.values(a, j) < distances.values(b, j);
                             });
            for (std::size_t r = k; r < n; ++r)
                distances.kept[order[r] * c + j] = 0;
        }
    } else {
        if (k > c)
            throw std::invalid_argument("apply_filtration: k exceeds centroid count");
        if (k == c) return;
        std::vector<std::size_t> order(c);
        for (std::size_t i = 0; i < n; ++i) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) {
                                 return distances.values(i, a) < distances.values(i, b);
                             });
            for (std::size_t r = k; r < c; ++r)
                distances.kept[i * c + order[r]] = 0;
        }
    }
}

Matrix update_weights(const DistanceMatrix& distances, double fuzziness) {
    require_fuzziness(fuzziness, "update_weights");
    std::size_t n = distances.rows(), c = distances.cols();
    Matrix w(n, c);
    std::vector<std::size_t> usable;
    std::vector<std::size_t> all(c);
    std::iota(all.begin(), all.end(), 0);

    for (std::size_t i = 0; i < n; ++i) {
        usable.clear();
        for (std::size_t j = 0; j < c; ++j)
            if (distances.kept_at(i, j)) usable.push_back(j);
        // a fully filtered-out point keeps taking part via its raw distances
        const auto& cols = usable.empty() ? all : usable;
        fill_row(w.row(i), distances.values.row(i), cols, fuzziness);
    }
    return w;
}

double objective(const EmbeddedPoints& points, const Matrix& weights,
                 const std::vector<BallPoint>& centroids, double fuzziness) {
    require_uniform_chart(points, "objective");
    require_fuzziness(fuzziness, "objective");
    if (weights.rows() != points.size() || weights.cols() != centroids.size())
        throw std::invalid_argument("objective: weight shape mismatch");
    double j_m = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < centroids.size(); ++j) {
            double d = hyperbolic_distance(points[i], centroids[j]);
            j_m += std::pow(weights(i, j), fuzziness) * d * d;
        }
    }
    return j_m;
}

std::vector<int> defuzzify(const Matrix& weights) {
    if (weights.rows() == 0 || weights.cols() == 0)
        throw std::invalid_argument("defuzzify: empty weight matrix");
    std::vector<int> labels(weights.rows());
    for (std::size_t i = 0; i < weights.rows(); ++i) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < weights.cols(); ++j)
            if (weights(i, j) > weights(i, best)) best = j;
        labels[i] = static_cast<int>(best);
    }
    return labels;
}

ClusteringRun hypefcm_run(const EmbeddedPoints& points, const HypeFcmConfig& config) {
    require_uniform_chart(points, "hypefcm_run");
    require_fuzziness(config.fuzziness, "hypefcm_run");
    std::size_t n = points.size(), c = config.clusters;
    if (c < 1 || c > n)
        throw std::invalid_argument("hypefcm_run: clusters must satisfy 1 <= c <= n");
    if (config.max_iters < 1)
        throw std::invalid_argument("hypefcm_run: max_iters must be >= 1");
    if (!(config.tol > 0.0))
        throw std::invalid_argument("hypefcm_run: tol must be positive");
    if (config.filtration == FiltrationMode::per_centroid && config.k_filter > n)
        throw std::invalid_argument("hypefcm_run: k_filter exceeds point count");
    if (config.filtration == FiltrationMode::per_point && config.k_filter > c)
        throw std::invalid_argument("hypefcm_run: k_filter exceeds cluster count");
    if (config.filtration != FiltrationMode::off && config.k_filter < 1)
        throw std::invalid_argument("hypefcm_run: k_filter must be >= 1");

    std::mt19937_64 rng(config.seed);
    Matrix w = detail::dirichlet_rows(n, c, rng);
    std::vector<BallPoint> centroids;
    centroids.reserve(c);
    for (std::size_t idx : detail::sample_distinct(n, c, rng))
        centroids.push_back(points[idx]);

    ClusteringRun result;
    result.alpha = points.front().alpha();
    for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
        centroids = update_centroids(points, w, centroids, config.fuzziness);
        DistanceMatrix d = compute_distances(points, centroids);
        apply_filtration(d, config.k_filter, config.filtration);
        Matrix w_next = update_weights(d, config.fuzziness);

        double delta = frobenius_diff(w_next, w);
        double j_m = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < c; ++j)
                j_m += std::pow(w_next(i, j), config.fuzziness) * d.values(i, j);
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
    result.centroids.reserve(c);
    for (const auto& v : centroids)
        result.centroids.emplace_back(v.coords().begin(), v.coords().end());
    return result;
}

}  // namespace hypefcm
