#pragma once

#include <cstdint>
#include <vector>

#include "hypefcm/clustering.hpp"
#include "hypefcm/geometry.hpp"

// Filtration-based hyperbolic fuzzy c-means. One iteration moves each
// centroid along the aggregated tangent direction of its members
// (exp/log on the ball), recomputes squared geodesic distances, drops
// distant point-centroid pairs (the filtration), and renormalizes the
// surviving memberships.

namespace hypefcm {

enum class FiltrationMode {
    per_centroid,  // each centroid keeps its k nearest points
    per_point,     // each point keeps its k nearest centroids
    off,
};

struct HypeFcmConfig {
    std::size_t clusters = 2;
    double fuzziness = 2.0;  // m > 1
    std::size_t k_filter = 5;
    FiltrationMode filtration = FiltrationMode::per_centroid;
    std::size_t max_iters = 300;
    double tol = 1e-5;  // Frobenius threshold on the membership change
    std::uint64_t seed = 0;
};

using EmbeddedPoints = std::vector<BallPoint>;

/// Squared geodesic distances (points x centroids) plus the filtration
/// survival mask. Values are never modified by filtering; `kept` records
/// which entries the membership update may use.
struct DistanceMatrix {
    Matrix values;
    std::vector<std::uint8_t> kept;

    std::size_t rows() const { return values.rows(); }
    std::size_t cols() const { return values.cols(); }
    bool kept_at(std::size_t i, std::size_t j) const {
        return kept[i * values.cols() + j] != 0;
    }
    double filtered(std::size_t i, std::size_t j) const {
        return kept_at(i, j) ? values(i, j) : 0.0;
    }
};

/// Random row-stochastic matrix: rows drawn from Dirichlet(1/c, ..., 1/c).
/// Equals the initial weights of a run started with the same seed.
Matrix init_weights(std::size_t n, std::size_t c, std::uint64_t seed);

/// One Riemannian update per centroid: the weighted tangent mean of all
/// points at the previous centroid, pushed forward with exp. A centroid whose
/// weight column sums to zero keeps its previous position.
std::vector<BallPoint> update_centroids(const EmbeddedPoints& points, const Matrix& weights,
                                        const std::vector<BallPoint>& previous,
                                        double fuzziness);

DistanceMatrix compute_distances(const EmbeddedPoints& points,
                                 const std::vector<BallPoint>& centroids);

/// Marks all but the k nearest entries per centroid column (or per point row)
/// as dropped. Ties keep the lower index. k must satisfy 1 <= k <= n for
/// per_centroid, 1 <= k <= c for per_point; off ignores k.
void apply_filtration(DistanceMatrix& distances, std::size_t k, FiltrationMode mode);

/// Membership update over surviving entries, computed in ratio form
/// w_ij = 1 / sum_l (u_ij / u_il)^(1/(m-1)) for overflow safety. Surviving
/// zero distances split the row's membership equally; a row with no
/// surviving entries falls back to its unfiltered distances.
Matrix update_weights(const DistanceMatrix& distances, double fuzziness);

/// J_m = sum_ij w_ij^m d_H(x_i, v_j)^2, always on unfiltered distances.
double objective(const EmbeddedPoints& points, const Matrix& weights,
                 const std::vector<BallPoint>& centroids, double fuzziness);

/// Row-wise argmax; ties resolve to the lowest column index.
std::vector<int> defuzzify(const Matrix& weights);

ClusteringRun hypefcm_run(const EmbeddedPoints& points, const HypeFcmConfig& config);

}  // namespace hypefcm
