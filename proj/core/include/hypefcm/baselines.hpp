#pragma once

#include <cstdint>

#include "hypefcm/clustering.hpp"

namespace hypefcm {

struct FcmConfig {
    std::size_t clusters = 2;
    double fuzziness = 2.0;
    std::size_t max_iters = 300;
    double tol = 1e-5;
    std::uint64_t seed = 0;
};

struct KMeansConfig {
    std::size_t clusters = 2;
    std::size_t max_iters = 300;
    std::uint64_t seed = 0;
};

/// Euclidean fuzzy c-means via exact alternating minimization. Shares its
/// initialization draws (Dirichlet rows, then centroid sample) with
/// hypefcm_run, so equal seeds give equal starting states.
ClusteringRun fcm_run(const Matrix& points, const FcmConfig& config);

/// Lloyd's k-means. An emptied cluster is re-seeded at the point farthest
/// from its currently assigned centroid. Converges when no assignment moves.
ClusteringRun kmeans_run(const Matrix& points, const KMeansConfig& config);

}  // namespace hypefcm
