#pragma once

#include <cstddef>
#include <vector>

#include "hypefcm/linalg.hpp"

namespace hypefcm {

struct IterationStats {
    double objective;     // J_m after this iteration's updates
    double weight_delta;  // Frobenius change in W; assignment changes for k-means
};

/// Common result shape for all clustering methods.
struct ClusteringRun {
    std::vector<int> labels;
    Matrix weights;              // final memberships, rows on the simplex
    std::vector<Vec> centroids;  // ball coordinates for hypefcm, Euclidean otherwise
    double alpha = 0.0;          // curvature of the centroid chart, 0 = Euclidean
    std::vector<IterationStats> trace;
    std::size_t iterations = 0;
    bool converged = false;
};

}  // namespace hypefcm
