#pragma once

#include <vector>

#include "hypefcm/geometry.hpp"
#include "hypefcm/linalg.hpp"

namespace hypefcm {

struct EmbeddingConfig {
    double margin = 0.9;   // fraction of the ball radius the farthest point lands on
    bool zscore = false;   // standardize columns before centering/scaling
};

/// Column z-scoring; zero-variance columns are centered only.
Matrix standardize(const Matrix& x);

/// Places the rows of `x` inside D_alpha^p: subtract column means, then scale
/// uniformly so the farthest row sits at margin * (1/sqrt(alpha)). A dataset
/// of identical rows maps entirely to the origin. Pairwise Euclidean distance
/// ratios are preserved exactly. Requires alpha > 0 and margin in (0, 1).
std::vector<BallPoint> embed(const Matrix& x, Curvature curvature,
                             const EmbeddingConfig& config = {});

}  // namespace hypefcm
