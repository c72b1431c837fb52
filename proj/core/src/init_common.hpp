#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hypefcm/linalg.hpp"

// Shared initialization draws. hypefcm_run and fcm_run consume the generator
// in the same order (membership rows, then centroid indices) so runs with a
// shared seed start from identical states.

namespace hypefcm::detail {

inline Matrix dirichlet_rows(std::size_t n, std::size_t c, std::mt19937_64& rng) {
    std::gamma_distribution<double> gamma(1.0 / static_cast<double>(c), 1.0);
    Matrix w(n, c);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < c; ++j) {
            w(i, j) = gamma(rng);
            sum += w(i, j);
        }
        if (sum > 0.0) {
            for (std::size_t j = 0; j < c; ++j) w(i, j) /= sum;
        } else {
            for (std::size_t j = 0; j < c; ++j) w(i, j) = 1.0 / static_cast<double>(c);
        }
    }
    return w;
}

inline std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t c,
                                                std::mt19937_64& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < c; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(c);
    return idx;
}

}  // namespace hypefcm::detail
