#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hypefcm {

/// Cross-tabulation of two labelings over the same items. Label values are
/// re-encoded by first appearance, so any integer labels work.
struct ContingencyTable {
    std::size_t n = 0;
    std::vector<std::vector<std::uint64_t>> counts;  // rows: labeling a, cols: labeling b
    std::vector<std::uint64_t> row_sums;
    std::vector<std::uint64_t> col_sums;

    static ContingencyTable from_labels(std::span<const int> a, std::span<const int> b);
};

/// Adjusted Rand index in [-1, 1]; 1 iff the partitions are identical up to
/// relabeling. When the expected-index correction degenerates (both
/// partitions trivial: single cluster or all singletons) the partitions are
/// necessarily identical and the result is 1.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

/// Normalized mutual information with the arithmetic-mean normalizer
/// I / ((H(a) + H(b)) / 2), natural log, 0 log 0 = 0. If both entropies are
/// zero the partitions are identical single clusters (1.0); if exactly one
/// is zero there is no shared information (0.0).
double normalized_mutual_info(std::span<const int> a, std::span<const int> b);

}  // namespace hypefcm
