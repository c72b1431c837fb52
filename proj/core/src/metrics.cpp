#include "hypefcm/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace hypefcm {

namespace {

std::vector<std::size_t> encode(std::span<const int> labels, std::size_t& k) {
    std::unordered_map<int, std::size_t> ids;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, fresh] = ids.emplace(labels[i], ids.size());
        out[i] = it->second;
    }
    k = ids.size();
    return out;
}

std::uint64_t pairs(std::uint64_t m) { return m * (m - 1) / 2; }

}  // namespace

ContingencyTable ContingencyTable::from_labels(std::span<const int> a,
                                               std::span<const int> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("ContingencyTable: label vectors differ in length");
    if (a.empty())
        throw std::invalid_argument("ContingencyTable: empty labelings");

    std::size_t ka = 0, kb = 0;
    auto ea = encode(a, ka);
    auto eb = encode(b, kb);

    ContingencyTable t;
    t.n = a.size();
    t.counts.assign(ka, std::vector<std::uint64_t>(kb, 0));
    t.row_sums.assign(ka, 0);
    t.col_sums.assign(kb, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        ++t.counts[ea[i]][eb[i]];
        ++t.row_sums[ea[i]];
        ++t.col_sums[eb[i]];
    }
    return t;
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
    auto t = ContingencyTable::from_labels(a, b);
    if (t.n < 2)
        throw std::invalid_argument("adjusted_rand_index: need at least two items");

    std::uint64_t sum_ij = 0;
    for (const auto& row : t.counts)
        for (std::uint64_t c : row) sum_ij += pairs(c);
    std::uint64_t sum_a = 0, sum_b = 0;
    for (std::uint64_t r : t.row_sums) sum_a += pairs(r);
    for (std::uint64_t c : t.col_sums) sum_b += pairs(c);
    std::uint64_t total = pairs(t.n);

    // Degenerate correction: (sum_a + sum_b)/2 == sum_a*sum_b/total only when
    // both partitions are trivial, in which case they are identical.
    bool both_single = sum_a == total && sum_b == total;
    bool both_singletons = sum_a == 0 && sum_b == 0;
    if (both_single || both_singletons) return 1.0;

    double expected = static_cast<double>(sum_a) * static_cast<double>(sum_b) /
                      static_cast<double>(total);
    double max_index = (static_cast<double>(sum_a) + static_cast<double>(sum_b)) / 2.0;
    return (static_cast<double>(sum_ij) - expected) / (max_index - expected);
}

double normalized_mutual_info(std::span<const int> a, std::span<const int> b) {
    auto t = ContingencyTable::from_labels(a, b);
    double n = static_cast<double>(t.n);

    auto entropy = [n](const std::vector<std::uint64_t>& sums) {
        double h = 0.0;
        for (std::uint64_t s : sums) {
            if (s == 0) continue;
            double p = static_cast<double>(s) / n;
            h -= p * std::log(p);
        }
        return h;
    };

    double ha = entropy(t.row_sums);
    double hb = entropy(t.col_sums);
    if (ha == 0.0 && hb == 0.0) return 1.0;
    if (ha == 0.0 || hb == 0.0) return 0.0;

    double mi = 0.0;
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
            std::uint64_t c = t.counts[i][j];
            if (c == 0) continue;
            double pij = static_cast<double>(c) / n;
            double pi = static_cast<double>(t.row_sums[i]) / n;
            double qj = static_cast<double>(t.col_sums[j]) / n;
            mi += pij * std::log(pij / (pi * qj));
        }
    }
    return mi / ((ha + hb) / 2.0);
}

}  // namespace hypefcm
