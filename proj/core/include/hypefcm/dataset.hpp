#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hypefcm/linalg.hpp"

namespace hypefcm {

/// Raised for malformed or unreadable data. Messages carry 1-based row and
/// column positions when the failure has one.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Dataset {
    std::string name;
    Matrix features;                          // n x p
    std::optional<std::vector<int>> labels;   // ground truth when known
    std::optional<std::size_t> n_classes;     // distinct label count

    std::size_t size() const { return features.rows(); }
    std::size_t dim() const { return features.cols(); }
};

struct CsvOptions {
    char delimiter = ',';
    bool header = false;
    std::optional<std::size_t> label_column;  // 0-based field index, categorical
};

/// Parses numeric CSV text. Quoted fields with "" escapes are accepted; every
/// row must have the same field count; feature fields must parse as doubles.
/// Integer label fields keep their values, other label strings are encoded by
/// first appearance.
Dataset parse_csv(std::string_view text, std::string name, const CsvOptions& opts = {});

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& opts = {});

/// Writes features (shortest round-trip decimal form) plus a trailing label
/// column when labels are present.
void save_csv(const Dataset& data, const std::filesystem::path& path, char delimiter = ',');

/// `clusters` isotropic unit-variance Gaussians with centers `separation`
/// apart (adjacent centers, in sigma units), sizes differing by at most one.
Dataset gen_blobs(std::size_t n, std::size_t clusters, std::size_t dim,
                  double separation, std::uint64_t seed);

/// Four-component 2-d smiley: two eye blobs, a mouth arc, a face ring.
Dataset gen_smile_like(std::size_t n, std::uint64_t seed);

/// Two concentric 2-d annuli.
Dataset gen_rings(std::size_t n, std::uint64_t seed);

/// Named built-ins: "iris" (embedded 150 x 4, 3 classes) and fixed-seed
/// "blobs", "smile", "rings".
Dataset builtin_dataset(std::string_view name);
std::vector<std::string> builtin_names();

}  // namespace hypefcm
