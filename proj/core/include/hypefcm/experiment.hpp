#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypefcm/dataset.hpp"
#include "hypefcm/hypefcm.hpp"

// Repeat/sweep driver shared by the CLI and the test suites. All scheduling
// is deterministic: repeat r of any cell runs with seed base_seed + r, and
// results land in preallocated slots, so the worker count never changes the
// output.

namespace hypefcm {

enum class Method { hypefcm, fcm, kmeans };
enum class OutputFormat { json, csv };

std::string to_string(Method m);
std::string to_string(FiltrationMode mode);
std::string to_string(OutputFormat f);
Method method_from_string(std::string_view s);
FiltrationMode filtration_from_string(std::string_view s);
OutputFormat format_from_string(std::string_view s);

struct ExperimentSpec {
    std::string dataset;       // file path or builtin:NAME
    Method method = Method::hypefcm;
    std::size_t clusters = 0;  // 0: take the dataset's class count
    double alpha = 1.0;
    std::size_t k_filter = 5;
    FiltrationMode filtration = FiltrationMode::per_centroid;
    double fuzziness = 2.0;
    std::size_t max_iters = 300;
    double tol = 1e-5;
    std::uint64_t base_seed = 42;
    std::size_t repeats = 15;
    double margin = 0.9;
    bool zscore = false;
    std::size_t jobs = 1;
};

struct RepeatResult {
    std::uint64_t seed = 0;
    std::optional<double> ari;  // absent when the dataset has no ground truth
    std::optional<double> nmi;
    std::size_t iterations = 0;
    bool converged = false;
    double objective = 0.0;  // final J_m (inertia for k-means)
    double wall_ms = 0.0;    // timing only, excluded from determinism checks
};

struct Aggregate {
    std::optional<double> ari_mean, ari_std;  // population std
    std::optional<double> nmi_mean, nmi_std;
    double iterations_mean = 0.0;
};

/// One parameter point. A plain run has a single cell; grids have one per
/// (alpha, k); ablations have a filtered and an unfiltered arm per k.
struct CellResult {
    double alpha = 0.0;
    std::size_t k_filter = 0;
    FiltrationMode filtration = FiltrationMode::off;  // effective mode of this cell
    std::string arm;  // "filtered" / "unfiltered" for ablation cells, else empty
    std::vector<RepeatResult> repeats;
    Aggregate aggregate;
};

struct ExperimentRecord {
    std::string kind;  // "run" | "grid" | "ablation"
    ExperimentSpec spec;
    std::string dataset_name;
    std::size_t n = 0, p = 0;
    std::size_t clusters_used = 0;
    std::vector<CellResult> cells;
    std::vector<std::string> notes;
};

/// Loads `ref`: a "builtin:NAME" reference or a CSV path. CSV files may end
/// in a trailing label column, selected with label_column.
Dataset resolve_dataset(const std::string& ref,
                        std::optional<std::size_t> label_column = std::nullopt);

ExperimentRecord run_experiment(const ExperimentSpec& spec, const Dataset& data);

/// Cross product sweep (hypefcm only); cells ordered alpha-major. Alphas
/// <= 0 are replaced by 0.1 (the ball needs alpha > 0) with a note.
ExperimentRecord run_grid(const ExperimentSpec& spec, const Dataset& data,
                          std::vector<double> alphas, std::vector<std::size_t> ks);

/// Filtration on/off comparison at fixed alpha (hypefcm only), seeds paired
/// across the two arms of every k.
ExperimentRecord run_ablation(const ExperimentSpec& spec, const Dataset& data,
                              std::vector<std::size_t> ks);

std::vector<double> default_grid_alphas();   // 0.1..1 step 0.1, then 101..901 step 100
std::vector<std::size_t> default_grid_ks();  // 1..15

std::string to_json_string(const ExperimentRecord& record);
std::string to_csv_string(const ExperimentRecord& record);
void write_record(const ExperimentRecord& record, const std::filesystem::path& path,
                  OutputFormat format);

/// Short human-readable digest for terminal output.
std::string summarize(const ExperimentRecord& record);

}  // namespace hypefcm
