#include "hypefcm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "hypefcm/baselines.hpp"
#include "hypefcm/embedding.hpp"
#include "hypefcm/metrics.hpp"
#include "hypefcm/version.hpp"

namespace hypefcm {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::size_t kMaxRepeats = 1000;
constexpr std::size_t kMaxJobs = 128;

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string fmt_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

struct Task {
    std::size_t cell;
    std::size_t rep;
};

// Effective per-cell parameters a worker needs.
struct CellPlan {
    double alpha;
    std::size_t k_filter;
    FiltrationMode filtration;
    std::string arm;
};

RepeatResult compute_repeat(const ExperimentSpec& spec, const Dataset& data,
                            const Matrix& features, std::size_t clusters,
                            const CellPlan& plan, std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    ClusteringRun run;
    switch (spec.method) {
    case Method::hypefcm: {
        EmbeddingConfig ec;
        ec.margin = spec.margin;  // z-scoring already applied upstream
        auto points = embed(features, Curvature(plan.alpha), ec);
        HypeFcmConfig cfg;
        cfg.clusters = clusters;
        cfg.fuzziness = spec.fuzziness;
        cfg.k_filter = plan.k_filter;
        cfg.filtration = plan.filtration;
        cfg.max_iters = spec.max_iters;
        cfg.tol = spec.tol;
        cfg.seed = seed;
        run = hypefcm_run(points, cfg);
        break;
    }
    case Method::fcm: {
        FcmConfig cfg;
        cfg.clusters = clusters;
        cfg.fuzziness = spec.fuzziness;
        cfg.max_iters = spec.max_iters;
        cfg.tol = spec.tol;
        cfg.seed = seed;
        run = fcm_run(features, cfg);
        break;
    }
    case Method::kmeans: {
        KMeansConfig cfg;
        cfg.clusters = clusters;
        cfg.max_iters = spec.max_iters;
        cfg.seed = seed;
        run = kmeans_run(features, cfg);
        break;
    }
    }
    auto t1 = std::chrono::steady_clock::now();

    RepeatResult r;
    r.seed = seed;
    r.iterations = run.iterations;
    r.converged = run.converged;
    r.objective = run.trace.empty() ? 0.0 : run.trace.back().objective;
    r.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (data.labels) {
        r.ari = adjusted_rand_index(*data.labels, run.labels);
        r.nmi = normalized_mutual_info(*data.labels, run.labels);
    }
    return r;
}

Aggregate aggregate_of(const std::vector<RepeatResult>& repeats) {
    Aggregate a;
    double iters = 0.0;
    for (const auto& r : repeats) iters += static_cast<double>(r.iterations);
    a.iterations_mean = iters / static_cast<double>(repeats.size());
    if (!repeats.empty() && repeats.front().ari) {
        auto stats = [&](auto get) {
            double mean = 0.0;
            for (const auto& r : repeats) mean += get(r);
            mean /= static_cast<double>(repeats.size());
            double var = 0.0;
            for (const auto& r : repeats) {
                double d = get(r) - mean;
                var += d * d;
            }
            var /= static_cast<double>(repeats.size());
            return std::pair{mean, std::sqrt(var)};
        };
        auto [am, as] = stats([](const RepeatResult& r) { return *r.ari; });
        auto [nm, ns] = stats([](const RepeatResult& r) { return *r.nmi; });
        a.ari_mean = am;
        a.ari_std = as;
        a.nmi_mean = nm;
        a.nmi_std = ns;
    }
    return a;
}

std::size_t resolve_clusters(const ExperimentSpec& spec, const Dataset& data) {
    if (spec.clusters > 0) return spec.clusters;
    if (data.n_classes && *data.n_classes > 0) return *data.n_classes;
    throw std::invalid_argument(
        "clusters not given and dataset carries no class count");
}

void validate_spec(const ExperimentSpec& spec, const Dataset& data,
                   std::size_t clusters) {
    if (spec.repeats < 1 || spec.repeats > kMaxRepeats)
        throw std::invalid_argument("repeats must lie in [1, " +
                                    std::to_string(kMaxRepeats) + "]");
    if (spec.jobs < 1 || spec.jobs > kMaxJobs)
        throw std::invalid_argument("jobs must lie in [1, " +
                                    std::to_string(kMaxJobs) + "]");
    if (clusters > data.size())
        throw std::invalid_argument("clusters exceed the dataset size");
    if (spec.method != Method::kmeans && !(spec.fuzziness > 1.0))
        throw std::invalid_argument("fuzziness must exceed 1");
    if (!(spec.tol > 0.0))
        throw std::invalid_argument("tol must be positive");
    if (spec.max_iters < 1)
        throw std::invalid_argument("max_iters must be >= 1");
    if (spec.method == Method::hypefcm) {
        if (!(spec.margin > 0.0 && spec.margin < 1.0))
            throw std::invalid_argument("margin must lie in (0, 1)");
    }
}

void validate_cell(const CellPlan& plan, std::size_t n, std::size_t clusters) {
    if (!(plan.alpha > 0.0) || !std::isfinite(plan.alpha))
        throw std::invalid_argument("alpha must be positive");
    if (plan.filtration == FiltrationMode::per_centroid &&
        (plan.k_filter < 1 || plan.k_filter > n))
        throw std::invalid_argument("k_filter must lie in [1, n] for per_centroid");
    if (plan.filtration == FiltrationMode::per_point &&
        (plan.k_filter < 1 || plan.k_filter > clusters))
        throw std::invalid_argument("k_filter must lie in [1, clusters] for per_point");
}

// Runs all cell x repeat tasks on `jobs` workers. Slots are preallocated, so
// scheduling order cannot affect the output.
std::vector<CellResult> run_cells(const ExperimentSpec& spec, const Dataset& data,
                                  std::size_t clusters,
                                  const std::vector<CellPlan>& plans) {
    Matrix features = spec.zscore ? standardize(data.features) : data.features;

    std::vector<CellResult> cells(plans.size());
    std::vector<Task> tasks;
    tasks.reserve(plans.size() * spec.repeats);
    for (std::size_t c = 0; c < plans.size(); ++c) {
        cells[c].alpha = plans[c].alpha;
        cells[c].k_filter = plans[c].k_filter;
        cells[c].filtration = plans[c].filtration;
        cells[c].arm = plans[c].arm;
        cells[c].repeats.resize(spec.repeats);
        for (std::size_t r = 0; r < spec.repeats; ++r) tasks.push_back({c, r});
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            std::size_t t = next.fetch_add(1);
            if (t >= tasks.size()) return;
            const Task& task = tasks[t];
            try {
                cells[task.cell].repeats[task.rep] =
                    compute_repeat(spec, data, features, clusters, plans[task.cell],
                                   spec.base_seed + task.rep);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(tasks.size());
                return;
            }
        }
    };

    std::size_t n_workers = std::min(spec.jobs, tasks.size());
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (auto& cell : cells) cell.aggregate = aggregate_of(cell.repeats);
    return cells;
}

ordered_json spec_to_json(const ExperimentSpec& spec) {
    ordered_json j;
    j["method"] = to_string(spec.method);
    j["clusters"] = spec.clusters;
    j["alpha"] = spec.alpha;
    j["k_filter"] = spec.k_filter;
    j["filtration"] = to_string(spec.filtration);
    j["fuzziness"] = spec.fuzziness;
    j["max_iters"] = spec.max_iters;
    j["tol"] = spec.tol;
    j["base_seed"] = spec.base_seed;
    j["repeats"] = spec.repeats;
    j["margin"] = spec.margin;
    j["zscore"] = spec.zscore;
    j["jobs"] = spec.jobs;
    return j;
}

ordered_json optional_to_json(const std::optional<double>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
    case Method::hypefcm: return "hypefcm";
    case Method::fcm: return "fcm";
    case Method::kmeans: return "kmeans";
    }
    return "?";
}

std::string to_string(FiltrationMode mode) {
    switch (mode) {
    case FiltrationMode::per_centroid: return "per_centroid";
    case FiltrationMode::per_point: return "per_point";
    case FiltrationMode::off: return "off";
    }
    return "?";
}

std::string to_string(OutputFormat f) {
    return f == OutputFormat::json ? "json" : "csv";
}

Method method_from_string(std::string_view s) {
    if (s == "hypefcm") return Method::hypefcm;
    if (s == "fcm") return Method::fcm;
    if (s == "kmeans") return Method::kmeans;
    throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

FiltrationMode filtration_from_string(std::string_view s) {
    if (s == "per_centroid") return FiltrationMode::per_centroid;
    if (s == "per_point") return FiltrationMode::per_point;
    if (s == "off") return FiltrationMode::off;
    throw std::invalid_argument("unknown filtration mode '" + std::string(s) + "'");
}

OutputFormat format_from_string(std::string_view s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw std::invalid_argument("unknown output format '" + std::string(s) + "'");
}

Dataset resolve_dataset(const std::string& ref, std::optional<std::size_t> label_column) {
    constexpr std::string_view prefix = "builtin:";
    if (ref.starts_with(prefix))
        return builtin_dataset(std::string_view(ref).substr(prefix.size()));
    CsvOptions opts;
    opts.label_column = label_column;
    return load_csv(ref, opts);
}

ExperimentRecord run_experiment(const ExperimentSpec& spec, const Dataset& data) {
    std::size_t clusters = resolve_clusters(spec, data);
    validate_spec(spec, data, clusters);
    CellPlan plan{spec.alpha, spec.k_filter, spec.filtration, ""};
    if (spec.method == Method::hypefcm) validate_cell(plan, data.size(), clusters);

    ExperimentRecord rec;
    rec.kind = "run";
    rec.spec = spec;
    rec.dataset_name = data.name;
    rec.n = data.size();
    rec.p = data.dim();
    rec.clusters_used = clusters;
    rec.cells = run_cells(spec, data, clusters, {plan});
    return rec;
}

ExperimentRecord run_grid(const ExperimentSpec& spec, const Dataset& data,
                          std::vector<double> alphas, std::vector<std::size_t> ks) {
    if (spec.method != Method::hypefcm)
        throw std::invalid_argument("grid sweeps are defined for hypefcm only");
    if (alphas.empty() || ks.empty())
        throw std::invalid_argument("grid needs at least one alpha and one k");
    std::size_t clusters = resolve_clusters(spec, data);
    validate_spec(spec, data, clusters);

    ExperimentRecord rec;
    rec.kind = "grid";
    rec.spec = spec;
    rec.dataset_name = data.name;
    rec.n = data.size();
    rec.p = data.dim();
    rec.clusters_used = clusters;

    bool substituted = false;
    for (double& a : alphas) {
        if (a <= 0.0) {
            a = 0.1;
            substituted = true;
        }
    }
    if (substituted) {
        alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
        rec.notes.push_back(
            "alpha <= 0 lies outside the ball domain; substituted 0.1");
    }

    std::vector<CellPlan> plans;
    plans.reserve(alphas.size() * ks.size());
    for (double a : alphas)
        for (std::size_t k : ks)
            plans.push_back({a, k, spec.filtration, ""});
    for (const auto& plan : plans) validate_cell(plan, data.size(), clusters);

    rec.cells = run_cells(spec, data, clusters, plans);
    return rec;
}

ExperimentRecord run_ablation(const ExperimentSpec& spec, const Dataset& data,
                              std::vector<std::size_t> ks) {
    if (spec.method != Method::hypefcm)
        throw std::invalid_argument("ablation is defined for hypefcm only");
    if (ks.empty())
        throw std::invalid_argument("ablation needs at least one k");
    std::size_t clusters = resolve_clusters(spec, data);
    validate_spec(spec, data, clusters);

    ExperimentRecord rec;
    rec.kind = "ablation";
    rec.spec = spec;
    rec.dataset_name = data.name;
    rec.n = data.size();
    rec.p = data.dim();
    rec.clusters_used = clusters;

    FiltrationMode filtered_mode = spec.filtration == FiltrationMode::off
                                       ? FiltrationMode::per_centroid
                                       : spec.filtration;
    if (spec.filtration == FiltrationMode::off)
        rec.notes.push_back("filtered arm uses per_centroid (spec had filtration off)");

    std::vector<CellPlan> plans;
    plans.reserve(ks.size() * 2);
    for (std::size_t k : ks) {
        plans.push_back({spec.alpha, k, filtered_mode, "filtered"});
        plans.push_back({spec.alpha, k, FiltrationMode::off, "unfiltered"});
    }
    for (const auto& plan : plans)
        if (plan.filtration != FiltrationMode::off)
            validate_cell(plan, data.size(), clusters);

    rec.cells = run_cells(spec, data, clusters, plans);
    return rec;
}

std::vector<double> default_grid_alphas() {
    std::vector<double> alphas;
    for (int i = 1; i <= 10; ++i) alphas.push_back(static_cast<double>(i) / 10.0);
    for (int v = 101; v <= 1000; v += 100) alphas.push_back(static_cast<double>(v));
    return alphas;
}

std::vector<std::size_t> default_grid_ks() {
    std::vector<std::size_t> ks(15);
    for (std::size_t i = 0; i < ks.size(); ++i) ks[i] = i + 1;
    return ks;
}

std::string to_json_string(const ExperimentRecord& record) {
    ordered_json j;
    j["schema_version"] = 1;
    j["library_version"] = version_string;
    j["kind"] = record.kind;
    j["dataset"] = {{"source", record.spec.dataset},
                    {"name", record.dataset_name},
                    {"n", record.n},
                    {"p", record.p},
                    {"clusters_used", record.clusters_used}};
    j["config"] = spec_to_json(record.spec);
    j["notes"] = record.notes;

    ordered_json cells = ordered_json::array();
    for (const auto& cell : record.cells) {
        ordered_json c;
        c["alpha"] = cell.alpha;
        c["k_filter"] = cell.k_filter;
        c["filtration"] = to_string(cell.filtration);
        c["arm"] = cell.arm;
        c["aggregate"] = {{"ari_mean", optional_to_json(cell.aggregate.ari_mean)},
                          {"ari_std", optional_to_json(cell.aggregate.ari_std)},
                          {"nmi_mean", optional_to_json(cell.aggregate.nmi_mean)},
                          {"nmi_std", optional_to_json(cell.aggregate.nmi_std)},
                          {"iterations_mean", cell.aggregate.iterations_mean}};
        ordered_json reps = ordered_json::array();
        for (const auto& r : cell.repeats) {
            ordered_json rj;
            rj["seed"] = r.seed;
            rj["ari"] = optional_to_json(r.ari);
            rj["nmi"] = optional_to_json(r.nmi);
            rj["iterations"] = r.iterations;
            rj["converged"] = r.converged;
            rj["objective"] = r.objective;
            rj["wall_ms"] = r.wall_ms;
            reps.push_back(std::move(rj));
        }
        c["repeats"] = std::move(reps);
        cells.push_back(std::move(c));
    }
    j["cells"] = std::move(cells);
    return j.dump(2) + "\n";
}

std::string to_csv_string(const ExperimentRecord& record) {
    std::string out =
        "kind,dataset,n,p,method,clusters,alpha,k_filter,filtration,arm,fuzziness,"
        "max_iters,tol,margin,zscore,seed,ari,nmi,iterations,converged,objective,"
        "wall_ms\n";
    for (const auto& cell : record.cells) {
        for (const auto& r : cell.repeats) {
            out += record.kind + ',' + record.dataset_name + ',' +
                   std::to_string(record.n) + ',' + std::to_string(record.p) + ',' +
                   to_string(record.spec.method) + ',' +
                   std::to_string(record.clusters_used) + ',' + fmt(cell.alpha) + ',' +
                   std::to_string(cell.k_filter) + ',' + to_string(cell.filtration) +
                   ',' + cell.arm + ',' + fmt(record.spec.fuzziness) + ',' +
                   std::to_string(record.spec.max_iters) + ',' + fmt(record.spec.tol) +
                   ',' + fmt(record.spec.margin) + ',' +
                   (record.spec.zscore ? "true" : "false") + ',' +
                   std::to_string(r.seed) + ',' + (r.ari ? fmt(*r.ari) : "") + ',' +
                   (r.nmi ? fmt(*r.nmi) : "") + ',' + std::to_string(r.iterations) +
                   ',' + (r.converged ? "true" : "false") + ',' + fmt(r.objective) +
                   ',' + fmt(r.wall_ms) + '\n';
        }
    }
    return out;
}

void write_record(const ExperimentRecord& record, const std::filesystem::path& path,
                  OutputFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write '" + path.string() + "'");
    out << (format == OutputFormat::json ? to_json_string(record)
                                         : to_csv_string(record));
    if (!out)
        throw DataError("write failed for '" + path.string() + "'");
}

std::string summarize(const ExperimentRecord& record) {
    auto cell_scores = [](const CellResult& cell) {
        std::string s;
        if (cell.aggregate.ari_mean) {
            s += "ARI " + fmt_fixed(*cell.aggregate.ari_mean, 4) + " +- " +
                 fmt_fixed(*cell.aggregate.ari_std, 4) + ", NMI " +
                 fmt_fixed(*cell.aggregate.nmi_mean, 4) + " +- " +
                 fmt_fixed(*cell.aggregate.nmi_std, 4);
        } else {
            double obj = 0.0;
            for (const auto& r : cell.repeats) obj += r.objective;
            obj /= static_cast<double>(cell.repeats.size());
            s += "mean objective " + fmt_fixed(obj, 6);
        }
        s += ", iters " + fmt_fixed(cell.aggregate.iterations_mean, 1);
        return s;
    };

    std::string head = record.kind + " " + to_string(record.spec.method) + " on " +
                       record.dataset_name + " (n=" + std::to_string(record.n) +
                       ", p=" + std::to_string(record.p) +
                       ", c=" + std::to_string(record.clusters_used) + ", " +
                       std::to_string(record.spec.repeats) + " repeats)";

    if (record.kind == "run")
        return head + ": " + cell_scores(record.cells.front()) + "\n";

    if (record.kind == "grid") {
        const CellResult* best = &record.cells.front();
        for (const auto& cell : record.cells) {
            bool better;
            if (cell.aggregate.ari_mean)
                better = *cell.aggregate.ari_mean > best->aggregate.ari_mean.value_or(-2.0);
            else {
                auto mean_obj = [](const CellResult& c) {
                    double s = 0.0;
                    for (const auto& r : c.repeats) s += r.objective;
                    return s / static_cast<double>(c.repeats.size());
                };
                better = mean_obj(cell) < mean_obj(*best);
            }
            if (better) best = &cell;
        }
        return head + ": " + std::to_string(record.cells.size()) +
               " cells, best at alpha=" + fmt(best->alpha) +
               ", k=" + std::to_string(best->k_filter) + ": " + cell_scores(*best) +
               "\n";
    }

    std::string out = head + ":\n";
    for (std::size_t i = 0; i + 1 < record.cells.size(); i += 2) {
        const auto& f = record.cells[i];
        const auto& u = record.cells[i + 1];
        out += "  k=" + std::to_string(f.k_filter) + ": filtered " + cell_scores(f) +
               " | unfiltered " + cell_scores(u) + "\n";
    }
    return out;
}

}  // namespace hypefcm
