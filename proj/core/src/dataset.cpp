#include "hypefcm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "iris_data.hpp"

namespace hypefcm {

namespace {

std::string loc(std::size_t row, std::size_t col) {
    return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

// Splits one CSV record. Quoted fields may contain the delimiter, newlines do
// not occur inside records here (records are pre-split by line).
std::vector<std::string> split_record(std::string_view line, char delim,
                                      std::size_t row_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && cur.empty()) {
            quoted = true;
        } else if (c == delim) {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted)
        throw DataError("unterminated quote in row " + std::to_string(row_no));
    fields.push_back(std::move(cur));
    return fields;
}

double parse_double(const std::string& field, std::size_t row_no, std::size_t col_no) {
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    while (first != last && (*first == ' ' || *first == '\t')) ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    while (ptr != last && (*ptr == ' ' || *ptr == '\t' || *ptr == '\r')) ++ptr;
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
        throw DataError("cannot parse '" + field + "' as a number at " +
                        loc(row_no, col_no));
    return value;
}

std::optional<int> try_parse_int(const std::string& field) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
    return value;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::size_t distinct_count(const std::vector<int>& labels) {
    std::vector<int> u = labels;
    std::sort(u.begin(), u.end());
    return static_cast<std::size_t>(std::unique(u.begin(), u.end()) - u.begin());
}

}  // namespace

Dataset parse_csv(std::string_view text, std::string name, const CsvOptions& opts) {
    std::vector<std::vector<std::string>> records;
    std::size_t row_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = nl == std::string_view::npos
                                    ? text.substr(pos)
                                    : text.substr(pos, nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++row_no;
        if (line.empty()) continue;
        records.push_back(split_record(line, opts.delimiter, row_no));
    }

    std::size_t skip = opts.header ? 1 : 0;
    if (records.size() <= skip)
        throw DataError("no data rows in '" + name + "'");

    std::size_t width = records[skip].size();
    if (opts.label_column && *opts.label_column >= width)
        throw DataError("label column " + std::to_string(*opts.label_column) +
                        " out of range for " + std::to_string(width) + " fields");
    std::size_t p = width - (opts.label_column ? 1 : 0);
    if (p == 0)
        throw DataError("no feature columns in '" + name + "'");

    std::size_t n = records.size() - skip;
    Matrix features(n, p);
    std::vector<int> labels;
    std::map<std::string, int> label_codes;
    bool labels_numeric = true;

    for (std::size_t r = 0; r < n; ++r) {
        const auto& rec = records[r + skip];
        std::size_t row_loc = r + skip + 1;
        if (rec.size() != width)
            throw DataError("row " + std::to_string(row_loc) + " has " +
                            std::to_string(rec.size()) + " fields, expected " +
                            std::to_string(width));
        std::size_t j = 0;
        for (std::size_t f = 0; f < width; ++f) {
            if (opts.label_column && f == *opts.label_column) {
                auto iv = try_parse_int(rec[f]);
                if (iv) {
                    labels.push_back(*iv);
                } else {
                    labels_numeric = false;
                    auto [it, fresh] = label_codes.emplace(
                        rec[f], static_cast<int>(label_codes.size()));
                    labels.push_back(it->second);
                }
            } else {
                features(r, j++) = parse_double(rec[f], row_loc, f + 1);
            }
        }
    }

    // mixed numeric/text label values: fall back to first-appearance codes
    if (opts.label_column && !labels_numeric && !label_codes.empty() &&
        labels.size() == n) {
        std::map<std::string, int> codes;
        labels.clear();
        for (std::size_t r = 0; r < n; ++r) {
            const auto& f = records[r + skip][*opts.label_column];
            auto [it, fresh] = codes.emplace(f, static_cast<int>(codes.size()));
            labels.push_back(it->second);
        }
    }

    Dataset d;
    d.name = std::move(name);
    d.features = std::move(features);
    if (opts.label_column) {
        d.n_classes = distinct_count(labels);
        d.labels = std::move(labels);
    }
    return d;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str(), path.filename().string(), opts);
}

void save_csv(const Dataset& data, const std::filesystem::path& path, char delimiter) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write '" + path.string() + "'");
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (std::size_t j = 0; j < data.dim(); ++j) {
            if (j) out << delimiter;
            out << format_double(data.features(i, j));
        }
        if (data.labels) out << delimiter << (*data.labels)[i];
        out << '\n';
    }
    if (!out)
        throw DataError("write failed for '" + path.string() + "'");
}

Dataset gen_blobs(std::size_t n, std::size_t clusters, std::size_t dim,
                  double separation, std::uint64_t seed) {
    if (clusters == 0 || n < clusters)
        throw std::invalid_argument("gen_blobs: need n >= clusters >= 1");
    if (dim == 0)
        throw std::invalid_argument("gen_blobs: dim must be >= 1");
    if (!(separation >= 0.0) || !std::isfinite(separation))
        throw std::invalid_argument("gen_blobs: separation must be finite and >= 0");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::normal_distribution<double> unit(0.0, 1.0);

    std::vector<Vec> centers(clusters, Vec(dim, 0.0));
    if (clusters > 1) {
        if (dim == 1) {
            for (std::size_t c = 0; c < clusters; ++c)
                centers[c][0] = separation * static_cast<double>(c);
        } else {
            double radius = separation / (2.0 * std::sin(std::numbers::pi /
                                                         static_cast<double>(clusters)));
            double rot = angle(rng);
            for (std::size_t c = 0; c < clusters; ++c) {
                double t = rot + 2.0 * std::numbers::pi * static_cast<double>(c) /
                                     static_cast<double>(clusters);
                centers[c][0] = radius * std::cos(t);
                centers[c][1] = radius * std::sin(t);
            }
        }
    }

    Dataset d;
    d.name = "blobs";
    d.features = Matrix(n, dim);
    d.labels = std::vector<int>(n);
    d.n_classes = clusters;

    std::size_t base = n / clusters, extra = n % clusters;
    std::size_t i = 0;
    for (std::size_t c = 0; c < clusters; ++c) {
        std::size_t count = base + (c < extra ? 1 : 0);
        for (std::size_t k = 0; k < count; ++k, ++i) {
            for (std::size_t j = 0; j < dim; ++j)
                d.features(i, j) = centers[c][j] + unit(rng);
            (*d.labels)[i] = static_cast<int>(c);
        }
    }
    return d;
}

Dataset gen_smile_like(std::size_t n, std::uint64_t seed) {
    if (n < 8)
        throw std::invalid_argument("gen_smile_like: need n >= 8");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    std::size_t eye = n / 8;
    std::size_t mouth = n / 4;
    std::size_t face = n - 2 * eye - mouth;

    Dataset d;
    d.name = "smile";
    d.features = Matrix(n, 2);
    d.labels = std::vector<int>(n);
    d.n_classes = 4;

    std::size_t i = 0;
    auto put = [&](double x, double y, int label) {
        d.features(i, 0) = x;
        d.features(i, 1) = y;
        (*d.labels)[i] = label;
        ++i;
    };

    for (std::size_t k = 0; k < eye; ++k)
        put(-1.2 + 0.15 * unit(rng), 1.0 + 0.15 * unit(rng), 0);
    for (std::size_t k = 0; k < eye; ++k)
        put(1.2 + 0.15 * unit(rng), 1.0 + 0.15 * unit(rng), 1);
    for (std::size_t k = 0; k < mouth; ++k) {
        double t = std::numbers::pi * (7.0 / 6.0 + u01(rng) * 2.0 / 3.0);
        double r = 2.2 + 0.08 * unit(rng);
        put(r * std::cos(t), r * std::sin(t) + 0.8, 2);
    }
    for (std::size_t k = 0; k < face; ++k) {
        double t = 2.0 * std::numbers::pi * u01(rng);
        double r = 4.0 + 0.1 * unit(rng);
        put(r * std::cos(t), r * std::sin(t), 3);
    }
    return d;
}

Dataset gen_rings(std::size_t n, std::uint64_t seed) {
    if (n < 2)
        throw std::invalid_argument("gen_rings: need n >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    Dataset d;
    d.name = "rings";
    d.features = Matrix(n, 2);
    d.labels = std::vector<int>(n);
    d.n_classes = 2;

    std::size_t inner = n - n / 2;
    for (std::size_t i = 0; i < n; ++i) {
        bool is_inner = i < inner;
        double radius = (is_inner ? 1.0 : 3.0) + 0.1 * unit(rng);
        double t = 2.0 * std::numbers::pi * u01(rng);
        d.features(i, 0) = radius * std::cos(t);
        d.features(i, 1) = radius * std::sin(t);
        (*d.labels)[i] = is_inner ? 0 : 1;
    }
    return d;
}

Dataset builtin_dataset(std::string_view name) {
    if (name == "iris") {
        Dataset d;
        d.name = "iris";
        d.features = Matrix(detail::kIrisRows, detail::kIrisCols);
        d.labels = std::vector<int>(detail::kIrisRows);
        d.n_classes = 3;
        for (std::size_t i = 0; i < detail::kIrisRows; ++i) {
            for (std::size_t j = 0; j < detail::kIrisCols; ++j)
                d.features(i, j) = detail::kIrisTable[i][j];
            (*d.labels)[i] = static_cast<int>(detail::kIrisTable[i][4]);
        }
        return d;
    }
    if (name == "blobs") return gen_blobs(300, 3, 2, 8.0, 1);
    if (name == "smile") return gen_smile_like(400, 1);
    if (name == "rings") return gen_rings(400, 1);
    throw DataError("unknown builtin dataset '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() { return {"iris", "blobs", "smile", "rings"}; }

}  // namespace hypefcm
