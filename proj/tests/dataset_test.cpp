#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include <doctest.h>

#include "hypefcm/baselines.hpp"
#include "hypefcm/dataset.hpp"
#include "hypefcm/metrics.hpp"
#include "test_util.hpp"

using namespace hypefcm;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "hypefcm_dataset_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("parse_csv: features with a categorical label column") {
    CsvOptions opts;
    opts.label_column = 2;
    auto d = parse_csv("1,2,a\n3,4,a\n5,6,b\n", "inline", opts);
    REQUIRE(d.size() == 3);
    REQUIRE(d.dim() == 2);
    CHECK(d.features(0, 0) == 1.0);
    CHECK(d.features(1, 1) == 4.0);
    CHECK(d.features(2, 0) == 5.0);
    REQUIRE(d.labels.has_value());
    CHECK((*d.labels)[0] == 0);
    CHECK((*d.labels)[1] == 0);
    CHECK((*d.labels)[2] == 1);
    CHECK(*d.n_classes == 2);
}

TEST_CASE("parse_csv: integer labels keep their values") {
    CsvOptions opts;
    opts.label_column = 1;
    auto d = parse_csv("1.5,5\n2.5,7\n3.5,5\n", "inline", opts);
    CHECK((*d.labels)[0] == 5);
    CHECK((*d.labels)[1] == 7);
    CHECK((*d.labels)[2] == 5);
    CHECK(*d.n_classes == 2);
}

TEST_CASE("parse_csv: header skipping and alternative delimiter") {
    CsvOptions opts;
    opts.header = true;
    opts.delimiter = ';';
    auto d = parse_csv("x;y\n1;2\n3;4\n", "inline", opts);
    CHECK(d.size() == 2);
    CHECK(d.features(1, 1) == 4.0);
    CHECK_FALSE(d.labels.has_value());
}

TEST_CASE("parse_csv: quoted fields") {
    CsvOptions opts;
    opts.label_column = 1;
    auto d = parse_csv("\"1.25\",\"a,b\"\n2,\"c\"\n", "inline", opts);
    CHECK(d.features(0, 0) == 1.25);
    CHECK((*d.labels)[0] == 0);
    CHECK((*d.labels)[1] == 1);
}

TEST_CASE("parse_csv: windows line endings and blank lines") {
    auto d = parse_csv("1,2\r\n\r\n3,4\r\n", "inline", {});
    CHECK(d.size() == 2);
    CHECK(d.features(1, 0) == 3.0);
}

TEST_CASE("parse_csv: malformed input carries locations") {
    auto msg_of = [](std::string text) {
        return testutil::thrown_message<DataError>(
            [&] { parse_csv(text, "inline", {}); });
    };
    CHECK(msg_of("1,2\n3\n").find("row 2") != std::string::npos);
    CHECK(msg_of("1,oops\n").find("row 1, column 2") != std::string::npos);
    CHECK_THROWS_AS(parse_csv("", "inline", {}), DataError);
    CHECK_THROWS_AS(parse_csv("\n\n", "inline", {}), DataError);
    // header=false on a file with a header row fails on the first cell
    CHECK(msg_of("x,y\n1,2\n").find("row 1, column 1") != std::string::npos);
    CsvOptions bad;
    bad.label_column = 9;
    CHECK_THROWS_AS(parse_csv("1,2\n", "inline", bad), DataError);
    CHECK_THROWS_AS(parse_csv("\"1,2\n", "inline", {}), DataError);
    CHECK_THROWS_AS(load_csv("/nonexistent/nope.csv", {}), DataError);
}

TEST_CASE("save_csv then load_csv reproduces doubles bit-exactly") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Dataset d;
    d.name = "roundtrip";
    d.features = Matrix(25, 3);
    for (double& v : d.features.flat()) v = gauss(rng) * std::pow(10.0, gauss(rng) * 6);
    d.features(0, 0) = 1e-17;
    d.features(0, 1) = -12345.678900000001;
    d.features(0, 2) = 0.1;
    d.labels = std::vector<int>(25);
    for (std::size_t i = 0; i < 25; ++i) (*d.labels)[i] = static_cast<int>(i % 4);
    d.n_classes = 4;

    auto path = temp_file("roundtrip.csv");
    save_csv(d, path);
    CsvOptions opts;
    opts.label_column = 3;
    auto back = load_csv(path, opts);
    REQUIRE(back.size() == d.size());
    REQUIRE(back.dim() == d.dim());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.dim(); ++j)
            CHECK(back.features(i, j) == d.features(i, j));
    CHECK(*back.labels == *d.labels);
    std::filesystem::remove(path);
}

TEST_CASE("iris: file copy equals the builtin table") {
    CsvOptions opts;
    opts.label_column = 4;
    auto from_file = load_csv(std::filesystem::path(HYPEFCM_DATA_DIR) / "iris.csv", opts);
    auto builtin = builtin_dataset("iris");
    REQUIRE(from_file.size() == 150);
    REQUIRE(from_file.dim() == 4);
    CHECK(*from_file.n_classes == 3);
    REQUIRE(builtin.size() == 150);
    for (std::size_t i = 0; i < 150; ++i) {
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(from_file.features(i, j) == builtin.features(i, j));
        CHECK((*from_file.labels)[i] == (*builtin.labels)[i]);
    }
}

TEST_CASE("gen_blobs: sizes, labels and geometry") {
    auto d = gen_blobs(7, 3, 2, 6.0, 5);
    REQUIRE(d.size() == 7);
    std::vector<std::size_t> counts(3, 0);
    for (int l : *d.labels) ++counts[static_cast<std::size_t>(l)];
    CHECK(counts[0] == 3);
    CHECK(counts[1] == 2);
    CHECK(counts[2] == 2);
    CHECK(*d.n_classes == 3);

    // cluster means of a large sample stay near the planted centers
    auto big = gen_blobs(3000, 3, 2, 50.0, 6);
    Vec mean0(2, 0.0), mean1(2, 0.0);
    std::size_t c0 = 0, c1 = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        if ((*big.labels)[i] == 0) {
            mean0[0] += big.features(i, 0);
            mean0[1] += big.features(i, 1);
            ++c0;
        } else if ((*big.labels)[i] == 1) {
            mean1[0] += big.features(i, 0);
            mean1[1] += big.features(i, 1);
            ++c1;
        }
    }
    double dx = mean0[0] / c0 - mean1[0] / c1;
    double dy = mean0[1] / c0 - mean1[1] / c1;
    CHECK(std::sqrt(dx * dx + dy * dy) == doctest::Approx(50.0).epsilon(0.02));
}

TEST_CASE("gen_blobs: separated clusters are recoverable") {
    auto d = gen_blobs(300, 3, 2, 20.0, 8);
    KMeansConfig cfg;
    cfg.clusters = 3;
    cfg.seed = 2;
    auto run = kmeans_run(d.features, cfg);
    CHECK(adjusted_rand_index(*d.labels, run.labels) == doctest::Approx(1.0));
}

TEST_CASE("gen_blobs: one-dimensional layout and guards") {
    auto d = gen_blobs(10, 2, 1, 30.0, 9);
    CHECK(d.dim() == 1);
    CHECK_THROWS_AS(gen_blobs(2, 3, 2, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_blobs(10, 0, 2, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_blobs(10, 2, 0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_blobs(10, 2, 2, -1.0, 0), std::invalid_argument);
}

TEST_CASE("generators: deterministic per seed") {
    auto a = gen_blobs(50, 3, 2, 8.0, 12);
    auto b = gen_blobs(50, 3, 2, 8.0, 12);
    auto c = gen_blobs(50, 3, 2, 8.0, 13);
    CHECK(a.features == b.features);
    CHECK(*a.labels == *b.labels);
    CHECK(a.features != c.features);

    auto r1 = gen_rings(100, 4);
    auto r2 = gen_rings(100, 4);
    CHECK(r1.features == r2.features);

    auto s1 = gen_smile_like(160, 4);
    auto s2 = gen_smile_like(160, 4);
    CHECK(s1.features == s2.features);
}

TEST_CASE("gen_rings: radial structure") {
    auto d = gen_rings(200, 3);
    CHECK(*d.n_classes == 2);
    for (std::size_t i = 0; i < d.size(); ++i) {
        double r = std::hypot(d.features(i, 0), d.features(i, 1));
        if ((*d.labels)[i] == 0)
            CHECK(r < 2.0);
        else
            CHECK(r > 2.0);
    }
    CHECK_THROWS_AS(gen_rings(1, 0), std::invalid_argument);
}

TEST_CASE("gen_smile_like: four components in sensible places") {
    auto d = gen_smile_like(400, 7);
    CHECK(*d.n_classes == 4);
    std::vector<std::size_t> counts(4, 0);
    for (int l : *d.labels) ++counts[static_cast<std::size_t>(l)];
    CHECK(counts[0] == 50);
    CHECK(counts[1] == 50);
    CHECK(counts[2] == 100);
    CHECK(counts[3] == 200);
    for (std::size_t i = 0; i < d.size(); ++i) {
        double r = std::hypot(d.features(i, 0), d.features(i, 1));
        if ((*d.labels)[i] == 3) CHECK(r == doctest::Approx(4.0).epsilon(0.25));
        if ((*d.labels)[i] == 2) CHECK(d.features(i, 1) < 0.0);
        if ((*d.labels)[i] <= 1) CHECK(d.features(i, 1) > 0.0);
    }
    CHECK_THROWS_AS(gen_smile_like(4, 0), std::invalid_argument);
}

TEST_CASE("builtin_dataset: names resolve, unknown rejected") {
    for (const auto& name : builtin_names()) {
        auto d = builtin_dataset(name);
        CHECK(d.size() > 0);
        CHECK(d.labels.has_value());
    }
    CHECK_THROWS_AS(builtin_dataset("nope"), DataError);
}
