#include <cmath>
#include <random>

#include <doctest.h>

#include "hypefcm/dataset.hpp"
#include "hypefcm/embedding.hpp"
#include "test_util.hpp"

using namespace hypefcm;
using testutil::max_abs_diff;

namespace {

Matrix random_matrix(std::size_t n, std::size_t p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 3.0);
    Matrix x(n, p);
    for (double& v : x.flat()) v = gauss(rng);
    return x;
}

}  // namespace

TEST_CASE("embed: identical rows collapse to the origin") {
    Matrix x(3, 2, 7.5);
    auto pts = embed(x, Curvature(1.0));
    REQUIRE(pts.size() == 3);
    for (const auto& p : pts) CHECK(norm(p.coords()) < 1e-15);
}

TEST_CASE("embed: symmetric pair lands on the margin") {
    Matrix x(2, 2);
    x(0, 0) = 1.0;
    x(1, 0) = -1.0;
    auto pts = embed(x, Curvature(1.0));
    CHECK(pts[0][0] == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(pts[1][0] == doctest::Approx(-0.9).epsilon(1e-12));
    CHECK(std::abs(pts[0][1]) < 1e-15);
}

TEST_CASE("embed: farthest point sits exactly at margin of the radius") {
    auto x = random_matrix(40, 3, 21);
    for (double alpha : {0.25, 1.0, 100.0}) {
        auto pts = embed(x, Curvature(alpha), {.margin = 0.9});
        double max_scaled = 0.0;
        for (const auto& p : pts)
            max_scaled = std::max(max_scaled, std::sqrt(alpha) * norm(p.coords()));
        CHECK(max_scaled == doctest::Approx(0.9).epsilon(1e-12));
    }
}

TEST_CASE("embed: pairwise distance ratios survive") {
    auto x = random_matrix(12, 4, 22);
    auto pts = embed(x, Curvature(2.0));
    auto euclid = [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t d = 0; d < x.cols(); ++d) {
            double v = x(i, d) - x(j, d);
            s += v * v;
        }
        return std::sqrt(s);
    };
    auto embedded = [&](std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t d = 0; d < x.cols(); ++d) {
            double v = pts[i][d] - pts[j][d];
            s += v * v;
        }
        return std::sqrt(s);
    };
    double ref = embedded(0, 1) / euclid(0, 1);
    for (std::size_t i = 0; i < 12; ++i)
        for (std::size_t j = i + 1; j < 12; ++j)
            CHECK(embedded(i, j) / euclid(i, j) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("embed: deterministic") {
    auto x = random_matrix(20, 3, 23);
    auto a = embed(x, Curvature(1.0));
    auto b = embed(x, Curvature(1.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(max_abs_diff(a[i].coords(), b[i].coords()) == 0.0);
}

TEST_CASE("standardize: column means vanish, variances become one") {
    auto x = random_matrix(50, 3, 24);
    auto z = standardize(x);
    for (std::size_t j = 0; j < 3; ++j) {
        double mean = 0.0, var = 0.0;
        for (std::size_t i = 0; i < 50; ++i) mean += z(i, j);
        mean /= 50.0;
        for (std::size_t i = 0; i < 50; ++i) var += (z(i, j) - mean) * (z(i, j) - mean);
        var /= 50.0;
        CHECK(std::abs(mean) < 1e-12);
        CHECK(var == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("standardize: constant column is centered, not divided") {
    Matrix x(4, 2);
    for (std::size_t i = 0; i < 4; ++i) {
        x(i, 0) = 5.0;
        x(i, 1) = static_cast<double>(i);
    }
    auto z = standardize(x);
    for (std::size_t i = 0; i < 4; ++i) CHECK(z(i, 0) == 0.0);
}

TEST_CASE("embed: zscore option changes the geometry consistently") {
    auto x = random_matrix(30, 2, 25);
    for (std::size_t i = 0; i < 30; ++i) x(i, 1) *= 100.0;  // dominate one axis
    auto plain = embed(x, Curvature(1.0));
    auto scaled = embed(x, Curvature(1.0), {.margin = 0.9, .zscore = true});
    auto manual = embed(standardize(x), Curvature(1.0));
    bool differs = false;
    for (std::size_t i = 0; i < 30; ++i) {
        if (max_abs_diff(plain[i].coords(), scaled[i].coords()) > 1e-9) differs = true;
        CHECK(max_abs_diff(scaled[i].coords(), manual[i].coords()) < 1e-14);
    }
    CHECK(differs);
}

TEST_CASE("embed: iris fits any curvature at the same normalized radius") {
    auto iris = builtin_dataset("iris");
    for (double alpha : {1.0, 1000.0}) {
        auto pts = embed(iris.features, Curvature(alpha));
        double max_scaled = 0.0;
        for (const auto& p : pts)
            max_scaled = std::max(max_scaled, std::sqrt(alpha) * norm(p.coords()));
        CHECK(max_scaled == doctest::Approx(0.9).epsilon(1e-12));
    }
}

TEST_CASE("embed: input guards") {
    Matrix ok(2, 2, 0.5);
    CHECK_THROWS_AS(embed(Matrix(), Curvature(1.0)), std::invalid_argument);
    CHECK_THROWS_AS(embed(ok, Curvature(0.0)), std::invalid_argument);
    CHECK_THROWS_AS(embed(ok, Curvature(1.0), {.margin = 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(embed(ok, Curvature(1.0), {.margin = 1.0}), std::invalid_argument);

    Matrix bad(2, 2, 1.0);
    bad(1, 1) = std::nan("");
    CHECK_THROWS_AS(embed(bad, Curvature(1.0)), std::invalid_argument);
    CHECK_THROWS_AS(standardize(Matrix()), std::invalid_argument);
}
