#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "advmean/errors.hpp"
#include "advmean/estimators.hpp"
#include "../support.hpp"

using namespace advmean;

TEST_CASE("group count") {
    CHECK(group_count(0.05) == 14);  // ceil(4.5 ln 20) = ceil(13.48)
    CHECK(group_count(0.99) == 1);
    CHECK(group_count(std::exp(-2.0)) == 9);
    CHECK_THROWS_AS(group_count(0.0), DomainError);
    CHECK_THROWS_AS(group_count(1.0), DomainError);
}

TEST_CASE("median of means examples") {
    std::vector<double> ones(100, 1.0);
    CHECK(median_of_means(ones, 0.05) == 1.0);

    std::vector<double> seq(14);
    std::iota(seq.begin(), seq.end(), 1.0);
    // 14 singleton groups: midpoint of 7 and 8.
    CHECK(median_of_means(seq, 0.05) == 7.5);

    // 5 samples, 2 groups: {1, 2, 3} and {4, 5}.
    const std::vector<double> five{1, 2, 3, 4, 5};
    CHECK(median_of_means_k(five, 2) == 0.5 * 2.0 + 0.5 * 4.5);
    CHECK(median_of_means_k(five, 1) == 3.0);

    CHECK(sample_mean(five) == 3.0);
    CHECK_THROWS_AS(sample_mean(std::vector<double>{}), DomainError);
}

TEST_CASE("insufficient samples") {
    const std::vector<double> few(13, 0.0);
    try {
        median_of_means(few, 0.05);
        FAIL("expected InsufficientSamplesError");
    } catch (const InsufficientSamplesError& e) {
        CHECK(e.groups() == 14);
    }
    CHECK_THROWS_AS(median_of_means_k(few, 0), DomainError);
}

TEST_CASE("property: bounded by data range, constant-exact, equivariant") {
    CounterStream s(31, 0);
    for (int c = 0; c < 1000; ++c) {
        CAPTURE(c);
        const std::size_t n = advmean::testing::uniform_int(s, 14, 300);
        std::vector<double> xs(n);
        for (double& x : xs) x = advmean::testing::uniform(s, -100.0, 100.0);
        const double m = median_of_means(xs, 0.05);
        const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
        REQUIRE(m >= *lo);
        REQUIRE(m <= *hi);

        const double cst = advmean::testing::uniform(s, -1e6, 1e6);
        REQUIRE(median_of_means(std::vector<double>(n, cst), 0.05) == cst);

        // Power-of-two scaling commutes exactly.
        const double pow2 = std::ldexp(1.0, static_cast<int>(advmean::testing::uniform_int(s, 0, 20)) - 10);
        std::vector<double> scaled(xs);
        for (double& x : scaled) x *= pow2;
        REQUIRE(median_of_means(scaled, 0.05) == pow2 * m);

        // General affine maps agree up to rounding.
        const double sc = advmean::testing::uniform(s, -5.0, 5.0);
        const double off = advmean::testing::uniform(s, -50.0, 50.0);
        std::vector<double> moved(xs);
        for (double& x : moved) x = sc * x + off;
        REQUIRE(std::fabs(median_of_means(moved, 0.05) - (sc * m + off)) <= 1e-10 * (1 + std::fabs(sc * m + off)) + 1e-10);
    }
}
