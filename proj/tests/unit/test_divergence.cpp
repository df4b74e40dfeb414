#include <doctest.h>

#include <cmath>
#include <limits>

#include "advmean/divergence.hpp"
#include "advmean/errors.hpp"
#include "../support.hpp"

using namespace advmean;

TEST_CASE("hellinger examples") {
    const auto zero = AtomicDistribution::point_mass(0.0);
    const AtomicDistribution half({{0.0, 0.5}, {1.0, 0.5}});
    CHECK(hellinger_sq(zero, zero) == 0.0);
    CHECK(hellinger_sq(zero, AtomicDistribution::point_mass(1.0)) == 1.0);
    CHECK(bhattacharyya(zero, AtomicDistribution::point_mass(1.0)) == 0.0);
    // 1 - 1/sqrt(2)
    CHECK(hellinger_sq(zero, half) == doctest::Approx(0.2928932188134524756).epsilon(1e-15));
    CHECK(bhattacharyya(zero, half) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("hellinger against an unnormalized measure") {
    const auto zero = AtomicDistribution::point_mass(0.0);
    const WeightedMeasure twice({{0.0, 2.0}});
    // 0.5 (1 - sqrt 2)^2
    CHECK(hellinger_sq(zero, twice) == doctest::Approx(0.5 * std::pow(1.0 - std::sqrt(2.0), 2)));
}

TEST_CASE("indistinguishability report") {
    const auto zero = AtomicDistribution::point_mass(0.0);
    const HellingerReport same = indistinguishable(zero, zero, 100, 0.05);
    CHECK(same.h_sq == 0.0);
    CHECK(same.log_one_minus == 0.0);
    CHECK(same.rhs == doctest::Approx(std::log(0.2) / 200.0));
    CHECK(same.indistinguishable);

    const HellingerReport far = indistinguishable(zero, AtomicDistribution::point_mass(1.0), 100, 0.05);
    CHECK(far.log_one_minus == -std::numeric_limits<double>::infinity());
    CHECK_FALSE(far.indistinguishable);

    CHECK_THROWS_AS(indistinguishable(zero, zero, 100, 0.25), DomainError);
    CHECK_THROWS_AS(indistinguishable(zero, zero, 100, 0.0), DomainError);
}

TEST_CASE("property: symmetry, range and BC + H^2 = 1") {
    CounterStream s(21, 0);
    for (int c = 0; c < 1000; ++c) {
        CAPTURE(c);
        const AtomicDistribution p = advmean::testing::random_distribution(s, 12);
        // Half the cases share p's support so the overlap is non-trivial.
        const AtomicDistribution q = c % 2 == 0 ? advmean::testing::reweighted_copy(s, p)
                                                : advmean::testing::random_distribution(s, 12);
        const double h = hellinger_sq(p, q);
        REQUIRE(h >= -1e-15);
        REQUIRE(h <= 1.0 + 1e-15);
        REQUIRE(std::fabs(h - hellinger_sq(q, p)) <= 1e-15);
        REQUIRE(std::fabs(bhattacharyya(p, q) + h - 1.0) <= 1e-12);
        REQUIRE(std::fabs(hellinger_sq(p, p)) <= 1e-15);
    }
}
