// Copyright (c) trojansim contributors
// SPDX-License-Identifier: Apache-2.0

#include "trojansim/metrics.hpp"

#include "trojansim/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace trojansim;

namespace {

// Independent long-double Pearson implementation used as the oracle.
long double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    long double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const long double dx = x[i] - mx;
        const long double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / std::sqrt(sxx * syy);
}

} // namespace

TEST_CASE("pearson matches a hand-computed example")
{
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> y{2, 1, 4, 3, 6};
    const CorrelationResult c = pearson(x, y);
    // covariance 10, variances 10 and 14.8: r = 10 / sqrt(148)
    CHECK(c.r == doctest::Approx(10.0 / std::sqrt(148.0)).epsilon(1e-12));
    CHECK(c.n == 5);
    // t = r * sqrt(3 / (1 - r^2)) = 2.5 exactly for this data
    const double t = c.r * std::sqrt(3.0 / (1.0 - c.r * c.r));
    CHECK(t == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(c.p_value == doctest::Approx(0.087).epsilon(0.01));
}

TEST_CASE("perfect correlation pins r at +-1 with zero p")
{
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> up{10, 20, 30, 40};
    const std::vector<double> down{8, 6, 4, 2};
    CHECK(pearson(x, up).r == doctest::Approx(1.0));
    CHECK(pearson(x, up).p_value == doctest::Approx(0.0));
    CHECK(pearson(x, down).r == doctest::Approx(-1.0));
}

TEST_CASE("pearson is symmetric and affine-invariant")
{
    const std::vector<double> x{3, 1, 4, 1, 5, 9, 2, 6};
    const std::vector<double> y{2, 7, 1, 8, 2, 8, 1, 8};
    const double rxy = pearson(x, y).r;
    CHECK(pearson(y, x).r == doctest::Approx(rxy).epsilon(1e-14));

    std::vector<double> scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        scaled[i] = 3.5 * x[i] + 11.0;
    CHECK(pearson(scaled, y).r == doctest::Approx(rxy).epsilon(1e-12));
    for (std::size_t i = 0; i < x.size(); ++i)
        scaled[i] = -2.0 * x[i] + 1.0;
    CHECK(pearson(scaled, y).r == doctest::Approx(-rxy).epsilon(1e-12));
}

TEST_CASE("pearson tracks a long-double oracle on random series")
{
    Rng rng(314159);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1000;
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.uniform() * 100.0;
            // mix a common signal in so r is away from 0
            y[i] = 0.5 * x[i] + rng.uniform() * 50.0;
        }
        const CorrelationResult c = pearson(x, y);
        CHECK(std::abs(c.r - static_cast<double>(pearson_oracle(x, y))) < 1e-12);
    }
}

TEST_CASE("p-value decreases as correlation strengthens")
{
    // same n, increasing |r| must give decreasing tail probability
    const std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> weak{2, 1, 3, 5, 4, 7, 6, 8};
    std::vector<double> strong{1.1, 2.2, 2.9, 4.1, 5.2, 5.8, 7.1, 8.0};
    const CorrelationResult cw = pearson(x, weak);
    const CorrelationResult cs = pearson(x, strong);
    REQUIRE(std::abs(cs.r) > std::abs(cw.r));
    CHECK(cs.p_value < cw.p_value);
    CHECK(cw.p_value > 0.0);
    CHECK(cw.p_value < 1.0);
}

TEST_CASE("pearson rejects degenerate input")
{
    const std::vector<double> x{1, 2, 3};
    const std::vector<double> shorter{1, 2};
    const std::vector<double> flat{5, 5, 5};
    CHECK_THROWS_AS(pearson(x, shorter), std::invalid_argument);
    CHECK_THROWS_AS(pearson(x, flat), std::invalid_argument);
    CHECK_THROWS_AS(pearson(flat, x), std::invalid_argument);
    const std::vector<double> one{1};
    CHECK_THROWS_AS(pearson(one, one), std::invalid_argument);
}

TEST_CASE("two-point correlation has an undefined p-value")
{
    const std::vector<double> x{1, 2};
    const std::vector<double> y{5, 9};
    const CorrelationResult c = pearson(x, y);
    CHECK(c.r == doctest::Approx(1.0));
    CHECK(std::isnan(c.p_value));
}

TEST_CASE("student t tail matches known table values")
{
    // two-tailed p for t=2.5, dof=3 is 0.0877 (standard tables)
    CHECK(student_t_two_tailed(2.5, 3) == doctest::Approx(0.0877).epsilon(0.01));
    // symmetric in t
    CHECK(student_t_two_tailed(-2.5, 3) == doctest::Approx(student_t_two_tailed(2.5, 3)));
    // t = 0 keeps the full mass
    CHECK(student_t_two_tailed(0.0, 10) == doctest::Approx(1.0));
    // dof = 1 is a Cauchy: P(|T| >= 1) = 0.5
    CHECK(student_t_two_tailed(1.0, 1) == doctest::Approx(0.5).epsilon(1e-6));
    // large dof approaches the normal tail: P(|Z| >= 1.96) ~ 0.05
    CHECK(student_t_two_tailed(1.96, 10000) == doctest::Approx(0.05).epsilon(0.01));
}

TEST_CASE("regularized incomplete beta hits closed forms")
{
    CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == doctest::Approx(0.0));
    CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == doctest::Approx(1.0));
    // I_x(1, 1) = x
    CHECK(regularized_incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
    // I_x(1, b) = 1 - (1-x)^b
    CHECK(regularized_incomplete_beta(1.0, 4.0, 0.25) ==
          doctest::Approx(1.0 - std::pow(0.75, 4)).epsilon(1e-12));
    // symmetry I_x(a, b) = 1 - I_{1-x}(b, a)
    CHECK(regularized_incomplete_beta(2.5, 3.5, 0.3) ==
          doctest::Approx(1.0 - regularized_incomplete_beta(3.5, 2.5, 0.7)).epsilon(1e-12));
    CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("series discrepancy on hand examples")
{
    const std::vector<double> same{3, 4, 5};
    const Discrepancy zero = series_discrepancy(same, same);
    CHECK(zero.max_abs_pct == doctest::Approx(0.0));
    CHECK(zero.mean_abs_pct == doctest::Approx(0.0));

    const std::vector<double> x{0, 10};
    const std::vector<double> y{0, 20};
    const Discrepancy d = series_discrepancy(x, y);
    CHECK(d.max_abs_pct == doctest::Approx(50.0)); // |10-20| / max(y)=20
    CHECK(d.mean_abs_pct == doctest::Approx(25.0));
    CHECK(d.argmax_t == 1);
}

TEST_CASE("series discrepancy rejects degenerate input")
{
    const std::vector<double> x{1, 2};
    const std::vector<double> zeros{0, 0};
    const std::vector<double> shorter{1};
    CHECK_THROWS_AS(series_discrepancy(x, zeros), std::invalid_argument);
    CHECK_THROWS_AS(series_discrepancy(x, shorter), std::invalid_argument);
    CHECK_THROWS_AS(series_discrepancy({}, {}), std::invalid_argument);
}
