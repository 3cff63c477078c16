// SPDX-License-Identifier: Apache-2.0
// Exact combinatorics: frozen reference values plus identity cross-checks.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "becfluct/exact.hpp"

using namespace becfluct;
using becfluct::exact::binomial;
using becfluct::exact::factorial;
using becfluct::exact::stirling1_signed;
using becfluct::exact::stirling2;
using becfluct::exact::stirling2_alternating;
using becfluct::exact::vanishing_sum;

TEST_CASE("factorial reference values")
{
    CHECK(factorial(0) == 1);
    CHECK(factorial(1) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(factorial(20) == BigInt("2432902008176640000"));
    CHECK(factorial(30) == BigInt("265252859812191058636308480000000"));
}

TEST_CASE("binomial reference values and Pascal identity")
{
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(30, 15) == 155117520);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(5, -1) == 0);
    for (int n = 1; n <= 40; ++n)
        for (int k = 0; k <= n; ++k)
        {
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
            CHECK(binomial(n, k) == binomial(n, n - k));
        }
}

TEST_CASE("second-kind Stirling numbers: frozen values")
{
    CHECK(stirling2(1, 1) == 1);
    CHECK(stirling2(6, 3) == 90);
    CHECK(stirling2(10, 5) == 42525);
    CHECK(stirling2(12, 6) == 1323652);
    CHECK(stirling2(7, 7) == 1);
    CHECK(stirling2(7, 1) == 1);
}

TEST_CASE("second-kind Stirling numbers: recurrence route equals alternating-sum route")
{
    for (int j = 1; j <= 22; ++j)
        for (int k = 1; k <= j; ++k)
            CHECK(stirling2(j, k) == stirling2_alternating(j, k));
}

TEST_CASE("second-kind row sums are Bell numbers")
{
    // Reference values from the binomial-convolution recurrence
    // B(n+1) = sum C(n,k) B(k), B(0) = 1.
    const long bell[] = {1,    2,     5,      15,     52,     203,
                         877,  4140,  21147,  115975, 678570, 4213597};
    for (int j = 1; j <= 12; ++j)
    {
        BigInt row(0);
        for (int k = 1; k <= j; ++k)
            row += stirling2(j, k);
        CHECK(row == bell[j - 1]);
    }
}

TEST_CASE("first-kind Stirling numbers: frozen values and inversion")
{
    CHECK(stirling1_signed(7, 3) == 1624);
    CHECK(stirling1_signed(10, 5) == -269325);
    CHECK(stirling1_signed(9, 9) == 1);

    // Both kinds are mutually inverse triangles:
    // sum_k S(j,k) s(k,i) = delta(j,i).
    for (int j = 1; j <= 15; ++j)
        for (int i = 1; i <= j; ++i)
        {
            BigInt acc(0);
            for (int k = i; k <= j; ++k)
                acc += stirling2(j, k) * stirling1_signed(k, i);
            CHECK(acc == (i == j ? 1 : 0));
        }
}

TEST_CASE("alternating sum vanishes above the diagonal and matches below")
{
    for (int j = 1; j <= 20; ++j)
    {
        for (int k = j + 1; k <= j + 10; ++k)
            CHECK(sgn(vanishing_sum(j, k)) == 0);
        for (int k = 1; k <= j; ++k)
            CHECK(vanishing_sum(j, k) == BigRat(stirling2(j, k)));
    }
}

TEST_CASE("domain guards")
{
    CHECK_THROWS_AS(stirling2(5, 0), std::domain_error);
    CHECK_THROWS_AS(stirling2(5, 6), std::domain_error);
    CHECK_THROWS_AS(stirling2(exact::kStirlingCap + 1, 1), std::out_of_range);
    CHECK_THROWS_AS(stirling1_signed(5, 0), std::domain_error);
}
