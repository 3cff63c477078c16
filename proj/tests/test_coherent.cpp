// SPDX-License-Identifier: Apache-2.0
// Finite-order coherent states: closed form, linear-system route, extremes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "becfluct/coherent.hpp"
#include "becfluct/duality.hpp"

using namespace becfluct;

TEST_CASE("closed form, order 3, mean 1/2: frozen exact values")
{
    auto d = coherent::closed_form(3, BigRat(1, 2));
    REQUIRE(d.n_max() == 3);
    CHECK(d.weight(0) == BigRat(29, 48));
    CHECK(d.weight(1) == BigRat(5, 16));
    CHECK(d.weight(2) == BigRat(1, 16));
    CHECK(d.weight(3) == BigRat(1, 48));
}

TEST_CASE("closed form, order 2, mean 1: interior weight vanishes")
{
    auto d = coherent::closed_form(2, BigRat(1));
    CHECK(d.weight(0) == BigRat(1, 2));
    CHECK(d.weight(1) == BigRat(0));
    CHECK(d.weight(2) == BigRat(1, 2));
}

TEST_CASE("closed form equals the linear-system route exactly")
{
    const BigRat means[] = {BigRat(1, 4), BigRat(1, 2), BigRat(3, 4), BigRat(1),
                            BigRat(7, 13)};
    for (int n = 2; n <= 12; ++n)
        for (const auto& mean : means)
        {
            auto a = coherent::closed_form(n, mean);
            auto b = coherent::via_linear_system(n, mean);
            REQUIRE(a.n_max() == b.n_max());
            for (int k = 0; k <= n; ++k)
                CHECK(a.weight(k) == b.weight(k));
        }
}

TEST_CASE("coherence conditions hold exactly up to the order, and are tight")
{
    for (int n = 2; n <= 10; ++n)
    {
        auto d = coherent::closed_form(n, BigRat(2, 3));
        BigRat mu = d.mean();
        CHECK(mu == BigRat(2, 3));
        for (int i = 2; i <= n; ++i)
            CHECK(d.factorial_moment(i) == pow_int(mu, i));
        // One step past the order the condition must fail: the support ends.
        CHECK(d.factorial_moment(n + 1) != pow_int(mu, n + 1));
        CHECK(duality::glauber_order(d).value == n);
        CHECK(duality::gordon_order(d).value == n);
    }
}

TEST_CASE("explicit inverse entries")
{
    using coherent::inverse_matrix_entry;
    CHECK(inverse_matrix_entry(0, 0) == BigRat(1));
    CHECK(inverse_matrix_entry(2, 5) == BigRat(-1, 12));
    CHECK(inverse_matrix_entry(3, 3) == BigRat(1, 6));
    CHECK(inverse_matrix_entry(4, 2) == BigRat(0));
}

TEST_CASE("two-point extreme states are coherent to order exactly 2")
{
    for (int n_upper = 3; n_upper <= 12; ++n_upper)
    {
        auto d = coherent::hmax(n_upper);
        CHECK(d.mean() == BigRat(n_upper - 1));
        CHECK(d.factorial_moment(2) == pow_int(d.mean(), 2));
        CHECK(duality::glauber_order(d) == duality::Order{2, false});
        CHECK(duality::gordon_order(d) == duality::Order{2, false});
    }
}

TEST_CASE("mean range is enforced with the documented constraint")
{
    CHECK_THROWS_AS(coherent::closed_form(3, BigRat(0)),
                    MeanRangeError);
    CHECK_THROWS_AS(coherent::closed_form(3, BigRat(-1, 2)),
                    MeanRangeError);
    try
    {
        coherent::closed_form(3, BigRat(3, 2));
        FAIL("expected MeanRangeError");
    }
    catch (const MeanRangeError& e)
    {
        CHECK(std::string(e.what()).find("0 < <N> <= 1") != std::string::npos);
    }
    CHECK_THROWS_AS(coherent::closed_form(1, BigRat(1, 2)), std::domain_error);
    CHECK_THROWS_AS(coherent::hmax(1), std::domain_error);
}
