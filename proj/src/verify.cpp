// SPDX-License-Identifier: Apache-2.0

#include "becfluct/verify.hpp"

#include <random>
#include <sstream>

#include "becfluct/bec.hpp"
#include "becfluct/coherent.hpp"
#include "becfluct/duality.hpp"
#include "becfluct/exact.hpp"

namespace becfluct {
namespace verify {
namespace {

class Suite
{
  public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    void check(bool ok, const std::string& what)
    {
        ++result_.checks;
        if (!ok && result_.passed)
        {
            result_.passed = false;
            result_.detail = what;
        }
    }

    SuiteResult result() const { return result_; }

  private:
    SuiteResult result_;
};

std::vector<ExactDist> random_rational_distributions(int count, int max_support,
                                                     unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> support(1, max_support);
    std::uniform_int_distribution<int> digit(0, 9);
    std::vector<ExactDist> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count)
    {
        int n_max = support(rng);
        std::vector<BigRat> w(n_max + 1);
        bool any = false;
        for (BigRat& x : w)
        {
            int v = digit(rng);
            x = BigRat(v);
            any = any || v != 0;
        }
        if (!any)
            continue;
        out.emplace_back(std::move(w));
    }
    return out;
}

SuiteResult suite_stirling()
{
    Suite suite("Stirling");
    for (int j = 1; j <= 25; ++j)
        for (int k = 1; k <= j; ++k)
            suite.check(exact::stirling2(j, k) == exact::stirling2_alternating(j, k),
                        "recurrence vs alternating sum at S(" + std::to_string(j)
                            + "," + std::to_string(k) + ")");

    // [S(j,k)] and [s(j,k)] are exact inverses up to dimension 20.
    for (int j = 1; j <= 20; ++j)
        for (int i = 1; i <= j; ++i)
        {
            BigInt dot(0);
            for (int k = i; k <= j; ++k)
                dot += exact::stirling1_signed(j, k) * exact::stirling2(k, i);
            suite.check(dot == BigInt(j == i ? 1 : 0),
                        "Stirling matrix inverse at (" + std::to_string(j) + ","
                            + std::to_string(i) + ")");
        }

    // Row sums against Bell numbers from the independent binomial recurrence.
    std::vector<BigInt> bell = {BigInt(1)};
    for (int n = 0; n < 20; ++n)
    {
        BigInt next(0);
        for (int k = 0; k <= n; ++k)
            next += exact::binomial(n, k) * bell[k];
        bell.push_back(next);
    }
    for (int j = 1; j <= 20; ++j)
    {
        BigInt row(0);
        for (int k = 1; k <= j; ++k)
            row += exact::stirling2(j, k);
        suite.check(row == bell[j], "row sum vs Bell number at j = "
                                        + std::to_string(j));
    }
    return suite.result();
}

SuiteResult suite_eq20c()
{
    Suite suite("Eq20c");
    for (int j = 1; j <= 20; ++j)
        for (int k = j + 1; k <= j + 10; ++k)
            suite.check(sgn(exact::vanishing_sum(j, k)) == 0,
                        "vanishing sum nonzero at (" + std::to_string(j) + ","
                            + std::to_string(k) + ")");
    return suite.result();
}

SuiteResult suite_closed_form_matrix()
{
    Suite suite("ClosedFormMatrix");
    const BigRat means[] = {BigRat(1, 4), BigRat(1, 2), BigRat(3, 4), BigRat(1)};
    for (int n = 2; n <= 12; ++n)
        for (const BigRat& mean : means)
        {
            ExactDist closed = coherent::closed_form(n, mean);
            ExactDist solved = coherent::via_linear_system(n, mean);
            suite.check(closed.weights() == solved.weights(),
                        "route disagreement at n = " + std::to_string(n));
            for (int i = 2; i <= n; ++i)
                suite.check(closed.factorial_moment(i) == pow_int(mean, i),
                            "coherence condition failed at n = "
                                + std::to_string(n) + ", i = " + std::to_string(i));
            if (mean < 1)
                suite.check(closed.factorial_moment(n + 1) != pow_int(mean, n + 1),
                            "order not tight at n = " + std::to_string(n));
        }
    return suite.result();
}

SuiteResult suite_glauber_gordon(const std::optional<FixtureCheck>& fixture)
{
    Suite suite("GlauberGordon");
    auto dists = random_rational_distributions(500, 12, 20230517u);
    for (size_t i = 0; i < dists.size(); ++i)
    {
        auto g = duality::glauber_order(dists[i]);
        auto w = duality::gordon_order(dists[i]);
        suite.check(g == w, "detector disagreement on randomized case "
                                + std::to_string(i) + " (glauber " + g.str()
                                + ", gordon " + w.str() + ")");
    }
    if (fixture)
    {
        auto report = [&](const auto& d) {
            auto g = duality::glauber_order(d, fixture->tol);
            auto w = duality::gordon_order(d, fixture->tol);
            suite.check(g == w, "fixture: detector disagreement (glauber "
                                    + g.str() + ", gordon " + w.str() + ")");
            bool reaches = (g.full || g.value >= fixture->expect_order)
                           && (w.full || w.value >= fixture->expect_order);
            std::ostringstream os;
            os << "fixture: expected coherence order >= "
               << fixture->expect_order << ", detected glauber " << g.str()
               << " / gordon " << w.str() << " at tolerance " << fixture->tol;
            suite.check(reaches, os.str());
        };
        std::visit(report, fixture->dist);
    }
    return suite.result();
}

SuiteResult suite_eq15b()
{
    Suite suite("Eq15b");
    const BigRat points[] = {BigRat(1, 3), BigRat(1, 2), BigRat(2, 3), BigRat(1),
                             BigRat(3, 2), BigRat(2),    BigRat(5, 2), BigRat(7, 2)};
    for (const BigRat& mu : points)
    {
        const BigRat closed[] = {
            mu,                                             // m = 2
            mu,                                             // m = 3
            mu * (3 * mu + 1),                              // m = 4
            mu * (10 * mu + 1),                             // m = 5
            mu * (15 * mu * mu + 25 * mu + 1),              // m = 6
        };
        for (int m = 2; m <= 6; ++m)
            suite.check(duality::poisson_central(m, mu) == closed[m - 2],
                        "Poissonian central moment mismatch at m = "
                            + std::to_string(m) + ", mean " + mu.get_str());
    }
    return suite.result();
}

SuiteResult suite_eq27()
{
    Suite suite("Eq27");
    auto dists = random_rational_distributions(50, 12, 7u);
    for (const ExactDist& d : dists)
    {
        if (sgn(d.mean()) == 0)
            continue;
        BigRat lhs = duality::pair_correlation_integral(d);
        BigRat rhs = duality::wave_particle_ratio(d, 2);
        suite.check(lhs == rhs, "pair-correlation integral != W2/P2");
        suite.check(lhs == duality::correlation_n(
                               d, 2, duality::CorrelationKind::VolumeIntegral),
                    "factorial-cumulant form disagrees at n = 2");
    }
    return suite.result();
}

SuiteResult suite_cumulants()
{
    Suite suite("Cumulants");
    const BigRat means[] = {BigRat(1, 2), BigRat(1)};
    for (int n = 2; n <= 8; ++n)
        for (const BigRat& mu : means)
        {
            ExactDist d = coherent::closed_form(n, mu);
            for (int s = 1; s <= n; ++s)
                suite.check(d.cumulant(s) == mu,
                            "cumulant not Poissonian at n = " + std::to_string(n)
                                + ", s = " + std::to_string(s));
            for (int s = 2; s <= n + 2; ++s)
            {
                auto dec = duality::wave_fluctuation(d, s);
                suite.check(d.cumulant(s) - mu == dec.wave,
                            "cumulant excess != wave fluctuation at n = "
                                + std::to_string(n) + ", s = " + std::to_string(s));
            }
        }

    auto dists = random_rational_distributions(25, 10, 99u);
    for (const ExactDist& d : dists)
    {
        BigRat mu2 = d.central_moment(2);
        suite.check(d.cumulant(1) == d.mean(), "kappa_1 != mean");
        suite.check(d.cumulant(2) == mu2, "kappa_2 != mu_2");
        suite.check(d.cumulant(3) == d.central_moment(3), "kappa_3 != mu_3");
        suite.check(d.cumulant(4) == d.central_moment(4) - 3 * mu2 * mu2,
                    "kappa_4 != mu_4 - 3 mu_2^2");
    }
    return suite.result();
}

SuiteResult suite_appendix_chain()
{
    Suite suite("AppendixChain");
    auto report = bec::appendix_chain(20, BigRat(1, 2));
    suite.check(!report.truncated_poisson.has_negative,
                "truncated Poisson weights not nonnegative");
    suite.check(!report.coherent_truncated.has_negative,
                "coherent-form weights not nonnegative");
    suite.check(report.tv_poisson_coherent < 1e-8,
                "TV(truncated Poisson, coherent form) = " + format_real17(report.tv_poisson_coherent));
    suite.check(report.coherent_form_matches_closed_form,
                "coherent form differs from the order-20 closed-form state");
    suite.check(report.coherent_truncated.glauber.value == 20,
                "coherent-form coherence order != 20");
    return suite.result();
}

} // namespace

std::vector<SuiteResult> run_verify(const std::optional<FixtureCheck>& fixture)
{
    return {
        suite_stirling(),
        suite_eq20c(),
        suite_closed_form_matrix(),
        suite_glauber_gordon(fixture),
        suite_eq15b(),
        suite_eq27(),
        suite_cumulants(),
        suite_appendix_chain(),
    };
}

bool all_passed(const std::vector<SuiteResult>& results)
{
    for (const auto& r : results)
        if (!r.passed)
            return false;
    return true;
}

} // namespace verify
} // namespace becfluct
