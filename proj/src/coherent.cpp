// SPDX-License-Identifier: Apache-2.0

#include "becfluct/coherent.hpp"

#include <vector>

namespace becfluct {
namespace coherent {
namespace {

void check_mean(int n, const BigRat& mean)
{
    if (n < 2)
        throw std::domain_error("coherent state: order must be >= 2");
    if (sgn(mean) <= 0 || mean > 1)
        throw MeanRangeError("coherent state: mean is constrained to 0 < <N> <= 1");
}

// Falling factorial N!/(N-i)! as an exact rational.
BigRat falling(int n, int i)
{
    BigRat f(1);
    for (int a = 0; a < i; ++a)
        f *= BigRat(n - a);
    return f;
}

} // namespace

ExactDist closed_form(int n, const BigRat& mean)
{
    check_mean(n, mean);
    BigRat neg_mean = -mean;
    std::vector<BigRat> w(n + 1);
    for (int N = 0; N <= n; ++N)
    {
        BigRat tail(0);
        for (int j = 0; j <= n - N; ++j)
        {
            BigRat term = pow_int(neg_mean, j) / BigRat(exact::factorial(j));
            term.canonicalize();
            tail += term;
        }
        w[N] = pow_int(mean, N) / BigRat(exact::factorial(N)) * tail;
        w[N].canonicalize();
    }
    return ExactDist(std::move(w));
}

BigRat inverse_matrix_entry(int i, int j)
{
    if (j < i)
        return BigRat(0);
    BigRat e(1, 1);
    e /= BigRat(exact::factorial(i) * exact::factorial(j - i));
    if ((j - i) % 2 != 0)
        e = -e;
    e.canonicalize();
    return e;
}

ExactDist via_linear_system(int n, const BigRat& mean)
{
    check_mean(n, mean);

    // Row i of the system: sum_N N!/(N-i)! P(N) = mean^i  (row 0 is
    // normalization, row 1 the mean, rows 2..n the coherence conditions).
    std::vector<std::vector<BigRat>> a(n + 1, std::vector<BigRat>(n + 1));
    std::vector<BigRat> rhs(n + 1);
    for (int i = 0; i <= n; ++i)
    {
        rhs[i] = pow_int(mean, i);
        for (int N = 0; N <= n; ++N)
            a[i][N] = (N >= i) ? falling(N, i) : BigRat(0);
    }

    // The explicit inverse must actually invert the system matrix.
    for (int r = 0; r <= n; ++r)
        for (int c = 0; c <= n; ++c)
        {
            BigRat dot(0);
            for (int k = 0; k <= n; ++k)
                dot += inverse_matrix_entry(r, k) * a[k][c];
            if (dot != BigRat(r == c ? 1 : 0))
                throw std::logic_error("via_linear_system: inverse mismatch");
        }

    // Back-substitution on the upper-triangular system.
    std::vector<BigRat> p(n + 1);
    for (int i = n; i >= 0; --i)
    {
        BigRat acc = rhs[i];
        for (int N = i + 1; N <= n; ++N)
            acc -= a[i][N] * p[N];
        p[i] = acc / a[i][i];
        p[i].canonicalize();
        if (sgn(p[i]) < 0)
            throw MeanRangeError("via_linear_system: negative probability");
    }

    // Both routes through the inverse must agree.
    for (int i = 0; i <= n; ++i)
    {
        BigRat q(0);
        for (int j = i; j <= n; ++j)
            q += inverse_matrix_entry(i, j) * rhs[j];
        if (q != p[i])
            throw std::logic_error("via_linear_system: route disagreement");
    }

    return ExactDist(std::move(p));
}

ExactDist hmax(int n_upper)
{
    if (n_upper < 2)
        throw std::domain_error("hmax: require N >= 2");
    std::vector<BigRat> w(n_upper + 1, BigRat(0));
    w[0] = BigRat(1, n_upper);
    w[n_upper] = BigRat(n_upper - 1, n_upper);
    w[0].canonicalize();
    w[n_upper].canonicalize();
    return ExactDist(std::move(w));
}

} // namespace coherent
} // namespace becfluct
