// SPDX-License-Identifier: Apache-2.0
//! \file becfluct/duality.hpp
//! Wave/particle decomposition of number fluctuations, the Glauber and
//! Gordon coherence-order detectors, coincidence-rate decomposition, and
//! normalized correlations.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "becfluct/distribution.hpp"

namespace becfluct {
namespace duality {

/// Detected coherence order; `full` marks analytically Poissonian input
/// satisfying the conditions through the probe cap.
struct Order {
    int value = 0;
    bool full = false;

    std::string str() const { return full ? "full" : std::to_string(value); }
    friend bool operator==(const Order&, const Order&) = default;
};

/// m-th central moment of a fully coherent state of the given mean:
///   sum_{j=0..m} C(m,j) (-mean)^{m-j} sum_{k=1..j} S(j,k) mean^k,
/// with the j = 0 term contributing 1 (the zeroth raw moment).
template <typename T>
T poisson_central(int m, const T& mean)
{
    T neg_mean = -mean;
    Accumulator<T> acc;
    for (int j = 0; j <= m; ++j)
    {
        T inner = backend_traits<T>::from_int(1);
        if (j > 0)
        {
            Accumulator<T> in;
            for (int k = 1; k <= j; ++k)
                in.add(backend_traits<T>::from_bigint(exact::stirling2(j, k))
                       * pow_int(mean, k));
            inner = in.value();
        }
        acc.add(backend_traits<T>::from_bigint(exact::binomial(m, j))
                * pow_int(neg_mean, m - j) * inner);
    }
    return acc.value();
}

/// Per-order triple: central moment, Poissonian ("particle") part at the
/// distribution's mean, and their difference W_m.
template <typename T>
struct Decomposition {
    int order;
    T central;
    T poissonian;
    T wave;
};

template <typename T>
Decomposition<T> wave_fluctuation(const Distribution<T>& d, int m)
{
    Decomposition<T> out{m, d.central_moment(m), poisson_central(m, d.mean()),
                         backend_traits<T>::from_int(0)};
    out.wave = out.central - out.poissonian;
    return out;
}

namespace detail {

template <typename T>
bool close_rel(const T& value, const T& reference, double tol)
{
    if constexpr (backend_traits<T>::exact)
    {
        (void)tol;
        return value == reference;
    }
    else
    {
        return std::abs(value - reference) <= tol * std::abs(reference);
    }
}

} // namespace detail

/// Largest n <= cap with <:N^i:> = <N>^i for all 2 <= i <= n; 1 when i = 2
/// already fails. The vacuum (mean 0) and tagged analytic Poisson input are
/// fully coherent.
template <typename T>
Order glauber_order(const Distribution<T>& d, double tol = 1e-9, int cap = -1)
{
    if (cap < 0)
        cap = std::max(d.n_max(), 2);
    T mu = d.mean();
    if (backend_traits<T>::zero(mu))
        return {cap, true};
    int order = 1;
    for (int i = 2; i <= cap; ++i)
    {
        if (!detail::close_rel(d.factorial_moment(i), pow_int(mu, i), tol))
            return {order, false};
        order = i;
    }
    return {cap, d.analytic_poisson()};
}

/// Largest n <= cap with |W_m| <= tol * <(dN)^m>_P for all 2 <= m <= n
/// (exact vanishing on the rational backend).
template <typename T>
Order gordon_order(const Distribution<T>& d, double tol = 1e-9, int cap = -1)
{
    if (cap < 0)
        cap = std::max(d.n_max(), 2);
    T mu = d.mean();
    if (backend_traits<T>::zero(mu))
        return {cap, true};
    int order = 1;
    for (int m = 2; m <= cap; ++m)
    {
        auto dec = wave_fluctuation(d, m);
        bool ok;
        if constexpr (backend_traits<T>::exact)
            ok = backend_traits<T>::zero(dec.wave);
        else
            ok = std::abs(dec.wave) <= tol * std::abs(dec.poissonian);
        if (!ok)
            return {order, false};
        order = m;
    }
    return {cap, d.analytic_poisson()};
}

/// One term of the j-detector coincidence-rate decomposition.
template <typename T>
struct CoincidenceTerm {
    int k;
    BigInt multiplicity;  ///< S(j, k): placements of j objects into k bins
    T correlated;         ///< S(j,k) <:N^k:>
    T accidental;         ///< S(j,k) <N>^k
    bool excess;          ///< correlated exceeds the accidental baseline
};

template <typename T>
struct CoincidenceBreakdown {
    std::vector<CoincidenceTerm<T>> terms;
    T total;  ///< sum of correlated terms = <N^j>
};

template <typename T>
CoincidenceBreakdown<T> coincidence_decomposition(const Distribution<T>& d,
                                                  int j, double tol = 1e-9)
{
    if (j < 1)
        throw std::domain_error("coincidence_decomposition: require j >= 1");
    CoincidenceBreakdown<T> out;
    T mu = d.mean();
    Accumulator<T> total;
    for (int k = 1; k <= j; ++k)
    {
        CoincidenceTerm<T> term;
        term.k = k;
        term.multiplicity = exact::stirling2(j, k);
        T s = backend_traits<T>::from_bigint(term.multiplicity);
        term.correlated = s * d.factorial_moment(k);
        term.accidental = s * pow_int(mu, k);
        if constexpr (backend_traits<T>::exact)
            term.excess = term.correlated > term.accidental;
        else
            term.excess = term.correlated
                          > term.accidental + tol * std::abs(term.accidental);
        total.add(term.correlated);
        out.terms.push_back(std::move(term));
    }
    out.total = total.value();
    return out;
}

/// W_m / <(dN)^m>_P. Errors on a zero-mean distribution.
template <typename T>
T wave_particle_ratio(const Distribution<T>& d, int m)
{
    if (backend_traits<T>::zero(d.mean()))
        throw ZeroMeanError("wave_particle_ratio: zero-mean distribution");
    auto dec = wave_fluctuation(d, m);
    return dec.wave / dec.poissonian;
}

/// s-th factorial cumulant: the cumulant recursion applied to factorial
/// moments. Vanishes for s >= 2 on Poissonian input.
template <typename T>
T factorial_cumulant(const Distribution<T>& d, int s)
{
    std::vector<T> fm(s + 1), kappa(s + 1);
    for (int i = 0; i <= s; ++i)
        fm[i] = d.factorial_moment(i);
    for (int m = 1; m <= s; ++m)
    {
        T k = fm[m];
        for (int i = 1; i <= m - 1; ++i)
            k -= backend_traits<T>::from_bigint(exact::binomial(m - 1, i - 1))
                 * kappa[i] * fm[m - i];
        kappa[m] = k;
    }
    return kappa[s];
}

enum class CorrelationKind {
    FactorialNormalized,  ///< g_n - 1 = <:N^n:> / <N>^n - 1
    VolumeIntegral,       ///< n-th factorial cumulant / <N>; at n = 2 this is
                          ///< <(dN)^2>/<N> - 1, the pair-correlation integral
};

template <typename T>
T correlation_n(const Distribution<T>& d, int n,
                CorrelationKind kind = CorrelationKind::FactorialNormalized)
{
    T mu = d.mean();
    if (backend_traits<T>::zero(mu))
        throw ZeroMeanError("correlation_n: zero-mean distribution");
    if (kind == CorrelationKind::FactorialNormalized)
        return d.factorial_moment(n) / pow_int(mu, n)
               - backend_traits<T>::from_int(1);
    return factorial_cumulant(d, n) / mu;
}

/// <(dN)^2>/<N> - 1, the right side of the pair-correlation volume integral.
template <typename T>
T pair_correlation_integral(const Distribution<T>& d)
{
    T mu = d.mean();
    if (backend_traits<T>::zero(mu))
        throw ZeroMeanError("pair_correlation_integral: zero-mean distribution");
    return d.central_moment(2) / mu - backend_traits<T>::from_int(1);
}

} // namespace duality
} // namespace becfluct
