// SPDX-License-Identifier: Apache-2.0
//! \file becfluct/distribution.hpp
//! Probability distributions over particle number with an exact-rational or
//! a real backend, plus raw/central/factorial moments and cumulants.

#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "becfluct/exact.hpp"

namespace becfluct {

struct NegativeWeightError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NormalizationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SupportMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroMeanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename T>
struct backend_traits;

template <>
struct backend_traits<BigRat> {
    static constexpr bool exact = true;
    static BigRat from_int(long v) { return BigRat(v); }
    static BigRat from_bigint(const BigInt& z) { return BigRat(z); }
    static bool negative(const BigRat& x) { return sgn(x) < 0; }
    static bool zero(const BigRat& x) { return sgn(x) == 0; }
};

template <>
struct backend_traits<double> {
    static constexpr bool exact = false;
    static double from_int(long v) { return static_cast<double>(v); }
    static double from_bigint(const BigInt& z) { return z.get_d(); }
    static bool negative(double x) { return x < 0.0; }
    static bool zero(double x) { return x == 0.0; }
};

template <typename T>
T pow_int(const T& base, int e)
{
    T result = backend_traits<T>::from_int(1);
    for (int i = 0; i < e; ++i)
        result *= base;
    return result;
}

/// Neumaier-compensated accumulator; plain accumulation for exact types.
template <typename T>
class Accumulator
{
  public:
    void add(const T& x) { sum_ += x; }
    T value() const { return sum_; }

  private:
    T sum_ = backend_traits<T>::from_int(0);
};

template <>
class Accumulator<double>
{
  public:
    void add(double x)
    {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

//---------------------------------------------------------------------------//
/*!
 * Probability distribution over particle number 0..n_max.
 *
 * Construction rejects negative weights and normalizes the rest; all
 * accessors are const and the object is immutable afterwards.
 */
template <typename T>
class Distribution
{
  public:
    explicit Distribution(std::vector<T> weights, bool analytic_poisson = false)
        : w_(std::move(weights)), analytic_poisson_(analytic_poisson)
    {
        if (w_.empty())
            throw NormalizationError("distribution: empty weight vector");
        Accumulator<T> acc;
        for (const T& w : w_)
        {
            if (backend_traits<T>::negative(w))
                throw NegativeWeightError("distribution: negative weight");
            acc.add(w);
        }
        T total = acc.value();
        if (backend_traits<T>::zero(total) || backend_traits<T>::negative(total))
            throw NormalizationError("distribution: weights sum to zero");
        for (T& w : w_)
            w /= total;
    }

    static Distribution point_mass(int n)
    {
        std::vector<T> w(n + 1, backend_traits<T>::from_int(0));
        w[n] = backend_traits<T>::from_int(1);
        return Distribution(std::move(w), n == 0);
    }

    int n_max() const { return static_cast<int>(w_.size()) - 1; }
    const std::vector<T>& weights() const { return w_; }
    const T& weight(int n) const { return w_.at(n); }
    bool analytic_poisson() const { return analytic_poisson_; }

    T mean() const { return raw_moment(1); }

    /// <N^j> = sum N^j P(N); j = 0 gives 1.
    T raw_moment(int j) const
    {
        Accumulator<T> acc;
        for (int n = 0; n <= n_max(); ++n)
            acc.add(pow_int(backend_traits<T>::from_int(n), j) * w_[n]);
        return acc.value();
    }

    /// <(N - <N>)^m> by direct shifted summation; m = 1 gives 0 exactly.
    T central_moment(int m) const
    {
        T mu = mean();
        if (m == 1)
            return backend_traits<T>::from_int(0);
        Accumulator<T> acc;
        for (int n = 0; n <= n_max(); ++n)
        {
            T dev = backend_traits<T>::from_int(n) - mu;
            acc.add(pow_int(dev, m) * w_[n]);
        }
        return acc.value();
    }

    /// Normally ordered <:N^i:> = sum_{N>=i} P(N) N!/(N-i)!.
    T factorial_moment(int i) const
    {
        Accumulator<T> acc;
        for (int n = i; n <= n_max(); ++n)
        {
            T ff = backend_traits<T>::from_int(1);
            for (int a = 0; a < i; ++a)
                ff *= backend_traits<T>::from_int(n - a);
            acc.add(ff * w_[n]);
        }
        return acc.value();
    }

    /// kappa_s via the raw-moment recursion
    ///   kappa_s = mu'_s - sum_{i=1..s-1} C(s-1, i-1) kappa_i mu'_{s-i}.
    T cumulant(int s) const
    {
        std::vector<T> raw(s + 1), kappa(s + 1);
        for (int j = 0; j <= s; ++j)
            raw[j] = raw_moment(j);
        for (int m = 1; m <= s; ++m)
        {
            T k = raw[m];
            for (int i = 1; i <= m - 1; ++i)
            {
                T c = backend_traits<T>::from_bigint(exact::binomial(m - 1, i - 1));
                k -= c * kappa[i] * raw[m - i];
            }
            kappa[m] = k;
        }
        return kappa[s];
    }

    /// <N^j> rebuilt from factorial moments via second-kind Stirling numbers;
    /// must agree with raw_moment(j).
    T stirling_raw_from_factorial(int j) const
    {
        if (j == 0)
            return backend_traits<T>::from_int(1);
        Accumulator<T> acc;
        for (int k = 1; k <= j; ++k)
            acc.add(backend_traits<T>::from_bigint(exact::stirling2(j, k))
                    * factorial_moment(k));
        return acc.value();
    }

    /// Reflected distribution P'(k) = P(total - k).
    Distribution mirror(int total) const
    {
        if (total != n_max())
            throw SupportMismatchError("mirror: total does not match n_max");
        std::vector<T> rev(w_.rbegin(), w_.rend());
        return Distribution(std::move(rev));
    }

  private:
    std::vector<T> w_;
    bool analytic_poisson_ = false;
};

using ExactDist = Distribution<BigRat>;
using RealDist = Distribution<double>;

//---------------------------------------------------------------------------//
// CSV wire format: header "N,probability", one row per N in 0..n_max.

inline std::string format_real17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline void write_csv(std::ostream& os, const ExactDist& d, bool exact_strings)
{
    os << "N,probability\n";
    for (int n = 0; n <= d.n_max(); ++n)
    {
        if (exact_strings)
            os << n << ',' << d.weight(n).get_str() << '\n';
        else
            os << n << ',' << format_real17(d.weight(n).get_d()) << '\n';
    }
}

inline void write_csv(std::ostream& os, const RealDist& d)
{
    os << "N,probability\n";
    for (int n = 0; n <= d.n_max(); ++n)
        os << n << ',' << format_real17(d.weight(n)) << '\n';
}

/// Parse "p/q", integer, or decimal (with optional exponent) to an exact
/// rational.
inline BigRat parse_rational(const std::string& text)
{
    std::string s = text;
    if (s.empty())
        throw std::invalid_argument("empty rational literal");
    if (s.find('/') != std::string::npos)
    {
        BigRat r;
        if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
            throw std::invalid_argument("bad rational literal: " + text);
        if (sgn(BigRat(r.get_den())) == 0)
            throw std::invalid_argument("zero denominator: " + text);
        r.canonicalize();
        return r;
    }
    long exp10 = 0;
    auto epos = s.find_first_of("eE");
    if (epos != std::string::npos)
    {
        exp10 = std::stol(s.substr(epos + 1));
        s = s.substr(0, epos);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos)
    {
        exp10 -= static_cast<long>(s.size() - dot - 1);
        s.erase(dot, 1);
    }
    if (s.empty() || s == "-" || s == "+")
        throw std::invalid_argument("bad numeric literal: " + text);
    BigRat r{BigInt(s, 10)};  // explicit base: leading zeros are not octal
    BigInt ten(10), scale;
    mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(),
               static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0)
        r /= BigRat(scale);
    else
        r *= BigRat(scale);
    r.canonicalize();
    return r;
}

using AnyDist = std::variant<ExactDist, RealDist>;

/// Read the CSV distribution format. Rows with a '/' select the exact
/// backend; otherwise values are read as reals. The row sum must be within
/// sum_tol of 1 before normalization.
AnyDist read_distribution_csv(std::istream& is, double sum_tol = 1e-9);

} // namespace becfluct
