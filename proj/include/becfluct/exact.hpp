// SPDX-License-Identifier: Apache-2.0
//! \file becfluct/exact.hpp
//! Exact integer/rational combinatorics: factorials, binomials, Stirling
//! numbers of both kinds, and the vanishing alternating sum.

#pragma once

#include <gmpxx.h>

#include <stdexcept>

namespace becfluct {

using BigInt = mpz_class;
using BigRat = mpq_class;

namespace exact {

/// Largest row index kept in the memoized Stirling tables.
constexpr int kStirlingCap = 64;

/// n!, exact. n >= 0.
BigInt factorial(int n);

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
BigInt binomial(int n, int k);

/// Stirling number of the second kind S(j, k), 1 <= k <= j <= kStirlingCap.
/// Backed by the triangular recurrence S(j,k) = k S(j-1,k) + S(j-1,k-1);
/// the table is cross-checked against the alternating sum at construction.
BigInt stirling2(int j, int k);

/// Independent route to S(j, k): the alternating sum
///   sum_{N=1..k} N^j (-1)^{k-N} / (N! (k-N)!)
/// evaluated in exact rationals. Not memoized.
BigInt stirling2_alternating(int j, int k);

/// Signed Stirling number of the first kind s(j, k), 1 <= k <= j <= cap.
/// Recurrence s(j,k) = s(j-1,k-1) - (j-1) s(j-1,k).
BigInt stirling1_signed(int j, int k);

/// sum_{N=1..k} N^j (-1)^{k-N} / (N! (k-N)!) as an exact rational.
/// Equals S(j,k) for k <= j and vanishes identically for k > j.
BigRat vanishing_sum(int j, int k);

} // namespace exact
} // namespace becfluct
