// SPDX-License-Identifier: Apache-2.0
//! \file becfluct/coherent.hpp
//! States coherent to a finite order n: the closed-form one-parameter family,
//! the triangular-system construction, and the two-term H_max family.

#pragma once

#include "becfluct/distribution.hpp"

namespace becfluct {

struct MeanRangeError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace coherent {

/// P(n, mean, N) = (mean^N / N!) sum_{j=0..n-N} (-mean)^j / j! over N = 0..n.
/// Requires n >= 2 and 0 < mean <= 1 (weight at N = n-1 is
/// mean^{n-1} (1 - mean) / (n-1)! and would go negative otherwise).
ExactDist closed_form(int n, const BigRat& mean);

/// Same state built by solving the (n+1) x (n+1) upper-triangular system of
/// normalization, mean, and factorial-moment conditions by back-substitution;
/// the explicit inverse with entries (-1)^{j-i} / (i! (j-i)!) is verified
/// against the system along the way. Agrees with closed_form exactly.
ExactDist via_linear_system(int n, const BigRat& mean);

/// Entry (i, j) of the explicit inverse matrix: (-1)^{j-i} / (i! (j-i)!)
/// for j >= i, zero below the diagonal.
BigRat inverse_matrix_entry(int i, int j);

/// Two-term state with weight 1/N at 0 and (N-1)/N at N; mean N - 1 and
/// coherent to at most second order. Requires N >= 2.
ExactDist hmax(int n_upper);

} // namespace coherent
} // namespace becfluct
