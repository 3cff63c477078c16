// SPDX-License-Identifier: Apache-2.0
//! \file becfluct/bec.hpp
//! Ideal-gas BEC number statistics: trap spectra, the temperature-dependent
//! parameters H and eta, the low-temperature mirror-Poisson distributions,
//! the quasithermal family, the appendix approximation chain, and
//! temperature sweeps of the duality quantities.

#pragma once

#include <string>
#include <vector>

#include "becfluct/distribution.hpp"
#include "becfluct/duality.hpp"

namespace becfluct {
namespace bec {

struct NonConvergentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TrapKind { IsotropicHarmonic, BoxPeriodic };
enum class ApproxMode { FullSum, LowTAsymptotic };
enum class ModelKind { Quasithermal, LowTemp };
enum class Fraction { Condensate, Noncondensate };

struct TrapModel {
    TrapKind kind = TrapKind::IsotropicHarmonic;
    int atoms = 20;
    int level_cap = 10000;
    double tail_tolerance = 1e-15;
};

struct ThermalParams {
    double t = 0;       ///< reduced temperature T / T_c
    double big_h = 0;   ///< mean noncondensate parameter H
    double eta = 0;     ///< quasithermal spread parameter
    ApproxMode mode = ApproxMode::FullSum;
};

/// Result of summing g * nbar and g * nbar^2 over a reduced spectrum.
struct OccupationSums {
    double big_h = 0;
    double square_sum = 0;
    bool converged = false;
};

/// Reduced level spacing (harmonic) or mode-energy coefficient (box) at the
/// given T/T_c, fixed by the standard thermodynamic-limit T_c conventions.
double reduced_energy_scale(const TrapModel& trap, double t);

/// Sum Bose (FullSum) or leading Boltzmann (LowTAsymptotic) occupations over
/// the trap spectrum until the relative tail drops below tail_tolerance or
/// the level cap is hit.
OccupationSums occupation_sums(const TrapModel& trap, double t, ApproxMode mode);

/// H and eta at reduced temperature t; throws NonConvergentError when the
/// spectrum sum has not converged at the level cap.
ThermalParams thermal_params(const TrapModel& trap, double t, ApproxMode mode);

/// Truncated Poisson over the noncondensate count: P(n) prop H^n / n! for
/// n = 0..atoms, built in log space.
RealDist lowtemp_noncondensate(int atoms, double big_h);

/// Mirror image of the above over the condensate count.
RealDist lowtemp_condensate(int atoms, double big_h);

/// Closed form for the truncated-Poisson mean:
///   H (1 - H^N / (N! sum_{j<=N} H^j / j!)).
double lowtemp_noncondensate_mean(int atoms, double big_h);

/// Truncated negative binomial over the noncondensate count with r = H/eta
/// and success parameter eta/(1+eta); eta -> 0 dispatches to the Poisson
/// branch and eta = H reduces to single-mode thermal weights.
RealDist quasithermal_noncondensate(int atoms, double big_h, double eta);

RealDist quasithermal_condensate(int atoms, double big_h, double eta);

//---------------------------------------------------------------------------//
// Appendix approximation chain, in exact rationals.

struct AppendixForm {
    std::string name;
    std::vector<BigRat> weights;  ///< literal formula values, unnormalized
    bool has_negative = false;
    duality::Order glauber;  ///< valid only when !has_negative
    duality::Order gordon;
};

struct AppendixReport {
    AppendixForm truncated_poisson;   ///< exact truncated Poisson
    AppendixForm alternating_full;    ///< Poisson prefactor x full alternating sum
    AppendixForm coherent_truncated;  ///< alternating sum truncated at N - n
    double tv_poisson_full = 0;
    double tv_poisson_coherent = 0;
    double tv_full_coherent = 0;
    bool coherent_form_matches_closed_form = false;
};

/// Builds the three low-temperature noncondensate forms exactly and reports
/// pairwise total-variation distances and both coherence orders for each.
/// Negative weights outside the valid regime are flagged, not masked.
AppendixReport appendix_chain(int atoms, const BigRat& big_h);

//---------------------------------------------------------------------------//
// Temperature sweeps.

struct SweepConfig {
    TrapModel trap;
    ModelKind model = ModelKind::Quasithermal;
    ApproxMode approx = ApproxMode::FullSum;
    double t_min = 0.01;
    double t_max = 3.0;
    int points = 200;
    std::vector<int> orders = {2, 3, 4, 5};
    std::vector<Fraction> fractions = {Fraction::Condensate,
                                       Fraction::Noncondensate};
    duality::CorrelationKind correlation =
        duality::CorrelationKind::FactorialNormalized;
};

struct SweepEntry {
    int order;
    double central;
    double poissonian;
    double wave;
    double ratio;
    double correlation;
};

struct SweepRow {
    double t;
    int atoms;
    Fraction fraction;
    double mean;
    std::vector<SweepEntry> entries;
};

/// Log-spaced grid over [t_min, t_max] with linear refinement around t = 1.
std::vector<double> sweep_grid(double t_min, double t_max, int points);

/// One row per (t, fraction), in grid order.
std::vector<SweepRow> sweep(const SweepConfig& config);

const char* fraction_name(Fraction f);

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                     const std::vector<int>& orders, bool with_atoms_column);
void write_sweep_json(std::ostream& os, const std::vector<SweepRow>& rows,
                      const std::vector<int>& orders);

} // namespace bec
} // namespace becfluct
