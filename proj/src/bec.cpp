// SPDX-License-Identifier: Apache-2.0

#include "becfluct/bec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "becfluct/coherent.hpp"

#include <nlohmann/json.hpp>

namespace becfluct {
namespace bec {
namespace {

constexpr double kZeta3 = 1.2020569031595942854;
constexpr double kZeta32 = 2.6123753486854883440;

// r3(s): number of integer lattice vectors with |n|^2 = s, s = 1..s_cap.
const std::vector<int>& box_shell_degeneracies(int s_cap)
{
    static std::mutex mutex;
    static std::map<int, std::vector<int>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(s_cap);
    if (it != cache.end())
        return it->second;
    std::vector<int> counts(s_cap + 1, 0);
    int radius = static_cast<int>(std::sqrt(static_cast<double>(s_cap))) + 1;
    for (int x = -radius; x <= radius; ++x)
        for (int y = -radius; y <= radius; ++y)
            for (int z = -radius; z <= radius; ++z)
            {
                long s = 1L * x * x + 1L * y * y + 1L * z * z;
                if (s >= 1 && s <= s_cap)
                    ++counts[s];
            }
    return cache.emplace(s_cap, std::move(counts)).first->second;
}

double occupation(double reduced_energy, ApproxMode mode)
{
    if (mode == ApproxMode::LowTAsymptotic)
        return std::exp(-reduced_energy);
    if (reduced_energy > 700.0)
        return 0.0;
    return 1.0 / std::expm1(reduced_energy);
}

double log_sum_exp(const std::vector<double>& log_terms)
{
    double top = *std::max_element(log_terms.begin(), log_terms.end());
    if (!std::isfinite(top))
        return top;
    Accumulator<double> acc;
    for (double lt : log_terms)
        acc.add(std::exp(lt - top));
    return top + std::log(acc.value());
}

RealDist from_log_weights(std::vector<double> lw)
{
    double top = *std::max_element(lw.begin(), lw.end());
    std::vector<double> w(lw.size());
    for (size_t i = 0; i < lw.size(); ++i)
        w[i] = std::exp(lw[i] - top);
    return RealDist(std::move(w));
}

AppendixForm make_form(std::string name, std::vector<BigRat> weights)
{
    AppendixForm form;
    form.name = std::move(name);
    form.weights = std::move(weights);
    for (const BigRat& w : form.weights)
        if (sgn(w) < 0)
            form.has_negative = true;
    if (!form.has_negative)
    {
        ExactDist d(form.weights);
        form.glauber = duality::glauber_order(d);
        form.gordon = duality::gordon_order(d);
    }
    return form;
}

double total_variation(const std::vector<BigRat>& p, const std::vector<BigRat>& q)
{
    BigRat tv(0);
    for (size_t i = 0; i < p.size(); ++i)
        tv += abs(p[i] - q[i]);
    tv /= 2;
    return tv.get_d();
}

} // namespace

double reduced_energy_scale(const TrapModel& trap, double t)
{
    if (t <= 0)
        throw std::domain_error("thermal_params: require t > 0");
    double n = static_cast<double>(trap.atoms);
    if (trap.kind == TrapKind::IsotropicHarmonic)
        return std::cbrt(kZeta3 / n) / t;  // hbar omega / (k_B T)
    return M_PI * std::pow(kZeta32 / n, 2.0 / 3.0) / t;  // eps_0 / (k_B T)
}

OccupationSums occupation_sums(const TrapModel& trap, double t, ApproxMode mode)
{
    double scale = reduced_energy_scale(trap, t);
    OccupationSums out;
    Accumulator<double> h_acc, s2_acc;
    if (trap.kind == TrapKind::IsotropicHarmonic)
    {
        for (int k = 1; k <= trap.level_cap; ++k)
        {
            double g = 0.5 * (k + 1.0) * (k + 2.0);
            double nbar = occupation(k * scale, mode);
            h_acc.add(g * nbar);
            s2_acc.add(g * nbar * nbar);
            if (k * scale > 1.0 && g * nbar <= trap.tail_tolerance * h_acc.value())
            {
                out.converged = true;
                break;
            }
        }
    }
    else
    {
        const auto& counts = box_shell_degeneracies(trap.level_cap);
        for (int s = 1; s <= trap.level_cap; ++s)
        {
            if (counts[s] == 0)
                continue;
            double nbar = occupation(s * scale, mode);
            h_acc.add(counts[s] * nbar);
            s2_acc.add(counts[s] * nbar * nbar);
            if (s * scale > 1.0
                && counts[s] * nbar <= trap.tail_tolerance * h_acc.value())
            {
                out.converged = true;
                break;
            }
        }
    }
    out.big_h = h_acc.value();
    out.square_sum = s2_acc.value();
    // A sum whose terms have already underflowed to zero is converged.
    if (!out.converged && out.big_h == 0.0)
        out.converged = true;
    return out;
}

ThermalParams thermal_params(const TrapModel& trap, double t, ApproxMode mode)
{
    OccupationSums sums = occupation_sums(trap, t, mode);
    if (!sums.converged)
        throw NonConvergentError("thermal_params: spectrum sum not converged at "
                                 "level cap (t = " + format_real17(t) + ")");
    ThermalParams params;
    params.t = t;
    params.mode = mode;
    params.big_h = sums.big_h;
    params.eta = sums.big_h > 0 ? sums.square_sum / sums.big_h : 0.0;
    return params;
}

RealDist lowtemp_noncondensate(int atoms, double big_h)
{
    return quasithermal_noncondensate(atoms, big_h, 0.0);
}

RealDist lowtemp_condensate(int atoms, double big_h)
{
    return lowtemp_noncondensate(atoms, big_h).mirror(atoms);
}

double lowtemp_noncondensate_mean(int atoms, double big_h)
{
    if (big_h < 0)
        throw std::domain_error("lowtemp_noncondensate_mean: require H >= 0");
    if (big_h == 0.0)
        return 0.0;
    std::vector<double> log_terms(atoms + 1);
    for (int j = 0; j <= atoms; ++j)
        log_terms[j] = j * std::log(big_h) - std::lgamma(j + 1.0);
    double log_z = log_sum_exp(log_terms);
    double correction =
        std::exp(atoms * std::log(big_h) - std::lgamma(atoms + 1.0) - log_z);
    return big_h * (1.0 - correction);
}

RealDist quasithermal_noncondensate(int atoms, double big_h, double eta)
{
    if (big_h < 0 || eta < 0)
        throw std::domain_error("quasithermal: require H >= 0 and eta >= 0");
    if (big_h == 0.0)
    {
        std::vector<double> w(atoms + 1, 0.0);
        w[0] = 1.0;
        return RealDist(std::move(w));
    }
    // log w(n) = sum_{i<n} log((H + i eta) / (1 + eta)) - log n!; the
    // running product stays stable as eta -> 0, where lgamma(n + H/eta)
    // differences would lose precision.
    std::vector<double> lw(atoms + 1);
    double log_one_plus_eta = std::log1p(eta);
    double acc = 0.0;
    lw[0] = 0.0;
    for (int n = 1; n <= atoms; ++n)
    {
        acc += std::log(big_h + (n - 1) * eta) - log_one_plus_eta;
        lw[n] = acc - std::lgamma(n + 1.0);
    }
    return from_log_weights(std::move(lw));
}

RealDist quasithermal_condensate(int atoms, double big_h, double eta)
{
    return quasithermal_noncondensate(atoms, big_h, eta).mirror(atoms);
}

AppendixReport appendix_chain(int atoms, const BigRat& big_h)
{
    if (sgn(big_h) < 0)
        throw std::domain_error("appendix_chain: require H >= 0");

    std::vector<BigRat> poisson_term(atoms + 1);
    std::vector<BigRat> alternating_prefix(atoms + 2);
    alternating_prefix[0] = BigRat(0);
    for (int j = 0; j <= atoms; ++j)
    {
        BigRat term = pow_int(big_h, j) / BigRat(exact::factorial(j));
        term.canonicalize();
        poisson_term[j] = term;
        BigRat neg_h = -big_h;
        BigRat alt = pow_int(neg_h, j) / BigRat(exact::factorial(j));
        alt.canonicalize();
        alternating_prefix[j + 1] = alternating_prefix[j] + alt;
    }

    BigRat z(0);
    for (int j = 0; j <= atoms; ++j)
        z += poisson_term[j];

    std::vector<BigRat> w_tp(atoms + 1), w_full(atoms + 1), w_coh(atoms + 1);
    for (int n = 0; n <= atoms; ++n)
    {
        w_tp[n] = poisson_term[n] / z;
        w_tp[n].canonicalize();
        w_full[n] = poisson_term[n] * alternating_prefix[atoms + 1];
        w_full[n].canonicalize();
        w_coh[n] = poisson_term[n] * alternating_prefix[atoms - n + 1];
        w_coh[n].canonicalize();
    }

    AppendixReport report;
    report.truncated_poisson = make_form("truncated_poisson", w_tp);
    report.alternating_full = make_form("alternating_full", w_full);
    report.coherent_truncated = make_form("coherent_truncated", w_coh);
    report.tv_poisson_full = total_variation(w_tp, w_full);
    report.tv_poisson_coherent = total_variation(w_tp, w_coh);
    report.tv_full_coherent = total_variation(w_full, w_coh);

    if (sgn(big_h) > 0 && big_h <= 1 && atoms >= 2)
    {
        ExactDist reference = coherent::closed_form(atoms, big_h);
        report.coherent_form_matches_closed_form =
            reference.weights() == w_coh;
    }
    return report;
}

std::vector<double> sweep_grid(double t_min, double t_max, int points)
{
    if (!(t_min > 0) || !(t_min < t_max) || points < 2)
        throw std::domain_error("sweep_grid: require 0 < t_min < t_max, points >= 2");
    int log_points = std::max(2, points * 3 / 5);
    int fine_points = points - log_points;
    std::vector<double> grid;
    grid.reserve(points);
    double log_lo = std::log(t_min);
    double log_hi = std::log(t_max);
    for (int i = 0; i < log_points; ++i)
        grid.push_back(std::exp(log_lo + (log_hi - log_lo) * i / (log_points - 1.0)));
    // Refinement window around the critical region.
    double lo = std::max(t_min, 0.6);
    double hi = std::min(t_max, 1.4);
    if (fine_points > 1 && lo < hi)
        for (int i = 0; i < fine_points; ++i)
            grid.push_back(lo + (hi - lo) * i / (fine_points - 1.0));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    // Log-spacing rounds the endpoints through exp(log(.)); pin them.
    grid.front() = t_min;
    grid.back() = t_max;
    return grid;
}

std::vector<SweepRow> sweep(const SweepConfig& config)
{
    std::vector<double> grid =
        sweep_grid(config.t_min, config.t_max, config.points);
    std::vector<SweepRow> rows;
    rows.reserve(grid.size() * config.fractions.size());
    for (double t : grid)
    {
        ThermalParams params;
        try
        {
            params = thermal_params(config.trap, t, config.approx);
        }
        catch (const NonConvergentError& e)
        {
            throw NonConvergentError(std::string(e.what()) + " [grid t = "
                                     + format_real17(t) + "]");
        }
        RealDist noncond =
            config.model == ModelKind::Quasithermal
                ? quasithermal_noncondensate(config.trap.atoms, params.big_h,
                                             params.eta)
                : lowtemp_noncondensate(config.trap.atoms, params.big_h);
        for (Fraction fraction : config.fractions)
        {
            const RealDist dist = fraction == Fraction::Noncondensate
                                      ? noncond
                                      : noncond.mirror(config.trap.atoms);
            SweepRow row;
            row.t = t;
            row.atoms = config.trap.atoms;
            row.fraction = fraction;
            row.mean = dist.mean();
            for (int m : config.orders)
            {
                auto dec = duality::wave_fluctuation(dist, m);
                SweepEntry entry;
                entry.order = m;
                entry.central = dec.central;
                entry.poissonian = dec.poissonian;
                entry.wave = dec.wave;
                if (row.mean > 0)
                {
                    entry.ratio = dec.wave / dec.poissonian;
                    entry.correlation =
                        duality::correlation_n(dist, m, config.correlation);
                }
                else
                {
                    entry.ratio = std::numeric_limits<double>::quiet_NaN();
                    entry.correlation = std::numeric_limits<double>::quiet_NaN();
                }
                row.entries.push_back(entry);
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

const char* fraction_name(Fraction f)
{
    return f == Fraction::Condensate ? "condensate" : "noncondensate";
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows,
                     const std::vector<int>& orders, bool with_atoms_column)
{
    os << "t";
    if (with_atoms_column)
        os << ",atoms";
    os << ",fraction,mean";
    for (int m : orders)
        os << ",central_" << m << ",poisson_" << m << ",wave_" << m
           << ",ratio_" << m << ",corr_" << m;
    os << '\n';
    for (const SweepRow& row : rows)
    {
        os << format_real17(row.t);
        if (with_atoms_column)
            os << ',' << row.atoms;
        os << ',' << fraction_name(row.fraction) << ','
           << format_real17(row.mean);
        for (const SweepEntry& e : row.entries)
            os << ',' << format_real17(e.central) << ','
               << format_real17(e.poissonian) << ',' << format_real17(e.wave)
               << ',' << format_real17(e.ratio) << ','
               << format_real17(e.correlation);
        os << '\n';
    }
}

void write_sweep_json(std::ostream& os, const std::vector<SweepRow>& rows,
                      const std::vector<int>& orders)
{
    (void)orders;
    nlohmann::json out = nlohmann::json::array();
    for (const SweepRow& row : rows)
    {
        nlohmann::json j;
        j["t"] = row.t;
        j["atoms"] = row.atoms;
        j["fraction"] = fraction_name(row.fraction);
        j["mean"] = row.mean;
        for (const SweepEntry& e : row.entries)
        {
            std::string suffix = std::to_string(e.order);
            j["central_" + suffix] = e.central;
            j["poisson_" + suffix] = e.poissonian;
            j["wave_" + suffix] = e.wave;
            j["ratio_" + suffix] = e.ratio;
            j["corr_" + suffix] = e.correlation;
        }
        out.push_back(std::move(j));
    }
    os << out.dump(2) << '\n';
}

} // namespace bec
} // namespace becfluct
