// SPDX-License-Identifier: Apache-2.0
//
// becfluct: number-fluctuation duality toolkit.
//
// Subcommands: coherent, check-coherence, bec, verify, stirling.
// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 numeric non-convergence.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "becfluct/bec.hpp"
#include "becfluct/coherent.hpp"
#include "becfluct/duality.hpp"
#include "becfluct/verify.hpp"

namespace {

using namespace becfluct;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonConvergent = 3;

double to_double(double x) { return x; }
double to_double(const BigRat& x) { return x.get_d(); }

std::ostream& open_output(std::ofstream& file, const std::string& path)
{
    if (path.empty())
        return std::cout;
    file.open(path);
    if (!file)
        throw std::runtime_error("cannot open output file: " + path);
    return file;
}

//---------------------------------------------------------------------------//
// coherent

struct CoherentArgs {
    int order = 2;
    std::string mean;
    std::string via = "closed";
    bool exact_strings = false;
    std::string output;
};

int run_coherent(const CoherentArgs& args)
{
    BigRat mean = parse_rational(args.mean);
    ExactDist state = args.via == "matrix"
                          ? coherent::via_linear_system(args.order, mean)
                          : coherent::closed_form(args.order, mean);
    std::ofstream file;
    std::ostream& os = open_output(file, args.output);
    write_csv(os, state, args.exact_strings);
    return kExitOk;
}

//---------------------------------------------------------------------------//
// check-coherence

struct CheckArgs {
    std::string dist_path;
    double tol = 1e-9;
    int coincidence = 0;
    int max_order = 8;
};

template <typename T>
void print_coherence_report(std::ostream& os, const Distribution<T>& d,
                            const CheckArgs& args)
{
    auto glauber = duality::glauber_order(d, args.tol);
    auto gordon = duality::gordon_order(d, args.tol);
    os << "backend: " << (backend_traits<T>::exact ? "exact" : "real") << '\n';
    os << "mean: " << format_real17(to_double(d.mean())) << '\n';
    os << "glauber_order: " << glauber.str() << '\n';
    os << "gordon_order: " << gordon.str() << '\n';
    os << "m,central,poisson,wave,ratio\n";
    int cap = std::min(args.max_order, std::max(d.n_max(), 2));
    for (int m = 2; m <= cap; ++m)
    {
        auto dec = duality::wave_fluctuation(d, m);
        double poisson = to_double(dec.poissonian);
        double wave = to_double(dec.wave);
        os << m << ',' << format_real17(to_double(dec.central)) << ','
           << format_real17(poisson) << ',' << format_real17(wave) << ','
           << (poisson != 0.0 ? format_real17(wave / poisson) : "nan") << '\n';
    }
    if (args.coincidence >= 1)
    {
        auto breakdown = duality::coincidence_decomposition(d, args.coincidence,
                                                            args.tol);
        os << "coincidence j=" << args.coincidence << '\n';
        os << "k,multiplicity,correlated,accidental,excess\n";
        for (const auto& term : breakdown.terms)
            os << term.k << ',' << term.multiplicity.get_str() << ','
               << format_real17(to_double(term.correlated)) << ','
               << format_real17(to_double(term.accidental)) << ','
               << (term.excess ? 1 : 0) << '\n';
        os << "total," << format_real17(to_double(breakdown.total))
           << '\n';
    }
}

int run_check(const CheckArgs& args)
{
    std::ifstream in(args.dist_path);
    if (!in)
        throw std::runtime_error("cannot open distribution file: "
                                 + args.dist_path);
    AnyDist dist = read_distribution_csv(in);
    std::visit([&](const auto& d) { print_coherence_report(std::cout, d, args); },
               dist);
    return kExitOk;
}

//---------------------------------------------------------------------------//
// bec

struct BecArgs {
    std::string preset;
    std::string config_path;
    std::string trap;
    long atoms = -1;
    std::string model;
    std::string approx;
    double t_min = -1;
    double t_max = -1;
    int points = -1;
    std::string orders;
    std::string fraction;
    std::string corr;
    std::string format;
    std::string output;
    int level_cap = -1;
    double tail_tol = -1;
};

std::vector<int> parse_orders(const std::string& text)
{
    std::vector<int> orders;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        int m = std::stoi(item);
        if (m < 2 || m > 8)
            throw std::runtime_error("orders must lie in [2, 8]");
        orders.push_back(m);
    }
    if (orders.empty())
        throw std::runtime_error("empty orders list");
    return orders;
}

struct BecJob {
    bec::SweepConfig config;
    std::vector<int> atoms_list;  // multi-N presets
    bool atoms_column = false;
    std::string format = "csv";
    std::string output;
};

void apply_key(BecJob& job, const std::string& key, const std::string& value)
{
    auto& cfg = job.config;
    if (key == "trap")
    {
        if (value == "harmonic")
            cfg.trap.kind = bec::TrapKind::IsotropicHarmonic;
        else if (value == "box")
            cfg.trap.kind = bec::TrapKind::BoxPeriodic;
        else
            throw std::runtime_error("unknown trap kind: " + value);
    }
    else if (key == "atoms")
    {
        cfg.trap.atoms = std::stoi(value);
        if (cfg.trap.atoms < 1)
            throw std::runtime_error("atoms must be positive");
        job.atoms_list = {cfg.trap.atoms};
    }
    else if (key == "model")
    {
        if (value == "quasithermal")
            cfg.model = bec::ModelKind::Quasithermal;
        else if (value == "low_temp")
            cfg.model = bec::ModelKind::LowTemp;
        else
            throw std::runtime_error("unknown model: " + value);
    }
    else if (key == "approx")
    {
        if (value == "full_sum")
            cfg.approx = bec::ApproxMode::FullSum;
        else if (value == "low_t")
            cfg.approx = bec::ApproxMode::LowTAsymptotic;
        else
            throw std::runtime_error("unknown approx mode: " + value);
    }
    else if (key == "t_min")
        cfg.t_min = std::stod(value);
    else if (key == "t_max")
        cfg.t_max = std::stod(value);
    else if (key == "points")
        cfg.points = std::stoi(value);
    else if (key == "orders")
        cfg.orders = parse_orders(value);
    else if (key == "fraction")
    {
        if (value == "condensate")
            cfg.fractions = {bec::Fraction::Condensate};
        else if (value == "noncondensate")
            cfg.fractions = {bec::Fraction::Noncondensate};
        else if (value == "both")
            cfg.fractions = {bec::Fraction::Condensate,
                             bec::Fraction::Noncondensate};
        else
            throw std::runtime_error("unknown fraction: " + value);
    }
    else if (key == "correlation")
    {
        if (value == "factorial")
            cfg.correlation = duality::CorrelationKind::FactorialNormalized;
        else if (value == "eq27")
            cfg.correlation = duality::CorrelationKind::VolumeIntegral;
        else
            throw std::runtime_error("unknown correlation kind: " + value);
    }
    else if (key == "level_cap")
        cfg.trap.level_cap = std::stoi(value);
    else if (key == "tail_tolerance")
        cfg.trap.tail_tolerance = std::stod(value);
    else if (key == "format")
    {
        if (value != "csv" && value != "json")
            throw std::runtime_error("unknown format: " + value);
        job.format = value;
    }
    else if (key == "output")
        job.output = value;
    else
        throw std::runtime_error("unknown config key: " + key);
}

void apply_config_file(BecJob& job, const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    while (std::getline(in, line))
    {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto last = s.find_last_not_of(" \t");
            s.erase(last == std::string::npos ? 0 : last + 1);
            return s;
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty())
            apply_key(job, key, value);
    }
}

void apply_preset(BecJob& job, const std::string& preset)
{
    auto& cfg = job.config;
    cfg.trap.kind = bec::TrapKind::IsotropicHarmonic;
    cfg.trap.atoms = 20;
    cfg.orders = {2, 3, 4, 5};
    job.atoms_list = {20};
    if (preset == "fig1" || preset == "fig2")
    {
        cfg.model = bec::ModelKind::Quasithermal;
        cfg.approx = bec::ApproxMode::LowTAsymptotic;
        cfg.fractions = {preset == "fig1" ? bec::Fraction::Condensate
                                          : bec::Fraction::Noncondensate};
    }
    else if (preset == "fig3" || preset == "fig4")
    {
        cfg.model = bec::ModelKind::Quasithermal;
        cfg.approx = bec::ApproxMode::FullSum;
        cfg.fractions = {preset == "fig3" ? bec::Fraction::Condensate
                                          : bec::Fraction::Noncondensate};
    }
    else if (preset == "fig5" || preset == "fig6")
    {
        cfg.model = bec::ModelKind::LowTemp;
        cfg.approx = bec::ApproxMode::FullSum;
        cfg.fractions = {preset == "fig5" ? bec::Fraction::Condensate
                                          : bec::Fraction::Noncondensate};
    }
    else if (preset == "fig7" || preset == "fig8")
    {
        cfg.model = bec::ModelKind::Quasithermal;
        cfg.approx = bec::ApproxMode::FullSum;
        cfg.fractions = {bec::Fraction::Condensate};
        job.atoms_list = {20, 50, 100};
        job.atoms_column = true;
        if (preset == "fig8")
            cfg.correlation = duality::CorrelationKind::VolumeIntegral;
    }
    else
    {
        throw std::runtime_error("unknown preset: " + preset
                                 + " (expected fig1..fig8)");
    }
}

int run_bec(const BecArgs& args)
{
    BecJob job;
    job.atoms_list = {job.config.trap.atoms};
    if (!args.preset.empty())
        apply_preset(job, args.preset);
    if (!args.config_path.empty())
        apply_config_file(job, args.config_path);

    // Explicit flags override preset and config-file values.
    if (!args.trap.empty())
        apply_key(job, "trap", args.trap);
    if (args.atoms > 0)
        apply_key(job, "atoms", std::to_string(args.atoms));
    if (!args.model.empty())
        apply_key(job, "model", args.model);
    if (!args.approx.empty())
        apply_key(job, "approx", args.approx);
    if (args.t_min > 0)
        job.config.t_min = args.t_min;
    if (args.t_max > 0)
        job.config.t_max = args.t_max;
    if (args.points > 0)
        job.config.points = args.points;
    if (!args.orders.empty())
        job.config.orders = parse_orders(args.orders);
    if (!args.fraction.empty())
        apply_key(job, "fraction", args.fraction);
    if (!args.corr.empty())
        apply_key(job, "correlation", args.corr);
    if (!args.format.empty())
        apply_key(job, "format", args.format);
    if (!args.output.empty())
        job.output = args.output;
    if (args.level_cap > 0)
        job.config.trap.level_cap = args.level_cap;
    if (args.tail_tol > 0)
        job.config.trap.tail_tolerance = args.tail_tol;

    if (!(job.config.t_min > 0) || !(job.config.t_min < job.config.t_max)
        || job.config.points < 2)
        throw std::runtime_error("require 0 < t_min < t_max and points >= 2");

    std::vector<bec::SweepRow> rows;
    for (int atoms : job.atoms_list)
    {
        bec::SweepConfig cfg = job.config;
        cfg.trap.atoms = atoms;
        auto part = bec::sweep(cfg);
        rows.insert(rows.end(), part.begin(), part.end());
    }

    std::ofstream file;
    std::ostream& os = open_output(file, job.output);
    if (job.format == "json")
        bec::write_sweep_json(os, rows, job.config.orders);
    else
        bec::write_sweep_csv(os, rows, job.config.orders, job.atoms_column);
    return kExitOk;
}

//---------------------------------------------------------------------------//
// verify

struct VerifyArgs {
    std::string fixture_path;
    int expect_order = 2;
    double tol = 1e-9;
};

int run_verify_cmd(const VerifyArgs& args)
{
    std::optional<verify::FixtureCheck> fixture;
    if (!args.fixture_path.empty())
    {
        std::ifstream in(args.fixture_path);
        if (!in)
            throw std::runtime_error("cannot open fixture file: "
                                     + args.fixture_path);
        fixture = verify::FixtureCheck{read_distribution_csv(in),
                                       args.expect_order, args.tol};
    }
    auto results = verify::run_verify(fixture);
    for (const auto& r : results)
    {
        std::cout << (r.passed ? "PASS" : "FAIL") << ' ' << r.name << " ("
                  << r.checks << " checks)";
        if (!r.passed)
            std::cout << ": " << r.detail;
        std::cout << '\n';
    }
    return verify::all_passed(results) ? kExitOk : kExitVerifyFailure;
}

//---------------------------------------------------------------------------//
// stirling

struct StirlingArgs {
    int j = 1;
    int k = -1;
    bool first_kind = false;
};

int run_stirling(const StirlingArgs& args)
{
    auto value = [&](int k) {
        return args.first_kind ? exact::stirling1_signed(args.j, k)
                               : exact::stirling2(args.j, k);
    };
    if (args.k >= 1)
    {
        std::cout << value(args.k).get_str() << '\n';
        return kExitOk;
    }
    for (int k = 1; k <= args.j; ++k)
        std::cout << (k > 1 ? "," : "") << value(k).get_str();
    std::cout << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Wave/particle decomposition of Bose number fluctuations"};
    app.require_subcommand(1);

    CoherentArgs coherent_args;
    auto* coherent_cmd =
        app.add_subcommand("coherent", "construct a finite-order coherent state");
    coherent_cmd->add_option("--order", coherent_args.order, "coherence order n")
        ->required()
        ->check(CLI::Range(2, 64));
    coherent_cmd->add_option("--mean", coherent_args.mean,
                             "mean occupation, rational p/q or decimal")
        ->required();
    coherent_cmd->add_option("--via", coherent_args.via, "construction route")
        ->check(CLI::IsMember({"closed", "matrix"}));
    coherent_cmd->add_flag("--exact", coherent_args.exact_strings,
                           "emit exact rational probabilities");
    coherent_cmd->add_option("-o,--output", coherent_args.output, "output CSV");

    CheckArgs check_args;
    auto* check_cmd = app.add_subcommand(
        "check-coherence", "detect coherence orders of a distribution file");
    check_cmd->add_option("--dist", check_args.dist_path, "distribution CSV")
        ->required();
    check_cmd->add_option("--tol", check_args.tol, "relative tolerance");
    check_cmd->add_option("--coincidence", check_args.coincidence,
                          "also print the j-detector coincidence breakdown");
    check_cmd->add_option("--max-order", check_args.max_order,
                          "highest order in the decomposition table");

    BecArgs bec_args;
    auto* bec_cmd =
        app.add_subcommand("bec", "temperature sweep of BEC fluctuations");
    bec_cmd->add_option("--preset", bec_args.preset, "figure preset fig1..fig8");
    bec_cmd->add_option("--config", bec_args.config_path, "key = value config");
    bec_cmd->add_option("--trap", bec_args.trap, "harmonic|box");
    bec_cmd->add_option("--atoms", bec_args.atoms, "atom count");
    bec_cmd->add_option("--model", bec_args.model, "quasithermal|low_temp");
    bec_cmd->add_option("--approx", bec_args.approx, "full_sum|low_t");
    bec_cmd->add_option("--tmin", bec_args.t_min, "grid lower edge");
    bec_cmd->add_option("--tmax", bec_args.t_max, "grid upper edge");
    bec_cmd->add_option("--points", bec_args.points, "grid size");
    bec_cmd->add_option("--orders", bec_args.orders, "comma list within [2,8]");
    bec_cmd->add_option("--fraction", bec_args.fraction,
                        "condensate|noncondensate|both");
    bec_cmd->add_option("--corr", bec_args.corr,
                        "correlation kind: factorial|eq27");
    bec_cmd->add_option("--format", bec_args.format, "csv|json");
    bec_cmd->add_option("-o,--output", bec_args.output, "output path");
    bec_cmd->add_option("--level-cap", bec_args.level_cap, "spectrum level cap");
    bec_cmd->add_option("--tail-tol", bec_args.tail_tol,
                        "spectrum tail tolerance");

    VerifyArgs verify_args;
    auto* verify_cmd =
        app.add_subcommand("verify", "run the exact identity suites");
    verify_cmd->add_option("--fixture", verify_args.fixture_path,
                           "distribution expected to be coherent");
    verify_cmd->add_option("--expect-order", verify_args.expect_order,
                           "minimum coherence order for the fixture");
    verify_cmd->add_option("--tol", verify_args.tol, "fixture tolerance");

    StirlingArgs stirling_args;
    auto* stirling_cmd =
        app.add_subcommand("stirling", "print Stirling numbers");
    stirling_cmd->add_option("j", stirling_args.j, "row index")->required();
    stirling_cmd->add_option("k", stirling_args.k, "column index (row if absent)");
    stirling_cmd->add_flag("--first", stirling_args.first_kind,
                           "signed first kind instead of second");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try
    {
        if (coherent_cmd->parsed())
            return run_coherent(coherent_args);
        if (check_cmd->parsed())
            return run_check(check_args);
        if (bec_cmd->parsed())
            return run_bec(bec_args);
        if (verify_cmd->parsed())
            return run_verify_cmd(verify_args);
        if (stirling_cmd->parsed())
            return run_stirling(stirling_args);
    }
    catch (const bec::NonConvergentError& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNonConvergent;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
