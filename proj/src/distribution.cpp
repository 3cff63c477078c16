// SPDX-License-Identifier: Apache-2.0

#include "becfluct/distribution.hpp"

#include <cmath>

namespace becfluct {

AnyDist read_distribution_csv(std::istream& is, double sum_tol)
{
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("distribution csv: empty input");
    // Tolerate an optional header line.
    if (line.find("probability") == std::string::npos)
    {
        is.seekg(0);
        is.clear();
    }

    std::vector<std::pair<long, std::string>> rows;
    bool exact = false;
    while (std::getline(is, line))
    {
        if (line.empty())
            continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error("distribution csv: malformed row: " + line);
        long n = std::stol(line.substr(0, comma));
        std::string value = line.substr(comma + 1);
        if (n < 0)
            throw std::runtime_error("distribution csv: negative N");
        if (value.find('/') != std::string::npos)
            exact = true;
        rows.emplace_back(n, value);
    }
    if (rows.empty())
        throw std::runtime_error("distribution csv: no rows");

    long n_max = 0;
    for (const auto& [n, v] : rows)
        n_max = std::max(n_max, n);

    if (exact)
    {
        std::vector<BigRat> w(n_max + 1, BigRat(0));
        BigRat sum(0);
        for (const auto& [n, v] : rows)
        {
            w[n] = parse_rational(v);
            sum += w[n];
        }
        double dev = std::abs(sum.get_d() - 1.0);
        if (dev > sum_tol)
            throw NormalizationError("distribution csv: row sum "
                                     + sum.get_str() + " is not 1");
        return ExactDist(std::move(w));
    }

    std::vector<double> w(n_max + 1, 0.0);
    Accumulator<double> acc;
    for (const auto& [n, v] : rows)
    {
        w[n] = std::stod(v);
        acc.add(w[n]);
    }
    if (std::abs(acc.value() - 1.0) > sum_tol)
        throw NormalizationError("distribution csv: row sum "
                                 + format_real17(acc.value()) + " is not 1");
    return RealDist(std::move(w));
}

} // namespace becfluct
