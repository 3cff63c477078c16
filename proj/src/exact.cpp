// SPDX-License-Identifier: Apache-2.0

#include "becfluct/exact.hpp"

#include <mutex>
#include <vector>

namespace becfluct {
namespace exact {
namespace {

struct FactorialTable {
    std::vector<BigInt> value;
    std::mutex grow_mutex;

    FactorialTable() { value = {BigInt(1)}; }

    BigInt get(int n)
    {
        std::lock_guard<std::mutex> lock(grow_mutex);
        while (static_cast<int>(value.size()) <= n)
        {
            value.push_back(value.back() * static_cast<int>(value.size()));
        }
        return value[n];
    }
};

FactorialTable& factorial_table()
{
    static FactorialTable table;
    return table;
}

// Triangular tables for both Stirling kinds, row j holds k = 1..j.
struct StirlingTables {
    std::vector<std::vector<BigInt>> second;
    std::vector<std::vector<BigInt>> first_signed;

    StirlingTables()
    {
        second.resize(kStirlingCap + 1);
        first_signed.resize(kStirlingCap + 1);
        for (int j = 1; j <= kStirlingCap; ++j)
        {
            second[j].resize(j + 1);
            first_signed[j].resize(j + 1);
            for (int k = 1; k <= j; ++k)
            {
                if (j == k)
                {
                    second[j][k] = 1;
                    first_signed[j][k] = 1;
                    continue;
                }
                // Here 1 <= k <= j-1, so second[j-1][k] exists.
                BigInt s2 = k * second[j - 1][k];
                BigInt s1 = -(j - 1) * first_signed[j - 1][k];
                if (k >= 2)
                {
                    s2 += second[j - 1][k - 1];
                    s1 += first_signed[j - 1][k - 1];
                }
                second[j][k] = s2;
                first_signed[j][k] = s1;
            }
        }
        // Cross-check the recurrence against the alternating-sum route.
        for (int j = 1; j <= kStirlingCap; ++j)
            for (int k = 1; k <= j; ++k)
                if (second[j][k] != stirling2_alternating(j, k))
                    throw std::logic_error("stirling2 table self-check failed");
    }
};

const StirlingTables& stirling_tables()
{
    static StirlingTables tables;
    return tables;
}

void check_range(int j, int k)
{
    if (j < 1 || k < 1 || k > j)
        throw std::domain_error("stirling: require 1 <= k <= j");
    if (j > kStirlingCap)
        throw std::out_of_range("stirling: row index exceeds table cap");
}

} // namespace

BigInt factorial(int n)
{
    if (n < 0)
        throw std::domain_error("factorial: negative argument");
    return factorial_table().get(n);
}

BigInt binomial(int n, int k)
{
    if (k < 0 || k > n)
        return BigInt(0);
    BigInt result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return result;
}

BigInt stirling2(int j, int k)
{
    check_range(j, k);
    return stirling_tables().second[j][k];
}

BigInt stirling2_alternating(int j, int k)
{
    if (j < 1 || k < 1 || k > j)
        throw std::domain_error("stirling2_alternating: require 1 <= k <= j");
    BigRat sum = vanishing_sum(j, k);
    if (sum.get_den() != 1)
        throw std::logic_error("stirling2_alternating: non-integer result");
    return sum.get_num();
}

BigInt stirling1_signed(int j, int k)
{
    check_range(j, k);
    return stirling_tables().first_signed[j][k];
}

BigRat vanishing_sum(int j, int k)
{
    if (j < 1 || k < 1)
        throw std::domain_error("vanishing_sum: require j >= 1, k >= 1");
    BigRat sum(0);
    for (int n = 1; n <= k; ++n)
    {
        BigInt num;
        mpz_pow_ui(num.get_mpz_t(), BigInt(n).get_mpz_t(),
                   static_cast<unsigned long>(j));
        if ((k - n) % 2 != 0)
            num = -num;
        BigRat term(num, factorial(n) * factorial(k - n));
        term.canonicalize();
        sum += term;
    }
    return sum;
}

} // namespace exact
} // namespace becfluct
