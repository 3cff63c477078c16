// SPDX-License-Identifier: Apache-2.0
//! \file becfluct/verify.hpp
//! Aggregated exact identity suites behind the `verify` CLI subcommand.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "becfluct/distribution.hpp"

namespace becfluct {
namespace verify {

struct SuiteResult {
    std::string name;
    int checks = 0;
    bool passed = true;
    std::string detail;  ///< failure description, empty on success
};

/// Distribution expected to be coherent to at least `expect_order`; both
/// detectors must agree and reach that order.
struct FixtureCheck {
    AnyDist dist;
    int expect_order;
    double tol = 1e-9;
};

std::vector<SuiteResult> run_verify(
    const std::optional<FixtureCheck>& fixture = std::nullopt);

bool all_passed(const std::vector<SuiteResult>& results);

} // namespace verify
} // namespace becfluct
