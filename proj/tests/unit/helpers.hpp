// SPDX-License-Identifier: Apache-2.0
//
// conformal: synthesis and analysis of conformal phased antenna arrays
// Copyright (C) 2026 The conformal authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

// Shared fixtures for the unit tests. Oracles here are written independently
// of the library code they check.

#include "conformal/types.hpp"

#include <filesystem>
#include <map>
#include <random>
#include <utility>

namespace testing
{

// Coefficients of the fitted airframe surface, keyed by (j, k) of x^j y^k.
inline const std::map<std::pair<int, int>, double> &airframe_coefficients()
{
    static const std::map<std::pair<int, int>, double> c{
        {{0, 0}, -1.55797797802342},     {{0, 1}, 2.91329870656138e-05},  {{0, 2}, -2.82550052149489},
        {{0, 3}, -0.000137746419535819}, {{0, 4}, 2704.54313735367},      {{0, 5}, 0.00341547370121415},
        {{1, 0}, 48.8878266621642},      {{1, 1}, -0.000759694335898899}, {{1, 2}, -176.329237389226},
        {{1, 3}, 0.000807535950634196},  {{1, 4}, -32267.8360780080},     {{2, 0}, -619.894754098413},
        {{2, 1}, 0.00727428458918239},   {{2, 2}, 4228.10444461165},      {{2, 3}, 0.00255991407797952},
        {{3, 0}, 3816.19583103342},      {{3, 1}, -0.0303751734433911},   {{3, 2}, -14489.3530756313},
        {{4, 0}, -11480.5566776082},     {{4, 1}, 0.0466945380798176},    {{5, 0}, 13628.3459462032}};
    return c;
}

inline double airframe_z(double x, double y)
{
    double z = 0.0;
    for (const auto &[jk, c] : airframe_coefficients())
        z += c * std::pow(x, jk.first) * std::pow(y, jk.second);
    return z;
}

inline std::filesystem::path data_dir() { return CONFORMAL_DATA_DIR; }

inline std::filesystem::path scratch(const std::string &name)
{
    const auto p = std::filesystem::path(CONFORMAL_TEST_TMP) / name;
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

inline bool close_rel(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

} // namespace testing
