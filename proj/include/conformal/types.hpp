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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace conformal
{

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;
using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299792458.0; // m/s

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }
constexpr double mm(double millimeters) { return millimeters * 1e-3; }

// Bad or inconsistent input (maps to CLI exit code 1).
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure such as a rank-deficient system (exit code 2).
class NumericalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// The weight optimization has no feasible point (exit code 3).
class InfeasibleError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline void require_finite(double v, const char *what)
{
    if (!std::isfinite(v))
        throw InputError(std::string(what) + " must be finite");
}

} // namespace conformal
