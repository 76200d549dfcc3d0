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

#include "conformal/types.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace conformal
{

struct Interval
{
    double min = 0.0;
    double max = 0.0;

    double span() const { return max - min; }
    double center() const { return 0.5 * (min + max); }
    bool contains(double v, double tol = 0.0) const { return v >= min - tol && v <= max + tol; }
};

// Rectangular (x, y) support of a fitted surface plus its meshing step, all in meters.
struct SurfaceDomain
{
    Interval x;
    Interval y;
    double grid_step = 0.5e-3;

    void validate() const;
    bool contains(double px, double py, double tol = 0.0) const { return x.contains(px, tol) && y.contains(py, tol); }
};

// Which side of the surface the elements radiate into.
enum class Side
{
    RadiatingDown, // normal has a negative z-component
    RadiatingUp
};

inline constexpr int kSurfaceDegree = 5;
inline constexpr std::size_t kNumCoefficients = 21;

// Exponent pair (j, k) of the monomial x^j y^k.
struct Monomial
{
    int j;
    int k;
};

// Monomials in ascending total degree, x-power descending inside a degree:
// 1, x, y, x^2, xy, y^2, x^3, ...
const std::array<Monomial, kNumCoefficients> &monomials();

// Coefficient name as used in the surface exchange file, e.g. "p21" for x^2 y.
std::string coefficient_name(Monomial m);

// Quintic bivariate polynomial z = f(x, y) = sum p_jk x^j y^k (j + k <= 5) over a bounded domain.
// Immutable; every query is const and thread-safe.
class PolynomialSurface
{
public:
    PolynomialSurface(const std::array<double, kNumCoefficients> &coeffs, const SurfaceDomain &domain);

    // Position of p_jk inside coefficients().
    static std::size_t index(int j, int k);

    double coeff(int j, int k) const { return coeffs_[index(j, k)]; }
    const std::array<double, kNumCoefficients> &coefficients() const { return coeffs_; }
    const SurfaceDomain &domain() const { return domain_; }

    double evaluate(double x, double y) const;

    // (df/dx, df/dy)
    Vec2 gradient(double x, double y) const;

    // Unit normal +-(-f_x, -f_y, 1)/sqrt(1 + f_x^2 + f_y^2), sign picked by `side`.
    Vec3 normal_at(double x, double y, Side side = Side::RadiatingDown) const;

private:
    std::array<double, kNumCoefficients> coeffs_;
    SurfaceDomain domain_;
};

using SurfaceSamples = std::vector<Vec3>;

struct SurfaceFit
{
    PolynomialSurface surface;
    double rmse; // meters
};

// Least-squares fit over the 21 monomials. Regressors are mapped affinely onto
// [-1, 1]^2 using the domain before solving; returned coefficients are in the raw
// meter basis. Throws NumericalError if the design matrix is rank deficient,
// which includes fewer than 21 samples.
SurfaceFit fit(std::span<const Vec3> samples, const SurfaceDomain &domain);

// Regular grid over the domain at grid_step, x-major, z from evaluate().
SurfaceSamples mesh(const PolynomialSurface &surface);

// Surface exchange file (JSON): {"coefficients": {"p00": ...}, "domain": {...}, "grid_step_m": ...}
PolynomialSurface read_surface_json(const std::filesystem::path &path);
PolynomialSurface parse_surface_json(const std::string &text);
std::string surface_to_json(const PolynomialSurface &surface, double rmse = -1.0);

// Sample ingestion: CSV with header "x,y,z" in meters.
SurfaceSamples read_samples_csv(std::istream &in);
SurfaceSamples read_samples_csv(const std::filesystem::path &path);

} // namespace conformal
