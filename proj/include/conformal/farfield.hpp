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

#include "conformal/element_pattern.hpp"
#include "conformal/geometry.hpp"
#include "conformal/types.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace conformal
{

struct RadioConfig
{
    double frequency = 5.8e9; // Hz

    static RadioConfig at(double frequency_hz);
    void validate() const;
    double wavelength() const { return kSpeedOfLight / frequency; }
    double wavenumber() const { return 2.0 * kPi / wavelength(); }
};

// Beam steering vector r_s = -(cos phi_s cos theta_s, cos phi_s sin theta_s, sin phi_s).
// The weights exp(-j k r_i . r_s) cancel the path phase exactly at (theta_s, phi_s).
struct SteeringVector
{
    double theta = 0.0;
    double phi = 0.0;
    Vec3 r_s = -Vec3::UnitX();

    Direction direction() const { return {theta, phi}; }
};

SteeringVector steering_vector(double theta, double phi);
inline SteeringVector steering_vector(const Direction &d) { return steering_vector(d.theta, d.phi); }

// Elements with their patterns; patterns.size() == elements.size().
struct ArrayModel
{
    std::vector<ElementPlacement> elements;
    std::vector<ElementPattern> patterns;
    bool transverse = false; // project polarized element fields onto the plane normal to r_hat

    static ArrayModel with_pattern(std::vector<ElementPlacement> elements, const ElementPattern &pattern);
    std::size_t size() const { return elements.size(); }
    void validate() const;
};

// -k (r_i . r_s) wrapped to (-pi, pi].
std::vector<double> steering_phases(std::span<const ElementPlacement> elements, const SteeringVector &steering,
                                    const RadioConfig &radio);

struct Excitation
{
    std::vector<double> amplitudes;
    SteeringVector steering;
    std::optional<std::vector<Complex>> explicit_weights;

    static Excitation uniform(std::size_t n, const SteeringVector &steering);
    void validate(std::size_t n) const;
    // w_i = a_i exp(-j k r_i . r_s), or the explicit weights when given.
    std::vector<Complex> weights(std::span<const ElementPlacement> elements, const RadioConfig &radio) const;
};

// E(r_hat) = sum_i f_i w_i exp(-j k r_i . r_hat)
CVec3 field(const ArrayModel &array, std::span<const Complex> weights, const Vec3 &r_hat, const RadioConfig &radio);
CVec3 field(const ArrayModel &array, const Excitation &excitation, const Direction &obs, const RadioConfig &radio);

inline double intensity(const CVec3 &e) { return e.squaredNorm(); }

// Regular (theta, phi) grid of radiation intensity, theta-major. A full grid
// spans theta in [-180, 180) and phi in [-90, 90] at one step.
class SphereGrid
{
public:
    SphereGrid(double step_deg, double theta0_deg, std::size_t n_theta, double phi0_deg, std::size_t n_phi,
               std::vector<double> u);

    static SphereGrid full(double step_deg, std::vector<double> u);
    static std::pair<std::size_t, std::size_t> full_dimensions(double step_deg);

    double step_deg() const { return step_; }
    std::size_t n_theta() const { return n_theta_; }
    std::size_t n_phi() const { return n_phi_; }
    std::size_t size() const { return u_.size(); }
    std::size_t node(std::size_t i, std::size_t j) const { return i * n_phi_ + j; }
    double theta_deg(std::size_t i) const { return theta0_ + static_cast<double>(i) * step_; }
    double phi_deg(std::size_t j) const { return phi0_ + static_cast<double>(j) * step_; }
    Direction direction(std::size_t n) const;
    double u(std::size_t i, std::size_t j) const { return u_[node(i, j)]; }
    const std::vector<double> &values() const { return u_; }
    bool is_full() const;

    // Bilinear interpolation of U (theta wraps); needs a full grid.
    double interpolate(const Direction &d) const;

    // Node indices holding exactly the given angles, if any.
    std::optional<std::size_t> theta_index(double theta_deg) const;
    std::optional<std::size_t> phi_index(double phi_deg) const;

    std::vector<CVec3> fields; // optional per-node field vectors

private:
    double step_;
    double theta0_;
    std::size_t n_theta_;
    double phi0_;
    std::size_t n_phi_;
    std::vector<double> u_;
};

// Throws unless step_deg > 0 divides both 360 and 180.
void validate_sphere_step(double step_deg);

SphereGrid sample_sphere(const ArrayModel &array, const Excitation &excitation, const RadioConfig &radio,
                         double step_deg = 1.0, bool store_fields = false);

// sum U cos(phi) dtheta dphi over a full grid.
double radiated_power(const SphereGrid &grid);

double directivity_dbi(double u, double p_rad);
double directivity_dbi(const SphereGrid &grid, const Direction &obs);

enum class CutPlane
{
    Elevation, // great circle through the poles at azimuth fixed_deg; angle is elevation continued past +-90
    Azimuth    // cone of constant elevation fixed_deg; angle is azimuth
};

struct PatternCut
{
    CutPlane plane = CutPlane::Elevation;
    double fixed_deg = 0.0;
    std::vector<double> angle_deg;
    std::vector<double> u;
    std::vector<double> directivity_dbi;
};

// Direction on a cut for the given angle.
Direction cut_direction(CutPlane plane, double fixed_deg, double angle_deg);

// Slice of a full grid; the fixed angle must lie on the grid.
PatternCut pattern_cut(const SphereGrid &grid, CutPlane plane, double fixed_deg);

// Direct sampling at step_deg; directivity uses the supplied radiated power.
PatternCut pattern_cut(const ArrayModel &array, const Excitation &excitation, const RadioConfig &radio,
                       CutPlane plane, double fixed_deg, double step_deg, double p_rad);

void write_grid_csv(std::ostream &out, const SphereGrid &grid);
void write_cut_csv(std::ostream &out, const PatternCut &cut);

} // namespace conformal
