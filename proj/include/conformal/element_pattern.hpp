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

#include "conformal/geometry.hpp"
#include "conformal/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace conformal
{

// Observation or steering direction: theta is azimuth, phi is elevation (radians).
// The unit vector is (cos phi cos theta, cos phi sin theta, sin phi).
struct Direction
{
    double theta = 0.0;
    double phi = 0.0;

    static Direction from_degrees(double theta_deg, double phi_deg) { return {deg2rad(theta_deg), deg2rad(phi_deg)}; }
    static Direction from_vector(const Vec3 &v);
    Vec3 unit() const;
};

enum class PatternKind
{
    Isotropic,
    DipoleHIsotropic,
    CosSquared,
    Tabulated
};

std::string to_string(PatternKind kind);
PatternKind parse_pattern_kind(const std::string &name); // "isotropic" | "dipole" | "cos-squared" | "tabulated"

// Sampled local pattern on a regular (theta_L, phi_L) grid in degrees, amplitudes linear.
struct PatternTable
{
    std::vector<double> theta_deg;              // ascending
    std::vector<double> phi_deg;                // ascending
    std::vector<double> amplitude;              // theta-major: [i * phi.size() + j]
    std::vector<Vec3> polarization;             // optional, same layout as amplitude

    double amplitude_at(std::size_t i, std::size_t j) const { return amplitude[i * phi_deg.size() + j]; }
};

// Tabulated pattern CSV "theta_deg,phi_deg,amplitude[,px,py,pz]"; rows must form a full grid.
PatternTable read_pattern_table(std::istream &in);
PatternTable read_pattern_table(const std::filesystem::path &path);

// Element radiation law f in the element's local frame plus its polarization.
// Local angles: theta_L = atan2(d_y', d_x'), phi_L = asin(d_z'); boresight is x'.
class ElementPattern
{
public:
    static ElementPattern isotropic(std::optional<Vec3> polarization = std::nullopt);
    static ElementPattern dipole(std::optional<Vec3> polarization = std::nullopt);
    static ElementPattern cos_squared(std::optional<Vec3> polarization = Vec3::UnitY());
    static ElementPattern tabulated(PatternTable table, std::optional<Vec3> polarization = std::nullopt);

    PatternKind kind() const { return kind_; }
    const std::optional<Vec3> &polarization() const { return polarization_; }
    bool polarized() const { return polarization_.has_value() || !table_.polarization.empty(); }

    // Non-negative amplitude toward the local unit direction d.
    double local_gain(const Vec3 &d_local) const;

    // Local polarization toward d (table polarization wins over the fixed one).
    Vec3 local_polarization(const Vec3 &d_local) const;

private:
    ElementPattern(PatternKind kind, std::optional<Vec3> pol, PatternTable table = {});

    double table_gain(double theta_deg, double phi_deg) const;

    PatternKind kind_;
    std::optional<Vec3> polarization_;
    PatternTable table_;
};

// Non-polarized elements put their amplitude on this fixed global axis, so
// contributions add as scalars.
inline const Vec3 kScalarFieldAxis = Vec3::UnitZ();

// Element field in global coordinates toward r_hat: T^T (f p') for polarized
// patterns, f along kScalarFieldAxis otherwise. With `transverse`, polarized
// fields lose their component along r_hat.
Vec3 global_element_field(const ElementPlacement &placement, const ElementPattern &pattern, const Vec3 &r_hat,
                          bool transverse = false);
Vec3 global_element_field(const ElementPlacement &placement, const ElementPattern &pattern, const Direction &obs,
                          bool transverse = false);

} // namespace conformal
