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

#include "conformal/surface.hpp"
#include "conformal/types.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace conformal
{

enum class LayoutKind
{
    NonUniformConformal,
    UniformConformal,
    Planar
};

std::string to_string(LayoutKind kind);
LayoutKind parse_layout_kind(const std::string &name); // "non-uniform-conformal" | "uniform-conformal" | "planar"

// Parametric array description. Lengths in meters.
//
// Non-uniform conformal: the two inner rows start at x1_inner and grow by a
// geometric sequence dx1 * q^(n-1); the outer rows are evenly spaced from
// x1_outer to x_end_outer. Inner rows sit at y = +-dy1/2, outer rows a further
// dy2 away. Uniform conformal and planar use the dx/dy lattice centered on the
// surface domain; planar puts every element on the plane z = planar_z.
struct ArraySpec
{
    LayoutKind kind = LayoutKind::NonUniformConformal;
    int elements_per_row = 7; // N, along x
    int rows = 4;             // M, along y

    double dx1 = 0.0;
    double q = 1.0;
    double x1_inner = 0.0;
    double x1_outer = 0.0;
    double x_end_outer = 0.0;
    double dy1 = 0.0;
    double dy2 = 0.0;

    double dx = 0.0;
    double dy = 0.0;
    double planar_z = 0.0;

    void validate() const;
    int element_count() const { return elements_per_row * rows; }
};

struct ElementPlacement
{
    int index = 0;
    Vec3 position = Vec3::Zero(); // GCS, meters
    Vec3 normal = Vec3::UnitZ();  // outward unit normal (boresight)
    Mat3 frame = Mat3::Identity(); // rows x', y', z' in GCS; v_local = frame * v_global
};

std::vector<double> x_positions_inner(const ArraySpec &spec);
std::vector<double> x_positions_outer(const ArraySpec &spec);

// Local frame with x' along the normal, y' the global y-axis projected off the
// normal (global x when y is nearly parallel to it), z' = x' cross y'.
Mat3 local_frame(const Vec3 &normal);

struct LayoutOptions
{
    Side side = Side::RadiatingDown;
    // Inner-row elements past the domain's x-limits are extrapolated with a
    // warning unless strict; anything else out of domain is always an error.
    bool strict_domain = false;
    double domain_tolerance = 1e-9;
};

struct Layout
{
    std::vector<ElementPlacement> elements; // row-major: rows by ascending y, x ascending inside a row
    std::vector<std::string> warnings;
};

Layout layout(const ArraySpec &spec, const PolynomialSurface &surface, const LayoutOptions &options = {});

// CSV "index,x,y,z,nx,ny,nz" (meters), optionally followed by the nine frame entries row by row.
void write_layout_csv(std::ostream &out, const std::vector<ElementPlacement> &elements, bool with_frame = false);

} // namespace conformal
