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

// Run configuration. JSON with lengths in millimeters and angles in degrees;
// everything is converted to meters and radians on load.

#include "conformal/farfield.hpp"
#include "conformal/geometry.hpp"
#include "conformal/metrics.hpp"
#include "conformal/optimizer.hpp"
#include "conformal/surface.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace conformal
{

enum class SurfaceSource
{
    File,
    Inline,
    Samples,
    Builtin
};

enum class Reconfiguration
{
    None,
    Switching, // weak elements off, the rest at unit amplitude
    Taper      // weak elements off, total power split equally
};

struct CutRequest
{
    CutPlane plane = CutPlane::Elevation;
    double fixed_deg = 0.0;
};

struct RunConfig
{
    std::filesystem::path base_dir; // relative paths resolve against this

    SurfaceSource surface_source = SurfaceSource::Builtin;
    std::filesystem::path surface_path; // File or Samples
    std::optional<PolynomialSurface> inline_surface;
    std::optional<SurfaceDomain> samples_domain; // Samples: fit domain, default the sample bounds
    std::string builtin_surface = "airframe";

    std::vector<NamedArraySpec> arrays;
    Side side = Side::RadiatingDown;
    bool strict_domain = false;

    PatternKind element = PatternKind::CosSquared;
    std::optional<Vec3> polarization = Vec3::UnitY();
    std::filesystem::path element_table;
    bool transverse = false;

    RadioConfig radio;
    double sphere_step_deg = 1.0;
    SteeringGrid steering = SteeringGrid::single(0.0, -27.0);
    LobeOptions lobes;

    Reconfiguration reconfiguration = Reconfiguration::None;
    double switching_threshold = 0.05;

    OptimizerOptions optimizer;
    std::optional<double> u_ref;
    double matrix_step_deg = 2.0;

    std::optional<std::filesystem::path> weights_path;
    std::vector<CutRequest> cuts{{CutPlane::Elevation, 0.0}};
    bool write_grid = false;

    std::filesystem::path output_dir = "out";

    std::filesystem::path resolve(const std::filesystem::path &p) const;
    SweepOptions sweep_options() const { return {sphere_step_deg, lobes}; }
    LayoutOptions layout_options() const { return {side, strict_domain, 1e-9}; }
};

// Throws InputError listing every invalid field, one per line.
RunConfig load_config(const std::filesystem::path &path);
RunConfig parse_config(const std::string &json_text, const std::filesystem::path &base_dir);

// Surface from the configured source; Samples runs a fit.
PolynomialSurface load_surface(const RunConfig &config);
ElementPattern load_element(const RunConfig &config);

} // namespace conformal
