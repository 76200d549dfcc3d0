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

#include "conformal/farfield.hpp"
#include "conformal/geometry.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace conformal
{

// Mainlobe growth: from the grid peak, walk eight great-circle rays until the
// intensity first rises again. A ray that decays to (near) zero without rising
// leaves the whole ray in the mainlobe; a ray that neither rises nor decays
// within max_ray_deg (a shoulder) falls back to cap_deg.
struct LobeOptions
{
    double cap_deg = 20.0;
    double max_ray_deg = 90.0;
    double ray_step_deg = 0.0; // 0: half the grid step
    double null_floor = 1e-6;  // fraction of the peak treated as a null
};

struct LobeAnalysis
{
    std::size_t peak_node = 0;
    Direction peak;
    double peak_u = 0.0;
    double peak_dbi = 0.0;
    double pointing_error_deg = 0.0; // angle between the peak and the steering direction

    std::optional<double> sll_db; // highest sidelobe relative to the peak, <= 0
    std::optional<Direction> sidelobe;

    std::vector<bool> mainlobe_mask; // per grid node
    std::array<double, 8> lobe_radius_deg{};

    std::optional<double> hpbw_elevation_deg;
    std::optional<double> hpbw_azimuth_deg;
};

LobeAnalysis analyze_lobes(const SphereGrid &grid, const SteeringVector &steering, const LobeOptions &options = {});

// Null-to-null mainlobe on a closed 1-D cut.
struct CutLobes
{
    std::size_t peak_index = 0;
    double peak_angle_deg = 0.0;
    double peak_dbi = 0.0;
    std::optional<double> sll_db;
    std::optional<double> sidelobe_angle_deg;
    std::optional<double> hpbw_deg;
    std::vector<bool> mainlobe_mask;
};

CutLobes analyze_cut(const PatternCut &cut);

// Regular grid of steering angles in degrees.
struct SteeringGrid
{
    std::vector<double> theta_deg;
    std::vector<double> phi_deg;

    static SteeringGrid single(double theta_deg, double phi_deg) { return {{theta_deg}, {phi_deg}}; }
    // Inclusive ranges; start == stop gives a single value.
    static SteeringGrid range(double theta_start, double theta_stop, double phi_start, double phi_stop,
                              double step_deg);
    std::size_t size() const { return theta_deg.size() * phi_deg.size(); }
    void validate() const;
};

std::vector<double> inclusive_range(double start, double stop, double step);

struct ContourEntry
{
    double theta_scan_deg = 0.0;
    double phi_scan_deg = 0.0;
    double directivity_dbi = 0.0; // at the realized peak
    std::optional<double> sll_db;
    double peak_theta_deg = 0.0;
    double peak_phi_deg = 0.0;
};

// Entries are theta-major: all phi values for the first theta, then the next theta.
struct ScanContour
{
    SteeringGrid steering;
    std::vector<ContourEntry> entries;

    const ContourEntry &at(std::size_t theta_index, std::size_t phi_index) const
    {
        return entries[theta_index * steering.phi_deg.size() + phi_index];
    }
    const ContourEntry &best() const; // maximum directivity
};

struct SweepOptions
{
    double sphere_step_deg = 1.0;
    LobeOptions lobes;
};

// Unit-amplitude excitation steered to (theta, phi), sampled and analyzed.
ContourEntry analyze_steer(const ArrayModel &array, const RadioConfig &radio, const Direction &steer,
                           const SweepOptions &options = {});

ScanContour scan_sweep(const ArrayModel &array, const RadioConfig &radio, const SteeringGrid &grid,
                       const SweepOptions &options = {});

// max - min of the supplied directivities.
double scan_loss(const std::vector<double> &directivities_dbi);

// Scan loss over the contour entries whose steering angles fall inside the window.
double scan_loss(const ScanContour &contour, const Interval &theta_deg, const Interval &phi_deg);

enum class ScanLine
{
    Elevation, // vary phi at a fixed theta
    Azimuth    // vary theta at a fixed phi
};

// Contiguous steering range around the line's best entry whose directivity stays
// within floor_db of the line maximum.
std::optional<Interval> scan_range_at_floor(const ScanContour &contour, ScanLine line, double fixed_deg,
                                            double floor_db = 3.0);

// true = element on. An element stays on when its gain toward the steering
// direction exceeds the threshold.
std::vector<bool> switching_mask(const ArrayModel &array, const SteeringVector &steering, double threshold = 0.05);

// Equal split of total_power across the on-elements: a_i = sqrt(P / N_on).
std::vector<double> amplitude_taper(const std::vector<bool> &mask, double total_power = 1.0);

struct NamedArraySpec
{
    std::string name;
    ArraySpec spec;
};

struct ComparisonRow
{
    std::string name;
    double max_directivity_dbi = 0.0;
    double max_theta_scan_deg = 0.0;
    double max_phi_scan_deg = 0.0;
    double worst_sll_db = 0.0;
    double scan_loss_db = 0.0;
    std::optional<Interval> elevation_range_deg;
    std::optional<Interval> azimuth_range_deg;
};

struct ComparisonReport
{
    std::vector<ComparisonRow> rows;
    std::vector<ScanContour> contours;

    void write_text(std::ostream &out) const;
    void write_csv(std::ostream &out) const;
};

ComparisonReport compare_arrays(const std::vector<NamedArraySpec> &specs, const PolynomialSurface &surface,
                                const ElementPattern &pattern, const RadioConfig &radio, const SteeringGrid &grid,
                                const SweepOptions &options = {}, const LayoutOptions &layout_options = {});

// "theta_scan_deg,phi_scan_deg,directivity_dBi,sll_dB,peak_theta_deg,peak_phi_deg"
void write_contour_csv(std::ostream &out, const ScanContour &contour);

} // namespace conformal
