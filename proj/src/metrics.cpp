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

#include "conformal/metrics.hpp"
#include "conformal/csv.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace conformal
{

namespace
{

// Index s steps away from i in direction dir on a closed cut of n samples.
std::size_t circular_step(std::size_t i, std::size_t s, int dir, std::size_t n)
{
    s %= n;
    return dir > 0 ? (i + s) % n : (i + n - s) % n;
}

double angle_between_deg(const Vec3 &a, const Vec3 &b)
{
    return rad2deg(std::atan2(a.cross(b).norm(), a.dot(b)));
}

// -3 dB half-widths on either side of the cut peak, in cut-angle degrees.
std::optional<double> half_power_width(const std::vector<double> &angle, const std::vector<double> &u,
                                       std::size_t peak)
{
    const std::size_t n = u.size();
    const double half = 0.5 * u[peak];
    const double step = n > 1 ? angle[1] - angle[0] : 0.0;
    double width = 0.0;
    for (int dir : {+1, -1})
    {
        bool found = false;
        std::size_t i = peak;
        for (std::size_t s = 1; s < n; ++s)
        {
            const std::size_t j = circular_step(peak, s, dir, n);
            if (u[j] < half)
            {
                const double frac = (u[i] - half) / (u[i] - u[j]);
                width += (static_cast<double>(s - 1) + frac) * step;
                found = true;
                break;
            }
            i = j;
        }
        if (!found)
            return std::nullopt;
    }
    return width;
}

} // namespace

LobeAnalysis analyze_lobes(const SphereGrid &grid, const SteeringVector &steering, const LobeOptions &options)
{
    if (grid.size() == 0)
        throw InputError("analyze_lobes: empty grid");
    if (!grid.is_full())
        throw InputError("analyze_lobes: needs a full-sphere grid");
    const auto &u = grid.values();

    LobeAnalysis out;
    out.peak_node = static_cast<std::size_t>(std::max_element(u.begin(), u.end()) - u.begin());
    out.peak = grid.direction(out.peak_node);
    out.peak_u = u[out.peak_node];
    const double p_rad = radiated_power(grid);
    out.peak_dbi = directivity_dbi(out.peak_u, p_rad);
    const Vec3 p = out.peak.unit();
    out.pointing_error_deg = angle_between_deg(p, steering.direction().unit());

    // Tangent basis at the peak.
    Vec3 east = Vec3::UnitZ().cross(p);
    if (east.norm() < 1e-9)
        east = Vec3::UnitY().cross(p);
    east.normalize();
    const Vec3 north = p.cross(east);

    const double ray_step = options.ray_step_deg > 0.0 ? options.ray_step_deg : 0.5 * grid.step_deg();
    const double rise_tol = 1e-12 * out.peak_u;
    for (std::size_t b = 0; b < out.lobe_radius_deg.size(); ++b)
    {
        const double bearing = deg2rad(45.0 * static_cast<double>(b));
        const Vec3 t = std::cos(bearing) * east + std::sin(bearing) * north;
        double prev = out.peak_u;
        std::optional<double> radius;
        double a = ray_step;
        for (; a <= options.max_ray_deg + 1e-9; a += ray_step)
        {
            const Vec3 v = std::cos(deg2rad(a)) * p + std::sin(deg2rad(a)) * t;
            const double cur = grid.interpolate(Direction::from_vector(v));
            if (cur > prev + rise_tol)
            {
                radius = a - ray_step;
                break;
            }
            prev = cur;
        }
        if (!radius)
            radius = prev <= options.null_floor * out.peak_u ? 180.0 : options.cap_deg;
        out.lobe_radius_deg[b] = *radius;
    }

    out.mainlobe_mask.assign(grid.size(), false);
    double side = -1.0;
    std::size_t side_node = 0;
    for (std::size_t n = 0; n < grid.size(); ++n)
    {
        const Vec3 v = grid.direction(n).unit();
        const double ang = angle_between_deg(p, v);
        double bear = rad2deg(std::atan2(v.dot(north), v.dot(east)));
        if (bear < 0.0)
            bear += 360.0;
        const auto k = static_cast<std::size_t>(bear / 45.0) % 8;
        const double f = bear / 45.0 - std::floor(bear / 45.0);
        const double r = (1.0 - f) * out.lobe_radius_deg[k] + f * out.lobe_radius_deg[(k + 1) % 8];
        const bool in = n == out.peak_node || ang <= r + 1e-9;
        out.mainlobe_mask[n] = in;
        if (!in && u[n] > side)
        {
            side = u[n];
            side_node = n;
        }
    }
    if (side > 0.0)
    {
        out.sll_db = 10.0 * std::log10(side / out.peak_u);
        out.sidelobe = grid.direction(side_node);
    }

    const double peak_theta = grid.theta_deg(out.peak_node / grid.n_phi());
    const double peak_phi = grid.phi_deg(out.peak_node % grid.n_phi());
    const auto elev = pattern_cut(grid, CutPlane::Elevation, peak_theta);
    const auto elev_peak = static_cast<std::size_t>(
        std::find_if(elev.angle_deg.begin(), elev.angle_deg.end(),
                     [&](double a) { return std::abs(a - peak_phi) < 1e-9; }) -
        elev.angle_deg.begin());
    if (elev_peak < elev.u.size())
        out.hpbw_elevation_deg = half_power_width(elev.angle_deg, elev.u, elev_peak);
    const auto azim = pattern_cut(grid, CutPlane::Azimuth, peak_phi);
    out.hpbw_azimuth_deg = half_power_width(azim.angle_deg, azim.u, out.peak_node / grid.n_phi());
    return out;
}

CutLobes analyze_cut(const PatternCut &cut)
{
    const auto &u = cut.u;
    const std::size_t n = u.size();
    if (n == 0)
        throw InputError("analyze_cut: empty cut");
    CutLobes out;
    out.peak_index = static_cast<std::size_t>(std::max_element(u.begin(), u.end()) - u.begin());
    out.peak_angle_deg = cut.angle_deg[out.peak_index];
    out.peak_dbi = cut.directivity_dbi.empty() ? 0.0 : cut.directivity_dbi[out.peak_index];
    const double peak = u[out.peak_index];
    const double rise_tol = 1e-12 * peak;

    out.mainlobe_mask.assign(n, false);
    out.mainlobe_mask[out.peak_index] = true;
    for (int dir : {+1, -1})
    {
        std::size_t i = out.peak_index;
        for (std::size_t s = 1; s < n; ++s)
        {
            const std::size_t j = circular_step(i, 1, dir, n);
            if (u[j] > u[i] + rise_tol)
                break;
            out.mainlobe_mask[j] = true;
            i = j;
        }
    }
    double side = -1.0;
    for (std::size_t i = 0; i < n; ++i)
        if (!out.mainlobe_mask[i] && u[i] > side)
        {
            side = u[i];
            out.sidelobe_angle_deg = cut.angle_deg[i];
        }
    if (side > 0.0)
        out.sll_db = 10.0 * std::log10(side / peak);
    else
        out.sidelobe_angle_deg.reset();
    out.hpbw_deg = half_power_width(cut.angle_deg, u, out.peak_index);
    return out;
}

std::vector<double> inclusive_range(double start, double stop, double step)
{
    if (std::abs(stop - start) < 1e-12)
        return {start};
    if (!(step > 0.0) || stop < start)
        throw InputError("range: need start <= stop and a positive step");
    std::vector<double> v;
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i)
        v.push_back(start + static_cast<double>(i) * step);
    return v;
}

SteeringGrid SteeringGrid::range(double theta_start, double theta_stop, double phi_start, double phi_stop,
                                 double step_deg)
{
    return {inclusive_range(theta_start, theta_stop, step_deg), inclusive_range(phi_start, phi_stop, step_deg)};
}

void SteeringGrid::validate() const
{
    if (theta_deg.empty() || phi_deg.empty())
        throw InputError("steering grid is empty");
    for (const auto *axis : {&theta_deg, &phi_deg})
        for (double v : *axis)
            require_finite(v, "steering angle");
    for (double v : phi_deg)
        if (v < -90.0 || v > 90.0)
            throw InputError("steering elevation must lie in [-90, 90] degrees");
}

const ContourEntry &ScanContour::best() const
{
    if (entries.empty())
        throw InputError("scan contour is empty");
    return *std::max_element(entries.begin(), entries.end(), [](const ContourEntry &a, const ContourEntry &b) {
        return a.directivity_dbi < b.directivity_dbi;
    });
}

ContourEntry analyze_steer(const ArrayModel &array, const RadioConfig &radio, const Direction &steer,
                           const SweepOptions &options)
{
    const auto sv = steering_vector(steer);
    const auto grid = sample_sphere(array, Excitation::uniform(array.size(), sv), radio, options.sphere_step_deg);
    const auto lobes = analyze_lobes(grid, sv, options.lobes);
    ContourEntry e;
    e.theta_scan_deg = rad2deg(steer.theta);
    e.phi_scan_deg = rad2deg(steer.phi);
    e.directivity_dbi = lobes.peak_dbi;
    e.sll_db = lobes.sll_db;
    e.peak_theta_deg = grid.theta_deg(lobes.peak_node / grid.n_phi());
    e.peak_phi_deg = grid.phi_deg(lobes.peak_node % grid.n_phi());
    return e;
}

ScanContour scan_sweep(const ArrayModel &array, const RadioConfig &radio, const SteeringGrid &grid,
                       const SweepOptions &options)
{
    grid.validate();
    ScanContour out{grid, {}};
    out.entries.reserve(grid.size());
    for (double t : grid.theta_deg)
        for (double p : grid.phi_deg)
        {
            auto e = analyze_steer(array, radio, Direction::from_degrees(t, p), options);
            e.theta_scan_deg = t;
            e.phi_scan_deg = p;
            out.entries.push_back(e);
        }
    return out;
}

double scan_loss(const std::vector<double> &d)
{
    if (d.empty())
        throw InputError("scan loss: empty range");
    const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
    return *hi - *lo;
}

double scan_loss(const ScanContour &contour, const Interval &theta_deg, const Interval &phi_deg)
{
    std::vector<double> d;
    for (const auto &e : contour.entries)
        if (theta_deg.contains(e.theta_scan_deg, 1e-9) && phi_deg.contains(e.phi_scan_deg, 1e-9))
            d.push_back(e.directivity_dbi);
    return scan_loss(d);
}

std::optional<Interval> scan_range_at_floor(const ScanContour &contour, ScanLine line, double fixed_deg,
                                            double floor_db)
{
    std::vector<const ContourEntry *> pts;
    for (const auto &e : contour.entries)
    {
        const double fixed = line == ScanLine::Elevation ? e.theta_scan_deg : e.phi_scan_deg;
        if (std::abs(fixed - fixed_deg) < 1e-9)
            pts.push_back(&e);
    }
    if (pts.empty())
        return std::nullopt;
    auto coord = [&](const ContourEntry *e) { return line == ScanLine::Elevation ? e->phi_scan_deg : e->theta_scan_deg; };
    std::sort(pts.begin(), pts.end(), [&](auto *a, auto *b) { return coord(a) < coord(b); });
    const auto best = static_cast<std::size_t>(
        std::max_element(pts.begin(), pts.end(),
                         [](auto *a, auto *b) { return a->directivity_dbi < b->directivity_dbi; }) -
        pts.begin());
    const double floor = pts[best]->directivity_dbi - floor_db;
    std::size_t lo = best, hi = best;
    while (lo > 0 && pts[lo - 1]->directivity_dbi >= floor)
        --lo;
    while (hi + 1 < pts.size() && pts[hi + 1]->directivity_dbi >= floor)
        ++hi;
    return Interval{coord(pts[lo]), coord(pts[hi])};
}

std::vector<bool> switching_mask(const ArrayModel &array, const SteeringVector &steering, double threshold)
{
    array.validate();
    if (!(threshold >= 0.0 && threshold < 1.0))
        throw InputError("switching threshold must lie in [0, 1)");
    const Vec3 r_scan = -steering.r_s;
    std::vector<bool> on(array.size());
    for (std::size_t i = 0; i < array.size(); ++i)
        on[i] = array.patterns[i].local_gain(array.elements[i].frame * r_scan) > threshold;
    return on;
}

std::vector<double> amplitude_taper(const std::vector<bool> &mask, double total_power)
{
    if (!(total_power > 0.0) || !std::isfinite(total_power))
        throw InputError("amplitude taper: total power must be positive");
    const auto n_on = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    if (n_on == 0)
        throw InputError("amplitude taper: every element is switched off");
    const double a = std::sqrt(total_power / static_cast<double>(n_on));
    std::vector<double> out(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i)
        out[i] = mask[i] ? a : 0.0;
    return out;
}

ComparisonReport compare_arrays(const std::vector<NamedArraySpec> &specs, const PolynomialSurface &surface,
                                const ElementPattern &pattern, const RadioConfig &radio, const SteeringGrid &grid,
                                const SweepOptions &options, const LayoutOptions &layout_options)
{
    ComparisonReport report;
    for (const auto &named : specs)
    {
        const auto lay = layout(named.spec, surface, layout_options);
        const auto model = ArrayModel::with_pattern(lay.elements, pattern);
        auto contour = scan_sweep(model, radio, grid, options);

        ComparisonRow row;
        row.name = named.name;
        const auto &best = contour.best();
        row.max_directivity_dbi = best.directivity_dbi;
        row.max_theta_scan_deg = best.theta_scan_deg;
        row.max_phi_scan_deg = best.phi_scan_deg;
        row.worst_sll_db = -std::numeric_limits<double>::infinity();
        std::vector<double> d;
        for (const auto &e : contour.entries)
        {
            if (e.sll_db)
                row.worst_sll_db = std::max(row.worst_sll_db, *e.sll_db);
            d.push_back(e.directivity_dbi);
        }
        row.scan_loss_db = scan_loss(d);
        row.elevation_range_deg = scan_range_at_floor(contour, ScanLine::Elevation, best.theta_scan_deg);
        row.azimuth_range_deg = scan_range_at_floor(contour, ScanLine::Azimuth, best.phi_scan_deg);
        report.rows.push_back(row);
        report.contours.push_back(std::move(contour));
    }
    return report;
}

namespace
{

std::string range_text(const std::optional<Interval> &r)
{
    if (!r)
        return "-";
    std::ostringstream s;
    s << r->min << ".." << r->max;
    return s.str();
}

} // namespace

void ComparisonReport::write_text(std::ostream &out) const
{
    out << std::left << std::setw(24) << "array" << std::right << std::setw(12) << "Dmax[dBi]" << std::setw(16)
        << "at(th,ph)[deg]" << std::setw(13) << "worstSLL[dB]" << std::setw(14) << "scanloss[dB]" << std::setw(16)
        << "elev-3dB[deg]" << std::setw(16) << "azim-3dB[deg]" << '\n';
    for (const auto &r : rows)
    {
        std::ostringstream at;
        at << "(" << r.max_theta_scan_deg << "," << r.max_phi_scan_deg << ")";
        out << std::left << std::setw(24) << r.name << std::right << std::fixed << std::setprecision(2)
            << std::setw(12) << r.max_directivity_dbi << std::setw(16) << at.str() << std::setw(13) << r.worst_sll_db
            << std::setw(14) << r.scan_loss_db << std::setw(16) << range_text(r.elevation_range_deg) << std::setw(16)
            << range_text(r.azimuth_range_deg) << '\n';
        out.unsetf(std::ios::floatfield);
    }
}

void ComparisonReport::write_csv(std::ostream &out) const
{
    out << "name,max_directivity_dBi,max_theta_scan_deg,max_phi_scan_deg,worst_sll_dB,scan_loss_dB,"
           "elevation_range_min_deg,elevation_range_max_deg,azimuth_range_min_deg,azimuth_range_max_deg\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto &r : rows)
    {
        out << r.name << ',';
        csv::write_row(out, {r.max_directivity_dbi, r.max_theta_scan_deg, r.max_phi_scan_deg, r.worst_sll_db,
                             r.scan_loss_db, r.elevation_range_deg ? r.elevation_range_deg->min : nan,
                             r.elevation_range_deg ? r.elevation_range_deg->max : nan,
                             r.azimuth_range_deg ? r.azimuth_range_deg->min : nan,
                             r.azimuth_range_deg ? r.azimuth_range_deg->max : nan});
    }
}

void write_contour_csv(std::ostream &out, const ScanContour &contour)
{
    csv::write_header(out, {"theta_scan_deg", "phi_scan_deg", "directivity_dBi", "sll_dB", "peak_theta_deg",
                            "peak_phi_deg"});
    for (const auto &e : contour.entries)
        csv::write_row(out, {e.theta_scan_deg, e.phi_scan_deg, e.directivity_dbi,
                             e.sll_db ? *e.sll_db : std::numeric_limits<double>::quiet_NaN(), e.peak_theta_deg,
                             e.peak_phi_deg});
}

} // namespace conformal
