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

#include "conformal/farfield.hpp"
#include "conformal/csv.hpp"

#include <algorithm>
#include <limits>
#include <ostream>

namespace conformal
{

RadioConfig RadioConfig::at(double frequency_hz)
{
    RadioConfig r{frequency_hz};
    r.validate();
    return r;
}

void RadioConfig::validate() const
{
    if (!(frequency > 0.0) || !std::isfinite(frequency))
        throw InputError("frequency must be positive");
}

SteeringVector steering_vector(double theta, double phi)
{
    require_finite(theta, "steering theta");
    require_finite(phi, "steering phi");
    const double cp = std::cos(phi);
    return {theta, phi, Vec3(-cp * std::cos(theta), -cp * std::sin(theta), -std::sin(phi))};
}

ArrayModel ArrayModel::with_pattern(std::vector<ElementPlacement> elements, const ElementPattern &pattern)
{
    ArrayModel m;
    m.patterns.assign(elements.size(), pattern);
    m.elements = std::move(elements);
    return m;
}

void ArrayModel::validate() const
{
    if (elements.empty())
        throw InputError("array has no elements");
    if (patterns.size() != elements.size())
        throw InputError("array: " + std::to_string(patterns.size()) + " patterns for " +
                         std::to_string(elements.size()) + " elements");
}

namespace
{

double wrap_phase(double p)
{
    double w = std::remainder(p, 2.0 * kPi); // [-pi, pi]
    if (w <= -kPi)
        w += 2.0 * kPi;
    return w;
}

} // namespace

std::vector<double> steering_phases(std::span<const ElementPlacement> elements, const SteeringVector &steering,
                                    const RadioConfig &radio)
{
    const double k = radio.wavenumber();
    std::vector<double> out;
    out.reserve(elements.size());
    for (const auto &e : elements)
        out.push_back(wrap_phase(-k * e.position.dot(steering.r_s)));
    return out;
}

Excitation Excitation::uniform(std::size_t n, const SteeringVector &steering)
{
    return {std::vector<double>(n, 1.0), steering, std::nullopt};
}

void Excitation::validate(std::size_t n) const
{
    if (explicit_weights)
    {
        if (explicit_weights->size() != n)
            throw InputError("excitation: " + std::to_string(explicit_weights->size()) + " weights for " +
                             std::to_string(n) + " elements");
        if (std::none_of(explicit_weights->begin(), explicit_weights->end(),
                         [](Complex w) { return std::abs(w) > 0.0; }))
            throw InputError("excitation: all weights are zero");
        return;
    }
    if (amplitudes.size() != n)
        throw InputError("excitation: " + std::to_string(amplitudes.size()) + " amplitudes for " + std::to_string(n) +
                         " elements");
    bool any = false;
    for (double a : amplitudes)
    {
        if (!(a >= 0.0) || !std::isfinite(a))
            throw InputError("excitation: amplitudes must be finite and non-negative");
        any = any || a > 0.0;
    }
    if (!any)
        throw InputError("excitation: at least one amplitude must be non-zero");
}

std::vector<Complex> Excitation::weights(std::span<const ElementPlacement> elements, const RadioConfig &radio) const
{
    validate(elements.size());
    if (explicit_weights)
        return *explicit_weights;
    const double k = radio.wavenumber();
    std::vector<Complex> w(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i)
        w[i] = std::polar(amplitudes[i], -k * elements[i].position.dot(steering.r_s));
    return w;
}

CVec3 field(const ArrayModel &array, std::span<const Complex> weights, const Vec3 &r_hat, const RadioConfig &radio)
{
    if (weights.size() != array.size() || array.patterns.size() != array.size())
        throw InputError("field: element, pattern and weight counts differ");
    const double k = radio.wavenumber();
    CVec3 e = CVec3::Zero();
    for (std::size_t i = 0; i < array.size(); ++i)
    {
        const Vec3 f = global_element_field(array.elements[i], array.patterns[i], r_hat, array.transverse);
        if (f.isZero(0.0))
            continue;
        const Complex c = weights[i] * std::polar(1.0, -k * array.elements[i].position.dot(r_hat));
        e += f.cast<Complex>() * c;
    }
    return e;
}

CVec3 field(const ArrayModel &array, const Excitation &excitation, const Direction &obs, const RadioConfig &radio)
{
    array.validate();
    const auto w = excitation.weights(array.elements, radio);
    return field(array, w, obs.unit(), radio);
}

// --- SphereGrid ---------------------------------------------------------

SphereGrid::SphereGrid(double step_deg, double theta0_deg, std::size_t n_theta, double phi0_deg, std::size_t n_phi,
                       std::vector<double> u)
    : step_(step_deg), theta0_(theta0_deg), n_theta_(n_theta), phi0_(phi0_deg), n_phi_(n_phi), u_(std::move(u))
{
    if (!(step_ > 0.0) || !std::isfinite(step_))
        throw InputError("sphere grid: step must be positive");
    if (n_theta_ == 0 || n_phi_ == 0 || u_.size() != n_theta_ * n_phi_)
        throw InputError("sphere grid: value count does not match dimensions");
    for (double v : u_)
        if (!(v >= 0.0))
            throw InputError("sphere grid: intensities must be non-negative");
}

void validate_sphere_step(double step_deg)
{
    if (!(step_deg > 0.0) || !std::isfinite(step_deg))
        throw InputError("sphere step must be positive");
    const double n = 180.0 / step_deg;
    if (std::abs(n - std::round(n)) > 1e-9)
        throw InputError("sphere step must divide 180 and 360 degrees evenly");
}

std::pair<std::size_t, std::size_t> SphereGrid::full_dimensions(double step_deg)
{
    validate_sphere_step(step_deg);
    const auto half = static_cast<std::size_t>(std::llround(180.0 / step_deg));
    return {2 * half, half + 1};
}

SphereGrid SphereGrid::full(double step_deg, std::vector<double> u)
{
    const auto [nt, np] = full_dimensions(step_deg);
    return SphereGrid(step_deg, -180.0, nt, -90.0, np, std::move(u));
}

bool SphereGrid::is_full() const
{
    const double tol = 1e-9;
    return std::abs(theta0_ + 180.0) < tol && std::abs(phi0_ + 90.0) < tol &&
           std::abs(static_cast<double>(n_theta_) * step_ - 360.0) < tol &&
           std::abs(static_cast<double>(n_phi_ - 1) * step_ - 180.0) < tol;
}

Direction SphereGrid::direction(std::size_t n) const
{
    return Direction::from_degrees(theta_deg(n / n_phi_), phi_deg(n % n_phi_));
}

std::optional<std::size_t> SphereGrid::theta_index(double theta_deg) const
{
    double rel = (theta_deg - theta0_) / step_;
    if (is_full())
        rel = std::fmod(std::fmod(rel, static_cast<double>(n_theta_)) + n_theta_, static_cast<double>(n_theta_));
    const double r = std::round(rel);
    if (std::abs(rel - r) > 1e-6 || r < 0 || r >= static_cast<double>(n_theta_))
    {
        if (is_full() && std::abs(r - n_theta_) < 1e-6)
            return 0;
        return std::nullopt;
    }
    return static_cast<std::size_t>(r);
}

std::optional<std::size_t> SphereGrid::phi_index(double phi_deg) const
{
    const double rel = (phi_deg - phi0_) / step_;
    const double r = std::round(rel);
    if (std::abs(rel - r) > 1e-6 || r < 0 || r >= static_cast<double>(n_phi_))
        return std::nullopt;
    return static_cast<std::size_t>(r);
}

double SphereGrid::interpolate(const Direction &d) const
{
    if (!is_full())
        throw InputError("sphere grid interpolation needs a full grid");
    const double nt = static_cast<double>(n_theta_);
    double ti = (rad2deg(d.theta) - theta0_) / step_;
    ti = std::fmod(std::fmod(ti, nt) + nt, nt);
    const double pj = std::clamp((rad2deg(d.phi) - phi0_) / step_, 0.0, static_cast<double>(n_phi_ - 1));
    const auto i0 = static_cast<std::size_t>(std::floor(ti)) % n_theta_;
    const auto i1 = (i0 + 1) % n_theta_;
    const double ft = ti - std::floor(ti);
    const auto j0 = std::min(static_cast<std::size_t>(std::floor(pj)), n_phi_ - 1);
    const auto j1 = std::min(j0 + 1, n_phi_ - 1);
    const double fp = pj - static_cast<double>(j0);
    return (1 - ft) * (1 - fp) * u(i0, j0) + ft * (1 - fp) * u(i1, j0) + (1 - ft) * fp * u(i0, j1) +
           ft * fp * u(i1, j1);
}

SphereGrid sample_sphere(const ArrayModel &array, const Excitation &excitation, const RadioConfig &radio,
                         double step_deg, bool store_fields)
{
    array.validate();
    radio.validate();
    const auto [nt, np] = SphereGrid::full_dimensions(step_deg);
    const auto w = excitation.weights(array.elements, radio);

    std::vector<double> u(nt * np);
    std::vector<CVec3> fields;
    if (store_fields)
        fields.resize(nt * np);
    // Nodes are independent; evaluation order does not affect results.
    for (std::size_t i = 0; i < nt; ++i)
    {
        const double theta = deg2rad(-180.0 + static_cast<double>(i) * step_deg);
        for (std::size_t j = 0; j < np; ++j)
        {
            const double phi = deg2rad(-90.0 + static_cast<double>(j) * step_deg);
            const CVec3 e = field(array, w, Direction{theta, phi}.unit(), radio);
            u[i * np + j] = intensity(e);
            if (store_fields)
                fields[i * np + j] = e;
        }
    }
    SphereGrid grid = SphereGrid::full(step_deg, std::move(u));
    grid.fields = std::move(fields);
    return grid;
}

double radiated_power(const SphereGrid &grid)
{
    if (!grid.is_full())
        throw InputError("radiated power needs a full-sphere grid");
    const double d = deg2rad(grid.step_deg());
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.n_phi(); ++j)
    {
        const double c = std::cos(deg2rad(grid.phi_deg(j)));
        double row = 0.0;
        for (std::size_t i = 0; i < grid.n_theta(); ++i)
            row += grid.u(i, j);
        sum += row * std::max(c, 0.0);
    }
    return sum * d * d;
}

double directivity_dbi(double u, double p_rad)
{
    if (!(p_rad > 0.0))
        throw NumericalError("directivity: radiated power is zero");
    if (u <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(4.0 * kPi * u / p_rad);
}

double directivity_dbi(const SphereGrid &grid, const Direction &obs)
{
    return directivity_dbi(grid.interpolate(obs), radiated_power(grid));
}

Direction cut_direction(CutPlane plane, double fixed_deg, double angle_deg)
{
    if (plane == CutPlane::Azimuth)
        return Direction::from_degrees(angle_deg, fixed_deg);
    const double a = deg2rad(angle_deg), t = deg2rad(fixed_deg);
    const Vec3 v(std::cos(a) * std::cos(t), std::cos(a) * std::sin(t), std::sin(a));
    if (std::abs(angle_deg) <= 90.0)
        return Direction{t, a};
    return Direction::from_vector(v);
}

namespace
{

std::vector<double> cut_angles(double step_deg)
{
    const auto n = static_cast<std::size_t>(std::llround(360.0 / step_deg));
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i)
        a[i] = -180.0 + static_cast<double>(i) * step_deg;
    return a;
}

} // namespace

PatternCut pattern_cut(const SphereGrid &grid, CutPlane plane, double fixed_deg)
{
    if (!grid.is_full())
        throw InputError("pattern cut needs a full-sphere grid");
    const double p_rad = radiated_power(grid);
    PatternCut cut{plane, fixed_deg, cut_angles(grid.step_deg()), {}, {}};
    if (plane == CutPlane::Azimuth)
    {
        const auto j = grid.phi_index(fixed_deg);
        if (!j)
            throw InputError("azimuth cut elevation is not on the grid");
        for (std::size_t i = 0; i < grid.n_theta(); ++i)
            cut.u.push_back(grid.u(i, *j));
    }
    else
    {
        const auto front = grid.theta_index(fixed_deg);
        const auto back = grid.theta_index(fixed_deg + 180.0);
        if (!front || !back)
            throw InputError("elevation cut azimuth is not on the grid");
        for (double a : cut.angle_deg)
        {
            if (a < -90.0)
                cut.u.push_back(grid.u(*back, *grid.phi_index(-180.0 - a)));
            else if (a <= 90.0)
                cut.u.push_back(grid.u(*front, *grid.phi_index(a)));
            else
                cut.u.push_back(grid.u(*back, *grid.phi_index(180.0 - a)));
        }
    }
    for (double v : cut.u)
        cut.directivity_dbi.push_back(directivity_dbi(v, p_rad));
    return cut;
}

PatternCut pattern_cut(const ArrayModel &array, const Excitation &excitation, const RadioConfig &radio,
                       CutPlane plane, double fixed_deg, double step_deg, double p_rad)
{
    validate_sphere_step(step_deg);
    array.validate();
    const auto w = excitation.weights(array.elements, radio);
    PatternCut cut{plane, fixed_deg, cut_angles(step_deg), {}, {}};
    for (double a : cut.angle_deg)
    {
        const double u = intensity(field(array, w, cut_direction(plane, fixed_deg, a).unit(), radio));
        cut.u.push_back(u);
        cut.directivity_dbi.push_back(directivity_dbi(u, p_rad));
    }
    return cut;
}

void write_grid_csv(std::ostream &out, const SphereGrid &grid)
{
    const double p_rad = radiated_power(grid);
    csv::write_header(out, {"theta_deg", "phi_deg", "U", "directivity_dBi"});
    for (std::size_t i = 0; i < grid.n_theta(); ++i)
        for (std::size_t j = 0; j < grid.n_phi(); ++j)
            csv::write_row(out, {grid.theta_deg(i), grid.phi_deg(j), grid.u(i, j),
                                 directivity_dbi(grid.u(i, j), p_rad)});
}

void write_cut_csv(std::ostream &out, const PatternCut &cut)
{
    csv::write_header(out, {"angle_deg", "directivity_dBi"});
    for (std::size_t i = 0; i < cut.angle_deg.size(); ++i)
        csv::write_row(out, {cut.angle_deg[i], cut.directivity_dbi[i]});
}

} // namespace conformal
