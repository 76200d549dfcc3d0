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

#include "helpers.hpp"

#include "conformal/metrics.hpp"
#include "conformal/reference_data.hpp"

#include <doctest.h>

#include <sstream>

using namespace conformal;

namespace
{

// Full 1-degree grid of a Gaussian beam at `beam` plus an optional bump at `bump`.
SphereGrid synthetic(const Direction &beam, double width_deg, std::optional<Direction> bump, double bump_level)
{
    const auto [nt, np] = SphereGrid::full_dimensions(1.0);
    std::vector<double> u(nt * np);
    const Vec3 b = beam.unit();
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < np; ++j)
        {
            const Vec3 v = Direction::from_degrees(-180.0 + i, -90.0 + j).unit();
            const double a = rad2deg(std::acos(std::clamp(v.dot(b), -1.0, 1.0)));
            double val = std::exp(-std::pow(a / width_deg, 2));
            if (bump)
            {
                const double c = rad2deg(std::acos(std::clamp(v.dot(bump->unit()), -1.0, 1.0)));
                val += bump_level * std::exp(-std::pow(c / 5.0, 2));
            }
            u[i * np + j] = val;
        }
    return SphereGrid::full(1.0, std::move(u));
}

ArrayModel nonuniform_model()
{
    const auto lay = layout(reference::nonuniform_spec(), reference::airframe_surface());
    return ArrayModel::with_pattern(lay.elements, ElementPattern::cos_squared());
}

} // namespace

TEST_SUITE("metrics")
{

TEST_CASE("synthetic beam with one sidelobe")
{
    const auto beam = Direction::from_degrees(0.0, -30.0);
    const auto g = synthetic(beam, 10.0, Direction::from_degrees(0.0, 30.0), 0.1);
    const auto a = analyze_lobes(g, steering_vector(beam));
    CHECK(a.peak_node == g.node(180, 60));
    CHECK(a.pointing_error_deg == doctest::Approx(0.0));
    REQUIRE(a.sll_db);
    CHECK(*a.sll_db == doctest::Approx(-10.0).epsilon(0.01));
    CHECK(rad2deg(a.sidelobe->phi) == doctest::Approx(30.0));
    CHECK(a.mainlobe_mask[a.peak_node]);
    // Gaussian half-power width 2 sigma sqrt(ln 2).
    REQUIRE(a.hpbw_elevation_deg);
    CHECK(*a.hpbw_elevation_deg == doctest::Approx(20.0 * std::sqrt(std::log(2.0))).epsilon(0.02));
    REQUIRE(a.hpbw_azimuth_deg);
    // Along the phi = -30 deg cone the azimuth width stretches by 1 / cos(phi).
    CHECK(*a.hpbw_azimuth_deg == doctest::Approx(20.0 * std::sqrt(std::log(2.0)) / std::cos(deg2rad(30.0))).epsilon(0.03));
}

TEST_CASE("shoulder beams fall back to the cap radius")
{
    const auto [nt, np] = SphereGrid::full_dimensions(1.0);
    std::vector<double> u(nt * np);
    const Vec3 b(1, 0, 0);
    for (std::size_t n = 0; n < u.size(); ++n)
    {
        const Vec3 v = Direction::from_degrees(-180.0 + n / np, -90.0 + n % np).unit();
        u[n] = 2.0 - rad2deg(std::acos(std::clamp(v.dot(b), -1.0, 1.0))) / 180.0;
    }
    const auto g = SphereGrid::full(1.0, u);
    LobeOptions o;
    o.cap_deg = 25.0;
    const auto a = analyze_lobes(g, steering_vector(0.0, 0.0), o);
    for (double r : a.lobe_radius_deg)
        CHECK(r == 25.0);
    REQUIRE(a.sll_db);
    CHECK(*a.sll_db == doctest::Approx(10.0 * std::log10((2.0 - 26.0 / 180.0) / 2.0)).epsilon(0.01));
}

TEST_CASE("single cos-squared element has no sidelobe")
{
    ElementPlacement p;
    p.normal = Vec3(0, 0, -1);
    p.frame = local_frame(p.normal);
    const auto arr = ArrayModel::with_pattern({p}, ElementPattern::cos_squared());
    const auto sv = steering_vector(0.0, deg2rad(-90.0));
    const auto g = sample_sphere(arr, Excitation::uniform(1, sv), RadioConfig{}, 1.0);
    const auto a = analyze_lobes(g, sv);
    CHECK_FALSE(a.sll_db.has_value());
}

TEST_CASE("two isotropic elements one wavelength apart have grating lobes at 0 dB")
{
    const RadioConfig radio;
    ElementPlacement a, b;
    b.position = Vec3(radio.wavelength(), 0, 0);
    const auto arr = ArrayModel::with_pattern({a, b}, ElementPattern::isotropic());
    const auto sv = steering_vector(deg2rad(90.0), 0.0);
    const auto g = sample_sphere(arr, Excitation::uniform(2, sv), radio, 1.0);
    const auto l = analyze_lobes(g, sv);
    REQUIRE(l.sll_db);
    CHECK(*l.sll_db == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("peak is the grid argmax and SLL is scale invariant")
{
    const auto arr = nonuniform_model();
    const auto sv = steering_vector(0.0, deg2rad(-40.0));
    auto ex = Excitation::uniform(28, sv);
    const auto g1 = sample_sphere(arr, ex, RadioConfig{}, 1.0);
    for (auto &a : ex.amplitudes)
        a *= 3.7;
    const auto g2 = sample_sphere(arr, ex, RadioConfig{}, 1.0);
    const auto a1 = analyze_lobes(g1, sv), a2 = analyze_lobes(g2, sv);
    const auto &u = g1.values();
    CHECK(a1.peak_node == static_cast<std::size_t>(std::max_element(u.begin(), u.end()) - u.begin()));
    CHECK(a1.peak_node == a2.peak_node);
    CHECK(std::abs(a1.peak_dbi - a2.peak_dbi) < 1e-12);
    CHECK(std::abs(*a1.sll_db - *a2.sll_db) < 1e-12);
}

TEST_CASE("1-D cut lobes")
{
    PatternCut cut;
    for (int a = -180; a < 180; ++a)
    {
        cut.angle_deg.push_back(a);
        const double m = std::exp(-std::pow(a / 8.0, 2));
        const double s = 0.25 * std::exp(-std::pow((a - 60) / 4.0, 2));
        cut.u.push_back(m + s);
        cut.directivity_dbi.push_back(10.0 * std::log10(m + s));
    }
    const auto c = analyze_cut(cut);
    CHECK(c.peak_angle_deg == 0.0);
    REQUIRE(c.sll_db);
    CHECK(*c.sll_db == doctest::Approx(10.0 * std::log10(0.25)).epsilon(0.01));
    CHECK(*c.sidelobe_angle_deg == 60.0);
    CHECK(*c.hpbw_deg == doctest::Approx(16.0 * std::sqrt(std::log(2.0))).epsilon(0.02));
}

TEST_CASE("scan loss and ranges")
{
    CHECK(scan_loss({15.0, 14.2}) == doctest::Approx(0.8));
    CHECK(scan_loss({3.0, 3.0, 3.0}) == 0.0);
    CHECK_THROWS_AS(scan_loss(std::vector<double>{}), InputError);

    ScanContour c;
    c.steering = SteeringGrid::range(0, 0, -50, -10, 10);
    const double d[] = {10.0, 12.0, 14.0, 13.5, 9.0};
    for (int i = 0; i < 5; ++i)
        c.entries.push_back({0.0, -50.0 + 10 * i, d[i], std::nullopt, 0.0, -50.0 + 10 * i});
    CHECK(scan_loss(c, {0, 0}, {-40, -20}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(scan_loss(c, {5, 5}, {-40, -20}), InputError);
    const auto r = scan_range_at_floor(c, ScanLine::Elevation, 0.0, 3.0);
    REQUIRE(r);
    CHECK(r->min == -40.0);
    CHECK(r->max == -20.0);
    CHECK(c.best().phi_scan_deg == -30.0);
    CHECK_FALSE(scan_range_at_floor(c, ScanLine::Elevation, 5.0).has_value());
}

TEST_CASE("steering grid helpers")
{
    CHECK(inclusive_range(-65, -26, 2).size() == 20);
    CHECK(inclusive_range(-65, -26, 2).back() == -27.0);
    CHECK(inclusive_range(3, 3, 0).size() == 1);
    CHECK_THROWS_AS(inclusive_range(0, 10, 0), InputError);
    CHECK_THROWS_AS(SteeringGrid::single(0, 95).validate(), InputError);
}

TEST_CASE("switching mask matches per-element gain toward the steer")
{
    const auto arr = nonuniform_model();
    const auto sv = steering_vector(0.0, deg2rad(-27.0));
    const auto mask = switching_mask(arr, sv, 0.05);
    const Vec3 r = Direction::from_degrees(0.0, -27.0).unit();
    for (std::size_t i = 0; i < arr.size(); ++i)
    {
        const Vec3 d = arr.elements[i].frame * r;
        const double gain = d.x() > 0.0 ? d.x() * d.x() : 0.0;
        CHECK(mask[i] == (gain > 0.05));
    }
    const auto nadir = switching_mask(arr, steering_vector(0.0, deg2rad(-90.0)));
    CHECK(std::count(nadir.begin(), nadir.end(), true) == 28);

    ElementPlacement p;
    p.normal = Vec3(0, 0, 1);
    p.frame = local_frame(p.normal);
    const auto away = ArrayModel::with_pattern({p}, ElementPattern::cos_squared());
    CHECK_FALSE(switching_mask(away, steering_vector(0.0, deg2rad(-90.0)))[0]);
    CHECK_THROWS_AS(switching_mask(arr, sv, 1.0), InputError);
}

TEST_CASE("amplitude taper conserves power")
{
    std::vector<bool> all(28, true), half(28, false);
    for (int i = 0; i < 14; ++i)
        half[2 * i] = true;
    const auto a = amplitude_taper(all, 1.0);
    CHECK(a[5] == doctest::Approx(1.0 / std::sqrt(28.0)));
    const auto h = amplitude_taper(half, 1.0);
    CHECK(h[0] == doctest::Approx(1.0 / std::sqrt(14.0)));
    CHECK(h[1] == 0.0);
    double p = 0.0;
    for (double x : h)
        p += x * x;
    CHECK(std::abs(p - 1.0) < 1e-12);
    const auto u = amplitude_taper(all, 28.0);
    for (double x : u)
        CHECK(x == doctest::Approx(1.0));
    CHECK_THROWS_AS(amplitude_taper(std::vector<bool>(4, false)), InputError);
}

TEST_CASE("sweep order, symmetry and single-node reproducibility")
{
    const auto arr = nonuniform_model();
    const RadioConfig radio;
    SweepOptions o;
    o.sphere_step_deg = 2.0;
    const auto grid = SteeringGrid{{-20.0, 0.0, 20.0}, {-60.0, -30.0}};
    const auto c = scan_sweep(arr, radio, grid, o);
    REQUIRE(c.entries.size() == 6);
    CHECK(c.entries[1].theta_scan_deg == -20.0);
    CHECK(c.entries[1].phi_scan_deg == -30.0);
    CHECK(c.entries[2].theta_scan_deg == 0.0);
    // Mirror steers agree up to the surface's small odd-in-y terms.
    for (std::size_t j = 0; j < 2; ++j)
        CHECK(std::abs(c.at(0, j).directivity_dbi - c.at(2, j).directivity_dbi) < 1e-3);

    const auto one = scan_sweep(arr, radio, SteeringGrid::single(20.0, -30.0), o);
    const auto direct = analyze_steer(arr, radio, Direction::from_degrees(20.0, -30.0), o);
    CHECK(one.entries[0].directivity_dbi == direct.directivity_dbi);
    CHECK(one.entries[0].sll_db == direct.sll_db);
    CHECK(one.entries[0].directivity_dbi == c.at(2, 1).directivity_dbi);
}

TEST_CASE("planar isotropic contour peaks at the broadside steer")
{
    const auto lay = layout(reference::planar_spec(0.0), reference::airframe_surface());
    const auto arr = ArrayModel::with_pattern(lay.elements, ElementPattern::isotropic());
    SweepOptions o;
    o.sphere_step_deg = 2.0;
    const auto c = scan_sweep(arr, RadioConfig{}, SteeringGrid{{0.0}, {-90.0, -70.0, -50.0}}, o);
    CHECK(c.best().phi_scan_deg == -90.0);
}

TEST_CASE("comparison of identical specs gives identical rows")
{
    SweepOptions o;
    o.sphere_step_deg = 3.0;
    const auto r = compare_arrays({{"a", reference::uniform_spec()}, {"b", reference::uniform_spec()}},
                                  reference::airframe_surface(), ElementPattern::cos_squared(), RadioConfig{},
                                  SteeringGrid{{0.0}, {-60.0, -40.0}}, o);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].max_directivity_dbi == r.rows[1].max_directivity_dbi);
    CHECK(r.rows[0].worst_sll_db == r.rows[1].worst_sll_db);
    CHECK(r.rows[0].scan_loss_db == r.rows[1].scan_loss_db);
    std::ostringstream text, csv, contour;
    r.write_text(text);
    r.write_csv(csv);
    write_contour_csv(contour, r.contours[0]);
    CHECK(csv.str().rfind("name,max_directivity_dBi,", 0) == 0);
    CHECK(contour.str().rfind("theta_scan_deg,phi_scan_deg,directivity_dBi,sll_dB,peak_theta_deg,peak_phi_deg\n", 0) ==
          0);
    CHECK(text.str().find("a ") != std::string::npos);
}

}
