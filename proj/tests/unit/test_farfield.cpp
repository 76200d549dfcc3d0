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

#include "conformal/farfield.hpp"
#include "conformal/reference_data.hpp"

#include <doctest.h>

#include <sstream>

using namespace conformal;

namespace
{

ArrayModel single(const ElementPattern &pattern, const Vec3 &normal = Vec3(0, 0, -1), const Vec3 &pos = Vec3::Zero())
{
    ElementPlacement p;
    p.position = pos;
    p.normal = normal;
    p.frame = local_frame(normal);
    return ArrayModel::with_pattern({p}, pattern);
}

double directivity_peak(const ArrayModel &a, const Excitation &ex, double step = 1.0)
{
    const auto g = sample_sphere(a, ex, RadioConfig{}, step);
    const double p = radiated_power(g);
    return directivity_dbi(*std::max_element(g.values().begin(), g.values().end()), p);
}

} // namespace

TEST_SUITE("farfield")
{

TEST_CASE("radio configuration")
{
    const auto r = RadioConfig::at(5.8e9);
    CHECK(r.wavelength() == doctest::Approx(0.05168835));
    CHECK(r.wavenumber() == doctest::Approx(2 * kPi / 0.05168835));
    CHECK_THROWS_AS(RadioConfig::at(0.0), InputError);
    CHECK_THROWS_AS(RadioConfig::at(-1.0), InputError);
}

TEST_CASE("steering vector points opposite the beam direction")
{
    const auto s = steering_vector(deg2rad(20.0), deg2rad(-27.0));
    CHECK((s.r_s + Direction::from_degrees(20.0, -27.0).unit()).norm() < 1e-15);
}

TEST_CASE("steering phases wrap into (-pi, pi]")
{
    const auto lay = layout(reference::nonuniform_spec(), reference::airframe_surface());
    const auto s = steering_vector(deg2rad(10.0), deg2rad(-40.0));
    const auto ph = steering_phases(lay.elements, s, RadioConfig{});
    const double k = RadioConfig{}.wavenumber();
    for (std::size_t i = 0; i < ph.size(); ++i)
    {
        CHECK(ph[i] > -kPi);
        CHECK(ph[i] <= kPi);
        const double raw = -k * lay.elements[i].position.dot(s.r_s);
        CHECK(std::abs(std::remainder(raw - ph[i], 2 * kPi)) < 1e-9);
    }
}

TEST_CASE("two isotropic elements follow the two-term array factor")
{
    ElementPlacement a, b;
    b.position = Vec3(0.02, 0, 0);
    auto arr = ArrayModel::with_pattern({a, b}, ElementPattern::isotropic());
    const RadioConfig radio;
    const auto ex = Excitation::uniform(2, steering_vector(0.0, deg2rad(-90.0)));
    for (double th : {0.0, 30.0, 95.0})
        for (double ph : {-60.0, 0.0, 45.0})
        {
            const Vec3 r = Direction::from_degrees(th, ph).unit();
            const double psi = radio.wavenumber() * 0.02 * r.x();
            const double expected = std::norm(1.0 + std::polar(1.0, -psi));
            CHECK(intensity(field(arr, ex, Direction::from_degrees(th, ph), radio)) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
}

TEST_CASE("steered contributions add in phase at the steering direction")
{
    const auto lay = layout(reference::planar_spec(0.0), reference::airframe_surface());
    const auto arr = ArrayModel::with_pattern(lay.elements, ElementPattern::isotropic());
    const auto d = Direction::from_degrees(25.0, -50.0);
    const auto e = field(arr, Excitation::uniform(28, steering_vector(d)), d, RadioConfig{});
    CHECK(intensity(e) == doctest::Approx(28.0 * 28.0).epsilon(1e-12));
}

TEST_CASE("single-element directivities match their analytic integrals")
{
    const auto ex = Excitation::uniform(1, steering_vector(0.0, deg2rad(-90.0)));
    // cos^2 amplitude: 4 pi / (2 pi / 5)
    CHECK(directivity_peak(single(ElementPattern::cos_squared()), ex) ==
          doctest::Approx(10.0 * std::log10(10.0)).epsilon(0.005));
    // dipole: 4 pi / (8 pi / 3)
    CHECK(directivity_peak(single(ElementPattern::dipole()), ex) == doctest::Approx(10.0 * std::log10(1.5)).epsilon(0.005));
    CHECK(std::abs(directivity_peak(single(ElementPattern::isotropic()), ex)) < 1e-3);
}

TEST_CASE("sphere sampling agrees with pointwise evaluation")
{
    const auto lay = layout(reference::nonuniform_spec(), reference::airframe_surface());
    const auto arr = ArrayModel::with_pattern(lay.elements, ElementPattern::cos_squared());
    const RadioConfig radio;
    const auto ex = Excitation::uniform(28, steering_vector(0.0, deg2rad(-27.0)));
    const auto g = sample_sphere(arr, ex, radio, 2.0, true);
    REQUIRE(g.size() == 180u * 91u);
    REQUIRE(g.fields.size() == g.size());
    for (std::size_t n = 0; n < g.size(); n += 331)
    {
        const double u = intensity(field(arr, ex, g.direction(n), radio));
        CHECK(g.values()[n] == doctest::Approx(u).epsilon(1e-12));
        CHECK(g.interpolate(g.direction(n)) == doctest::Approx(u).epsilon(1e-9));
    }
}

TEST_CASE("polarized and scalar fields agree for identical frames")
{
    const auto lay = layout(reference::planar_spec(0.0), reference::airframe_surface());
    const auto pol = ArrayModel::with_pattern(lay.elements, ElementPattern::cos_squared());
    const auto sca = ArrayModel::with_pattern(lay.elements, ElementPattern::cos_squared(std::nullopt));
    const auto ex = Excitation::uniform(28, steering_vector(0.0, deg2rad(-60.0)));
    for (double ph : {-80.0, -40.0, -5.0})
    {
        const auto d = Direction::from_degrees(10.0, ph);
        CHECK(intensity(field(pol, ex, d, RadioConfig{})) ==
              doctest::Approx(intensity(field(sca, ex, d, RadioConfig{}))).epsilon(1e-12));
    }
}

TEST_CASE("grid and quadrature guards")
{
    CHECK_NOTHROW(validate_sphere_step(0.5));
    CHECK_THROWS_AS(validate_sphere_step(7.0), InputError);
    CHECK_THROWS_AS(validate_sphere_step(0.0), InputError);
    const SphereGrid partial(1.0, 0.0, 2, 0.0, 2, {1, 1, 1, 1});
    CHECK_FALSE(partial.is_full());
    CHECK_THROWS_AS(radiated_power(partial), InputError);
    CHECK_THROWS_AS(SphereGrid(1.0, 0.0, 2, 0.0, 2, {1, 1, 1}), InputError);
    CHECK_THROWS_AS(directivity_dbi(1.0, 0.0), NumericalError);
    CHECK(directivity_dbi(0.0, 1.0) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("excitation validation")
{
    const auto s = steering_vector(0.0, 0.0);
    Excitation ex = Excitation::uniform(3, s);
    CHECK_THROWS_AS(ex.validate(4), InputError);
    ex.amplitudes = {0, 0, 0};
    CHECK_THROWS_AS(ex.validate(3), InputError);
    ex.amplitudes = {1, -1, 1};
    CHECK_THROWS_AS(ex.validate(3), InputError);
}

TEST_CASE("grid cuts equal directly sampled cuts")
{
    const auto lay = layout(reference::nonuniform_spec(), reference::airframe_surface());
    const auto arr = ArrayModel::with_pattern(lay.elements, ElementPattern::cos_squared());
    const RadioConfig radio;
    const auto ex = Excitation::uniform(28, steering_vector(0.0, deg2rad(-27.0)));
    const auto g = sample_sphere(arr, ex, radio, 1.0);
    const double p = radiated_power(g);
    for (auto plane : {CutPlane::Elevation, CutPlane::Azimuth})
    {
        const double fixed = plane == CutPlane::Elevation ? 0.0 : -27.0;
        const auto a = pattern_cut(g, plane, fixed);
        const auto b = pattern_cut(arr, ex, radio, plane, fixed, 1.0, p);
        REQUIRE(a.u.size() == 360);
        REQUIRE(b.u.size() == 360);
        CHECK(a.angle_deg.front() == -180.0);
        for (std::size_t i = 0; i < a.u.size(); ++i)
            CHECK(a.u[i] == doctest::Approx(b.u[i]).epsilon(1e-9).scale(1e-9));
    }
}

TEST_CASE("elevation cut continues over the pole")
{
    const auto over = cut_direction(CutPlane::Elevation, 0.0, 120.0).unit();
    CHECK((over - Vec3(std::cos(deg2rad(120.0)), 0, std::sin(deg2rad(120.0)))).norm() < 1e-12);
    const auto az = cut_direction(CutPlane::Azimuth, -30.0, 45.0);
    CHECK(az.theta == doctest::Approx(deg2rad(45.0)));
    CHECK(az.phi == doctest::Approx(deg2rad(-30.0)));
}

TEST_CASE("CSV writers use fixed headers")
{
    const auto arr = single(ElementPattern::cos_squared());
    const auto ex = Excitation::uniform(1, steering_vector(0.0, deg2rad(-90.0)));
    const auto g = sample_sphere(arr, ex, RadioConfig{}, 10.0);
    std::ostringstream grid, cut;
    write_grid_csv(grid, g);
    write_cut_csv(cut, pattern_cut(g, CutPlane::Elevation, 0.0));
    CHECK(grid.str().rfind("theta_deg,phi_deg,U,directivity_dBi\n", 0) == 0);
    CHECK(cut.str().rfind("angle_deg,directivity_dBi\n", 0) == 0);
}

}
