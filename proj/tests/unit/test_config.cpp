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

#include "conformal/config.hpp"

#include <doctest.h>

#include <fstream>

using namespace conformal;

namespace
{

std::string error_of(const std::string &text, const std::filesystem::path &base = ".")
{
    try
    {
        parse_config(text, base);
    }
    catch (const InputError &e)
    {
        return e.what();
    }
    return {};
}

} // namespace

TEST_SUITE("config")
{

TEST_CASE("empty object gives the documented defaults")
{
    const auto c = parse_config("{}", "/base");
    CHECK(c.surface_source == SurfaceSource::Builtin);
    REQUIRE(c.arrays.size() == 1);
    CHECK(c.arrays[0].name == "nonuniform");
    CHECK(c.arrays[0].spec.dx1 == doctest::Approx(0.0207));
    CHECK(c.element == PatternKind::CosSquared);
    REQUIRE(c.polarization);
    CHECK(c.polarization->isApprox(Vec3::UnitY()));
    CHECK(c.radio.frequency == doctest::Approx(5.8e9));
    CHECK(c.sphere_step_deg == 1.0);
    CHECK(c.steering.theta_deg == std::vector<double>{0.0});
    CHECK(c.steering.phi_deg == std::vector<double>{-27.0});
    CHECK(c.optimizer.sll_ceiling == 0.1);
    CHECK(c.optimizer.floor_fraction == 0.707);
    CHECK(c.output_dir == std::filesystem::path("/base/out"));
    REQUIRE(c.cuts.size() == 1);
    CHECK(c.cuts[0].plane == CutPlane::Elevation);
    CHECK(c.side == Side::RadiatingDown);
}

TEST_CASE("comments are allowed and units convert")
{
    const auto c = parse_config(R"({
        // uniform benchmark
        "array": {"kind": "uniform-conformal", "dx_mm": 20.8, "dy_mm": 25},
        "frequency_hz": 12e9,
        "steering": {"theta_deg": {"start": -10, "stop": 10}, "phi_deg": -40, "step_deg": 5},
        "element": {"pattern": "dipole", "polarization": [0, 0, 2]},
        "lobes": {"cap_deg": 15},
        "reconfiguration": "taper",
        "cuts": [{"plane": "azimuth", "fixed_deg": -27}]
    })",
                                "/b");
    REQUIRE(c.arrays.size() == 1);
    CHECK(c.arrays[0].spec.kind == LayoutKind::UniformConformal);
    CHECK(c.arrays[0].spec.dx == doctest::Approx(0.0208));
    CHECK(c.arrays[0].name == "uniform-conformal");
    CHECK(c.radio.frequency == 12e9);
    CHECK(c.steering.theta_deg == std::vector<double>{-10, -5, 0, 5, 10});
    CHECK(c.element == PatternKind::DipoleHIsotropic);
    CHECK(c.polarization->isApprox(Vec3::UnitZ()));
    CHECK(c.lobes.cap_deg == 15.0);
    CHECK(c.reconfiguration == Reconfiguration::Taper);
    CHECK(c.cuts[0].plane == CutPlane::Azimuth);
    CHECK(c.cuts[0].fixed_deg == -27.0);
}

TEST_CASE("presets and overrides")
{
    const auto c = parse_config(R"({"arrays": [
        {"preset": "nonuniform"},
        {"preset": "uniform", "name": "equal"},
        {"preset": "planar", "planar_z_mm": -80}
    ]})",
                                ".");
    REQUIRE(c.arrays.size() == 3);
    CHECK(c.arrays[1].name == "equal");
    CHECK(c.arrays[2].spec.kind == LayoutKind::Planar);
    CHECK(c.arrays[2].spec.planar_z == doctest::Approx(-0.08));
}

TEST_CASE("every problem is reported at once")
{
    const auto msg = error_of(R"({
        "frequency_hz": -1,
        "sphere_step_deg": 0.7,
        "bogus": 1,
        "steering": {"theta_deg": 0, "phi_deg": 120},
        "optimizer": {"sll_ceiling": 2, "extra": true},
        "element": "horn"
    })");
    CHECK(msg.rfind("invalid configuration", 0) == 0);
    for (const char *field : {"frequency_hz:", "sphere_step_deg:", "bogus: unknown field", "steering:",
                              "optimizer.sll_ceiling:", "optimizer.extra: unknown field", "element:"})
        CHECK_MESSAGE(msg.find(field) != std::string::npos, field);
}

TEST_CASE("structural errors")
{
    CHECK(error_of("[1, 2]") == "config must be a JSON object");
    CHECK(error_of("{\"a\": ").find("not valid JSON") != std::string::npos);
    CHECK(error_of(R"({"surface": {}})").find("exactly one of") != std::string::npos);
    CHECK(error_of(R"({"surface": {"builtin": "airframe", "file": "x.json"}})").find("got 2") != std::string::npos);
    CHECK(error_of(R"({"array": {"preset": "nonuniform"}, "arrays": []})").find("not both") != std::string::npos);
    CHECK(error_of(R"({"array": {"dx1_mm": 20}})").find("array.kind: required") != std::string::npos);
    CHECK(error_of(R"({"array": {"kind": "hexagonal"}})").find("array.kind") != std::string::npos);
    CHECK(error_of(R"({"steering": {"theta_deg": {"start": 5, "stop": 0}, "phi_deg": 0, "step_deg": 1}})")
              .find("stop is below start") != std::string::npos);
    CHECK(error_of(R"({"steering": {"theta_deg": {"start": 0, "stop": 5}, "phi_deg": 0}})").find("step_deg") !=
          std::string::npos);
    CHECK(error_of(R"({"element": {"pattern": "tabulated"}})").find("element.table: required") != std::string::npos);
    CHECK(error_of(R"({"cuts": [{"plane": "diagonal"}]})").find("cuts[0].plane") != std::string::npos);
    CHECK(error_of(R"({"side": "left"})").find("side:") != std::string::npos);
    CHECK(error_of(R"({"weights": "missing.csv"})").find("no such file") != std::string::npos);
    CHECK(error_of(R"({"surface": {"coefficients": {"p00": 1}}})").find("domain_mm") != std::string::npos);
    CHECK(error_of(R"({"surface": {"coefficients": {"p60": 1}, "domain_mm": {"x_min": 0, "x_max": 1, "y_min": 0, "y_max": 1}}})")
              .find("p60") != std::string::npos);
}

TEST_CASE("inline surface")
{
    const auto c = parse_config(
        R"({"surface": {"coefficients": {"p00": -0.1, "p10": 0.5}, "domain_mm": {"x_min": 0, "x_max": 100, "y_min": -20, "y_max": 20}}})",
        ".");
    CHECK(c.surface_source == SurfaceSource::Inline);
    const auto s = load_surface(c);
    CHECK(s.evaluate(0.05, 0.0) == doctest::Approx(-0.1 + 0.025));
    CHECK(s.domain().x.max == doctest::Approx(0.1));
}

TEST_CASE("relative paths resolve against the config file")
{
    const auto dir = testing::scratch("config_paths");
    std::filesystem::create_directories(dir / "sub");
    {
        std::ofstream(dir / "sub" / "w.csv") << "index,weight\n0,1\n";
        std::ofstream(dir / "sub" / "run.json") << R"({"weights": "w.csv", "output_dir": "res"})";
    }
    const auto c = load_config(dir / "sub" / "run.json");
    CHECK(*c.weights_path == dir / "sub" / "w.csv");
    CHECK(c.output_dir == dir / "sub" / "res");
    CHECK_THROWS_AS(load_config(dir / "nope.json"), InputError);
}

TEST_CASE("shipped configurations load")
{
    for (const char *name : {"sweep_nonuniform.json", "compare.json", "optimize.json", "pattern_optimized.json"})
    {
        CAPTURE(name);
        CHECK_NOTHROW(load_config(testing::data_dir() / "configs" / name));
    }
    const auto c = load_config(testing::data_dir() / "configs" / "compare.json");
    CHECK(c.arrays.size() == 3);
}

TEST_CASE("element loading")
{
    auto c = parse_config(R"({"element": {"pattern": "isotropic", "polarization": "none"}})", ".");
    CHECK_FALSE(c.polarization);
    CHECK(load_element(c).kind() == PatternKind::Isotropic);
    c = parse_config(R"({"element": "cos-squared"})", ".");
    CHECK(load_element(c).polarized());
}

}
