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

#include "conformal/config.hpp"
#include "conformal/reference_data.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace conformal
{

namespace
{

using nlohmann::json;

// Collects "field: problem" messages so that one run reports all of them.
class Checker
{
public:
    void fail(const std::string &field, const std::string &msg) { errors_.push_back(field + ": " + msg); }
    bool ok() const { return errors_.empty(); }

    void raise() const
    {
        if (errors_.empty())
            return;
        std::string all = "invalid configuration";
        for (const auto &e : errors_)
            all += "\n  " + e;
        throw InputError(all);
    }

    std::optional<double> number(const json &j, const std::string &key, const std::string &field)
    {
        if (!j.contains(key))
            return std::nullopt;
        const auto &v = j.at(key);
        if (!v.is_number())
        {
            fail(field, "expected a number");
            return std::nullopt;
        }
        const double d = v.get<double>();
        if (!std::isfinite(d))
        {
            fail(field, "must be finite");
            return std::nullopt;
        }
        return d;
    }

    template <class T>
    void assign(const json &j, const std::string &key, const std::string &field, T &out)
    {
        if (auto v = number(j, key, field))
            out = static_cast<T>(*v);
    }

    std::optional<std::string> string(const json &j, const std::string &key, const std::string &field)
    {
        if (!j.contains(key))
            return std::nullopt;
        if (!j.at(key).is_string())
        {
            fail(field, "expected a string");
            return std::nullopt;
        }
        return j.at(key).get<std::string>();
    }

    std::optional<bool> boolean(const json &j, const std::string &key, const std::string &field)
    {
        if (!j.contains(key))
            return std::nullopt;
        if (!j.at(key).is_boolean())
        {
            fail(field, "expected true or false");
            return std::nullopt;
        }
        return j.at(key).get<bool>();
    }

    void unknown_keys(const json &j, std::initializer_list<const char *> allowed, const std::string &where)
    {
        for (auto it = j.begin(); it != j.end(); ++it)
        {
            bool known = false;
            for (const char *a : allowed)
                known = known || it.key() == a;
            if (!known)
                fail(where.empty() ? it.key() : where + "." + it.key(), "unknown field");
        }
    }

private:
    std::vector<std::string> errors_;
};

void parse_surface(const json &j, RunConfig &cfg, Checker &ck)
{
    if (!j.is_object())
    {
        ck.fail("surface", "expected an object");
        return;
    }
    ck.unknown_keys(j, {"file", "samples", "builtin", "coefficients", "domain_mm", "grid_step_mm"}, "surface");
    int sources = 0;
    if (auto f = ck.string(j, "file", "surface.file"))
    {
        ++sources;
        cfg.surface_source = SurfaceSource::File;
        cfg.surface_path = cfg.resolve(*f);
        if (!std::filesystem::exists(cfg.surface_path))
            ck.fail("surface.file", "no such file: " + cfg.surface_path.string());
    }
    if (auto f = ck.string(j, "samples", "surface.samples"))
    {
        ++sources;
        cfg.surface_source = SurfaceSource::Samples;
        cfg.surface_path = cfg.resolve(*f);
        if (!std::filesystem::exists(cfg.surface_path))
            ck.fail("surface.samples", "no such file: " + cfg.surface_path.string());
    }
    if (auto b = ck.string(j, "builtin", "surface.builtin"))
    {
        ++sources;
        cfg.surface_source = SurfaceSource::Builtin;
        cfg.builtin_surface = *b;
        if (*b != "airframe")
            ck.fail("surface.builtin", "unknown builtin surface '" + *b + "' (known: airframe)");
    }

    std::optional<SurfaceDomain> domain;
    if (j.contains("domain_mm"))
    {
        const auto &d = j.at("domain_mm");
        SurfaceDomain dom;
        bool complete = d.is_object();
        double v[4] = {0, 0, 0, 0};
        const char *keys[4] = {"x_min", "x_max", "y_min", "y_max"};
        for (int i = 0; complete && i < 4; ++i)
        {
            auto x = ck.number(d, keys[i], std::string("surface.domain_mm.") + keys[i]);
            if (!x)
            {
                ck.fail(std::string("surface.domain_mm.") + keys[i], "required");
                complete = false;
            }
            else
                v[i] = mm(*x);
        }
        if (!d.is_object())
            ck.fail("surface.domain_mm", "expected an object");
        if (complete)
        {
            dom.x = {v[0], v[1]};
            dom.y = {v[2], v[3]};
            if (auto s = ck.number(j, "grid_step_mm", "surface.grid_step_mm"))
                dom.grid_step = mm(*s);
            try
            {
                dom.validate();
                domain = dom;
            }
            catch (const InputError &e)
            {
                ck.fail("surface.domain_mm", e.what());
            }
        }
    }

    if (j.contains("coefficients"))
    {
        ++sources;
        cfg.surface_source = SurfaceSource::Inline;
        const auto &c = j.at("coefficients");
        if (!c.is_object())
            ck.fail("surface.coefficients", "expected an object of p<jk> entries");
        else if (!domain)
            ck.fail("surface.domain_mm", "required with inline coefficients");
        else
        {
            std::array<double, kNumCoefficients> coeffs{};
            bool good = true;
            for (std::size_t i = 0; i < kNumCoefficients; ++i)
            {
                const std::string name = coefficient_name(monomials()[i]);
                if (!c.contains(name))
                    continue;
                if (auto x = ck.number(c, name, "surface.coefficients." + name))
                    coeffs[i] = *x;
                else
                    good = false;
            }
            for (auto it = c.begin(); it != c.end(); ++it)
            {
                bool known = false;
                for (const auto &m : monomials())
                    known = known || it.key() == coefficient_name(m);
                if (!known)
                    ck.fail("surface.coefficients." + it.key(), "not a quintic coefficient name");
            }
            if (good)
                cfg.inline_surface.emplace(coeffs, *domain);
        }
    }
    else if (cfg.surface_source == SurfaceSource::Samples)
        cfg.samples_domain = domain;

    if (sources != 1)
        ck.fail("surface", "exactly one of file, samples, builtin or coefficients is required (got " +
                               std::to_string(sources) + ")");
}

void parse_array(const json &j, const std::string &field, RunConfig &cfg, Checker &ck)
{
    if (!j.is_object())
    {
        ck.fail(field, "expected an object");
        return;
    }
    ck.unknown_keys(j,
                    {"name", "preset", "kind", "elements_per_row", "rows", "dx1_mm", "q", "x1_inner_mm",
                     "x1_outer_mm", "x_end_outer_mm", "dy1_mm", "dy2_mm", "dx_mm", "dy_mm", "planar_z_mm"},
                    field);
    NamedArraySpec named;
    ArraySpec &s = named.spec;
    if (auto p = ck.string(j, "preset", field + ".preset"))
    {
        if (*p == "nonuniform")
            s = reference::nonuniform_spec();
        else if (*p == "uniform")
            s = reference::uniform_spec();
        else if (*p == "planar")
            s = reference::planar_spec(0.0);
        else
            ck.fail(field + ".preset", "unknown preset '" + *p + "' (known: nonuniform, uniform, planar)");
        named.name = *p;
    }
    if (auto k = ck.string(j, "kind", field + ".kind"))
    {
        try
        {
            s.kind = parse_layout_kind(*k);
        }
        catch (const InputError &e)
        {
            ck.fail(field + ".kind", e.what());
        }
    }
    else if (!j.contains("preset"))
        ck.fail(field + ".kind", "required unless a preset is given");
    if (auto n = ck.string(j, "name", field + ".name"))
        named.name = *n;
    if (named.name.empty())
        named.name = to_string(s.kind);

    ck.assign(j, "elements_per_row", field + ".elements_per_row", s.elements_per_row);
    ck.assign(j, "rows", field + ".rows", s.rows);
    ck.assign(j, "q", field + ".q", s.q);
    const std::pair<const char *, double ArraySpec::*> lengths[] = {
        {"dx1_mm", &ArraySpec::dx1},           {"x1_inner_mm", &ArraySpec::x1_inner},
        {"x1_outer_mm", &ArraySpec::x1_outer}, {"x_end_outer_mm", &ArraySpec::x_end_outer},
        {"dy1_mm", &ArraySpec::dy1},           {"dy2_mm", &ArraySpec::dy2},
        {"dx_mm", &ArraySpec::dx},             {"dy_mm", &ArraySpec::dy},
        {"planar_z_mm", &ArraySpec::planar_z}};
    for (const auto &[key, member] : lengths)
        if (auto v = ck.number(j, key, field + "." + key))
            s.*member = mm(*v);

    try
    {
        s.validate();
    }
    catch (const InputError &e)
    {
        ck.fail(field, e.what());
    }
    cfg.arrays.push_back(std::move(named));
}

void parse_element(const json &j, RunConfig &cfg, Checker &ck)
{
    if (j.is_string())
    {
        try
        {
            cfg.element = parse_pattern_kind(j.get<std::string>());
        }
        catch (const InputError &e)
        {
            ck.fail("element", e.what());
        }
        cfg.polarization = cfg.element == PatternKind::CosSquared ? std::optional<Vec3>(Vec3::UnitY()) : std::nullopt;
        return;
    }
    if (!j.is_object())
    {
        ck.fail("element", "expected a pattern name or an object");
        return;
    }
    ck.unknown_keys(j, {"pattern", "polarization", "table", "transverse"}, "element");
    if (auto p = ck.string(j, "pattern", "element.pattern"))
    {
        try
        {
            cfg.element = parse_pattern_kind(*p);
        }
        catch (const InputError &e)
        {
            ck.fail("element.pattern", e.what());
        }
    }
    else
        ck.fail("element.pattern", "required");
    cfg.polarization = cfg.element == PatternKind::CosSquared ? std::optional<Vec3>(Vec3::UnitY()) : std::nullopt;
    if (j.contains("polarization"))
    {
        const auto &p = j.at("polarization");
        if (p.is_string() && p.get<std::string>() == "none")
            cfg.polarization.reset();
        else if (p.is_array() && p.size() == 3 && p[0].is_number() && p[1].is_number() && p[2].is_number())
        {
            Vec3 v(p[0].get<double>(), p[1].get<double>(), p[2].get<double>());
            if (!(v.norm() > 0.0) || !v.allFinite())
                ck.fail("element.polarization", "must be a non-zero finite vector");
            else
                cfg.polarization = v.normalized();
        }
        else
            ck.fail("element.polarization", "expected [px, py, pz] in the local frame or \"none\"");
    }
    if (auto t = ck.string(j, "table", "element.table"))
    {
        cfg.element_table = cfg.resolve(*t);
        if (!std::filesystem::exists(cfg.element_table))
            ck.fail("element.table", "no such file: " + cfg.element_table.string());
    }
    if (cfg.element == PatternKind::Tabulated && cfg.element_table.empty())
        ck.fail("element.table", "required for the tabulated pattern");
    if (auto t = ck.boolean(j, "transverse", "element.transverse"))
        cfg.transverse = *t;
}

std::optional<std::vector<double>> angle_values(const json &j, const std::string &field, double step, Checker &ck)
{
    if (j.is_number())
        return std::vector<double>{j.get<double>()};
    if (j.is_object())
    {
        auto a = ck.number(j, "start", field + ".start");
        auto b = ck.number(j, "stop", field + ".stop");
        if (!a || !b)
        {
            ck.fail(field, "range needs start and stop");
            return std::nullopt;
        }
        if (*b < *a)
        {
            ck.fail(field, "stop is below start");
            return std::nullopt;
        }
        if (!(step > 0.0))
        {
            ck.fail("steering.step_deg", "a positive step is required for ranges");
            return std::nullopt;
        }
        return inclusive_range(*a, *b, step);
    }
    ck.fail(field, "expected a number or {\"start\", \"stop\"}");
    return std::nullopt;
}

void parse_steering(const json &j, RunConfig &cfg, Checker &ck)
{
    if (!j.is_object())
    {
        ck.fail("steering", "expected an object");
        return;
    }
    ck.unknown_keys(j, {"theta_deg", "phi_deg", "step_deg"}, "steering");
    double step = 0.0;
    ck.assign(j, "step_deg", "steering.step_deg", step);
    std::optional<std::vector<double>> th, ph;
    if (!j.contains("theta_deg"))
        ck.fail("steering.theta_deg", "required");
    else
        th = angle_values(j.at("theta_deg"), "steering.theta_deg", step, ck);
    if (!j.contains("phi_deg"))
        ck.fail("steering.phi_deg", "required");
    else
        ph = angle_values(j.at("phi_deg"), "steering.phi_deg", step, ck);
    if (th && ph)
    {
        cfg.steering = {*th, *ph};
        try
        {
            cfg.steering.validate();
        }
        catch (const InputError &e)
        {
            ck.fail("steering", e.what());
        }
    }
}

void parse_lobes(const json &j, RunConfig &cfg, Checker &ck)
{
    if (!j.is_object())
    {
        ck.fail("lobes", "expected an object");
        return;
    }
    ck.unknown_keys(j, {"cap_deg", "max_ray_deg", "ray_step_deg", "null_floor"}, "lobes");
    ck.assign(j, "cap_deg", "lobes.cap_deg", cfg.lobes.cap_deg);
    ck.assign(j, "max_ray_deg", "lobes.max_ray_deg", cfg.lobes.max_ray_deg);
    ck.assign(j, "ray_step_deg", "lobes.ray_step_deg", cfg.lobes.ray_step_deg);
    ck.assign(j, "null_floor", "lobes.null_floor", cfg.lobes.null_floor);
    if (!(cfg.lobes.cap_deg > 0.0 && cfg.lobes.cap_deg <= 180.0))
        ck.fail("lobes.cap_deg", "must be in (0, 180]");
    if (!(cfg.lobes.max_ray_deg > 0.0 && cfg.lobes.max_ray_deg <= 180.0))
        ck.fail("lobes.max_ray_deg", "must be in (0, 180]");
    if (cfg.lobes.ray_step_deg < 0.0)
        ck.fail("lobes.ray_step_deg", "must be >= 0");
    if (!(cfg.lobes.null_floor >= 0.0 && cfg.lobes.null_floor < 1.0))
        ck.fail("lobes.null_floor", "must be in [0, 1)");
}

void parse_optimizer(const json &j, RunConfig &cfg, Checker &ck)
{
    if (!j.is_object())
    {
        ck.fail("optimizer", "expected an object");
        return;
    }
    ck.unknown_keys(j,
                    {"sll_ceiling", "floor_fraction", "tolerance", "max_iterations", "bisection_tolerance",
                     "max_monotone_rounds", "u_ref", "matrix_step_deg"},
                    "optimizer");
    auto &o = cfg.optimizer;
    ck.assign(j, "sll_ceiling", "optimizer.sll_ceiling", o.sll_ceiling);
    ck.assign(j, "floor_fraction", "optimizer.floor_fraction", o.floor_fraction);
    ck.assign(j, "tolerance", "optimizer.tolerance", o.tolerance);
    ck.assign(j, "max_iterations", "optimizer.max_iterations", o.max_iterations);
    ck.assign(j, "bisection_tolerance", "optimizer.bisection_tolerance", o.bisection_tolerance);
    ck.assign(j, "max_monotone_rounds", "optimizer.max_monotone_rounds", o.max_monotone_rounds);
    ck.assign(j, "matrix_step_deg", "optimizer.matrix_step_deg", cfg.matrix_step_deg);
    if (auto u = ck.number(j, "u_ref", "optimizer.u_ref"))
    {
        cfg.u_ref = *u;
        if (!(*u > 0.0))
            ck.fail("optimizer.u_ref", "must be positive");
    }
    if (!(o.sll_ceiling > 0.0 && o.sll_ceiling <= 1.0))
        ck.fail("optimizer.sll_ceiling", "must be in (0, 1]");
    if (!(o.floor_fraction > 0.0 && o.floor_fraction <= 1.0))
        ck.fail("optimizer.floor_fraction", "must be in (0, 1]");
    if (!(o.tolerance > 0.0))
        ck.fail("optimizer.tolerance", "must be positive");
    if (o.max_iterations < 1)
        ck.fail("optimizer.max_iterations", "must be at least 1");
    if (!(o.bisection_tolerance > 0.0))
        ck.fail("optimizer.bisection_tolerance", "must be positive");
    if (o.max_monotone_rounds < 0)
        ck.fail("optimizer.max_monotone_rounds", "must be >= 0");
}

void parse_cuts(const json &j, RunConfig &cfg, Checker &ck)
{
    if (!j.is_array())
    {
        ck.fail("cuts", "expected an array");
        return;
    }
    cfg.cuts.clear();
    for (std::size_t i = 0; i < j.size(); ++i)
    {
        const std::string field = "cuts[" + std::to_string(i) + "]";
        const auto &c = j[i];
        if (!c.is_object())
        {
            ck.fail(field, "expected an object");
            continue;
        }
        ck.unknown_keys(c, {"plane", "fixed_deg"}, field);
        CutRequest r;
        if (auto p = ck.string(c, "plane", field + ".plane"))
        {
            if (*p == "elevation")
                r.plane = CutPlane::Elevation;
            else if (*p == "azimuth")
                r.plane = CutPlane::Azimuth;
            else
                ck.fail(field + ".plane", "expected elevation or azimuth");
        }
        ck.assign(c, "fixed_deg", field + ".fixed_deg", r.fixed_deg);
        cfg.cuts.push_back(r);
    }
}

} // namespace

std::filesystem::path RunConfig::resolve(const std::filesystem::path &p) const
{
    return p.is_absolute() ? p : base_dir / p;
}

RunConfig parse_config(const std::string &json_text, const std::filesystem::path &base_dir)
{
    json root;
    try
    {
        root = json::parse(json_text, nullptr, true, true);
    }
    catch (const json::parse_error &e)
    {
        throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw InputError("config must be a JSON object");

    RunConfig cfg;
    cfg.base_dir = base_dir;
    Checker ck;
    ck.unknown_keys(root,
                    {"surface", "arrays", "array", "side", "strict_domain", "element", "frequency_hz",
                     "sphere_step_deg", "steering", "lobes", "reconfiguration", "switching_threshold", "optimizer",
                     "weights", "cuts", "write_grid", "output_dir", "description"},
                    "");

    if (root.contains("surface"))
        parse_surface(root.at("surface"), cfg, ck);

    if (root.contains("array") && root.contains("arrays"))
        ck.fail("arrays", "give either array or arrays, not both");
    if (root.contains("array"))
        parse_array(root.at("array"), "array", cfg, ck);
    if (root.contains("arrays"))
    {
        const auto &a = root.at("arrays");
        if (!a.is_array() || a.empty())
            ck.fail("arrays", "expected a non-empty array");
        else
            for (std::size_t i = 0; i < a.size(); ++i)
                parse_array(a[i], "arrays[" + std::to_string(i) + "]", cfg, ck);
    }
    if (cfg.arrays.empty() && !root.contains("array") && !root.contains("arrays"))
        cfg.arrays.push_back({"nonuniform", reference::nonuniform_spec()});

    if (auto s = ck.string(root, "side", "side"))
    {
        if (*s == "down")
            cfg.side = Side::RadiatingDown;
        else if (*s == "up")
            cfg.side = Side::RadiatingUp;
        else
            ck.fail("side", "expected down or up");
    }
    if (auto b = ck.boolean(root, "strict_domain", "strict_domain"))
        cfg.strict_domain = *b;
    if (root.contains("element"))
        parse_element(root.at("element"), cfg, ck);

    if (auto f = ck.number(root, "frequency_hz", "frequency_hz"))
    {
        cfg.radio.frequency = *f;
        if (!(*f > 0.0))
            ck.fail("frequency_hz", "must be positive");
    }
    if (auto s = ck.number(root, "sphere_step_deg", "sphere_step_deg"))
    {
        cfg.sphere_step_deg = *s;
        try
        {
            validate_sphere_step(*s);
        }
        catch (const InputError &e)
        {
            ck.fail("sphere_step_deg", e.what());
        }
    }
    if (root.contains("steering"))
        parse_steering(root.at("steering"), cfg, ck);
    if (root.contains("lobes"))
        parse_lobes(root.at("lobes"), cfg, ck);

    if (auto r = ck.string(root, "reconfiguration", "reconfiguration"))
    {
        if (*r == "none")
            cfg.reconfiguration = Reconfiguration::None;
        else if (*r == "switching")
            cfg.reconfiguration = Reconfiguration::Switching;
        else if (*r == "taper")
            cfg.reconfiguration = Reconfiguration::Taper;
        else
            ck.fail("reconfiguration", "expected none, switching or taper");
    }
    if (auto t = ck.number(root, "switching_threshold", "switching_threshold"))
    {
        cfg.switching_threshold = *t;
        if (*t < 0.0)
            ck.fail("switching_threshold", "must be >= 0");
    }
    if (root.contains("optimizer"))
        parse_optimizer(root.at("optimizer"), cfg, ck);
    if (auto w = ck.string(root, "weights", "weights"))
    {
        cfg.weights_path = cfg.resolve(*w);
        if (!std::filesystem::exists(*cfg.weights_path))
            ck.fail("weights", "no such file: " + cfg.weights_path->string());
    }
    if (root.contains("cuts"))
        parse_cuts(root.at("cuts"), cfg, ck);
    if (auto g = ck.boolean(root, "write_grid", "write_grid"))
        cfg.write_grid = *g;
    if (auto o = ck.string(root, "output_dir", "output_dir"))
        cfg.output_dir = cfg.resolve(*o);
    else
        cfg.output_dir = cfg.resolve("out");

    ck.raise();
    return cfg;
}

RunConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open config: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    return parse_config(ss.str(), base);
}

PolynomialSurface load_surface(const RunConfig &config)
{
    switch (config.surface_source)
    {
    case SurfaceSource::File:
        return read_surface_json(config.surface_path);
    case SurfaceSource::Inline:
        return *config.inline_surface;
    case SurfaceSource::Samples: {
        const auto samples = read_samples_csv(config.surface_path);
        SurfaceDomain domain;
        if (config.samples_domain)
            domain = *config.samples_domain;
        else
        {
            if (samples.empty())
                throw InputError("surface samples: file has no rows");
            domain.x = {samples[0].x(), samples[0].x()};
            domain.y = {samples[0].y(), samples[0].y()};
            for (const auto &s : samples)
            {
                domain.x = {std::min(domain.x.min, s.x()), std::max(domain.x.max, s.x())};
                domain.y = {std::min(domain.y.min, s.y()), std::max(domain.y.max, s.y())};
            }
        }
        return fit(samples, domain).surface;
    }
    case SurfaceSource::Builtin:
        break;
    }
    return reference::airframe_surface();
}

ElementPattern load_element(const RunConfig &config)
{
    switch (config.element)
    {
    case PatternKind::Isotropic:
        return ElementPattern::isotropic(config.polarization);
    case PatternKind::DipoleHIsotropic:
        return ElementPattern::dipole(config.polarization);
    case PatternKind::CosSquared:
        return ElementPattern::cos_squared(config.polarization);
    case PatternKind::Tabulated:
        break;
    }
    return ElementPattern::tabulated(read_pattern_table(config.element_table), config.polarization);
}

} // namespace conformal
