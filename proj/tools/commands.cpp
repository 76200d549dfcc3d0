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

#include "commands.hpp"

#include "conformal/csv.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>

namespace conformal::cli
{

namespace
{

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path &p)
{
    fs::create_directories(p.parent_path());
    std::ofstream out(p);
    if (!out)
        throw InputError("cannot write " + p.string());
    return out;
}

std::string slug(const std::string &name)
{
    std::string s;
    for (char c : name)
        s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return s;
}

std::string angle_tag(double deg)
{
    std::string s = csv::format(deg);
    for (auto &c : s)
        if (c == '-')
            c = 'm';
        else if (c == '.')
            c = 'p';
    return s;
}

void kv(std::ostream &out, const std::string &key, double value) { out << key << ',' << csv::format(value) << '\n'; }

double or_nan(const std::optional<double> &v) { return v ? *v : std::numeric_limits<double>::quiet_NaN(); }

// Plot scripts only reference the CSV next to them.
void write_cut_plot(const fs::path &script, const std::vector<std::pair<std::string, std::string>> &series,
                    const std::string &title)
{
    auto out = open_out(script);
    out << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set title '" << title << "'\n"
        << "set xlabel 'angle [deg]'\nset ylabel 'directivity [dBi]'\n"
        << "set xrange [-180:180]\nset grid\n"
        << "plot ";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << (i ? ", \\\n     " : "") << "'" << series[i].first << "' using 1:" << series[i].second
            << " with lines";
    out << '\n';
}

void write_contour_plot(const fs::path &script, const std::string &csv_name, const std::string &title)
{
    auto out = open_out(script);
    out << "set datafile separator ','\n"
        << "set title '" << title << "'\n"
        << "set xlabel 'theta_s [deg]'\nset ylabel 'phi_s [deg]'\n"
        << "set cblabel 'directivity [dBi]'\n"
        << "set view map\nset pm3d map\n"
        << "splot '" << csv_name << "' every ::1 using 1:2:3 with points pointtype 5 pointsize 1 palette notitle\n";
}

struct Built
{
    std::string name;
    ArrayModel model;
};

std::vector<Built> build_arrays(const RunConfig &cfg, std::ostream &log)
{
    const auto surface = load_surface(cfg);
    const auto pattern = load_element(cfg);
    std::vector<Built> out;
    for (const auto &a : cfg.arrays)
    {
        auto lay = layout(a.spec, surface, cfg.layout_options());
        for (const auto &w : lay.warnings)
            log << "warning: " << a.name << ": " << w << '\n';
        auto model = ArrayModel::with_pattern(std::move(lay.elements), pattern);
        model.transverse = cfg.transverse;
        out.push_back({a.name, std::move(model)});
    }
    return out;
}

Direction single_steer(const RunConfig &cfg, std::ostream &log)
{
    if (cfg.steering.size() > 1)
        log << "note: using the first steering angle (" << cfg.steering.theta_deg.front() << ", "
            << cfg.steering.phi_deg.front() << ") deg\n";
    return Direction::from_degrees(cfg.steering.theta_deg.front(), cfg.steering.phi_deg.front());
}

Excitation excitation_for(const RunConfig &cfg, const ArrayModel &model, const SteeringVector &sv)
{
    const std::size_t n = model.size();
    if (cfg.weights_path)
        return apply_table_weights(read_weights_csv(*cfg.weights_path), model.elements, sv);
    if (cfg.reconfiguration == Reconfiguration::None)
        return Excitation::uniform(n, sv);
    const auto mask = switching_mask(model, sv, cfg.switching_threshold);
    Excitation ex = Excitation::uniform(n, sv);
    if (cfg.reconfiguration == Reconfiguration::Switching)
        for (std::size_t i = 0; i < n; ++i)
            ex.amplitudes[i] = mask[i] ? 1.0 : 0.0;
    else
        ex.amplitudes = amplitude_taper(mask, static_cast<double>(n));
    return ex;
}

struct PatternSummary
{
    LobeAnalysis lobes;
    std::vector<std::pair<CutRequest, PatternCut>> cuts;
};

PatternSummary evaluate_pattern(const RunConfig &cfg, const ArrayModel &model, const Excitation &ex)
{
    PatternSummary s;
    const auto grid = sample_sphere(model, ex, cfg.radio, cfg.sphere_step_deg);
    s.lobes = analyze_lobes(grid, ex.steering, cfg.lobes);
    const double p = radiated_power(grid);
    for (const auto &c : cfg.cuts)
        s.cuts.emplace_back(c, pattern_cut(model, ex, cfg.radio, c.plane, c.fixed_deg, cfg.sphere_step_deg, p));
    return s;
}

std::string cut_name(const CutRequest &c)
{
    return std::string(c.plane == CutPlane::Elevation ? "elevation_theta" : "azimuth_phi") + angle_tag(c.fixed_deg);
}

void write_summary(std::ostream &out, const PatternSummary &s)
{
    csv::write_header(out, {"key", "value"});
    kv(out, "peak_directivity_dBi", s.lobes.peak_dbi);
    kv(out, "peak_theta_deg", rad2deg(s.lobes.peak.theta));
    kv(out, "peak_phi_deg", rad2deg(s.lobes.peak.phi));
    kv(out, "pointing_error_deg", s.lobes.pointing_error_deg);
    kv(out, "sll_dB", or_nan(s.lobes.sll_db));
    kv(out, "hpbw_elevation_deg", or_nan(s.lobes.hpbw_elevation_deg));
    kv(out, "hpbw_azimuth_deg", or_nan(s.lobes.hpbw_azimuth_deg));
    for (const auto &[req, cut] : s.cuts)
    {
        const auto cl = analyze_cut(cut);
        kv(out, cut_name(req) + "_peak_dBi", cl.peak_dbi);
        kv(out, cut_name(req) + "_sll_dB", or_nan(cl.sll_db));
    }
}

} // namespace

RunConfig resolve_config(const Overrides &o)
{
    RunConfig cfg = o.config ? load_config(*o.config) : parse_config("{}", fs::current_path());
    if (o.out)
        cfg.output_dir = *o.out;
    if (o.step_deg)
    {
        validate_sphere_step(*o.step_deg);
        cfg.sphere_step_deg = *o.step_deg;
    }
    if (o.strict_domain)
        cfg.strict_domain = true;
    return cfg;
}

int cmd_fit(const RunConfig &cfg, const std::optional<fs::path> &samples_path, std::ostream &log)
{
    fs::path path;
    if (samples_path)
        path = *samples_path;
    else if (cfg.surface_source == SurfaceSource::Samples)
        path = cfg.surface_path;
    else
        throw InputError("fit: give a samples CSV or a config with surface.samples");
    if (!fs::exists(path))
        throw InputError("fit: no such file: " + path.string());

    const auto samples = read_samples_csv(path);
    SurfaceDomain domain;
    if (cfg.samples_domain)
        domain = *cfg.samples_domain;
    else if (!samples.empty())
    {
        domain.x = {samples[0].x(), samples[0].x()};
        domain.y = {samples[0].y(), samples[0].y()};
        for (const auto &s : samples)
        {
            domain.x = {std::min(domain.x.min, s.x()), std::max(domain.x.max, s.x())};
            domain.y = {std::min(domain.y.min, s.y()), std::max(domain.y.max, s.y())};
        }
    }
    const auto result = fit(samples, domain);
    const fs::path file = cfg.output_dir / "surface.json";
    open_out(file) << surface_to_json(result.surface, result.rmse) << '\n';
    std::cout << "rmse_m " << csv::format(result.rmse) << '\n';
    log << "wrote " << file.string() << '\n';
    return 0;
}

int cmd_layout(const RunConfig &cfg, std::ostream &log)
{
    for (const auto &b : build_arrays(cfg, log))
    {
        const std::string base = "layout_" + slug(b.name);
        {
            auto out = open_out(cfg.output_dir / (base + ".csv"));
            write_layout_csv(out, b.model.elements, true);
        }
        auto gp = open_out(cfg.output_dir / (base + ".gp"));
        gp << "set datafile separator ','\n"
           << "set title '" << b.name << " element layout'\n"
           << "set xlabel 'x [m]'\nset ylabel 'y [m]'\nset zlabel 'z [m]'\nset view equal xyz\n"
           << "splot '" << base << ".csv' every ::1 using 2:3:4 with points pointtype 7 notitle, \\\n"
           << "      '' every ::1 using 2:3:4:($5*0.01):($6*0.01):($7*0.01) with vectors notitle\n";
        log << "wrote " << (cfg.output_dir / (base + ".csv")).string() << " (" << b.model.size()
            << " elements)\n";
    }
    return 0;
}

int cmd_pattern(const RunConfig &cfg, std::ostream &log)
{
    const Direction steer = single_steer(cfg, log);
    const auto sv = steering_vector(steer);
    for (const auto &b : build_arrays(cfg, log))
    {
        const auto ex = excitation_for(cfg, b.model, sv);
        const auto s = evaluate_pattern(cfg, b.model, ex);
        const std::string base = "pattern_" + slug(b.name);
        {
            auto out = open_out(cfg.output_dir / (base + "_summary.csv"));
            write_summary(out, s);
        }
        write_summary(std::cout, s);
        if (cfg.write_grid)
        {
            auto out = open_out(cfg.output_dir / (base + "_grid.csv"));
            write_grid_csv(out, sample_sphere(b.model, ex, cfg.radio, cfg.sphere_step_deg));
        }
        for (const auto &[req, cut] : s.cuts)
        {
            const std::string name = base + "_" + cut_name(req);
            {
                auto out = open_out(cfg.output_dir / (name + ".csv"));
                write_cut_csv(out, cut);
            }
            write_cut_plot(cfg.output_dir / (name + ".gp"), {{name + ".csv", "2"}}, b.name + " " + cut_name(req));
        }
        log << "wrote " << base << "_* to " << cfg.output_dir.string() << '\n';
    }
    return 0;
}

int cmd_sweep(const RunConfig &cfg, std::ostream &log)
{
    for (const auto &b : build_arrays(cfg, log))
    {
        const auto contour = scan_sweep(b.model, cfg.radio, cfg.steering, cfg.sweep_options());
        const std::string base = "contour_" + slug(b.name);
        {
            auto out = open_out(cfg.output_dir / (base + ".csv"));
            write_contour_csv(out, contour);
        }
        write_contour_plot(cfg.output_dir / (base + ".gp"), base + ".csv", b.name + " steered directivity");
        const auto &best = contour.best();
        log << b.name << ": " << contour.entries.size() << " steers, max " << csv::format(best.directivity_dbi)
            << " dBi at (" << best.theta_scan_deg << ", " << best.phi_scan_deg << ")\n";
    }
    return 0;
}

int cmd_compare(const RunConfig &cfg, std::ostream &log)
{
    if (cfg.arrays.size() < 2)
        throw InputError("compare: the config needs at least two arrays");
    LayoutOptions lo = cfg.layout_options();
    const auto report = compare_arrays(cfg.arrays, load_surface(cfg), load_element(cfg), cfg.radio, cfg.steering,
                                       cfg.sweep_options(), lo);
    {
        auto out = open_out(cfg.output_dir / "comparison.txt");
        report.write_text(out);
    }
    {
        auto out = open_out(cfg.output_dir / "comparison.csv");
        report.write_csv(out);
    }
    for (std::size_t i = 0; i < report.contours.size(); ++i)
    {
        const std::string base = "contour_" + slug(report.rows[i].name);
        auto out = open_out(cfg.output_dir / (base + ".csv"));
        write_contour_csv(out, report.contours[i]);
        write_contour_plot(cfg.output_dir / (base + ".gp"), base + ".csv", report.rows[i].name);
    }
    report.write_text(std::cout);
    log << "wrote comparison.txt and comparison.csv to " << cfg.output_dir.string() << '\n';
    return 0;
}

int cmd_optimize(const RunConfig &cfg, std::ostream &log)
{
    const Direction steer = single_steer(cfg, log);
    const auto sv = steering_vector(steer);
    const auto arrays = build_arrays(cfg, log);
    const auto &b = arrays.front();
    if (arrays.size() > 1)
        log << "note: optimizing the first array (" << b.name << ")\n";

    const auto matrix = build_field_matrix(b.model, cfg.radio, sv, cfg.matrix_step_deg, cfg.lobes);
    const double u_ref = cfg.u_ref ? *cfg.u_ref : unit_weight_peak(matrix);
    log << "field matrix: " << matrix.rows() << " directions, " << matrix.mainlobe.size() << " mainlobe, "
        << matrix.sidelobe.size() << " sidelobe\n";
    const auto result = optimize(matrix, u_ref, cfg.optimizer);

    const std::string base = "optimize_" + slug(b.name);
    {
        auto out = open_out(cfg.output_dir / (base + "_weights.csv"));
        write_weights_csv(out, result.weights);
    }
    {
        auto out = open_out(cfg.output_dir / (base + "_constraints.csv"));
        csv::write_header(out, {"key", "value"});
        result.report.write(out);
        kv(out, "u_ref", u_ref);
        kv(out, "bisection_steps", result.bisection_steps);
        kv(out, "monotone_rounds", result.monotone_rounds);
        kv(out, "capped_mainlobe_rows", static_cast<double>(result.capped_mainlobe_rows.size()));
    }

    // Unit and optimized patterns on the configured cuts.
    const auto unit = evaluate_pattern(cfg, b.model, Excitation::uniform(b.model.size(), sv));
    const auto opt = evaluate_pattern(cfg, b.model, apply_table_weights(result.weights, b.model.elements, sv));
    for (std::size_t c = 0; c < unit.cuts.size(); ++c)
    {
        const std::string name = base + "_" + cut_name(unit.cuts[c].first);
        auto out = open_out(cfg.output_dir / (name + ".csv"));
        csv::write_header(out, {"angle_deg", "unit_dBi", "optimized_dBi"});
        const auto &cu = unit.cuts[c].second, &co = opt.cuts[c].second;
        for (std::size_t i = 0; i < cu.angle_deg.size(); ++i)
            csv::write_row(out, {cu.angle_deg[i], cu.directivity_dbi[i], co.directivity_dbi[i]});
        write_cut_plot(cfg.output_dir / (name + ".gp"), {{name + ".csv", "2"}, {name + ".csv", "3"}},
                       b.name + " unit vs optimized");
    }
    {
        auto out = open_out(cfg.output_dir / (base + "_summary.csv"));
        csv::write_header(out, {"key", "unit", "optimized"});
        auto row = [&](const std::string &k, double u, double o) {
            out << k << ',';
            csv::write_row(out, {u, o});
        };
        row("peak_directivity_dBi", unit.lobes.peak_dbi, opt.lobes.peak_dbi);
        row("sll_dB", or_nan(unit.lobes.sll_db), or_nan(opt.lobes.sll_db));
        for (std::size_t c = 0; c < unit.cuts.size(); ++c)
            row(cut_name(unit.cuts[c].first) + "_sll_dB", or_nan(analyze_cut(unit.cuts[c].second).sll_db),
                or_nan(analyze_cut(opt.cuts[c].second).sll_db));
    }
    std::cout << "sll_bound " << csv::format(result.sll_bound) << '\n'
              << "achieved_sll_dB " << csv::format(10.0 * std::log10(result.achieved_sll)) << '\n'
              << "peak_directivity_dBi " << csv::format(unit.lobes.peak_dbi) << " -> "
              << csv::format(opt.lobes.peak_dbi) << '\n';
    log << "wrote " << base << "_* to " << cfg.output_dir.string() << '\n';
    return 0;
}

} // namespace conformal::cli
