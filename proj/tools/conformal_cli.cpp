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

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    using namespace conformal;
    CLI::App app{"conformal: synthesis and analysis of conformal phased arrays"};
    app.require_subcommand(1);

    cli::Overrides o;
    std::string config, out;
    double step = 0.0;
    app.add_option("--config", config, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out, "output directory (overrides output_dir)");
    app.add_option("--step", step, "sphere sampling step in degrees")->check(CLI::PositiveNumber);
    app.add_flag("--strict-domain", o.strict_domain, "reject any element outside the surface domain");

    std::string samples;
    auto *fit = app.add_subcommand("fit", "fit the quintic surface to x,y,z samples");
    fit->add_option("samples", samples, "samples CSV (x,y,z in meters)");
    auto *lay = app.add_subcommand("layout", "place elements and write positions, normals and frames");
    auto *pat = app.add_subcommand("pattern", "sample one steered pattern and write cuts");
    auto *swp = app.add_subcommand("sweep", "steering sweep contour per array");
    auto *cmp = app.add_subcommand("compare", "compare several arrays over one steering grid");
    auto *opt = app.add_subcommand("optimize", "optimize amplitude weights for low sidelobes");
    for (auto *sub : {fit, lay, pat, swp, cmp, opt})
        sub->fallthrough();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try
    {
        if (!config.empty())
            o.config = config;
        if (!out.empty())
            o.out = out;
        if (step > 0.0)
            o.step_deg = step;
        const RunConfig cfg = cli::resolve_config(o);
        if (fit->parsed())
            return cli::cmd_fit(cfg, samples.empty() ? std::nullopt : std::optional<std::filesystem::path>(samples),
                                std::cerr);
        if (lay->parsed())
            return cli::cmd_layout(cfg, std::cerr);
        if (pat->parsed())
            return cli::cmd_pattern(cfg, std::cerr);
        if (swp->parsed())
            return cli::cmd_sweep(cfg, std::cerr);
        if (cmp->parsed())
            return cli::cmd_compare(cfg, std::cerr);
        if (opt->parsed())
            return cli::cmd_optimize(cfg, std::cerr);
    }
    catch (const InputError &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (const NumericalError &e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    catch (const InfeasibleError &e)
    {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
