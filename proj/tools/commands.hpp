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

#include "conformal/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace conformal::cli
{

// Command-line overrides applied on top of the config file.
struct Overrides
{
    std::optional<std::filesystem::path> config;
    std::optional<std::filesystem::path> out;
    std::optional<double> step_deg;
    bool strict_domain = false;
};

RunConfig resolve_config(const Overrides &o);

int cmd_fit(const RunConfig &cfg, const std::optional<std::filesystem::path> &samples, std::ostream &log);
int cmd_layout(const RunConfig &cfg, std::ostream &log);
int cmd_pattern(const RunConfig &cfg, std::ostream &log);
int cmd_sweep(const RunConfig &cfg, std::ostream &log);
int cmd_compare(const RunConfig &cfg, std::ostream &log);
int cmd_optimize(const RunConfig &cfg, std::ostream &log);

} // namespace conformal::cli
