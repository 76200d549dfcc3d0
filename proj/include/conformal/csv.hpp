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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace conformal::csv
{

// Numeric CSV table whose first line is a header.
struct Table
{
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> line_numbers; // 1-based source line of each row
};

// Parses a numeric CSV. Blank lines and lines starting with '#' are skipped.
// `required` lists columns that must lead the header in that order; `optional`
// columns may follow. Errors are InputError messages that carry the line number.
Table read(std::istream &in, const std::vector<std::string> &required,
           const std::vector<std::string> &optional = {});
Table read(const std::filesystem::path &path, const std::vector<std::string> &required,
           const std::vector<std::string> &optional = {});

// Shortest round-trippable decimal text for v ("nan" stays "nan").
std::string format(double v);

void write_header(std::ostream &out, const std::vector<std::string> &columns);
void write_row(std::ostream &out, const std::vector<double> &values);

} // namespace conformal::csv
