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

#include "conformal/csv.hpp"
#include "conformal/types.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace conformal::csv
{

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

} // namespace

Table read(std::istream &in, const std::vector<std::string> &required, const std::vector<std::string> &optional)
{
    Table table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line))
    {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#')
            continue;
        auto cells = split(t);
        if (!have_header)
        {
            if (cells.size() < required.size() || cells.size() > required.size() + optional.size())
                throw InputError(where(line_no) + "unexpected header '" + t + "'");
            for (std::size_t i = 0; i < cells.size(); ++i)
            {
                const auto &want = i < required.size() ? required[i] : optional[i - required.size()];
                if (cells[i] != want)
                    throw InputError(where(line_no) + "expected column '" + want + "', found '" + cells[i] + "'");
            }
            table.header = cells;
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size())
            throw InputError(where(line_no) + "expected " + std::to_string(table.header.size()) + " fields, found " +
                             std::to_string(cells.size()));
        std::vector<double> row(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            const auto &c = cells[i];
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
            if (ec != std::errc() || ptr != c.data() + c.size() || !std::isfinite(v))
                throw InputError(where(line_no) + "invalid number '" + c + "' in column '" + table.header[i] + "'");
            row[i] = v;
        }
        table.rows.push_back(std::move(row));
        table.line_numbers.push_back(line_no);
    }
    if (!have_header)
        throw InputError("missing CSV header");
    return table;
}

Table read(const std::filesystem::path &path, const std::vector<std::string> &required,
           const std::vector<std::string> &optional)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open '" + path.string() + "'");
    try
    {
        return read(in, required, optional);
    }
    catch (const InputError &e)
    {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::string format(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_header(std::ostream &out, const std::vector<std::string> &columns)
{
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << '\n';
}

void write_row(std::ostream &out, const std::vector<double> &values)
{
    for (std::size_t i = 0; i < values.size(); ++i)
        out << (i ? "," : "") << format(values[i]);
    out << '\n';
}

} // namespace conformal::csv
