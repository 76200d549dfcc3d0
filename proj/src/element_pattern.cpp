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

#include "conformal/element_pattern.hpp"
#include "conformal/csv.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace conformal
{

Direction Direction::from_vector(const Vec3 &v)
{
    const Vec3 u = v.normalized();
    return {std::atan2(u.y(), u.x()), std::asin(std::clamp(u.z(), -1.0, 1.0))};
}

Vec3 Direction::unit() const
{
    const double cp = std::cos(phi);
    return {cp * std::cos(theta), cp * std::sin(theta), std::sin(phi)};
}

std::string to_string(PatternKind kind)
{
    switch (kind)
    {
    case PatternKind::Isotropic:
        return "isotropic";
    case PatternKind::DipoleHIsotropic:
        return "dipole";
    case PatternKind::CosSquared:
        return "cos-squared";
    case PatternKind::Tabulated:
        return "tabulated";
    }
    return "unknown";
}

PatternKind parse_pattern_kind(const std::string &name)
{
    if (name == "isotropic")
        return PatternKind::Isotropic;
    if (name == "dipole")
        return PatternKind::DipoleHIsotropic;
    if (name == "cos-squared")
        return PatternKind::CosSquared;
    if (name == "tabulated")
        return PatternKind::Tabulated;
    throw InputError("unknown element pattern '" + name + "'");
}

namespace
{

std::optional<Vec3> checked_polarization(std::optional<Vec3> p)
{
    if (p && (!p->allFinite() || std::abs(p->norm() - 1.0) > 1e-9))
        throw InputError("element polarization must be a unit vector");
    return p;
}

void check_table(const PatternTable &t)
{
    if (t.theta_deg.size() < 2 || t.phi_deg.size() < 2)
        throw InputError("pattern table needs at least a 2x2 grid");
    if (t.amplitude.size() != t.theta_deg.size() * t.phi_deg.size())
        throw InputError("pattern table is not a full grid");
    if (!t.polarization.empty() && t.polarization.size() != t.amplitude.size())
        throw InputError("pattern table polarization does not match the grid");
    if (!std::is_sorted(t.theta_deg.begin(), t.theta_deg.end()) || !std::is_sorted(t.phi_deg.begin(), t.phi_deg.end()))
        throw InputError("pattern table axes must ascend");
    if (t.theta_deg.front() > -90.0 || t.theta_deg.back() < 90.0 || t.phi_deg.front() > -90.0 ||
        t.phi_deg.back() < 90.0)
        throw InputError("pattern table must cover the front hemisphere (theta and phi over [-90, 90] deg)");
    for (double a : t.amplitude)
        if (!(a >= 0.0))
            throw InputError("pattern table amplitudes must be non-negative");
}

// Locates v in ascending axis; returns lower index and fraction, or nullopt outside.
std::optional<std::pair<std::size_t, double>> bracket(const std::vector<double> &axis, double v)
{
    if (v < axis.front() || v > axis.back())
        return std::nullopt;
    auto it = std::upper_bound(axis.begin(), axis.end(), v);
    std::size_t hi = static_cast<std::size_t>(it - axis.begin());
    if (hi >= axis.size())
        hi = axis.size() - 1;
    const std::size_t lo = hi - 1;
    const double f = (v - axis[lo]) / (axis[hi] - axis[lo]);
    return std::make_pair(lo, f);
}

void check_unit(const Vec3 &d)
{
    if (!d.allFinite() || std::abs(d.norm() - 1.0) > 1e-9)
        throw InputError("direction must be a unit vector");
}

} // namespace

PatternTable read_pattern_table(std::istream &in)
{
    const auto table = csv::read(in, {"theta_deg", "phi_deg", "amplitude"}, {"px", "py", "pz"});
    const bool with_pol = table.header.size() == 6;
    if (table.header.size() != 3 && !with_pol)
        throw InputError("pattern table: polarization needs all of px, py, pz");

    std::map<std::pair<double, double>, std::size_t> cells;
    std::vector<double> thetas, phis;
    for (std::size_t r = 0; r < table.rows.size(); ++r)
    {
        const auto &row = table.rows[r];
        if (!cells.emplace(std::make_pair(row[0], row[1]), r).second)
            throw InputError("pattern table: duplicate node at line " + std::to_string(table.line_numbers[r]));
        thetas.push_back(row[0]);
        phis.push_back(row[1]);
    }
    auto unique_sorted = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    PatternTable t;
    t.theta_deg = unique_sorted(thetas);
    t.phi_deg = unique_sorted(phis);
    if (cells.size() != t.theta_deg.size() * t.phi_deg.size())
        throw InputError("pattern table: rows do not form a full theta x phi grid");
    for (double th : t.theta_deg)
        for (double ph : t.phi_deg)
        {
            const auto &row = table.rows[cells.at({th, ph})];
            t.amplitude.push_back(row[2]);
            if (with_pol)
            {
                const Vec3 p(row[3], row[4], row[5]);
                if (p.norm() == 0.0)
                    throw InputError("pattern table: zero polarization vector");
                t.polarization.push_back(p.normalized());
            }
        }
    check_table(t);
    return t;
}

PatternTable read_pattern_table(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open pattern table '" + path.string() + "'");
    return read_pattern_table(in);
}

ElementPattern::ElementPattern(PatternKind kind, std::optional<Vec3> pol, PatternTable table)
    : kind_(kind), polarization_(checked_polarization(pol)), table_(std::move(table))
{
}

ElementPattern ElementPattern::isotropic(std::optional<Vec3> polarization)
{
    return {PatternKind::Isotropic, polarization};
}

ElementPattern ElementPattern::dipole(std::optional<Vec3> polarization)
{
    return {PatternKind::DipoleHIsotropic, polarization};
}

ElementPattern ElementPattern::cos_squared(std::optional<Vec3> polarization)
{
    return {PatternKind::CosSquared, polarization};
}

ElementPattern ElementPattern::tabulated(PatternTable table, std::optional<Vec3> polarization)
{
    check_table(table);
    return {PatternKind::Tabulated, polarization, std::move(table)};
}

double ElementPattern::table_gain(double theta_deg, double phi_deg) const
{
    const auto bt = bracket(table_.theta_deg, theta_deg);
    const auto bp = bracket(table_.phi_deg, phi_deg);
    if (!bt || !bp)
        return 0.0;
    const auto [i, ft] = *bt;
    const auto [j, fp] = *bp;
    return (1 - ft) * (1 - fp) * table_.amplitude_at(i, j) + ft * (1 - fp) * table_.amplitude_at(i + 1, j) +
           (1 - ft) * fp * table_.amplitude_at(i, j + 1) + ft * fp * table_.amplitude_at(i + 1, j + 1);
}

double ElementPattern::local_gain(const Vec3 &d) const
{
    check_unit(d);
    switch (kind_)
    {
    case PatternKind::Isotropic:
        return 1.0;
    case PatternKind::DipoleHIsotropic:
        // |cos phi_L| with cos^2 phi_L = 1 - d_z'^2
        return std::sqrt(std::max(0.0, 1.0 - d.z() * d.z()));
    case PatternKind::CosSquared:
        // cos^2(phi_L) cos^2(theta_L) reduces to d_x'^2; back hemisphere truncated.
        return d.x() > 0.0 ? d.x() * d.x() : 0.0;
    case PatternKind::Tabulated:
        return table_gain(rad2deg(std::atan2(d.y(), d.x())), rad2deg(std::asin(std::clamp(d.z(), -1.0, 1.0))));
    }
    return 0.0;
}

Vec3 ElementPattern::local_polarization(const Vec3 &d) const
{
    if (!table_.polarization.empty())
    {
        const auto bt = bracket(table_.theta_deg, rad2deg(std::atan2(d.y(), d.x())));
        const auto bp = bracket(table_.phi_deg, rad2deg(std::asin(std::clamp(d.z(), -1.0, 1.0))));
        if (bt && bp)
        {
            const auto [i, ft] = *bt;
            const auto [j, fp] = *bp;
            const std::size_t n = table_.phi_deg.size();
            const Vec3 p = (1 - ft) * (1 - fp) * table_.polarization[i * n + j] +
                           ft * (1 - fp) * table_.polarization[(i + 1) * n + j] +
                           (1 - ft) * fp * table_.polarization[i * n + j + 1] +
                           ft * fp * table_.polarization[(i + 1) * n + j + 1];
            if (p.norm() > 1e-12)
                return p.normalized();
        }
    }
    if (polarization_)
        return *polarization_;
    return kScalarFieldAxis;
}

Vec3 global_element_field(const ElementPlacement &placement, const ElementPattern &pattern, const Vec3 &r_hat,
                          bool transverse)
{
    const Vec3 d_local = placement.frame * r_hat;
    const double a = pattern.local_gain(d_local);
    if (!pattern.polarized())
        return a * kScalarFieldAxis;
    Vec3 f = placement.frame.transpose() * (a * pattern.local_polarization(d_local));
    if (transverse)
        f -= f.dot(r_hat) * r_hat;
    return f;
}

Vec3 global_element_field(const ElementPlacement &placement, const ElementPattern &pattern, const Direction &obs,
                          bool transverse)
{
    return global_element_field(placement, pattern, obs.unit(), transverse);
}

} // namespace conformal
