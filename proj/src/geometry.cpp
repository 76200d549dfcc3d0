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

#include "conformal/geometry.hpp"
#include "conformal/csv.hpp"

#include <ostream>

namespace conformal
{

std::string to_string(LayoutKind kind)
{
    switch (kind)
    {
    case LayoutKind::NonUniformConformal:
        return "non-uniform-conformal";
    case LayoutKind::UniformConformal:
        return "uniform-conformal";
    case LayoutKind::Planar:
        return "planar";
    }
    return "unknown";
}

LayoutKind parse_layout_kind(const std::string &name)
{
    if (name == "non-uniform-conformal")
        return LayoutKind::NonUniformConformal;
    if (name == "uniform-conformal")
        return LayoutKind::UniformConformal;
    if (name == "planar")
        return LayoutKind::Planar;
    throw InputError("unknown layout kind '" + name + "'");
}

void ArraySpec::validate() const
{
    if (elements_per_row < 2)
        throw InputError("array spec: need at least 2 elements per row");
    if (rows < 1)
        throw InputError("array spec: need at least 1 row");
    if (kind == LayoutKind::NonUniformConformal)
    {
        if (rows != 2 && rows != 4)
            throw InputError("array spec: non-uniform layout needs 2 or 4 rows");
        for (double v : {dx1, q, dy1})
            if (!(v > 0.0) || !std::isfinite(v))
                throw InputError("array spec: dx1, q and dy1 must be positive");
        require_finite(x1_inner, "x1_inner");
        if (rows == 4)
        {
            if (!(dy2 > 0.0) || !std::isfinite(dy2))
                throw InputError("array spec: dy2 must be positive");
            require_finite(x1_outer, "x1_outer");
            require_finite(x_end_outer, "x_end_outer");
            if (!(x_end_outer > x1_outer))
                throw InputError("array spec: outer-row end must lie beyond its start");
        }
    }
    else
    {
        if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy))
            throw InputError("array spec: dx and dy must be positive");
        require_finite(planar_z, "planar_z");
    }
}

std::vector<double> x_positions_inner(const ArraySpec &spec)
{
    if (spec.kind != LayoutKind::NonUniformConformal)
        throw InputError("inner-row positions only exist for the non-uniform layout");
    std::vector<double> xs(static_cast<std::size_t>(spec.elements_per_row));
    xs[0] = spec.x1_inner;
    double step = spec.dx1;
    for (std::size_t n = 1; n < xs.size(); ++n)
    {
        xs[n] = xs[n - 1] + step;
        step *= spec.q;
    }
    return xs;
}

std::vector<double> x_positions_outer(const ArraySpec &spec)
{
    if (spec.kind != LayoutKind::NonUniformConformal)
        throw InputError("outer-row positions only exist for the non-uniform layout");
    if (!(spec.x_end_outer > spec.x1_outer))
        throw InputError("outer row: end position must lie beyond the first element");
    const int n = spec.elements_per_row;
    const double step = (spec.x_end_outer - spec.x1_outer) / (n - 1);
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        xs[i] = spec.x1_outer + i * step;
    xs.back() = spec.x_end_outer;
    return xs;
}

Mat3 local_frame(const Vec3 &normal)
{
    if (!normal.allFinite() || std::abs(normal.norm() - 1.0) > 1e-9)
        throw InputError("local frame: normal must be a unit vector");
    const Vec3 &xl = normal;
    Vec3 yl = Vec3::UnitY() - Vec3::UnitY().dot(xl) * xl;
    if (yl.norm() < 1e-6)
        yl = Vec3::UnitX() - Vec3::UnitX().dot(xl) * xl;
    yl.normalize();
    const Vec3 zl = xl.cross(yl);
    Mat3 t;
    t.row(0) = xl;
    t.row(1) = yl;
    t.row(2) = zl;
    return t;
}

namespace
{

struct Row
{
    double y;
    std::vector<double> xs;
    bool inner; // geometric rows may run past the fitted domain
};

std::vector<double> centered(double center, double step, int count)
{
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        v[i] = center + step * (i - 0.5 * (count - 1));
    return v;
}

std::vector<Row> lattice(const ArraySpec &spec, const SurfaceDomain &domain)
{
    std::vector<Row> rows;
    if (spec.kind == LayoutKind::NonUniformConformal)
    {
        const auto inner = x_positions_inner(spec);
        const double yi = 0.5 * spec.dy1;
        if (spec.rows == 4)
        {
            const auto outer = x_positions_outer(spec);
            const double yo = yi + spec.dy2;
            rows = {{-yo, outer, false}, {-yi, inner, true}, {yi, inner, true}, {yo, outer, false}};
        }
        else
        {
            rows = {{-yi, inner, true}, {yi, inner, true}};
        }
        return rows;
    }
    const auto xs = centered(domain.x.center(), spec.dx, spec.elements_per_row);
    for (double y : centered(domain.y.center(), spec.dy, spec.rows))
        rows.push_back({y, xs, false});
    return rows;
}

} // namespace

Layout layout(const ArraySpec &spec, const PolynomialSurface &surface, const LayoutOptions &options)
{
    spec.validate();
    const auto &domain = surface.domain();
    Layout out;
    const Vec3 planar_normal = options.side == Side::RadiatingDown ? Vec3(0, 0, -1) : Vec3(0, 0, 1);
    const Mat3 planar_frame = local_frame(planar_normal);

    int index = 0;
    for (const auto &row : lattice(spec, domain))
    {
        for (double x : row.xs)
        {
            const double y = row.y;
            const bool y_ok = domain.y.contains(y, options.domain_tolerance);
            const bool x_ok = domain.x.contains(x, options.domain_tolerance);
            if (!y_ok || !x_ok)
            {
                const bool tolerated = y_ok && row.inner && !options.strict_domain;
                const std::string msg = "element " + std::to_string(index) + " at (" + std::to_string(x * 1e3) +
                                        ", " + std::to_string(y * 1e3) + ") mm lies outside the surface domain";
                if (!tolerated)
                    throw InputError(msg);
                out.warnings.push_back(msg + "; surface extrapolated");
            }

            ElementPlacement p;
            p.index = index++;
            if (spec.kind == LayoutKind::Planar)
            {
                p.position = Vec3(x, y, spec.planar_z);
                p.normal = planar_normal;
                p.frame = planar_frame;
            }
            else
            {
                p.position = Vec3(x, y, surface.evaluate(x, y));
                p.normal = surface.normal_at(x, y, options.side);
                p.frame = local_frame(p.normal);
            }
            out.elements.push_back(p);
        }
    }
    return out;
}

void write_layout_csv(std::ostream &out, const std::vector<ElementPlacement> &elements, bool with_frame)
{
    std::vector<std::string> cols{"index", "x", "y", "z", "nx", "ny", "nz"};
    if (with_frame)
        for (const char *c : {"t11", "t12", "t13", "t21", "t22", "t23", "t31", "t32", "t33"})
            cols.emplace_back(c);
    csv::write_header(out, cols);
    for (const auto &e : elements)
    {
        std::vector<double> v{static_cast<double>(e.index), e.position.x(), e.position.y(), e.position.z(),
                              e.normal.x(), e.normal.y(), e.normal.z()};
        if (with_frame)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c)
                    v.push_back(e.frame(r, c));
        csv::write_row(out, v);
    }
}

} // namespace conformal
