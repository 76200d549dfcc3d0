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

#include "conformal/surface.hpp"
#include "conformal/csv.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace conformal
{

void SurfaceDomain::validate() const
{
    for (double v : {x.min, x.max, y.min, y.max, grid_step})
        require_finite(v, "surface domain bound");
    if (!(x.min < x.max))
        throw InputError("surface domain: x range is empty");
    if (!(y.min < y.max))
        throw InputError("surface domain: y range is empty");
    if (!(grid_step > 0.0))
        throw InputError("surface domain: grid step must be positive");
}

const std::array<Monomial, kNumCoefficients> &monomials()
{
    static const auto table = [] {
        std::array<Monomial, kNumCoefficients> t{};
        std::size_t n = 0;
        for (int degree = 0; degree <= kSurfaceDegree; ++degree)
            for (int j = degree; j >= 0; --j)
                t[n++] = {j, degree - j};
        return t;
    }();
    return table;
}

std::string coefficient_name(Monomial m) { return "p" + std::to_string(m.j) + std::to_string(m.k); }

PolynomialSurface::PolynomialSurface(const std::array<double, kNumCoefficients> &coeffs, const SurfaceDomain &domain)
    : coeffs_(coeffs), domain_(domain)
{
    for (double c : coeffs_)
        require_finite(c, "surface coefficient");
    domain_.validate();
}

std::size_t PolynomialSurface::index(int j, int k)
{
    if (j < 0 || k < 0 || j + k > kSurfaceDegree)
        throw InputError("monomial exponent out of range");
    const int degree = j + k;
    // degree d starts after d(d+1)/2 entries; x-power descends inside the degree.
    return static_cast<std::size_t>(degree * (degree + 1) / 2 + (degree - j));
}

namespace
{

template <class T>
std::array<T, kSurfaceDegree + 1> powers(T v)
{
    std::array<T, kSurfaceDegree + 1> p{};
    p[0] = 1;
    for (int i = 1; i <= kSurfaceDegree; ++i)
        p[i] = p[i - 1] * v;
    return p;
}

void check_point(double x, double y)
{
    require_finite(x, "x");
    require_finite(y, "y");
}

} // namespace

double PolynomialSurface::evaluate(double x, double y) const
{
    check_point(x, y);
    // Extended accumulation: the large quintic coefficients cancel to a z of a few centimeters.
    const auto xp = powers<long double>(x);
    const auto yp = powers<long double>(y);
    long double z = 0.0L;
    const auto &mono = monomials();
    for (std::size_t i = 0; i < kNumCoefficients; ++i)
        z += coeffs_[i] * xp[mono[i].j] * yp[mono[i].k];
    return static_cast<double>(z);
}

Vec2 PolynomialSurface::gradient(double x, double y) const
{
    check_point(x, y);
    const auto xp = powers(x);
    const auto yp = powers(y);
    Vec2 g = Vec2::Zero();
    const auto &mono = monomials();
    for (std::size_t i = 0; i < kNumCoefficients; ++i)
    {
        const auto [j, k] = mono[i];
        if (j > 0)
            g.x() += coeffs_[i] * j * xp[j - 1] * yp[k];
        if (k > 0)
            g.y() += coeffs_[i] * k * xp[j] * yp[k - 1];
    }
    return g;
}

Vec3 PolynomialSurface::normal_at(double x, double y, Side side) const
{
    const Vec2 g = gradient(x, y);
    Vec3 n(-g.x(), -g.y(), 1.0);
    n.normalize();
    if (side == Side::RadiatingDown)
        n = -n;
    return n;
}

SurfaceFit fit(std::span<const Vec3> samples, const SurfaceDomain &domain)
{
    domain.validate();
    if (samples.size() < kNumCoefficients)
        throw NumericalError("rank-deficient design matrix: " + std::to_string(samples.size()) +
                             " samples for 21 coefficients (underdetermined)");

    const double cx = domain.x.center(), sx = 0.5 * domain.x.span();
    const double cy = domain.y.center(), sy = 0.5 * domain.y.span();
    const auto &mono = monomials();

    Eigen::MatrixXd design(samples.size(), kNumCoefficients);
    Eigen::VectorXd rhs(samples.size());
    for (std::size_t r = 0; r < samples.size(); ++r)
    {
        const Vec3 &p = samples[r];
        if (!p.allFinite())
            throw InputError("surface sample " + std::to_string(r) + " is not finite");
        const auto up = powers((p.x() - cx) / sx);
        const auto vp = powers((p.y() - cy) / sy);
        for (std::size_t c = 0; c < kNumCoefficients; ++c)
            design(r, c) = up[mono[c].j] * vp[mono[c].k];
        rhs(r) = p.z();
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-12);
    if (qr.rank() < static_cast<Eigen::Index>(kNumCoefficients))
        throw NumericalError("surface fit: rank-deficient design matrix (rank " + std::to_string(qr.rank()) +
                             " of 21); samples do not span all quintic monomials");
    Eigen::VectorXd scaled = qr.solve(rhs);

    // Iterative refinement with extended-precision residuals; the antisymmetric
    // part of a typical airframe is tiny next to the cross-section.
    for (int pass = 0; pass < 3; ++pass)
    {
        Eigen::VectorXd residual(samples.size());
        for (std::size_t r = 0; r < samples.size(); ++r)
        {
            long double acc = samples[r].z();
            for (std::size_t c = 0; c < kNumCoefficients; ++c)
                acc -= static_cast<long double>(design(r, c)) * scaled(c);
            residual(r) = static_cast<double>(acc);
        }
        scaled += qr.solve(residual);
    }

    // Expand q_ab ((x-cx)/sx)^a ((y-cy)/sy)^b back into the raw monomial basis.
    auto binom = [](int n, int r) {
        double b = 1.0;
        for (int i = 1; i <= r; ++i)
            b = b * (n - r + i) / i;
        return b;
    };
    std::array<long double, kNumCoefficients> acc{};
    for (std::size_t c = 0; c < kNumCoefficients; ++c)
    {
        const auto [a, b] = mono[c];
        for (int i = 0; i <= a; ++i)
            for (int l = 0; l <= b; ++l)
            {
                const long double term = static_cast<long double>(scaled(c)) * binom(a, i) *
                                         std::pow(-static_cast<long double>(cx), a - i) /
                                         std::pow(static_cast<long double>(sx), a) * binom(b, l) *
                                         std::pow(-static_cast<long double>(cy), b - l) /
                                         std::pow(static_cast<long double>(sy), b);
                acc[PolynomialSurface::index(i, l)] += term;
            }
    }
    std::array<double, kNumCoefficients> raw{};
    for (std::size_t c = 0; c < kNumCoefficients; ++c)
        raw[c] = static_cast<double>(acc[c]);

    PolynomialSurface surface(raw, domain);
    double sse = 0.0;
    for (const auto &p : samples)
    {
        const double r = surface.evaluate(p.x(), p.y()) - p.z();
        sse += r * r;
    }
    return {surface, std::sqrt(sse / static_cast<double>(samples.size()))};
}

namespace
{

std::size_t grid_count(const Interval &range, double step)
{
    return static_cast<std::size_t>(std::floor(range.span() / step + 1e-9)) + 1;
}

} // namespace

SurfaceSamples mesh(const PolynomialSurface &surface)
{
    const auto &d = surface.domain();
    d.validate();
    const std::size_t nx = grid_count(d.x, d.grid_step);
    const std::size_t ny = grid_count(d.y, d.grid_step);
    SurfaceSamples out;
    out.reserve(nx * ny);
    for (std::size_t i = 0; i < nx; ++i)
    {
        const double x = d.x.min + static_cast<double>(i) * d.grid_step;
        for (std::size_t j = 0; j < ny; ++j)
        {
            const double y = d.y.min + static_cast<double>(j) * d.grid_step;
            out.emplace_back(x, y, surface.evaluate(x, y));
        }
    }
    return out;
}

PolynomialSurface parse_surface_json(const std::string &text)
{
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw InputError(std::string("surface file: ") + e.what());
    }
    try
    {
        std::array<double, kNumCoefficients> coeffs{};
        const auto &c = doc.at("coefficients");
        for (std::size_t i = 0; i < kNumCoefficients; ++i)
            coeffs[i] = c.at(coefficient_name(monomials()[i])).get<double>();
        if (c.size() != kNumCoefficients)
            throw InputError("surface file: expected exactly 21 coefficients");
        const auto &d = doc.at("domain");
        SurfaceDomain domain{{d.at("x_min_m").get<double>(), d.at("x_max_m").get<double>()},
                             {d.at("y_min_m").get<double>(), d.at("y_max_m").get<double>()},
                             doc.at("grid_step_m").get<double>()};
        return PolynomialSurface(coeffs, domain);
    }
    catch (const nlohmann::json::exception &e)
    {
        throw InputError(std::string("surface file: ") + e.what());
    }
}

PolynomialSurface read_surface_json(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open surface file '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_surface_json(ss.str());
}

std::string surface_to_json(const PolynomialSurface &surface, double rmse)
{
    nlohmann::ordered_json doc;
    auto &c = doc["coefficients"];
    for (const auto &m : monomials())
        c[coefficient_name(m)] = surface.coeff(m.j, m.k);
    const auto &d = surface.domain();
    doc["domain"] = {{"x_min_m", d.x.min}, {"x_max_m", d.x.max}, {"y_min_m", d.y.min}, {"y_max_m", d.y.max}};
    doc["grid_step_m"] = d.grid_step;
    if (rmse >= 0.0)
        doc["rmse_m"] = rmse;
    return doc.dump(2) + "\n";
}

SurfaceSamples read_samples_csv(std::istream &in)
{
    const auto table = csv::read(in, {"x", "y", "z"});
    SurfaceSamples out;
    out.reserve(table.rows.size());
    for (const auto &r : table.rows)
        out.emplace_back(r[0], r[1], r[2]);
    return out;
}

SurfaceSamples read_samples_csv(const std::filesystem::path &path)
{
    const auto table = csv::read(path, {"x", "y", "z"});
    SurfaceSamples out;
    out.reserve(table.rows.size());
    for (const auto &r : table.rows)
        out.emplace_back(r[0], r[1], r[2]);
    return out;
}

} // namespace conformal
