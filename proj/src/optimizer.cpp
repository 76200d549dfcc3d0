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

#include "conformal/optimizer.hpp"
#include "conformal/csv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <set>

namespace conformal
{

void WeightVector::validate() const
{
    if (values.empty())
        throw InputError("weight vector is empty");
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw InputError("weights must be finite and non-negative");
}

// --- FieldMatrix ----------------------------------------------------------

CVec3 FieldMatrix::field(std::size_t row, const Eigen::VectorXd &w) const
{
    CVec3 e = CVec3::Zero();
    const Eigen::VectorXcd wc = w.cast<Complex>();
    for (int c = 0; c < components; ++c)
        e(c) = data.row(static_cast<Eigen::Index>(row * components + c)).transpose().cwiseProduct(wc).sum();
    return e;
}

double FieldMatrix::intensity(std::size_t row, const Eigen::VectorXd &w) const
{
    double u = 0.0;
    for (int c = 0; c < components; ++c)
    {
        const auto r = static_cast<Eigen::Index>(row * components + c);
        Complex s = 0.0;
        for (Eigen::Index i = 0; i < data.cols(); ++i)
            s += data(r, i) * w(i);
        u += std::norm(s);
    }
    return u;
}

std::vector<double> FieldMatrix::intensities(const Eigen::VectorXd &w) const
{
    const Eigen::VectorXcd e = data * w.cast<Complex>();
    std::vector<double> u(rows(), 0.0);
    for (std::size_t r = 0; r < rows(); ++r)
        for (int c = 0; c < components; ++c)
            u[r] += std::norm(e(static_cast<Eigen::Index>(r * components + c)));
    return u;
}

void FieldMatrix::validate() const
{
    if (elements == 0 || components < 1 || components > 3)
        throw InputError("field matrix: bad shape");
    if (data.rows() != static_cast<Eigen::Index>(rows() * components) ||
        data.cols() != static_cast<Eigen::Index>(elements))
        throw InputError("field matrix: data does not match row and element counts");
    if (steer_row >= rows())
        throw InputError("field matrix: steering row out of range");
    if (steer_response.size() != static_cast<Eigen::Index>(elements))
        throw InputError("field matrix: steer response length mismatch");
    if (sidelobe.empty())
        throw InputError("field matrix: sidelobe region is empty");
    const std::set<std::size_t> main(mainlobe.begin(), mainlobe.end());
    if (!main.contains(steer_row))
        throw InputError("field matrix: steering row must belong to the mainlobe");
    for (std::size_t r : sidelobe)
        if (r >= rows() || main.contains(r))
            throw InputError("field matrix: sidelobe row " + std::to_string(r) + " invalid or inside the mainlobe");
}

void FieldMatrix::update_steer_response()
{
    const auto base = static_cast<Eigen::Index>(steer_row * components);
    const Eigen::MatrixXcd block = data.middleRows(base, components); // components x elements
    const Eigen::VectorXcd total = block.rowwise().sum();
    const double norm = total.norm();
    steer_response = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(elements));
    if (norm == 0.0)
        return;
    const Eigen::VectorXcd p = total / norm;
    steer_response = (p.adjoint() * block).real().transpose();
}

std::vector<std::pair<std::size_t, std::size_t>> FieldMatrix::descent(std::size_t root) const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t nt = grid_n_theta, np = grid_n_phi;
    if (nt == 0 || np == 0 || root >= grid_rows)
        return out;
    std::vector<char> in_main(grid_rows, 0);
    for (std::size_t r : mainlobe)
        if (r < grid_rows)
            in_main[r] = 1;
    const Vec3 peak = directions[root].unit();
    auto dist = [&](std::size_t r) { return std::acos(std::clamp(directions[r].unit().dot(peak), -1.0, 1.0)); };
    for (std::size_t r = 0; r < grid_rows; ++r)
    {
        if (!in_main[r] || r == root)
            continue;
        const std::size_t i = r / np, j = r % np;
        double best = dist(r);
        std::optional<std::size_t> parent;
        for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj)
            {
                const long jj = static_cast<long>(j) + dj;
                if ((di == 0 && dj == 0) || jj < 0 || jj >= static_cast<long>(np))
                    continue;
                const std::size_t nb = ((i + nt + static_cast<std::size_t>(di + 1) - 1) % nt) * np +
                                       static_cast<std::size_t>(jj);
                if (!in_main[nb])
                    continue;
                const double d = dist(nb);
                if (d < best - 1e-12)
                {
                    best = d;
                    parent = nb;
                }
            }
        if (parent)
            out.emplace_back(r, *parent);
    }
    return out;
}

FieldMatrix FieldMatrix::from_scalar_rows(const Eigen::MatrixXcd &rows, std::size_t steer_row,
                                          std::vector<std::size_t> mainlobe, std::vector<std::size_t> sidelobe)
{
    FieldMatrix m;
    m.elements = static_cast<std::size_t>(rows.cols());
    m.components = 1;
    m.directions.assign(static_cast<std::size_t>(rows.rows()), Direction{});
    m.data = rows;
    m.grid_rows = 0;
    m.steer_row = steer_row;
    m.mainlobe = std::move(mainlobe);
    m.sidelobe = std::move(sidelobe);
    m.update_steer_response();
    m.validate();
    return m;
}

FieldMatrix build_field_matrix(const ArrayModel &array, const RadioConfig &radio, const SteeringVector &steering,
                               double step_deg, const LobeOptions &lobes)
{
    array.validate();
    radio.validate();
    const auto [nt, np] = SphereGrid::full_dimensions(step_deg);
    const double k = radio.wavenumber();
    const std::size_t n_el = array.size();

    FieldMatrix m;
    m.elements = n_el;
    m.components = 3;
    m.step_deg = step_deg;
    m.grid_rows = nt * np;
    m.grid_n_theta = nt;
    m.grid_n_phi = np;
    m.directions.reserve(m.grid_rows + 1);
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t j = 0; j < np; ++j)
            m.directions.push_back(
                Direction::from_degrees(-180.0 + static_cast<double>(i) * step_deg, -90.0 + static_cast<double>(j) * step_deg));
    m.directions.push_back(steering.direction());
    m.steer_row = m.grid_rows;

    std::vector<Complex> steer_phase(n_el);
    for (std::size_t e = 0; e < n_el; ++e)
        steer_phase[e] = std::polar(1.0, -k * array.elements[e].position.dot(steering.r_s));

    m.data = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m.rows() * 3), static_cast<Eigen::Index>(n_el));
    for (std::size_t r = 0; r < m.rows(); ++r)
    {
        const Vec3 r_hat = m.directions[r].unit();
        for (std::size_t e = 0; e < n_el; ++e)
        {
            const Vec3 f = global_element_field(array.elements[e], array.patterns[e], r_hat, array.transverse);
            const Complex c = steer_phase[e] * std::polar(1.0, -k * array.elements[e].position.dot(r_hat));
            for (int comp = 0; comp < 3; ++comp)
                m.data(static_cast<Eigen::Index>(3 * r + comp), static_cast<Eigen::Index>(e)) = f(comp) * c;
        }
    }

    const auto unit = m.intensities(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n_el)));
    const SphereGrid grid = SphereGrid::full(step_deg, std::vector<double>(unit.begin(), unit.begin() + m.grid_rows));
    const auto analysis = analyze_lobes(grid, steering, lobes);

    for (std::size_t r = 0; r < m.grid_rows; ++r)
        (analysis.mainlobe_mask[r] ? m.mainlobe : m.sidelobe).push_back(r);
    m.mainlobe.push_back(m.steer_row);
    if (m.sidelobe.empty())
        throw InputError("field matrix: the mainlobe covers the whole sphere, no sidelobe region");

    m.update_steer_response();
    m.validate();
    return m;
}

double unit_weight_peak(const FieldMatrix &matrix)
{
    const auto u = matrix.intensities(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(matrix.elements)));
    return *std::max_element(u.begin(), u.end());
}

// --- verification ---------------------------------------------------------

bool ConstraintReport::satisfied(double tol) const
{
    return sidelobe_margin >= -tol && monotone_margin >= -tol && floor_margin >= -tol && ceiling_margin >= -tol;
}

std::string ConstraintReport::most_violated() const
{
    const std::pair<double, const char *> items[] = {{sidelobe_margin, "sidelobe cap"},
                                                     {monotone_margin, "mainlobe monotonicity"},
                                                     {floor_margin, "mainlobe floor"},
                                                     {ceiling_margin, "SLL ceiling"}};
    const auto *worst = &items[0];
    for (const auto &it : items)
        if (it.first < worst->first)
            worst = &it;
    std::string s = std::string(worst->second) + " (margin " + csv::format(worst->first) + ")";
    if (worst == &items[0] && worst_sidelobe_row)
        s += " at row " + std::to_string(*worst_sidelobe_row);
    if (worst == &items[1] && worst_monotone_row)
        s += " at row " + std::to_string(*worst_monotone_row);
    return s;
}

void ConstraintReport::write(std::ostream &out) const
{
    out << "steer_intensity," << csv::format(steer_intensity) << '\n'
        << "floor_intensity," << csv::format(floor_intensity) << '\n'
        << "sll_ratio," << csv::format(sll_ratio) << '\n'
        << "sll_dB," << csv::format(sll_ratio > 0.0 ? 10.0 * std::log10(sll_ratio) : -INFINITY) << '\n'
        << "sll_bound," << csv::format(sll_bound) << '\n'
        << "margin_sidelobe_cap," << csv::format(sidelobe_margin) << '\n'
        << "margin_mainlobe_monotone," << csv::format(monotone_margin) << '\n'
        << "margin_mainlobe_floor," << csv::format(floor_margin) << '\n'
        << "margin_sll_ceiling," << csv::format(ceiling_margin) << '\n'
        << "satisfied," << (satisfied() ? "true" : "false") << '\n';
}

ConstraintReport verify(const FieldMatrix &matrix, const WeightVector &w, double u_ref, double sll_bound,
                        const OptimizerOptions &options, const std::vector<std::size_t> &extra_capped)
{
    if (w.size() != matrix.elements)
        throw InputError("verify: " + std::to_string(w.size()) + " weights for " + std::to_string(matrix.elements) +
                         " elements");
    const Eigen::VectorXd wv = w.as_vector();
    const auto u = matrix.intensities(wv);

    ConstraintReport rep;
    rep.sll_bound = sll_bound;
    rep.steer_intensity = u[matrix.steer_row];
    rep.floor_intensity = options.floor_fraction * u_ref;

    double worst = 0.0;
    auto scan = [&](std::size_t r) {
        if (u[r] > worst || !rep.worst_sidelobe_row)
        {
            worst = std::max(worst, u[r]);
            rep.worst_sidelobe_row = r;
        }
    };
    for (std::size_t r : matrix.sidelobe)
        scan(r);
    for (std::size_t r : extra_capped)
        scan(r);
    const double inf = std::numeric_limits<double>::infinity();
    if (rep.steer_intensity > 0.0)
        rep.sll_ratio = worst / rep.steer_intensity;
    else
        rep.sll_ratio = worst > 0.0 ? inf : 0.0;

    rep.sidelobe_margin = sll_bound - rep.sll_ratio;
    rep.ceiling_margin = options.sll_ceiling - rep.sll_ratio;
    rep.floor_margin = rep.floor_intensity > 0.0 ? rep.steer_intensity / rep.floor_intensity - 1.0 : inf;

    rep.monotone_margin = inf;
    const std::set<std::size_t> capped(extra_capped.begin(), extra_capped.end());
    std::optional<std::size_t> root;
    for (std::size_t r : matrix.mainlobe)
        if (r < matrix.grid_rows && !capped.contains(r) && (!root || u[r] > u[*root]))
            root = r;
    const auto pairs = root ? matrix.descent(*root) : std::vector<std::pair<std::size_t, std::size_t>>{};
    for (const auto &[row, parent] : pairs)
    {
        if (capped.contains(row) || capped.contains(parent))
            continue;
        const double m = rep.steer_intensity > 0.0 ? (u[parent] - u[row]) / rep.steer_intensity
                                                   : (u[parent] >= u[row] ? 0.0 : -inf);
        if (m < rep.monotone_margin)
        {
            rep.monotone_margin = m;
            rep.worst_monotone_row = row;
        }
    }
    if (rep.monotone_margin == inf)
        rep.monotone_margin = 0.0;
    return rep;
}

// --- optimization -----------------------------------------------------------

namespace
{

// Sidelobe caps ||A_r v||^2 <= s over real-stacked blocks of height `block`.
class CapSystem
{
public:
    CapSystem(const FieldMatrix &m, const std::vector<std::size_t> &rows) : block_(2 * m.components)
    {
        std::vector<std::size_t> live;
        for (std::size_t r : rows)
        {
            const auto base = static_cast<Eigen::Index>(r * m.components);
            if (m.data.middleRows(base, m.components).cwiseAbs().maxCoeff() > 0.0)
                live.push_back(r);
        }
        rows_ = live;
        a_.resize(static_cast<Eigen::Index>(live.size()) * block_, static_cast<Eigen::Index>(m.elements));
        for (std::size_t n = 0; n < live.size(); ++n)
        {
            const auto base = static_cast<Eigen::Index>(live[n] * m.components);
            for (int c = 0; c < m.components; ++c)
            {
                const auto dst = static_cast<Eigen::Index>(n) * block_ + 2 * c;
                a_.row(dst) = m.data.row(base + c).real();
                a_.row(dst + 1) = m.data.row(base + c).imag();
            }
        }
    }

    std::size_t count() const { return rows_.size(); }
    std::size_t row(std::size_t n) const { return rows_[n]; }

    CapSystem subset(const std::vector<std::size_t> &caps) const
    {
        CapSystem out;
        out.block_ = block_;
        out.a_.resize(static_cast<Eigen::Index>(caps.size()) * block_, a_.cols());
        for (std::size_t n = 0; n < caps.size(); ++n)
        {
            out.rows_.push_back(rows_[caps[n]]);
            out.a_.middleRows(static_cast<Eigen::Index>(n) * block_, block_) =
                a_.middleRows(static_cast<Eigen::Index>(caps[n]) * block_, block_);
        }
        return out;
    }

    // q_r = ||A_r v||^2 for each cap.
    Eigen::VectorXd levels(const Eigen::VectorXd &v, Eigen::VectorXd *stacked = nullptr) const
    {
        Eigen::VectorXd y = a_ * v;
        Eigen::VectorXd q(static_cast<Eigen::Index>(rows_.size()));
        for (Eigen::Index n = 0; n < q.size(); ++n)
            q(n) = y.segment(n * block_, block_).squaredNorm();
        if (stacked)
            *stacked = std::move(y);
        return q;
    }

    // Phi = 1/4 sum max(0, q - s)^2 and its gradient.
    double penalty(const Eigen::VectorXd &v, double s, Eigen::VectorXd *grad, double *max_excess) const
    {
        Eigen::VectorXd y;
        const Eigen::VectorXd q = levels(v, &y);
        double phi = 0.0;
        double worst = -std::numeric_limits<double>::infinity();
        for (Eigen::Index n = 0; n < q.size(); ++n)
        {
            const double h = q(n) - s;
            worst = std::max(worst, h);
            if (h > 0.0)
            {
                phi += 0.25 * h * h;
                y.segment(n * block_, block_) *= h;
            }
            else
            {
                y.segment(n * block_, block_).setZero();
            }
        }
        if (grad)
            *grad = a_.transpose() * y;
        if (max_excess)
            *max_excess = q.size() ? worst : -s;
        return phi;
    }

private:
    CapSystem() = default;

    Eigen::Index block_ = 2;
    std::vector<std::size_t> rows_;
    Eigen::MatrixXd a_;
};

// Euclidean projection onto {v >= 0, e . v >= 1}.
Eigen::VectorXd project(const Eigen::VectorXd &y, const Eigen::VectorXd &e)
{
    Eigen::VectorXd z = y.cwiseMax(0.0);
    if (e.dot(z) >= 1.0)
        return z;
    auto g = [&](double lambda) { return e.dot((y + lambda * e).cwiseMax(0.0)); };
    double lo = 0.0, hi = 1.0;
    while (g(hi) < 1.0)
        hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 1.0 ? lo : hi) = mid;
    }
    return (y + hi * e).cwiseMax(0.0);
}

struct Feasibility
{
    bool feasible = false;
    Eigen::VectorXd v;
    double max_excess = 0.0;
    std::size_t iterations = 0;
};

// Accelerated projected gradient on the squared cap violations.
Feasibility solve_subproblem(const CapSystem &caps, const Eigen::VectorXd &e, double s, const Eigen::VectorXd &start,
                              const OptimizerOptions &opt)
{
    Feasibility out;
    Eigen::VectorXd x = project(start, e);
    double excess = 0.0;
    Eigen::VectorXd grad;
    double phi = caps.penalty(x, s, &grad, &excess);
    out.v = x;
    out.max_excess = excess;
    if (excess <= opt.tolerance)
    {
        out.feasible = true;
        return out;
    }

    Eigen::VectorXd y = x;
    double t = 1.0;
    double lipschitz = 1.0;
    double best_phi = phi;
    double checkpoint_phi = phi;
    const int window = 500;
    for (int it = 1; it <= opt.max_iterations; ++it)
    {
        Eigen::VectorXd gy;
        const double phi_y = caps.penalty(y, s, &gy, nullptr);
        Eigen::VectorXd xn;
        double phi_n = 0.0, excess_n = 0.0;
        for (int bt = 0; bt < 60; ++bt)
        {
            xn = project(y - gy / lipschitz, e);
            const Eigen::VectorXd d = xn - y;
            phi_n = caps.penalty(xn, s, nullptr, &excess_n);
            if (phi_n <= phi_y + gy.dot(d) + 0.5 * lipschitz * d.squaredNorm() + 1e-300)
                break;
            lipschitz *= 2.0;
        }
        out.iterations = static_cast<std::size_t>(it);
        if (phi_n > phi)
        {
            // Restart momentum when the objective goes up.
            t = 1.0;
            y = x;
            continue;
        }
        const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        y = xn + ((t - 1.0) / tn) * (xn - x);
        t = tn;
        x = xn;
        phi = phi_n;
        lipschitz *= 0.95;
        if (phi < best_phi)
        {
            best_phi = phi;
            out.v = x;
            out.max_excess = excess_n;
        }
        if (excess_n <= opt.tolerance)
        {
            out.v = x;
            out.max_excess = excess_n;
            out.feasible = true;
            return out;
        }
        if (it % window == 0)
        {
            if (best_phi > 0.999 * checkpoint_phi)
                return out; // stalled at a positive violation
            checkpoint_phi = best_phi;
        }
    }
    return out;
}

// Working-set wrapper: solve on the most violated caps only, then check the
// rest and grow the set. Infeasibility of a subset implies infeasibility.
Feasibility solve_feasibility(const CapSystem &caps, const Eigen::VectorXd &e, double s, const Eigen::VectorXd &start,
                              const OptimizerOptions &opt)
{
    constexpr std::size_t batch = 64;
    std::vector<std::size_t> working;
    std::vector<char> in_set(caps.count(), 0);
    Eigen::VectorXd v = project(start, e);
    std::size_t iterations = 0;
    for (;;)
    {
        const Eigen::VectorXd q = caps.levels(v);
        std::vector<std::size_t> violators;
        for (std::size_t n = 0; n < caps.count(); ++n)
            if (!in_set[n] && q(static_cast<Eigen::Index>(n)) > s + opt.tolerance)
                violators.push_back(n);
        if (violators.empty() && (!working.empty() || caps.count() == 0 || q.maxCoeff() <= s + opt.tolerance))
        {
            Feasibility out;
            out.v = v;
            out.max_excess = caps.count() ? q.maxCoeff() - s : -s;
            out.feasible = out.max_excess <= opt.tolerance;
            out.iterations = iterations;
            if (out.feasible)
                return out;
        }
        const std::size_t take = std::min(batch, violators.size());
        std::partial_sort(violators.begin(), violators.begin() + static_cast<long>(take), violators.end(),
                          [&](std::size_t a, std::size_t b) {
                              return q(static_cast<Eigen::Index>(a)) > q(static_cast<Eigen::Index>(b));
                          });
        for (std::size_t i = 0; i < take; ++i)
        {
            in_set[violators[i]] = 1;
            working.push_back(violators[i]);
        }
        auto f = solve_subproblem(caps.subset(working), e, s, v, opt);
        iterations += f.iterations;
        v = f.v;
        if (!f.feasible)
        {
            f.iterations = iterations;
            f.max_excess = caps.levels(v).maxCoeff() - s;
            return f;
        }
    }
}

struct Bisection
{
    Eigen::VectorXd v;
    double bound = 0.0;
    int steps = 0;
    std::size_t iterations = 0;
};

Bisection bisect(const CapSystem &caps, const Eigen::VectorXd &e, const Eigen::VectorXd &start,
                 const OptimizerOptions &opt, const std::function<void(const Feasibility &)> &on_infeasible_ceiling)
{
    Bisection out;
    auto achieved = [&](const Eigen::VectorXd &v) {
        if (caps.count() == 0)
            return 0.0;
        return caps.levels(v).maxCoeff();
    };

    Eigen::VectorXd best = project(start, e);
    double hi = achieved(best);
    if (hi > opt.sll_ceiling)
    {
        const auto f = solve_feasibility(caps, e, opt.sll_ceiling, best, opt);
        out.iterations += f.iterations;
        if (!f.feasible)
        {
            on_infeasible_ceiling(f);
            return out;
        }
        best = f.v;
        hi = std::min(opt.sll_ceiling, achieved(best));
    }
    double lo = 0.0;
    while (hi - lo > opt.bisection_tolerance && out.steps < 200)
    {
        ++out.steps;
        const double mid = 0.5 * (lo + hi);
        const auto f = solve_feasibility(caps, e, mid, best, opt);
        out.iterations += f.iterations;
        if (f.feasible)
        {
            best = f.v;
            hi = std::min(mid + opt.tolerance, achieved(best));
            hi = std::max(hi, lo);
        }
        else
        {
            lo = mid;
        }
    }
    out.v = best;
    out.bound = hi;
    return out;
}

} // namespace

OptimizationResult optimize(const FieldMatrix &matrix, double u_ref, const OptimizerOptions &options)
{
    matrix.validate();
    if (!(u_ref > 0.0) || !std::isfinite(u_ref))
        throw InputError("optimize: reference intensity must be positive");
    if (!(options.sll_ceiling > 0.0) || !(options.floor_fraction > 0.0))
        throw InputError("optimize: ceiling and floor fraction must be positive");

    const Eigen::Index n = static_cast<Eigen::Index>(matrix.elements);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const double floor_u = options.floor_fraction * u_ref;
    const double unit_steer = matrix.intensity(matrix.steer_row, ones);
    if (unit_steer < floor_u * (1.0 - 1e-9))
        throw InputError("optimize: unit weights miss the mainlobe floor (U = " + csv::format(unit_steer) +
                         " < " + csv::format(floor_u) + "); use a lower reference intensity");
    const Eigen::VectorXd &e = matrix.steer_response;
    if (e.maxCoeff() <= 0.0)
        throw InfeasibleError("optimize: no element contributes to the steering direction");

    // Work in units where the floor amplitude is 1: w = c v.
    const double c = std::sqrt(floor_u);
    Eigen::VectorXd start = ones / e.dot(ones);

    OptimizationResult result;
    std::vector<std::size_t> capped_rows = matrix.sidelobe;
    for (int round = 0;; ++round)
    {
        const CapSystem caps(matrix, capped_rows);
        std::optional<Feasibility> failure;
        const auto b = bisect(caps, e, start, options, [&](const Feasibility &f) { failure = f; });
        result.iterations += b.iterations;
        if (failure)
        {
            WeightVector w{std::vector<double>(failure->v.data(), failure->v.data() + n)};
            for (auto &x : w.values)
                x *= c;
            const auto rep = verify(matrix, w, u_ref, options.sll_ceiling, options, result.capped_mainlobe_rows);
            throw InfeasibleError("optimize: infeasible at SLL ceiling " + csv::format(options.sll_ceiling) +
                                  "; most violated: " + rep.most_violated());
        }
        result.bisection_steps += b.steps;
        result.sll_bound = b.bound;
        result.weights.values.assign(b.v.data(), b.v.data() + n);
        for (auto &x : result.weights.values)
            x *= c;
        result.report = verify(matrix, result.weights, u_ref, result.sll_bound, options, result.capped_mainlobe_rows);
        result.monotone_rounds = round;
        if (result.report.monotone_margin >= -options.tolerance)
            break;
        if (round >= options.max_monotone_rounds)
            throw InfeasibleError("optimize: mainlobe monotonicity still violated after " + std::to_string(round) +
                                  " rounds; most violated: " + result.report.most_violated());

        // Cap every mainlobe row that rises above its parent and re-solve.
        const auto u = matrix.intensities(result.weights.as_vector());
        const double tol = options.tolerance * result.report.steer_intensity;
        std::set<std::size_t> capped(result.capped_mainlobe_rows.begin(), result.capped_mainlobe_rows.end());
        std::optional<std::size_t> root;
        for (std::size_t r : matrix.mainlobe)
            if (r < matrix.grid_rows && !capped.contains(r) && (!root || u[r] > u[*root]))
                root = r;
        if (!root)
            break;
        for (const auto &[row, parent] : matrix.descent(*root))
            if (!capped.contains(row) && !capped.contains(parent) && u[row] > u[parent] + tol)
            {
                capped.insert(row);
                result.capped_mainlobe_rows.push_back(row);
                capped_rows.push_back(row);
            }
        start = b.v;
    }
    result.achieved_sll = result.report.sll_ratio;
    return result;
}

Excitation apply_table_weights(const WeightVector &w, std::span<const ElementPlacement> elements,
                               const SteeringVector &steering)
{
    w.validate();
    if (w.size() != elements.size())
        throw InputError("weights: " + std::to_string(w.size()) + " values for " + std::to_string(elements.size()) +
                         " elements");
    Excitation ex{w.values, steering, std::nullopt};
    ex.validate(elements.size());
    return ex;
}

namespace
{

WeightVector weights_from_table(const csv::Table &t)
{
    WeightVector w;
    w.values.assign(t.rows.size(), -1.0);
    for (std::size_t r = 0; r < t.rows.size(); ++r)
    {
        const double idx = t.rows[r][0];
        if (idx < 0 || idx != std::floor(idx) || idx >= static_cast<double>(t.rows.size()))
            throw InputError("weights: line " + std::to_string(t.line_numbers[r]) + ": index out of range");
        auto &slot = w.values[static_cast<std::size_t>(idx)];
        if (slot >= 0.0)
            throw InputError("weights: line " + std::to_string(t.line_numbers[r]) + ": duplicate index");
        slot = t.rows[r][1];
    }
    w.validate();
    return w;
}

} // namespace

WeightVector read_weights_csv(std::istream &in) { return weights_from_table(csv::read(in, {"index", "weight"})); }

WeightVector read_weights_csv(const std::filesystem::path &path)
{
    return weights_from_table(csv::read(path, {"index", "weight"}));
}

void write_weights_csv(std::ostream &out, const WeightVector &w)
{
    csv::write_header(out, {"index", "weight"});
    for (std::size_t i = 0; i < w.size(); ++i)
        csv::write_row(out, {static_cast<double>(i), w.values[i]});
}

} // namespace conformal
