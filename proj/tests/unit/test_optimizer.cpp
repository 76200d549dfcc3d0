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

#include "helpers.hpp"

#include "conformal/optimizer.hpp"
#include "conformal/reference_data.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace conformal;

namespace
{

FieldMatrix toy(const Eigen::MatrixXcd &rows)
{
    std::vector<std::size_t> side;
    for (Eigen::Index r = 1; r < rows.rows(); ++r)
        side.push_back(static_cast<std::size_t>(r));
    return FieldMatrix::from_scalar_rows(rows, 0, {0}, side);
}

// Exhaustive search of the smallest worst-sidelobe ratio on a weight lattice.
double brute_force_sll(const Eigen::MatrixXcd &rows, double floor_u, double ceiling, double step)
{
    double best = std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(std::lround(1.0 / step));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
        {
            const Complex a = static_cast<double>(i) * step, b = static_cast<double>(j) * step;
            const double steer = std::norm(rows(0, 0) * a + rows(0, 1) * b);
            if (steer < floor_u)
                continue;
            double worst = 0.0;
            for (Eigen::Index r = 1; r < rows.rows(); ++r)
                worst = std::max(worst, std::norm(rows(r, 0) * a + rows(r, 1) * b) / steer);
            if (worst <= ceiling)
                best = std::min(best, worst);
        }
    return best;
}

struct Nonuniform
{
    ArrayModel array;
    SteeringVector steer = steering_vector(0.0, deg2rad(-27.0));
    FieldMatrix matrix;
    double u_ref = 0.0;

    Nonuniform()
    {
        const auto lay = layout(reference::nonuniform_spec(), reference::airframe_surface());
        array = ArrayModel::with_pattern(lay.elements, ElementPattern::cos_squared());
        matrix = build_field_matrix(array, RadioConfig{}, steer, 2.0);
        u_ref = unit_weight_peak(matrix);
    }
};

const Nonuniform &nonuniform()
{
    static const Nonuniform t;
    return t;
}

} // namespace

TEST_SUITE("optimizer")
{

TEST_CASE("two-element toy matches a brute-force search")
{
    Eigen::MatrixXcd rows(2, 2);
    rows << 1.0, 1.0, 1.0, 0.2;
    const auto m = toy(rows);
    OptimizerOptions o;
    o.sll_ceiling = 0.1;
    const auto r = optimize(m, 1.0, o);
    const double oracle = brute_force_sll(rows, 0.707, 0.1, 1e-3);
    CHECK(oracle == doctest::Approx(0.04).epsilon(1e-3));
    CHECK(r.achieved_sll <= oracle + 1e-3);
    CHECK(r.achieved_sll >= oracle - 1e-3);
    CHECK(r.report.satisfied());
    CHECK(r.weights.values[0] < 1e-3);
    CHECK(r.report.steer_intensity >= 0.707 * (1 - 1e-6));
}

TEST_CASE("brute force toy with a mixed-phase sidelobe")
{
    Eigen::MatrixXcd rows(3, 2);
    rows << 1.0, 1.0, Complex(0.6, 0.3), Complex(-0.2, 0.5), Complex(0.1, -0.4), 0.7;
    const auto m = toy(rows);
    OptimizerOptions o;
    o.sll_ceiling = 0.5;
    const auto r = optimize(m, 1.0, o);
    const double oracle = brute_force_sll(rows, 0.707, 0.5, 1e-3);
    REQUIRE(std::isfinite(oracle));
    CHECK(std::abs(r.achieved_sll - oracle) < 2e-3);
    CHECK(r.report.satisfied());
}

TEST_CASE("an element can be switched off entirely")
{
    Eigen::MatrixXcd rows(2, 3);
    rows << 1.0, 1.0, 1.0, 0.5, 1.0, 0.5;
    OptimizerOptions o;
    o.sll_ceiling = 0.5;
    const auto r = optimize(toy(rows), 1.0, o);
    CHECK(r.weights.values[1] < 1e-3);
    CHECK(r.achieved_sll == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(r.report.satisfied());
}

TEST_CASE("single element sits exactly on the floor")
{
    Eigen::MatrixXcd rows(2, 1);
    rows << 1.0, 0.5;
    OptimizerOptions o;
    o.sll_ceiling = 0.3;
    const auto r = optimize(toy(rows), 1.0, o);
    CHECK(r.weights.values[0] == doctest::Approx(std::sqrt(0.707)).epsilon(1e-6));
    CHECK(r.achieved_sll == doctest::Approx(0.25));
    CHECK(std::abs(r.report.floor_margin) < 1e-6);

    o.sll_ceiling = 0.1;
    CHECK_THROWS_AS(optimize(toy(rows), 1.0, o), InfeasibleError);
}

TEST_CASE("input guards")
{
    Eigen::MatrixXcd rows(2, 2);
    rows << 1.0, 1.0, 1.0, 0.2;
    const auto m = toy(rows);
    CHECK_THROWS_AS(optimize(m, 0.0), InputError);
    CHECK_THROWS_AS(optimize(m, 100.0), InputError); // unit weights give U = 4 < 0.707 * 100
    Eigen::MatrixXcd dead(2, 2);
    dead << 0.0, 0.0, 1.0, 0.2;
    CHECK_THROWS(optimize(toy(dead), 1e-9));
    CHECK_THROWS_AS(FieldMatrix::from_scalar_rows(rows, 0, {0}, {0}), InputError);
    CHECK_THROWS_AS(verify(m, WeightVector{{1.0}}, 1.0), InputError);
}

TEST_CASE("field matrix reproduces the sampled sphere")
{
    const auto &t = nonuniform();
    const auto &m = t.matrix;
    CHECK(m.elements == 28);
    const auto [nt, np] = SphereGrid::full_dimensions(2.0);
    CHECK(m.grid_rows == nt * np);
    CHECK(m.rows() == m.grid_rows + 1);
    CHECK(m.steer_row == m.grid_rows);
    CHECK(m.data.rows() == 3 * static_cast<Eigen::Index>(m.rows()));
    CHECK(m.data.cols() == 28);

    const auto g = sample_sphere(t.array, Excitation::uniform(28, t.steer), RadioConfig{}, 2.0);
    const auto u = m.intensities(Eigen::VectorXd::Ones(28));
    double worst = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n)
        worst = std::max(worst, std::abs(u[n] - g.values()[n]) / g.values()[n]);
    CHECK(worst < 1e-9);

    const CVec3 direct = field(t.array, Excitation::uniform(28, t.steer), t.steer.direction(), RadioConfig{});
    CHECK(m.intensity(m.steer_row, Eigen::VectorXd::Ones(28)) == doctest::Approx(intensity(direct)).epsilon(1e-12));

    // Regions partition the grid; the steer row is mainlobe.
    CHECK(m.mainlobe.size() + m.sidelobe.size() == m.rows());
    CHECK(std::find(m.mainlobe.begin(), m.mainlobe.end(), m.steer_row) != m.mainlobe.end());
    CHECK(t.u_ref == doctest::Approx(*std::max_element(g.values().begin(), g.values().end())));
}

TEST_CASE("descent pairs point toward the root")
{
    const auto &m = nonuniform().matrix;
    const auto root = m.mainlobe.front();
    const auto pairs = m.descent(root);
    CHECK_FALSE(pairs.empty());
    const Vec3 r0 = m.directions[root].unit();
    for (const auto &[row, parent] : pairs)
    {
        const double a = std::acos(std::clamp(m.directions[row].unit().dot(r0), -1.0, 1.0));
        const double b = std::acos(std::clamp(m.directions[parent].unit().dot(r0), -1.0, 1.0));
        CHECK(b < a);
        CHECK(row < m.grid_rows);
        CHECK(parent < m.grid_rows);
    }
}

TEST_CASE("verify flags broken constraints")
{
    const auto &t = nonuniform();
    const WeightVector unit{std::vector<double>(28, 1.0)};
    const auto rep = verify(t.matrix, unit, t.u_ref, 0.1);
    CHECK(rep.sll_ratio > 0.1);
    CHECK(rep.ceiling_margin < 0.0);
    CHECK(rep.sidelobe_margin < 0.0);
    CHECK_FALSE(rep.satisfied());
    CHECK(rep.floor_margin > 0.0);

    const WeightVector small{std::vector<double>(28, 1e-3)};
    const auto low = verify(t.matrix, small, t.u_ref, 0.1);
    CHECK(low.floor_margin < 0.0);
    CHECK(low.most_violated().find("floor") != std::string::npos);

    std::ostringstream s;
    rep.write(s);
    CHECK(s.str().find("sll_dB,") != std::string::npos);
}

TEST_CASE("optimized weights satisfy every constraint")
{
    const auto &t = nonuniform();
    const auto r = optimize(t.matrix, t.u_ref);
    CHECK(r.weights.size() == 28);
    CHECK(r.report.sidelobe_margin >= -1e-6);
    CHECK(r.report.floor_margin >= -1e-6);
    CHECK(r.report.ceiling_margin >= -1e-6);
    CHECK(r.report.monotone_margin >= -1e-6);
    const auto unit = verify(t.matrix, WeightVector{std::vector<double>(28, 1.0)}, t.u_ref, 0.1);
    CHECK(r.achieved_sll <= unit.sll_ratio);
    CHECK(r.achieved_sll <= r.sll_bound * (1 + 1e-6));
    for (double w : r.weights.values)
        CHECK(w >= 0.0);

    // Scaling the weights leaves the pattern shape unchanged.
    WeightVector scaled = r.weights;
    for (auto &w : scaled.values)
        w *= 5.0;
    const auto s = verify(t.matrix, scaled, t.u_ref, r.sll_bound);
    CHECK(s.sll_ratio == doctest::Approx(r.report.sll_ratio).epsilon(1e-12));
}

TEST_CASE("tiny ceiling is reported infeasible")
{
    const auto &t = nonuniform();
    OptimizerOptions o;
    o.sll_ceiling = 1e-6;
    try
    {
        optimize(t.matrix, t.u_ref, o);
        FAIL("expected InfeasibleError");
    }
    catch (const InfeasibleError &e)
    {
        CHECK(std::string(e.what()).find("most violated") != std::string::npos);
    }
}

TEST_CASE("weights CSV")
{
    const WeightVector w{{0.5, 0.0, 1.25, 3.0}};
    std::ostringstream out;
    write_weights_csv(out, w);
    CHECK(out.str().rfind("index,weight\n", 0) == 0);
    std::istringstream in(out.str());
    CHECK(read_weights_csv(in).values == w.values);

    std::istringstream shuffled("index,weight\n2,3\n0,1\n1,2\n");
    CHECK(read_weights_csv(shuffled).values == std::vector<double>{1, 2, 3});

    auto message = [](const std::string &text) {
        std::istringstream s(text);
        try
        {
            read_weights_csv(s);
        }
        catch (const InputError &e)
        {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("index,weight\n0,1\n0,2\n").find("line 3") != std::string::npos);
    CHECK(message("index,weight\n0,1\n5,2\n").find("out of range") != std::string::npos);
    CHECK(message("index,weight\n0,-1\n").find("non-negative") != std::string::npos);
    CHECK(message("index,weight\n0,abc\n").find("line 2") != std::string::npos);
    CHECK_FALSE(message("weight\n1\n").empty());
}

TEST_CASE("table weights drive the excitation")
{
    const auto &t = nonuniform();
    CHECK_THROWS_AS(apply_table_weights(WeightVector{{1.0, 2.0}}, t.array.elements, t.steer), InputError);

    const auto ones = apply_table_weights(WeightVector{std::vector<double>(28, 1.0)}, t.array.elements, t.steer);
    const auto a = sample_sphere(t.array, ones, RadioConfig{}, 3.0);
    const auto b = sample_sphere(t.array, Excitation::uniform(28, t.steer), RadioConfig{}, 3.0);
    CHECK(a.values() == b.values());
}

TEST_CASE("listed weight numbering is column-major")
{
    CHECK(reference::listed_weight_index(1) == 0);
    CHECK(reference::listed_weight_index(2) == 7);
    CHECK(reference::listed_weight_index(4) == 21);
    CHECK(reference::listed_weight_index(5) == 1);
    CHECK(reference::listed_weight_index(28) == 27);
    CHECK_THROWS_AS(reference::listed_weight_index(0), InputError);

    std::vector<int> seen;
    for (int k = 1; k <= 28; ++k)
        seen.push_back(reference::listed_weight_index(k));
    std::sort(seen.begin(), seen.end());
    for (int i = 0; i < 28; ++i)
        CHECK(seen[i] == i);

    // Numbers 18 and 19 share a column on the two inner rows.
    const int i18 = reference::listed_weight_index(18), i19 = reference::listed_weight_index(19);
    CHECK(i18 / 7 == 1);
    CHECK(i19 / 7 == 2);
    CHECK(i18 % 7 == i19 % 7);
    const auto w = reference::optimized_weights();
    CHECK(w.values[i18] == reference::listed_weights()[17]);
    CHECK(w.values[i19] == reference::listed_weights()[18]);
}

}
