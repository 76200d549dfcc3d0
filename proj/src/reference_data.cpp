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

#include "conformal/reference_data.hpp"

namespace conformal::reference
{

PolynomialSurface airframe_surface()
{
    std::array<double, kNumCoefficients> c{};
    auto set = [&](int j, int k, double v) { c[PolynomialSurface::index(j, k)] = v; };
    set(0, 0, -1.55797797802342);
    set(0, 1, 2.91329870656138e-05);
    set(0, 2, -2.82550052149489);
    set(0, 3, -0.000137746419535819);
    set(0, 4, 2704.54313735367);
    set(0, 5, 0.00341547370121415);
    set(1, 0, 48.8878266621642);
    set(1, 1, -0.000759694335898899);
    set(1, 2, -176.329237389226);
    set(1, 3, 0.000807535950634196);
    set(1, 4, -32267.8360780080);
    set(2, 0, -619.894754098413);
    set(2, 1, 0.00727428458918239);
    set(2, 2, 4228.10444461165);
    set(2, 3, 0.00255991407797952);
    set(3, 0, 3816.19583103342);
    set(3, 1, -0.0303751734433911);
    set(3, 2, -14489.3530756313);
    set(4, 0, -11480.5566776082);
    set(4, 1, 0.0466945380798176);
    set(5, 0, 13628.3459462032);

    SurfaceDomain d;
    d.x = {mm(96.0), mm(221.0)};
    d.y = {mm(-37.6), mm(37.6)};
    d.grid_step = mm(0.5);
    return PolynomialSurface(c, d);
}

ArraySpec nonuniform_spec()
{
    ArraySpec s;
    s.kind = LayoutKind::NonUniformConformal;
    s.elements_per_row = 7;
    s.rows = 4;
    s.dx1 = mm(20.7);
    s.q = 0.98;
    s.x1_inner = mm(107.0);
    s.x1_outer = mm(96.1);
    s.x_end_outer = mm(221.0);
    s.dy1 = mm(27.0);
    s.dy2 = mm(24.1);
    return s;
}

ArraySpec uniform_spec()
{
    ArraySpec s;
    s.kind = LayoutKind::UniformConformal;
    s.elements_per_row = 7;
    s.rows = 4;
    s.dx = mm(20.8);
    s.dy = mm(25.0);
    return s;
}

ArraySpec planar_spec(double z)
{
    ArraySpec s = uniform_spec();
    s.kind = LayoutKind::Planar;
    s.planar_z = z;
    return s;
}

const std::array<double, 28> &listed_weights()
{
    static const std::array<double, 28> w{0.60004, 0.50536, 0.40776, 0.60416, 0.61405, 0.65088, 0.55968,
                                          0.65737, 0.48702, 0.60047, 0.65614, 0.35597, 0.37528, 0.54554,
                                          0.55247, 0.473,   0.45924, 0.56513, 0.56513, 0.56896, 0.42225,
                                          0.325751, 0.5038, 0.50674, 0.30444, 0.30912, 0.44802, 0.40781};
    return w;
}

int listed_weight_index(int k)
{
    if (k < 1 || k > 28)
        throw InputError("listed weight number out of range: " + std::to_string(k));
    const int col = (k - 1) / 4;
    const int row = (k - 1) % 4;
    return row * 7 + col;
}

WeightVector optimized_weights()
{
    WeightVector w;
    w.values.assign(28, 0.0);
    const auto &pub = listed_weights();
    for (int k = 1; k <= 28; ++k)
        w.values[static_cast<std::size_t>(listed_weight_index(k))] = pub[static_cast<std::size_t>(k - 1)];
    return w;
}

} // namespace conformal::reference
