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

#include "conformal/farfield.hpp"
#include "conformal/metrics.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conformal
{

// Non-negative real amplitude per element, in layout order.
struct WeightVector
{
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    void validate() const;
    Eigen::VectorXd as_vector() const { return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size()); }
};

// Unit-amplitude steered element fields f_i exp(-j k r_i.r_s) exp(-j k r_i.r_hat)
// sampled over observation directions. Row r occupies `components` consecutive
// rows of `data`; columns are elements. Rows [0, grid_rows) follow the sphere
// grid node order, the steering direction itself is appended as `steer_row`.
struct FieldMatrix
{
    std::size_t elements = 0;
    int components = 3;
    std::vector<Direction> directions;
    Eigen::MatrixXcd data;

    std::size_t grid_rows = 0;
    double step_deg = 0.0;
    std::size_t steer_row = 0;
    std::vector<std::size_t> mainlobe;
    std::vector<std::size_t> sidelobe;

    // Re(p^H F_i(steer)) with p the unit-weight field direction at the steer.
    // Re(sum_i w_i e_i) >= c guarantees U(steer) >= c^2.
    Eigen::VectorXd steer_response;

    // Sphere grid shape behind rows [0, grid_rows); zero for matrices built from explicit rows.
    std::size_t grid_n_theta = 0;
    std::size_t grid_n_phi = 0;

    std::size_t rows() const { return directions.size(); }
    CVec3 field(std::size_t row, const Eigen::VectorXd &w) const;
    double intensity(std::size_t row, const Eigen::VectorXd &w) const;
    std::vector<double> intensities(const Eigen::VectorXd &w) const;
    void validate() const;

    // Single-component matrix from explicit rows (rows x elements).
    static FieldMatrix from_scalar_rows(const Eigen::MatrixXcd &rows, std::size_t steer_row,
                                        std::vector<std::size_t> mainlobe, std::vector<std::size_t> sidelobe);

    // Recomputes steer_response from the steer row.
    void update_steer_response();

    // (row, parent) pairs over the mainlobe grid rows; the parent is the 8-connected
    // neighbor one step closer to `root`. Monotone decrease means U(row) <= U(parent).
    std::vector<std::pair<std::size_t, std::size_t>> descent(std::size_t root) const;
};

// Sphere grid at step_deg plus the exact steering direction. Regions come from
// analyze_lobes on the unit-weight pattern: mask -> mainlobe, rest -> sidelobe.
FieldMatrix build_field_matrix(const ArrayModel &array, const RadioConfig &radio, const SteeringVector &steering,
                               double step_deg = 2.0, const LobeOptions &lobes = {});

// Largest unit-weight intensity over the matrix rows.
double unit_weight_peak(const FieldMatrix &matrix);

struct OptimizerOptions
{
    double sll_ceiling = 0.1;      // linear intensity ratio
    double floor_fraction = 0.707; // mainlobe floor relative to the reference peak
    double tolerance = 1e-6;       // constraint residual, in units of the floor intensity
    int max_iterations = 100000;   // per feasibility solve
    double bisection_tolerance = 1e-5;
    int max_monotone_rounds = 4;
};

struct ConstraintReport
{
    double steer_intensity = 0.0;
    double floor_intensity = 0.0;
    double sll_ratio = 0.0;  // max sidelobe U over U(steer)
    double sll_bound = 0.1;

    double sidelobe_margin = 0.0; // bound - sll_ratio
    double monotone_margin = 0.0; // min (U(parent) - U(row)) / U(steer)
    double floor_margin = 0.0;    // U(steer) / floor - 1
    double ceiling_margin = 0.0;  // ceiling - sll_ratio

    std::optional<std::size_t> worst_sidelobe_row;
    std::optional<std::size_t> worst_monotone_row;

    bool satisfied(double tol = 1e-6) const;
    std::string most_violated() const;
    void write(std::ostream &out) const;
};

// Evaluates the sidelobe cap, mainlobe monotonicity, mainlobe floor and SLL ceiling.
// `extra_capped` rows are checked as sidelobe rows too.
ConstraintReport verify(const FieldMatrix &matrix, const WeightVector &w, double u_ref, double sll_bound = 0.1,
                        const OptimizerOptions &options = {}, const std::vector<std::size_t> &extra_capped = {});

struct OptimizationResult
{
    WeightVector weights;
    double achieved_sll = 0.0; // linear ratio
    double sll_bound = 0.0;    // tightest bound proven feasible
    int bisection_steps = 0;
    int monotone_rounds = 0;
    std::size_t iterations = 0;
    std::vector<std::size_t> capped_mainlobe_rows; // mainlobe rows moved under the cap
    ConstraintReport report;
};

// Minimizes the SLL bound s in (0, ceiling] by bisection. Each step solves the
// convex feasibility problem
//   w >= 0,  Re(sum w_i e_i) >= sqrt(floor_fraction * u_ref),
//   |sum w_i F_i(row)|^2 <= s * floor_fraction * u_ref  for every sidelobe row
// by projected gradient descent on the squared cap violations. Mainlobe rows
// that break monotone decrease afterwards are capped and the problem re-solved.
OptimizationResult optimize(const FieldMatrix &matrix, double u_ref, const OptimizerOptions &options = {});

// Amplitudes from w, steering phases unchanged.
Excitation apply_table_weights(const WeightVector &w, std::span<const ElementPlacement> elements,
                               const SteeringVector &steering);

// Weight CSV "index,weight", 0-based element indices.
WeightVector read_weights_csv(const std::filesystem::path &path);
WeightVector read_weights_csv(std::istream &in);
void write_weights_csv(std::ostream &out, const WeightVector &w);

} // namespace conformal
