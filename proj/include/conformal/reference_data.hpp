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

// Reference instances: the fitted airframe surface, the optimized
// non-uniform geometry, the equal-spacing benchmarks and the optimized weights.

#include "conformal/geometry.hpp"
#include "conformal/optimizer.hpp"
#include "conformal/surface.hpp"

namespace conformal::reference
{

PolynomialSurface airframe_surface();

ArraySpec nonuniform_spec();
ArraySpec uniform_spec();        // 7x4, dx 20.8 mm, dy 25 mm, on the surface
ArraySpec planar_spec(double z); // same lattice in the plane z

// 28 weights in element (layout) order. The listed weights number elements
// column by column (four rows per column); this reorders it row-major.
WeightVector optimized_weights();

// Listed numbering, k = 1..28.
const std::array<double, 28> &listed_weights();

// Element index for listed number k (1-based).
int listed_weight_index(int k);

} // namespace conformal::reference
