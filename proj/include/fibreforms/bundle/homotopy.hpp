// Copyright 2026 The fibreforms Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "fibreforms/bundle/chart.hpp"
#include "fibreforms/form.hpp"

namespace fibreforms {

/// Radial homotopy operator about `center`:
///   (K h)(x) = sum_I int_0^1 t^{l-1} h_I(c + t(x-c)) dt * i_{x-c} dx^I.
/// Exact for polynomial coefficients (the center is converted to a rational
/// exactly); other kinds use 16-node Gauss-Legendre in t and return callable
/// coefficients. Degree-0 input gives the zero form of degree 0.
Form homotopy_operator(const Form& h, std::span<const double> center);

/// K h after checking d h = 0 (exactly for polynomials, to `tolerance`
/// otherwise). Throws DomainError when h is not closed or has degree 0.
Form poincare_antiderivative(const Form& h, const StarDomain& dom, double tolerance = 1e-8);

}  // namespace fibreforms
