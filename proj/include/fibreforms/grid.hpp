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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace fibreforms {

/// Axis-aligned coordinate box.
struct Box {
    std::vector<double> lo, hi;

    int dim() const noexcept { return static_cast<int>(lo.size()); }
    double volume() const;
    bool contains(std::span<const double> x, double slack = 0.0) const;
    static Box unit(int dim);
};

/// Regular grid of nodes over a box, row-major with the last axis fastest.
struct Grid {
    Box box;
    std::vector<int> shape;

    int dim() const noexcept { return box.dim(); }
    double spacing(int axis) const;
    std::size_t size() const;
    std::size_t stride(int axis) const;
    /// Node coordinates of flat index `flat`.
    void node(std::size_t flat, std::span<double> x) const;
    /// Unflattened multi-index of `flat`.
    void unflatten(std::size_t flat, std::span<int> idx) const;
    bool on_boundary(std::size_t flat) const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.box.lo == b.box.lo && a.box.hi == b.box.hi && a.shape == b.shape;
    }
};

/// A banded 1-D linear operator: row r reads `width` consecutive inputs
/// starting at start[r]. Rows in [uniform_begin, uniform_end) share one
/// coefficient set and satisfy start[r] = r - uniform_offset, which lets the
/// contiguous-axis case run as a single vector kernel call per line.
struct AxisOperator {
    int in_len = 0;
    int out_len = 0;
    int width = 0;
    std::vector<int> start;
    std::vector<std::array<double, 5>> coef;
    int uniform_begin = 0, uniform_end = 0, uniform_offset = 0;
};

/// Fourth-order first derivative: central in the interior, one-sided
/// fourth-order in the two rows nearest each end. Needs len >= 5.
AxisOperator fd_derivative_operator(int len, double h);

/// Cubic Lagrange interpolation from `len` nodes lo + i*h to `targets`.
/// The 4-node stencil is centred on the target cell and clamped at the ends.
AxisOperator cubic_interp_operator(int len, double lo, double h, std::span<const double> targets);

/// Cubic Lagrange weights (4 nodes) for a point; returns the stencil start.
int cubic_weights(int len, double lo, double h, double x, std::array<double, 5>& w);
/// Weights of the derivative of the same cubic interpolant.
int cubic_derivative_weights(int len, double lo, double h, double x, std::array<double, 5>& w);
/// Derivative of the piecewise cubic interpolant at `targets`.
AxisOperator cubic_derivative_operator(int len, double lo, double h, std::span<const double> targets);

/// Applies `op` along `axis` of a row-major tensor with the given shape.
/// The output shape equals `shape` with shape[axis] replaced by op.out_len.
std::vector<double> apply_axis(const AxisOperator& op, std::span<const double> in, std::span<const int> shape, int axis);

/// Adjoint of apply_axis: accumulates op^T applied to `out_adj` into `in_adj`
/// (in_adj has the input shape).
void apply_axis_transpose(const AxisOperator& op, std::span<const double> out_adj, std::span<const int> in_shape,
                          int axis, std::span<double> in_adj);

}  // namespace fibreforms
