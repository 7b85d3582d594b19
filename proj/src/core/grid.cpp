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

#include "fibreforms/grid.hpp"

#include <algorithm>
#include <cmath>

#include "fibreforms/error.hpp"
#include "fibreforms/simd/kernels.hpp"

namespace fibreforms {

double Box::volume() const {
    double v = 1.0;
    for (std::size_t a = 0; a < lo.size(); ++a) v *= hi[a] - lo[a];
    return v;
}

bool Box::contains(std::span<const double> x, double slack) const {
    for (std::size_t a = 0; a < lo.size(); ++a)
        if (x[a] < lo[a] - slack || x[a] > hi[a] + slack) return false;
    return true;
}

Box Box::unit(int dim) {
    return Box{std::vector<double>(static_cast<std::size_t>(dim), 0.0), std::vector<double>(static_cast<std::size_t>(dim), 1.0)};
}

double Grid::spacing(int axis) const {
    const auto a = static_cast<std::size_t>(axis);
    return (box.hi[a] - box.lo[a]) / (shape[a] - 1);
}

std::size_t Grid::size() const {
    std::size_t n = 1;
    for (int s : shape) n *= static_cast<std::size_t>(s);
    return n;
}

std::size_t Grid::stride(int axis) const {
    std::size_t s = 1;
    for (std::size_t a = static_cast<std::size_t>(axis) + 1; a < shape.size(); ++a) s *= static_cast<std::size_t>(shape[a]);
    return s;
}

void Grid::unflatten(std::size_t flat, std::span<int> idx) const {
    for (std::size_t a = shape.size(); a-- > 0;) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(shape[a]));
        flat /= static_cast<std::size_t>(shape[a]);
    }
}

void Grid::node(std::size_t flat, std::span<double> x) const {
    for (std::size_t a = shape.size(); a-- > 0;) {
        const auto i = static_cast<int>(flat % static_cast<std::size_t>(shape[a]));
        flat /= static_cast<std::size_t>(shape[a]);
        // exact endpoints so boundary nodes evaluate at the box faces
        x[a] = (i == shape[a] - 1) ? box.hi[a] : box.lo[a] + i * spacing(static_cast<int>(a));
    }
}

bool Grid::on_boundary(std::size_t flat) const {
    for (std::size_t a = shape.size(); a-- > 0;) {
        const auto i = static_cast<int>(flat % static_cast<std::size_t>(shape[a]));
        flat /= static_cast<std::size_t>(shape[a]);
        if (i == 0 || i == shape[a] - 1) return true;
    }
    return false;
}

AxisOperator fd_derivative_operator(int len, double h) {
    if (len < 5) throw DimensionError("fourth-order stencil needs at least 5 nodes per axis");
    const double s = 1.0 / (12.0 * h);
    AxisOperator op;
    op.in_len = op.out_len = len;
    op.width = 5;
    op.start.resize(static_cast<std::size_t>(len));
    op.coef.resize(static_cast<std::size_t>(len));
    auto set = [&](int r, int start, std::array<double, 5> c) {
        for (auto& v : c) v *= s;
        op.start[static_cast<std::size_t>(r)] = start;
        op.coef[static_cast<std::size_t>(r)] = c;
    };
    set(0, 0, {-25, 48, -36, 16, -3});
    set(1, 0, {-3, -10, 18, -6, 1});
    for (int r = 2; r < len - 2; ++r) set(r, r - 2, {1, -8, 0, 8, -1});
    set(len - 2, len - 5, {-1, 6, -18, 10, 3});
    set(len - 1, len - 5, {3, -16, 36, -48, 25});
    op.uniform_begin = 2;
    op.uniform_end = len - 2;
    op.uniform_offset = 2;
    return op;
}

int cubic_weights(int len, double lo, double h, double x, std::array<double, 5>& w) {
    if (len < 4) throw DimensionError("cubic interpolation needs at least 4 nodes per axis");
    const double t = (x - lo) / h;
    int cell = static_cast<int>(std::floor(t));
    cell = std::clamp(cell, 0, len - 2);
    const int start = std::clamp(cell - 1, 0, len - 4);
    const double u = t - start;
    for (int k = 0; k < 4; ++k) {
        double v = 1.0;
        for (int m = 0; m < 4; ++m)
            if (m != k) v *= (u - m) / static_cast<double>(k - m);
        w[static_cast<std::size_t>(k)] = v;
    }
    w[4] = 0.0;
    return start;
}

int cubic_derivative_weights(int len, double lo, double h, double x, std::array<double, 5>& w) {
    const int start = cubic_weights(len, lo, h, x, w);
    const double u = (x - lo) / h - start;
    for (int k = 0; k < 4; ++k) {
        double acc = 0.0;
        for (int m = 0; m < 4; ++m) {
            if (m == k) continue;
            double v = 1.0 / static_cast<double>(k - m);
            for (int r = 0; r < 4; ++r)
                if (r != k && r != m) v *= (u - r) / static_cast<double>(k - r);
            acc += v;
        }
        w[static_cast<std::size_t>(k)] = acc / h;
    }
    w[4] = 0.0;
    return start;
}

AxisOperator cubic_derivative_operator(int len, double lo, double h, std::span<const double> targets) {
    AxisOperator op;
    op.in_len = len;
    op.out_len = static_cast<int>(targets.size());
    op.width = 4;
    op.start.resize(targets.size());
    op.coef.resize(targets.size());
    for (std::size_t r = 0; r < targets.size(); ++r) op.start[r] = cubic_derivative_weights(len, lo, h, targets[r], op.coef[r]);
    return op;
}

AxisOperator cubic_interp_operator(int len, double lo, double h, std::span<const double> targets) {
    AxisOperator op;
    op.in_len = len;
    op.out_len = static_cast<int>(targets.size());
    op.width = 4;
    op.start.resize(targets.size());
    op.coef.resize(targets.size());
    for (std::size_t r = 0; r < targets.size(); ++r) op.start[r] = cubic_weights(len, lo, h, targets[r], op.coef[r]);
    return op;
}

namespace {

std::size_t prod(std::span<const int> shape, std::size_t begin, std::size_t end) {
    std::size_t p = 1;
    for (std::size_t a = begin; a < end; ++a) p *= static_cast<std::size_t>(shape[a]);
    return p;
}

}  // namespace

std::vector<double> apply_axis(const AxisOperator& op, std::span<const double> in, std::span<const int> shape, int axis) {
    const auto ax = static_cast<std::size_t>(axis);
    if (shape[ax] != op.in_len) throw DimensionError("axis operator length mismatch");
    const std::size_t outer = prod(shape, 0, ax);
    const std::size_t inner = prod(shape, ax + 1, shape.size());
    const auto in_len = static_cast<std::size_t>(op.in_len);
    const auto out_len = static_cast<std::size_t>(op.out_len);
    const auto width = static_cast<std::size_t>(op.width);
    std::vector<double> out(outer * out_len * inner);
    const double* ptrs[simd::kMaxTerms];

    if (inner > 1) {
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t r = 0; r < out_len; ++r) {
                for (std::size_t k = 0; k < width; ++k)
                    ptrs[k] = in.data() + (o * in_len + static_cast<std::size_t>(op.start[r]) + k) * inner;
                simd::lincomb(std::span(out.data() + (o * out_len + r) * inner, inner), std::span(ptrs, width),
                              std::span(op.coef[r].data(), width));
            }
        }
        return out;
    }

    const auto ub = static_cast<std::size_t>(op.uniform_begin);
    const auto ue = static_cast<std::size_t>(op.uniform_end);
    for (std::size_t o = 0; o < outer; ++o) {
        const double* line = in.data() + o * in_len;
        double* dst = out.data() + o * out_len;
        if (ue > ub) {
            for (std::size_t k = 0; k < width; ++k) ptrs[k] = line + ub - static_cast<std::size_t>(op.uniform_offset) + k;
            simd::lincomb(std::span(dst + ub, ue - ub), std::span(ptrs, width), std::span(op.coef[ub].data(), width));
        }
        for (std::size_t r = 0; r < out_len; ++r) {
            if (r >= ub && r < ue) continue;
            const auto& c = op.coef[r];
            const double* src = line + op.start[r];
            double acc = c[0] * src[0];
            for (std::size_t k = 1; k < width; ++k) {
                const double p = c[k] * src[k];
                acc = acc + p;
            }
            dst[r] = acc;
        }
    }
    return out;
}

void apply_axis_transpose(const AxisOperator& op, std::span<const double> out_adj, std::span<const int> in_shape,
                          int axis, std::span<double> in_adj) {
    const auto ax = static_cast<std::size_t>(axis);
    if (in_shape[ax] != op.in_len) throw DimensionError("axis operator length mismatch");
    const std::size_t outer = prod(in_shape, 0, ax);
    const std::size_t inner = prod(in_shape, ax + 1, in_shape.size());
    const auto in_len = static_cast<std::size_t>(op.in_len);
    const auto out_len = static_cast<std::size_t>(op.out_len);
    const auto width = static_cast<std::size_t>(op.width);

    if (inner > 1) {
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t r = 0; r < out_len; ++r) {
                std::span<const double> src(out_adj.data() + (o * out_len + r) * inner, inner);
                for (std::size_t k = 0; k < width; ++k) {
                    double* dst = in_adj.data() + (o * in_len + static_cast<std::size_t>(op.start[r]) + k) * inner;
                    simd::axpy(op.coef[r][k], src, std::span(dst, inner));
                }
            }
        }
        return;
    }

    const auto ub = static_cast<std::size_t>(op.uniform_begin);
    const auto ue = static_cast<std::size_t>(op.uniform_end);
    for (std::size_t o = 0; o < outer; ++o) {
        const double* src = out_adj.data() + o * out_len;
        double* line = in_adj.data() + o * in_len;
        if (ue > ub) {
            for (std::size_t k = 0; k < width; ++k)
                simd::axpy(op.coef[ub][k], std::span(src + ub, ue - ub),
                           std::span(line + ub - static_cast<std::size_t>(op.uniform_offset) + k, ue - ub));
        }
        for (std::size_t r = 0; r < out_len; ++r) {
            if (r >= ub && r < ue) continue;
            for (std::size_t k = 0; k < width; ++k) {
                const double p = op.coef[r][k] * src[r];
                double& d = line[static_cast<std::size_t>(op.start[r]) + k];
                d = d + p;
            }
        }
    }
}

}  // namespace fibreforms
