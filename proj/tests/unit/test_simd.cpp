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

#include <doctest.h>

#include <bit>
#include <cstring>

#include <fibreforms/coefficient_field.hpp>
#include <fibreforms/grid.hpp>
#include <fibreforms/rng.hpp>
#include <fibreforms/simd/kernels.hpp>

using namespace fibreforms;

namespace {

bool same_bits(std::span<const double> a, std::span<const double> b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_vector(std::size_t n, CounterRng& rng) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal() * std::exp2(rng.uniform_int(-20, 20));
    return v;
}

struct IsaGuard {
    simd::Isa saved = simd::active_isa();
    ~IsaGuard() { simd::set_active_isa(saved); }
};

}  // namespace

TEST_CASE("vector kernels are bitwise identical to the scalar reference") {
    CounterRng rng(1, 1);
    for (std::size_t n = 0; n < 70; ++n) {
        const int terms = rng.uniform_int(1, simd::kMaxTerms);
        std::vector<std::vector<double>> ins;
        std::vector<const double*> ptrs;
        std::vector<double> coeffs;
        for (int t = 0; t < terms; ++t) {
            ins.push_back(random_vector(n, rng));
            coeffs.push_back(rng.normal());
        }
        for (auto& v : ins) ptrs.push_back(v.data());
        const std::vector<double> x = random_vector(n, rng), y0 = random_vector(n, rng);

        std::vector<double> ref(n), y_ref = y0;
        simd::scalar::lincomb(ref, ptrs, coeffs);
        simd::scalar::axpy(0.37, x, y_ref);
        const double d_ref = simd::scalar::dot(x, y0);

        if (simd::avx2::available()) {
            std::vector<double> out(n), y = y0;
            simd::avx2::lincomb(out, ptrs, coeffs);
            simd::avx2::axpy(0.37, x, y);
            CHECK(same_bits(out, ref));
            CHECK(same_bits(y, y_ref));
            CHECK(std::bit_cast<std::uint64_t>(simd::avx2::dot(x, y0)) == std::bit_cast<std::uint64_t>(d_ref));
        }
        if (simd::neon::available()) {
            std::vector<double> out(n), y = y0;
            simd::neon::lincomb(out, ptrs, coeffs);
            simd::neon::axpy(0.37, x, y);
            CHECK(same_bits(out, ref));
            CHECK(same_bits(y, y_ref));
            CHECK(std::bit_cast<std::uint64_t>(simd::neon::dot(x, y0)) == std::bit_cast<std::uint64_t>(d_ref));
        }
    }
}

TEST_CASE("grid operators give the same bits under every instruction set") {
    IsaGuard guard;
    CounterRng rng(2, 2);
    const std::vector<int> shape{7, 9, 11};
    std::vector<double> in = random_vector(7 * 9 * 11, rng);
    std::vector<double> targets{0.0, 0.13, 0.5, 0.77, 1.0};
    for (int axis = 0; axis < 3; ++axis) {
        const int len = shape[static_cast<std::size_t>(axis)];
        const AxisOperator d = fd_derivative_operator(len, 1.0 / (len - 1));
        const AxisOperator c = cubic_interp_operator(len, 0.0, 1.0 / (len - 1), targets);
        simd::set_active_isa(simd::Isa::kScalar);
        const auto d_ref = apply_axis(d, in, shape, axis);
        const auto c_ref = apply_axis(c, in, shape, axis);
        std::vector<double> t_ref(in.size(), 0.0);
        apply_axis_transpose(d, d_ref, shape, axis, t_ref);
        simd::set_active_isa(simd::detected_isa());
        CHECK(same_bits(apply_axis(d, in, shape, axis), d_ref));
        CHECK(same_bits(apply_axis(c, in, shape, axis), c_ref));
        std::vector<double> t(in.size(), 0.0);
        apply_axis_transpose(d, d_ref, shape, axis, t);
        CHECK(same_bits(t, t_ref));
    }
}

TEST_CASE("transpose application is the adjoint of application") {
    CounterRng rng(3, 3);
    const std::vector<int> shape{6, 8};
    for (int axis = 0; axis < 2; ++axis) {
        const int len = shape[static_cast<std::size_t>(axis)];
        const AxisOperator d = fd_derivative_operator(len, 0.1);
        const auto u = random_vector(48, rng), v = random_vector(48, rng);
        const auto du = apply_axis(d, u, shape, axis);
        std::vector<double> dtv(48, 0.0);
        apply_axis_transpose(d, v, shape, axis, dtv);
        double lhs = 0, rhs = 0;
        for (std::size_t i = 0; i < 48; ++i) lhs += du[i] * v[i], rhs += u[i] * dtv[i];
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("the fourth-order stencil differentiates quartics exactly") {
    const int m = 9;
    const Grid grid{Box::unit(1), {m}};
    const CoefficientField q = parse_polynomial("x1^4 - 2*x1^3 + x1", 1);
    const auto s = sample(q, grid);
    const auto d = apply_axis(fd_derivative_operator(m, grid.spacing(0)), s.values, grid.shape, 0);
    std::vector<double> x(1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.node(i, x);
        CHECK(d[i] == doctest::Approx(4 * x[0] * x[0] * x[0] - 6 * x[0] * x[0] + 1).epsilon(1e-10));
    }
}
