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

#include "fibreforms/simd/kernels.hpp"

#include <cstddef>

#if defined(__aarch64__)
#include <arm_neon.h>
#endif

namespace fibreforms::simd::neon {

#if defined(__aarch64__)

bool available() { return true; }

// vmulq/vaddq only (no vfmaq) to match the scalar rounding sequence.
void lincomb(std::span<double> out, std::span<const double* const> ins, std::span<const double> coeffs) {
    const std::size_t n = out.size();
    const std::size_t k = coeffs.size();
    if (k == 0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
    }
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t acc = vmulq_f64(vdupq_n_f64(coeffs[0]), vld1q_f64(ins[0] + i));
        for (std::size_t t = 1; t < k; ++t)
            acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(coeffs[t]), vld1q_f64(ins[t] + i)));
        vst1q_f64(out.data() + i, acc);
    }
    for (; i < n; ++i) {
        double acc = coeffs[0] * ins[0][i];
        for (std::size_t t = 1; t < k; ++t) {
            const double p = coeffs[t] * ins[t][i];
            acc = acc + p;
        }
        out[i] = acc;
    }
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    const std::size_t n = y.size();
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y.data() + i, vaddq_f64(vld1q_f64(y.data() + i), vmulq_f64(va, vld1q_f64(x.data() + i))));
    for (; i < n; ++i) {
        const double p = a * x[i];
        y[i] = y[i] + p;
    }
}

double dot(std::span<const double> w, std::span<const double> v) {
    // two 2-lane accumulators reproduce the four interleaved scalar sums
    const std::size_t n = w.size();
    const std::size_t blocks = n / 4 * 4;
    float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
    for (std::size_t i = 0; i < blocks; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(w.data() + i), vld1q_f64(v.data() + i)));
        hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(w.data() + i + 2), vld1q_f64(v.data() + i + 2)));
    }
    double total = (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) + (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
    for (std::size_t i = blocks; i < n; ++i) {
        const double p = w[i] * v[i];
        total = total + p;
    }
    return total;
}

#else

bool available() { return false; }
void lincomb(std::span<double> out, std::span<const double* const> ins, std::span<const double> coeffs) {
    scalar::lincomb(out, ins, coeffs);
}
void axpy(double a, std::span<const double> x, std::span<double> y) { scalar::axpy(a, x, y); }
double dot(std::span<const double> w, std::span<const double> v) { return scalar::dot(w, v); }

#endif

}  // namespace fibreforms::simd::neon
