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

namespace fibreforms::simd::scalar {

void lincomb(std::span<double> out, std::span<const double* const> ins, std::span<const double> coeffs) {
    const std::size_t n = out.size();
    const std::size_t k = coeffs.size();
    if (k == 0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
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
    for (std::size_t i = 0; i < n; ++i) {
        const double p = a * x[i];
        y[i] = y[i] + p;
    }
}

double dot(std::span<const double> w, std::span<const double> v) {
    const std::size_t n = w.size();
    const std::size_t blocks = n / 4 * 4;
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < blocks; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) {
            const double p = w[i + l] * v[i + l];
            s[l] = s[l] + p;
        }
    }
    double total = (s[0] + s[1]) + (s[2] + s[3]);
    for (std::size_t i = blocks; i < n; ++i) {
        const double p = w[i] * v[i];
        total = total + p;
    }
    return total;
}

}  // namespace fibreforms::simd::scalar
