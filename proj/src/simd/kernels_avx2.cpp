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

#if defined(__x86_64__) || defined(_M_X64)
#define FIBREFORMS_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define FIBREFORMS_HAVE_AVX2_BUILD 0
#endif

namespace fibreforms::simd::avx2 {

#if FIBREFORMS_HAVE_AVX2_BUILD

bool available() { return __builtin_cpu_supports("avx2"); }

// The target attribute keeps the rest of the library on the baseline ISA.
// Only separate mul/add intrinsics are used so rounding matches the scalar
// reference exactly.
__attribute__((target("avx2"))) void lincomb(std::span<double> out, std::span<const double* const> ins,
                                             std::span<const double> coeffs) {
    const std::size_t n = out.size();
    const std::size_t k = coeffs.size();
    if (k == 0) {
        for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
        return;
    }
    __m256d c[kMaxTerms];
    for (std::size_t t = 0; t < k; ++t) c[t] = _mm256_set1_pd(coeffs[t]);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_mul_pd(c[0], _mm256_loadu_pd(ins[0] + i));
        for (std::size_t t = 1; t < k; ++t)
            acc = _mm256_add_pd(acc, _mm256_mul_pd(c[t], _mm256_loadu_pd(ins[t] + i)));
        _mm256_storeu_pd(out.data() + i, acc);
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

__attribute__((target("avx2"))) void axpy(double a, std::span<const double> x, std::span<double> y) {
    const std::size_t n = y.size();
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x.data() + i));
        _mm256_storeu_pd(y.data() + i, _mm256_add_pd(_mm256_loadu_pd(y.data() + i), p));
    }
    for (; i < n; ++i) {
        const double p = a * x[i];
        y[i] = y[i] + p;
    }
}

__attribute__((target("avx2"))) double dot(std::span<const double> w, std::span<const double> v) {
    const std::size_t n = w.size();
    const std::size_t blocks = n / 4 * 4;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < blocks; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), _mm256_loadu_pd(v.data() + i)));
    alignas(32) double s[4];
    _mm256_store_pd(s, acc);
    double total = (s[0] + s[1]) + (s[2] + s[3]);
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

}  // namespace fibreforms::simd::avx2
