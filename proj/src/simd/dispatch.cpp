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

#include <atomic>
#include <cstdlib>
#include <string>

#include "fibreforms/error.hpp"
#include "fibreforms/simd/kernels.hpp"

namespace fibreforms::simd {

namespace {

Isa initial_isa() {
    if (const char* env = std::getenv("FIBREFORMS_ISA")) {
        const std::string v(env);
        if (v == "scalar") return Isa::kScalar;
    }
    return detected_isa();
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::kScalar: return "scalar";
        case Isa::kAvx2: return "avx2";
        case Isa::kNeon: return "neon";
    }
    return "unknown";
}

Isa detected_isa() {
    if (avx2::available()) return Isa::kAvx2;
    if (neon::available()) return Isa::kNeon;
    return Isa::kScalar;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if ((isa == Isa::kAvx2 && !avx2::available()) || (isa == Isa::kNeon && !neon::available()))
        throw DomainError(std::string("instruction set not available: ") + std::string(isa_name(isa)));
    current().store(isa, std::memory_order_relaxed);
}

void lincomb(std::span<double> out, std::span<const double* const> ins, std::span<const double> coeffs) {
    if (ins.size() != coeffs.size() || coeffs.size() > static_cast<std::size_t>(kMaxTerms))
        throw DimensionError("lincomb: bad term count");
    switch (active_isa()) {
        case Isa::kAvx2: return avx2::lincomb(out, ins, coeffs);
        case Isa::kNeon: return neon::lincomb(out, ins, coeffs);
        case Isa::kScalar: break;
    }
    scalar::lincomb(out, ins, coeffs);
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
    switch (active_isa()) {
        case Isa::kAvx2: return avx2::axpy(a, x, y);
        case Isa::kNeon: return neon::axpy(a, x, y);
        case Isa::kScalar: break;
    }
    scalar::axpy(a, x, y);
}

double dot(std::span<const double> w, std::span<const double> v) {
    if (w.size() != v.size()) throw DimensionError("dot: length mismatch");
    switch (active_isa()) {
        case Isa::kAvx2: return avx2::dot(w, v);
        case Isa::kNeon: return neon::dot(w, v);
        case Isa::kScalar: break;
    }
    return scalar::dot(w, v);
}

}  // namespace fibreforms::simd
