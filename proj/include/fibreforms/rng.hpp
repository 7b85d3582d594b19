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

#include <cmath>
#include <cstdint>
#include <numbers>

namespace fibreforms {

/// SplitMix64 finalizer: a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator: the n-th draw of stream (seed, key) is a pure
/// function of (seed, key, n), so parallel and serial consumers that agree on
/// keys see identical numbers.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t key) noexcept
        : base_(mix64(mix64(seed) ^ (key * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL))) {}

    /// Derives an independent key from a tuple of integers.
    static std::uint64_t key(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) noexcept {
        return mix64(mix64(mix64(a) + b) + c);
    }

    std::uint64_t next_u64() noexcept { return mix64(base_ + 0x632be59bd9b4e019ULL * counter_++); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) noexcept {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(next_u64() % span);
    }
    /// Standard normal by Box-Muller (one draw per call, two uniforms consumed).
    double normal() noexcept {
        double u1 = uniform();
        const double u2 = uniform();
        if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

}  // namespace fibreforms
