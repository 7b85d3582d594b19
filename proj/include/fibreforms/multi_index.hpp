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
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fibreforms {

inline constexpr int kMaxDim = 16;

/// Strictly ascending tuple of 0-based coordinate indices.
///
/// The valency is the length of the tuple. Indices are stored inline; the
/// unused tail is zero-filled so that defaulted comparison is lexicographic
/// among tuples of equal valency. Tuples of different valency compare by
/// valency first.
class MultiIndex {
public:
    MultiIndex() = default;

    /// Builds from indices that must already be strictly ascending.
    static MultiIndex from_sorted(std::span<const int> idx);
    static MultiIndex from_sorted(std::initializer_list<int> idx) {
        return from_sorted(std::span<const int>(idx.begin(), idx.size()));
    }

    /// Sorts an arbitrary tuple. Returns the sorted index and the parity of
    /// the sorting permutation, or nullopt when an index repeats.
    static std::optional<std::pair<MultiIndex, int>> canonicalize(std::span<const int> idx);

    int valency() const noexcept { return size_; }
    int operator[](int i) const noexcept { return idx_[static_cast<std::size_t>(i)]; }
    bool contains(int i) const noexcept;
    std::vector<int> to_vector() const { return {idx_.begin(), idx_.begin() + size_}; }

    /// Number of entries strictly below `bound` (for a bundle chart with n
    /// horizontal coordinates this is the split position).
    int count_below(int bound) const noexcept;

    /// Entries [first, last).
    MultiIndex slice(int first, int last) const;
    /// Removes the entry at position `pos`.
    MultiIndex erase_at(int pos) const;

    /// Sign and result of merging two disjoint ascending tuples, or nullopt if
    /// they share an index.
    static std::optional<std::pair<MultiIndex, int>> merge(const MultiIndex& a, const MultiIndex& b);

    /// 1-based rendering, e.g. "(1,3)".
    std::string to_string() const;

    friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
        if (auto c = a.size_ <=> b.size_; c != 0) return c;
        return a.idx_ <=> b.idx_;
    }
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) = default;

private:
    std::array<std::uint8_t, kMaxDim> idx_{};
    int size_ = 0;
};

/// All multi-indices of valency `ell` in {0..dim-1}, in lexicographic order.
const std::vector<MultiIndex>& basis(int dim, int ell);

/// Position of `m` in basis(dim, m.valency()).
int basis_rank(int dim, const MultiIndex& m);

std::uint64_t binomial(int n, int k);

}  // namespace fibreforms
