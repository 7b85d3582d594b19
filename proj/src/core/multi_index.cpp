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

#include "fibreforms/multi_index.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "fibreforms/error.hpp"

namespace fibreforms {

MultiIndex MultiIndex::from_sorted(std::span<const int> idx) {
    if (idx.size() > static_cast<std::size_t>(kMaxDim)) throw DimensionError("multi-index too long");
    MultiIndex m;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= kMaxDim) throw DimensionError("multi-index entry out of range");
        if (i > 0 && idx[i] <= idx[i - 1]) throw DimensionError("multi-index not strictly ascending");
        m.idx_[i] = static_cast<std::uint8_t>(idx[i]);
    }
    m.size_ = static_cast<int>(idx.size());
    return m;
}

std::optional<std::pair<MultiIndex, int>> MultiIndex::canonicalize(std::span<const int> idx) {
    std::vector<int> v(idx.begin(), idx.end());
    int parity = 1;
    // insertion sort, counting transpositions
    for (std::size_t i = 1; i < v.size(); ++i) {
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            parity = -parity;
        }
    }
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] == v[i - 1]) return std::nullopt;
    return std::pair{from_sorted(v), parity};
}

bool MultiIndex::contains(int i) const noexcept {
    for (int a = 0; a < size_; ++a)
        if (idx_[static_cast<std::size_t>(a)] == i) return true;
    return false;
}

int MultiIndex::count_below(int bound) const noexcept {
    int c = 0;
    for (int a = 0; a < size_; ++a)
        if (idx_[static_cast<std::size_t>(a)] < bound) ++c;
    return c;
}

MultiIndex MultiIndex::slice(int first, int last) const {
    MultiIndex m;
    for (int a = first; a < last; ++a) m.idx_[static_cast<std::size_t>(a - first)] = idx_[static_cast<std::size_t>(a)];
    m.size_ = last - first;
    return m;
}

MultiIndex MultiIndex::erase_at(int pos) const {
    MultiIndex m;
    int o = 0;
    for (int a = 0; a < size_; ++a)
        if (a != pos) m.idx_[static_cast<std::size_t>(o++)] = idx_[static_cast<std::size_t>(a)];
    m.size_ = size_ - 1;
    return m;
}

std::optional<std::pair<MultiIndex, int>> MultiIndex::merge(const MultiIndex& a, const MultiIndex& b) {
    if (a.size_ + b.size_ > kMaxDim) return std::nullopt;
    MultiIndex m;
    int inversions = 0;
    int i = 0, j = 0, o = 0;
    while (i < a.size_ || j < b.size_) {
        if (j == b.size_ || (i < a.size_ && a[i] < b[j])) {
            m.idx_[static_cast<std::size_t>(o++)] = static_cast<std::uint8_t>(a[i++]);
        } else if (i == a.size_ || b[j] < a[i]) {
            // b[j] jumps over the remaining entries of a
            inversions += a.size_ - i;
            m.idx_[static_cast<std::size_t>(o++)] = static_cast<std::uint8_t>(b[j++]);
        } else {
            return std::nullopt;
        }
    }
    m.size_ = o;
    return std::pair{m, (inversions % 2) ? -1 : 1};
}

std::string MultiIndex::to_string() const {
    std::string s = "(";
    for (int a = 0; a < size_; ++a) {
        if (a) s += ',';
        s += std::to_string(idx_[static_cast<std::size_t>(a)] + 1);
    }
    return s + ")";
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

namespace {

void enumerate(int dim, int ell, int start, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == ell) {
        out.push_back(MultiIndex::from_sorted(cur));
        return;
    }
    for (int i = start; i < dim; ++i) {
        cur.push_back(i);
        enumerate(dim, ell, i + 1, cur, out);
        cur.pop_back();
    }
}

struct BasisCache {
    std::mutex mu;
    std::map<std::pair<int, int>, std::vector<MultiIndex>> tables;
};

BasisCache& cache() {
    static BasisCache c;
    return c;
}

}  // namespace

const std::vector<MultiIndex>& basis(int dim, int ell) {
    if (dim < 0 || dim > kMaxDim) throw DimensionError("chart dimension out of range");
    auto& c = cache();
    std::lock_guard lock(c.mu);
    auto [it, inserted] = c.tables.try_emplace({dim, ell});
    if (inserted && ell >= 0 && ell <= dim) {
        std::vector<int> cur;
        enumerate(dim, ell, 0, cur, it->second);
    }
    return it->second;
}

int basis_rank(int dim, const MultiIndex& m) {
    // combinatorial number system over lexicographic order
    const int ell = m.valency();
    int rank = 0;
    int prev = -1;
    for (int a = 0; a < ell; ++a) {
        for (int v = prev + 1; v < m[a]; ++v)
            rank += static_cast<int>(binomial(dim - v - 1, ell - a - 1));
        prev = m[a];
    }
    return rank;
}

}  // namespace fibreforms
