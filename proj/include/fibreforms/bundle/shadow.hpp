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

#include <string>
#include <vector>

#include "fibreforms/bundle/chart.hpp"
#include "fibreforms/form.hpp"

namespace fibreforms {

/// One product g ^ theta together with the data it was built from: the
/// multi-index of the source coefficient, its split position (number of
/// horizontal indices) and the derivative axis j. All indices are 0-based.
struct ShadowEntry {
    Form g;
    Form theta;
    MultiIndex source;
    int star = 0;
    int j = 0;
};

/// A tuple (f; g_1..g_I) with complementary closed forms theta_i.
struct ShadowData {
    int n = 0;
    int k = 0;
    int ell = 0;
    Form f;
    std::vector<ShadowEntry> entries;
    /// Set when the source potential had only vertical indices.
    bool purely_vertical = false;
    std::vector<std::string> warnings;
};

/// One component of the horizontal projection of an l-form: the
/// coefficient times the horizontal prefix of its multi-index.
struct ProjectedEntry {
    Form g;
    MultiIndex source;
    int star = 0;
};

struct ProjectedTuple {
    Form f;
    std::vector<ProjectedEntry> entries;
};

/// pr_H: purely horizontal terms go to f; every other term w_J dx^J with
/// split position s emits g = w_J dx^{J_1..J_s} (a 0-form when s = 0).
/// Entries follow the lexicographic order of J.
ProjectedTuple horizontal_projection(const Form& w, int n);

/// Builds f and the (g, theta) pairs with d(xi) = f + sum g ^ theta from a
/// potential xi of degree l-1. Throws DimensionError when l > n + k.
ShadowData shadow_decompose(const Form& xi, int n, int k);

/// f + sum_i g_i ^ theta_i. Throws DimensionError on inconsistent degrees.
Form shadow_reconstruct(const ShadowData& sd);

struct ClosednessReport {
    bool closed = false;
    double max_residual = 0.0;
    Form residual;
};

/// d of the reconstruction. Polynomial data must vanish identically; other
/// kinds are compared against `tolerance` on their grid (sampled) or on a
/// lattice over `probe` (callable).
ClosednessReport check_closedness(const ShadowData& sd, double tolerance = 1e-8, const Box* probe = nullptr);
ClosednessReport check_closedness(const Form& w, double tolerance = 1e-8, const Box* probe = nullptr);

/// Upper bound on the entry count stated with the construction:
/// (n+k) * sum_{s=1}^{l-2} C(n,s) C(k,l-s).
std::uint64_t stated_entry_bound(int n, int k, int ell);
/// Number of (source, j) pairs the construction can emit: every index
/// tuple of valency l-1 that is not purely horizontal paired with every
/// axis outside it, plus the vertical axes for purely horizontal tuples.
std::uint64_t construction_entry_bound(int n, int k, int ell);

}  // namespace fibreforms
