// Copyright 2026 The apgap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "apgap/records.hpp"

namespace apgap {

/// Correction-term multiplier in phi(q) n^2 + (n+2) M ln^2 q:
/// M = q (QLog2Q) or M = phi(q) (PhiLog2Q). Logarithms are natural.
enum class BoundVariant { QLog2Q, PhiLog2Q };

const char* to_string(BoundVariant v);
BoundVariant parse_bound_variant(const std::string& s);

double bound_value(u64 q, u64 n, BoundVariant variant);

struct BoundException {
    u64 q = 0, r = 0, n = 0, gap = 0;
    double bound = 0;
};

struct BoundReport {
    BoundVariant variant = BoundVariant::QLog2Q;
    u64 q_min = 0, q_max = 0;
    u64 n_max = 0;
    u64 x_max = 0;                 // deepest scan bound among audited sets
    u64 min_scan_bound = 0;        // shallowest scan bound among audited sets
    u64 checked = 0;               // (q, r, n) triples tested
    u64 incomplete_residues = 0;   // sets holding fewer than n_max records
    u64 skipped_sets = 0;          // q = 1 sets: the inequality needs q > r
    std::vector<BoundException> exceptions;  // sorted by (q, r, n)
};

/// Tests gap < bound for every record with n <= n_max. A gap equal to the
/// bound counts as an exception.
BoundReport audit_bounds(std::span<const RecordSet> record_sets, u64 n_max, BoundVariant variant);

nlohmann::json to_json(const BoundReport& report);
/// Columns variant,q,r,n,gap,bound; one row per exception.
std::string to_csv(const BoundReport& report);

struct ClassicRow {
    u64 n = 0, gap = 0, start = 0, end = 0;
    double n_squared = 0;     // the R(n) <= n^2 envelope
    double quad_model = 0;    // 0.25 n^2 + 0.5 n
    double log2_end = 0;      // ln^2(end), the Cramer-Shanks scale
};

/// Classical record prime gaps (q = 1) against their quadratic envelopes.
std::vector<ClassicRow> classic_reality_check(const RecordSet& rs);

}  // namespace apgap
