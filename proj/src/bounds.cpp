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

#include "apgap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include "apgap/error.hpp"

namespace apgap {

const char* to_string(BoundVariant v) {
    return v == BoundVariant::QLog2Q ? "q_log2q" : "phi_log2q";
}

BoundVariant parse_bound_variant(const std::string& s) {
    if (s == "q" || s == "q_log2q") return BoundVariant::QLog2Q;
    if (s == "phi" || s == "phi_log2q") return BoundVariant::PhiLog2Q;
    throw InvalidConfig("unknown bound variant '" + s + "' (expected q or phi)");
}

double bound_value(u64 q, u64 n, BoundVariant variant) {
    const auto phi = static_cast<double>(totient(q));
    const double m = variant == BoundVariant::QLog2Q ? static_cast<double>(q) : phi;
    const double lq = std::log(static_cast<double>(q));
    const auto dn = static_cast<double>(n);
    return phi * dn * dn + (dn + 2.0) * m * lq * lq;
}

BoundReport audit_bounds(std::span<const RecordSet> record_sets, u64 n_max, BoundVariant variant) {
    BoundReport report;
    report.variant = variant;
    report.n_max = n_max;
    report.min_scan_bound = std::numeric_limits<u64>::max();
    bool any = false;
    for (const auto& rs : record_sets) {
        if (rs.prog.q < 2) {
            ++report.skipped_sets;
            continue;
        }
        const u64 q = rs.prog.q;
        report.q_min = any ? std::min(report.q_min, q) : q;
        report.q_max = any ? std::max(report.q_max, q) : q;
        report.x_max = std::max(report.x_max, rs.x_max);
        report.min_scan_bound = std::min(report.min_scan_bound, rs.x_max);
        any = true;
        if (rs.events.size() < n_max) ++report.incomplete_residues;
        for (const auto& e : rs.events) {
            if (e.n > n_max) break;
            ++report.checked;
            const double b = bound_value(q, e.n, variant);
            if (static_cast<double>(e.gap) >= b) {
                report.exceptions.push_back({q, rs.prog.r, e.n, e.gap, b});
            }
        }
    }
    if (!any) report.min_scan_bound = 0;
    std::sort(report.exceptions.begin(), report.exceptions.end(),
              [](const BoundException& a, const BoundException& b) {
                  return std::tie(a.q, a.r, a.n) < std::tie(b.q, b.r, b.n);
              });
    return report;
}

nlohmann::json to_json(const BoundReport& report) {
    nlohmann::json ex = nlohmann::json::array();
    for (const auto& e : report.exceptions) {
        ex.push_back({{"q", e.q}, {"r", e.r}, {"n", e.n}, {"gap", e.gap}, {"bound", e.bound}});
    }
    return {
        {"variant", to_string(report.variant)},
        {"q_min", report.q_min},
        {"q_max", report.q_max},
        {"n_max", report.n_max},
        {"x_max", report.x_max},
        {"min_scan_bound", report.min_scan_bound},
        {"checked", report.checked},
        {"incomplete_residues", report.incomplete_residues},
        {"skipped_sets", report.skipped_sets},
        {"exceptions", ex},
    };
}

std::string to_csv(const BoundReport& report) {
    std::ostringstream os;
    os.precision(10);
    os << "variant,q,r,n,gap,bound\n";
    for (const auto& e : report.exceptions) {
        os << to_string(report.variant) << ',' << e.q << ',' << e.r << ',' << e.n << ','
           << e.gap << ',' << e.bound << '\n';
    }
    return os.str();
}

std::vector<ClassicRow> classic_reality_check(const RecordSet& rs) {
    if (rs.prog.q != 1) throw InvalidProgression("classic check needs the q = 1 record set");
    std::vector<ClassicRow> rows;
    rows.reserve(rs.events.size());
    for (const auto& e : rs.events) {
        const auto n = static_cast<double>(e.n);
        const double le = std::log(static_cast<double>(e.end));
        rows.push_back({e.n, e.gap, e.start, e.end, n * n, 0.25 * n * n + 0.5 * n, le * le});
    }
    return rows;
}

}  // namespace apgap
