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

#include "apgap/records.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "apgap/error.hpp"
#include "apgap/parallel.hpp"

namespace apgap {

void RecordTracker::feed(u64 prime) {
    ++primes_seen_;
    if (primes_seen_ > 1) {
        const u64 gap = prime - previous_;
        if (events_.empty() || gap > events_.back().gap) {
            events_.push_back({events_.size() + 1, gap, previous_, prime});
        }
    }
    previous_ = prime;
}

RecordSet extract_records(const Progression& prog, const SieveConfig& cfg,
                          const ExtractOptions& opts) {
    ProgressionSieve sieve(prog, cfg, opts.plan);
    RecordTracker tracker;
    std::vector<u64> chunk;
    while (sieve.next_segment(chunk)) {
        for (u64 p : chunk) tracker.feed(p);
        if (opts.max_records != 0 && tracker.events().size() >= opts.max_records) break;
    }
    RecordSet rs;
    rs.prog = sieve.progression();
    rs.x_max = sieve.scanned_to();
    rs.primes_seen = tracker.primes_seen();
    rs.events = tracker.take_events();
    return rs;
}

std::vector<u64> admissible_residues(u64 q) {
    std::vector<u64> out;
    for (u64 r = 1; r <= q; ++r) {
        if (gcd(q, r) == 1) out.push_back(r);
    }
    return out;
}

std::vector<RecordSet> scan_residues(u64 q, std::span<const u64> residues,
                                     const SieveConfig& cfg, u64 max_records, unsigned threads,
                                     const std::function<void(const RecordSet&)>& on_done) {
    for (u64 r : residues) Progression::make(q, r);
    ExtractOptions opts;
    opts.max_records = max_records;
    opts.plan = std::make_shared<const SievePlan>(q, cfg.x_max);
    std::vector<RecordSet> out(residues.size());
    parallel_for(residues.size(), threads, [&](std::size_t i) {
        out[i] = extract_records(Progression{q, residues[i]}, cfg, opts);
        if (on_done) on_done(out[i]);
    });
    return out;
}

u64 count_records_below(const RecordSet& rs, u64 x) {
    if (x > rs.x_max) {
        throw OutOfScanRange("x=" + std::to_string(x) + " exceeds scan bound " +
                             std::to_string(rs.x_max) + " for r=" + std::to_string(rs.prog.r));
    }
    // events are sorted by end
    auto it = std::upper_bound(rs.events.begin(), rs.events.end(), x,
                               [](u64 v, const RecordEvent& e) { return v < e.end; });
    return static_cast<u64>(it - rs.events.begin());
}

std::vector<double> Ensemble::gaps() const {
    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(static_cast<double>(v.gap));
    return out;
}

Ensemble build_ensemble(std::span<const RecordSet> record_sets, u64 n) {
    if (n < 1) throw InvalidConfig("record index n must be >= 1");
    Ensemble ens;
    ens.n = n;
    if (record_sets.empty()) return ens;
    ens.q = record_sets.front().prog.q;
    std::set<u64> seen;
    for (const auto& rs : record_sets) {
        if (rs.prog.q != ens.q) throw InvalidConfig("ensemble record sets must share q");
        if (!seen.insert(rs.prog.r).second) {
            throw InvalidConfig("duplicate residue r=" + std::to_string(rs.prog.r));
        }
        const u64 k = rs.events.size();
        if (k >= n) {
            ens.values.push_back({rs.prog.r, rs.events[n - 1].gap});
        } else {
            const u64 base = k == 0 ? 0 : rs.events.back().gap;
            ens.censored.push_back({rs.prog.r, base + (n - k) * ens.q});
        }
    }
    const auto by_r = [](const EnsembleValue& a, const EnsembleValue& b) { return a.r < b.r; };
    std::sort(ens.values.begin(), ens.values.end(), by_r);
    std::sort(ens.censored.begin(), ens.censored.end(), by_r);
    ens.complete = ens.values.size() == totient(ens.q);
    return ens;
}

void require_complete(const Ensemble& ens) {
    if (!ens.complete) {
        throw IncompleteEnsemble("ensemble q=" + std::to_string(ens.q) + " n=" +
                                 std::to_string(ens.n) + " has " +
                                 std::to_string(ens.values.size()) + " of " +
                                 std::to_string(ens.q == 0 ? 0 : totient(ens.q)) + " residues");
    }
}

u64 e_times(u64 x) {
    const long double v = std::floor(std::numbers::e_v<long double> * static_cast<long double>(x));
    if (v >= 18446744073709551615.0L) throw OverflowError("e*x exceeds 64 bits");
    return static_cast<u64>(v);
}

double mean_record_count_increment(std::span<const RecordSet> record_sets, u64 x) {
    if (record_sets.empty()) throw EmptyInput("no record sets");
    const u64 q = record_sets.front().prog.q;
    std::set<u64> residues;
    for (const auto& rs : record_sets) {
        if (rs.prog.q != q) throw InvalidConfig("record sets must share q");
        residues.insert(rs.prog.r);
    }
    const u64 phi = totient(q);
    if (residues.size() != phi || record_sets.size() != phi) {
        throw IncompleteEnsemble("record-count increments need all " + std::to_string(phi) +
                                 " residues of q=" + std::to_string(q));
    }
    const u64 upper = e_times(x);
    u64 total = 0;
    for (const auto& rs : record_sets) {
        total += count_records_below(rs, upper) - count_records_below(rs, x);
    }
    return static_cast<double>(total) / static_cast<double>(phi);
}

double mean_delta_R(const Ensemble& at_n, const Ensemble& at_n_plus_1) {
    require_complete(at_n);
    require_complete(at_n_plus_1);
    if (at_n.q != at_n_plus_1.q || at_n_plus_1.n != at_n.n + 1) {
        throw InvalidConfig("mean_delta_R needs ensembles (q, n) and (q, n+1)");
    }
    // Both are complete and sorted by r, so values pair up index by index.
    double sum = 0.0;
    for (std::size_t i = 0; i < at_n.values.size(); ++i) {
        if (at_n.values[i].r != at_n_plus_1.values[i].r) {
            throw InvalidConfig("ensemble residues do not match");
        }
        sum += static_cast<double>(at_n_plus_1.values[i].gap) -
               static_cast<double>(at_n.values[i].gap);
    }
    return sum / static_cast<double>(at_n.values.size());
}

}  // namespace apgap
