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

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "apgap/sieve.hpp"

namespace apgap {

/// One record gap: the n-th strictly new maximum gap between consecutive
/// primes of a progression.
struct RecordEvent {
    u64 n = 0;
    u64 gap = 0;
    u64 start = 0;
    u64 end = 0;
    friend bool operator==(const RecordEvent&, const RecordEvent&) = default;
};

/// The record sequence of one progression. Every prime of the progression
/// <= x_max has been examined, so the events are exactly the records whose
/// end-of-gap prime is <= x_max.
struct RecordSet {
    Progression prog;
    u64 x_max = 0;
    std::vector<RecordEvent> events;
    u64 primes_seen = 0;
    friend bool operator==(const RecordSet&, const RecordSet&) = default;
};

/// Incremental record detector fed with consecutive primes of one
/// progression.
class RecordTracker {
public:
    void feed(u64 prime);
    const std::vector<RecordEvent>& events() const { return events_; }
    std::vector<RecordEvent> take_events() { return std::move(events_); }
    u64 primes_seen() const { return primes_seen_; }

private:
    std::vector<RecordEvent> events_;
    u64 previous_ = 0;
    u64 primes_seen_ = 0;
};

struct ExtractOptions {
    /// Stop once this many records exist (0 = scan to x_max). The scan
    /// finishes the current segment, and the returned set's x_max is the
    /// bound actually reached, so the result is still exact up to it.
    u64 max_records = 0;
    std::shared_ptr<const SievePlan> plan;
};

RecordSet extract_records(const Progression& prog, const SieveConfig& cfg,
                          const ExtractOptions& opts = {});

/// Residues r in [1, q] coprime to q.
std::vector<u64> admissible_residues(u64 q);

/// Runs extract_records for each residue of q on up to `threads` workers.
/// Results are ordered like `residues` regardless of thread count.
/// `on_done` (optional) is called once per finished residue, from a worker.
std::vector<RecordSet> scan_residues(u64 q, std::span<const u64> residues,
                                     const SieveConfig& cfg, u64 max_records = 0,
                                     unsigned threads = 1,
                                     const std::function<void(const RecordSet&)>& on_done = {});

/// N_{q,r}(x): records whose end-of-gap prime is <= x.
u64 count_records_below(const RecordSet& rs, u64 x);

struct EnsembleValue {
    u64 r = 0;
    u64 gap = 0;
    friend bool operator==(const EnsembleValue&, const EnsembleValue&) = default;
};

/// The n-th record gaps of a fixed modulus q across residues.
struct Ensemble {
    u64 q = 0;
    u64 n = 0;
    std::vector<EnsembleValue> values;  // sorted by r
    bool complete = false;              // every admissible r contributed
    /// Residues present but lacking an n-th record below their scan bound.
    /// `gap` holds a lower bound on R(n,q,r): records grow by at least q
    /// each, so R(n) >= R(k) + (n-k) q after k records.
    std::vector<EnsembleValue> censored;

    std::vector<double> gaps() const;
};

Ensemble build_ensemble(std::span<const RecordSet> record_sets, u64 n);

/// Throws IncompleteEnsemble unless the ensemble is complete.
void require_complete(const Ensemble& ens);

/// (1/phi(q)) * sum_r [N_{q,r}(floor(e*x)) - N_{q,r}(x)] over all residues.
double mean_record_count_increment(std::span<const RecordSet> record_sets, u64 x);

/// Mean over r of R(n+1,q,r) - R(n,q,r).
double mean_delta_R(const Ensemble& at_n, const Ensemble& at_n_plus_1);

/// floor(e * x), the upper end of the window [x, e x].
u64 e_times(u64 x);

}  // namespace apgap
