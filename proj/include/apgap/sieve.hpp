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

#include <concepts>
#include <cstdint>
#include <memory>
#include <vector>

#include "apgap/arith.hpp"

namespace apgap {

/// The arithmetic progression r, r+q, r+2q, ... with gcd(q, r) = 1 and
/// 1 <= r <= q (r = q only for the all-primes case q = r = 1).
struct Progression {
    u64 q = 1;
    u64 r = 1;

    /// Validating constructor; throws InvalidProgression.
    static Progression make(u64 q, u64 r);

    u64 term(u64 k) const { return checked_add(r, checked_mul(k, q)); }
    friend bool operator==(const Progression&, const Progression&) = default;
};

inline constexpr u64 kDefaultSegmentSize = u64{1} << 20;

struct SieveConfig {
    u64 x_max = 0;                            // bound on prime values
    u64 segment_size = kDefaultSegmentSize;   // progression indices per segment
};

/// All primes <= limit, increasing.
std::vector<u64> base_primes(u64 limit);

/// Base primes up to sqrt(x_max) that do not divide q, each with q^-1 mod p.
/// Immutable once built, so one plan can serve every residue of q
/// concurrently.
class SievePlan {
public:
    SievePlan(u64 q, u64 x_max);

    u64 q() const { return q_; }
    u64 x_max() const { return x_max_; }
    const std::vector<std::uint32_t>& primes() const { return primes_; }
    const std::vector<std::uint32_t>& q_inverses() const { return q_inv_; }

private:
    u64 q_;
    u64 x_max_;
    std::vector<std::uint32_t> primes_;
    std::vector<std::uint32_t> q_inv_;
};

/// Segmented sieve over the index space k of r + k*q. Each call to
/// next_segment() sieves segment_size consecutive indices and yields the
/// primes found there in increasing order.
class ProgressionSieve {
public:
    ProgressionSieve(Progression prog, SieveConfig cfg,
                     std::shared_ptr<const SievePlan> plan = nullptr);

    /// Replaces `out` with the primes of the next segment. Returns false once
    /// every term <= x_max has been sieved (out is then empty).
    bool next_segment(std::vector<u64>& out);

    /// Every prime of the progression <= scanned_to() has been emitted.
    u64 scanned_to() const { return scanned_to_; }

    const Progression& progression() const { return prog_; }
    const SieveConfig& config() const { return cfg_; }

private:
    Progression prog_;
    SieveConfig cfg_;
    std::shared_ptr<const SievePlan> plan_;
    u64 next_index_ = 0;
    u64 last_index_ = 0;  // inclusive
    bool exhausted_ = false;
    u64 scanned_to_ = 0;
    std::vector<u64> next_cross_;  // next index to cross out, per base prime
    std::vector<u64> bits_;
};

/// Invokes consumer(p) for each prime p <= cfg.x_max with p == r (mod q),
/// in increasing order. Returns the number of primes emitted.
template <std::invocable<u64> Consumer>
u64 stream_progression_primes(const Progression& prog, const SieveConfig& cfg,
                              Consumer&& consumer) {
    ProgressionSieve sieve(Progression::make(prog.q, prog.r), cfg);
    std::vector<u64> chunk;
    u64 count = 0;
    while (sieve.next_segment(chunk)) {
        for (u64 p : chunk) consumer(p);
        count += chunk.size();
    }
    return count;
}

}  // namespace apgap
