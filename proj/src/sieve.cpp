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

#include "apgap/sieve.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

#include "apgap/error.hpp"

namespace apgap {

Progression Progression::make(u64 q, u64 r) {
    if (q < 1 || r < 1 || r > q) {
        throw InvalidProgression("progression requires 1 <= r <= q, got q=" + std::to_string(q) +
                                 " r=" + std::to_string(r));
    }
    if (gcd(q, r) != 1) {
        throw InvalidProgression("progression requires gcd(q, r) = 1, got q=" +
                                 std::to_string(q) + " r=" + std::to_string(r));
    }
    return Progression{q, r};
}

std::vector<u64> base_primes(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (u64 i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    for (u64 i = 2; i <= limit; ++i) {
        if (!composite[i]) primes.push_back(i);
    }
    return primes;
}

SievePlan::SievePlan(u64 q, u64 x_max) : q_(q), x_max_(x_max) {
    if (q < 1) throw InvalidProgression("modulus must be >= 1");
    const u64 limit = isqrt(x_max);
    if (limit > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidConfig("x_max too large for the base-prime table");
    }
    for (u64 p : base_primes(limit)) {
        if (q % p == 0) continue;  // p never divides r + kq
        primes_.push_back(static_cast<std::uint32_t>(p));
        q_inv_.push_back(static_cast<std::uint32_t>(mod_inverse(static_cast<i64>(q % p), p)));
    }
}

ProgressionSieve::ProgressionSieve(Progression prog, SieveConfig cfg,
                                   std::shared_ptr<const SievePlan> plan)
    : prog_(Progression::make(prog.q, prog.r)), cfg_(cfg), plan_(std::move(plan)) {
    if (cfg_.segment_size < 1) throw InvalidConfig("segment_size must be >= 1");
    if (cfg_.x_max < prog_.r) {
        throw InvalidConfig("x_max must be >= r (x_max=" + std::to_string(cfg_.x_max) +
                            ", r=" + std::to_string(prog_.r) + ")");
    }
    if (!plan_) {
        plan_ = std::make_shared<const SievePlan>(prog_.q, cfg_.x_max);
    } else if (plan_->q() != prog_.q || plan_->x_max() < cfg_.x_max) {
        throw InvalidConfig("sieve plan does not cover this progression");
    }
    last_index_ = (cfg_.x_max - prog_.r) / prog_.q;

    const u64 q = prog_.q;
    const u64 r = prog_.r;
    const auto& primes = plan_->primes();
    const auto& inv = plan_->q_inverses();
    next_cross_.resize(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const u64 p = primes[i];
        // Smallest k >= 0 with p | r + kq.
        const u64 k0 = ((p - r % p) % p) * inv[i] % p;
        // Crossing starts at the first term >= p*p, so a term equal to p
        // itself survives.
        const u64 p2 = p * p;
        const u64 k_min = p2 <= r ? 0 : (p2 - r + q - 1) / q;
        next_cross_[i] = k_min + (k0 + p - k_min % p) % p;
    }
}

bool ProgressionSieve::next_segment(std::vector<u64>& out) {
    out.clear();
    if (exhausted_) return false;
    if (next_index_ > last_index_) {
        exhausted_ = true;
        scanned_to_ = cfg_.x_max;
        return false;
    }

    const u64 q = prog_.q;
    const u64 r = prog_.r;
    const u64 lo = next_index_;
    const u64 hi = lo + std::min(cfg_.segment_size, last_index_ - lo + 1);  // exclusive
    const u64 len = hi - lo;
    const u64 high_value = r + (hi - 1) * q;

    bits_.assign((len + 63) / 64, ~u64{0});
    if (len % 64 != 0) bits_.back() = (u64{1} << (len % 64)) - 1;

    const auto& primes = plan_->primes();
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const u64 p = primes[i];
        if (p * p > high_value) break;
        u64 k = next_cross_[i];
        for (; k < hi; k += p) {
            const u64 j = k - lo;
            bits_[j >> 6] &= ~(u64{1} << (j & 63));
        }
        next_cross_[i] = k;
    }
    if (lo == 0 && r == 1) bits_[0] &= ~u64{1};  // the term 1 is not prime

    for (std::size_t w = 0; w < bits_.size(); ++w) {
        u64 word = bits_[w];
        while (word != 0) {
            const u64 j = w * 64 + static_cast<u64>(std::countr_zero(word));
            out.push_back(r + (lo + j) * q);
            word &= word - 1;
        }
    }

    next_index_ = hi;
    scanned_to_ = hi > last_index_ ? cfg_.x_max : high_value;
    if (hi > last_index_) exhausted_ = true;
    return true;
}

}  // namespace apgap
