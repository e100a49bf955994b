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

// Brute-force reference implementations used only by tests. None of these
// share code with the library paths they check.

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;

inline bool is_prime_trial(u64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (u64 d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Primality flags for 0..limit by trial division against the primes found
/// so far (each n is divided by primes up to sqrt(n)).
inline std::vector<char> primality_table(u64 limit) {
    std::vector<char> flags(limit + 1, 0);
    std::vector<u64> primes;
    for (u64 n = 2; n <= limit; ++n) {
        bool prime = true;
        for (u64 p : primes) {
            if (p * p > n) break;
            if (n % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) {
            primes.push_back(n);
            flags[n] = 1;
        }
    }
    return flags;
}

inline std::vector<u64> progression_primes(const std::vector<char>& table, u64 q, u64 r, u64 x_max) {
    std::vector<u64> out;
    for (u64 v = r; v <= x_max; v += q) {
        if (table[v]) out.push_back(v);
    }
    return out;
}

struct Record {
    u64 n, gap, start, end;
};

inline std::vector<Record> records_of(const std::vector<u64>& primes) {
    std::vector<Record> out;
    u64 best = 0;
    for (std::size_t i = 1; i < primes.size(); ++i) {
        const u64 g = primes[i] - primes[i - 1];
        if (g > best) {
            best = g;
            out.push_back({out.size() + 1, g, primes[i - 1], primes[i]});
        }
    }
    return out;
}

inline u64 gcd_slow(u64 a, u64 b) {
    u64 g = 1;
    for (u64 d = 1; d <= a && d <= b; ++d) {
        if (a % d == 0 && b % d == 0) g = d;
    }
    return g;
}

inline double harmonic(u64 n) {
    long double h = 0;
    for (u64 k = n; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
    return static_cast<double>(h);
}

}  // namespace oracle
