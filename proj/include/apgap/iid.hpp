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
#include <string>

#include "apgap/stats.hpp"

namespace apgap {

/// SplitMix64 (Steele, Lea, Flood 2014). Used for seeding only.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();

private:
    std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman, Vigna). The four state words are the first
/// four SplitMix64 outputs for the seed. Test vectors live in docs/prng.md.
class Xoshiro256StarStar {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256StarStar(std::uint64_t seed);

    std::uint64_t next();
    std::uint64_t operator()() { return next(); }
    static constexpr std::uint64_t min() { return 0; }
    static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

    /// (next() >> 11) * 2^-53, in [0, 1).
    double uniform();
    /// ((next() >> 11) + 0.5) * 2^-53, in (0, 1).
    double uniform_open();

private:
    std::uint64_t s_[4];
};

/// Seed of trial t: the first SplitMix64 output for
/// seed ^ (t * 0xD1B54A32D192ED03). Trials are independent of how they are
/// spread over workers.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

enum class IidDistribution { Uniform, Exponential, Gumbel };

const char* to_string(IidDistribution d);
IidDistribution parse_iid_distribution(const std::string& s);

struct IidRunConfig {
    std::uint64_t sequence_length = 1;  // N
    std::uint64_t trials = 1;
    IidDistribution distribution = IidDistribution::Exponential;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct IidResult {
    double mean_records = 0;
    double stddev_records = 0;  // sample, n-1 denominator
    double standard_error = 0;  // stddev / sqrt(trials)
    Histogram histogram;        // unit-width bins centred on each count
};

/// Counts strict records (first element is record 1) in `trials`
/// independent sequences of N draws.
IidResult simulate_record_counts(const IidRunConfig& cfg);

/// H_N = sum_{k<=N} 1/k, the expected record count of N continuous i.i.d.
/// draws. Exact summation up to 10^6, asymptotic expansion beyond.
double expected_iid_records(std::uint64_t n);

}  // namespace apgap
