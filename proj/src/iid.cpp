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

#include "apgap/iid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "apgap/arith.hpp"
#include "apgap/error.hpp"
#include "apgap/parallel.hpp"

namespace apgap {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& w : s_) w = sm.next();
}

std::uint64_t Xoshiro256StarStar::next() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Xoshiro256StarStar::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Xoshiro256StarStar::uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return SplitMix64(seed ^ (trial * 0xD1B54A32D192ED03ULL)).next();
}

const char* to_string(IidDistribution d) {
    switch (d) {
        case IidDistribution::Uniform: return "uniform";
        case IidDistribution::Exponential: return "exponential";
        case IidDistribution::Gumbel: return "gumbel";
    }
    return "?";
}

IidDistribution parse_iid_distribution(const std::string& s) {
    if (s == "uniform") return IidDistribution::Uniform;
    if (s == "exponential") return IidDistribution::Exponential;
    if (s == "gumbel") return IidDistribution::Gumbel;
    throw InvalidConfig("unknown distribution '" + s + "'");
}

namespace {

double draw(Xoshiro256StarStar& rng, IidDistribution d) {
    switch (d) {
        case IidDistribution::Uniform: return rng.uniform();
        case IidDistribution::Exponential: return -std::log1p(-rng.uniform());
        case IidDistribution::Gumbel: return -std::log(-std::log(rng.uniform_open()));
    }
    return 0.0;
}

std::uint64_t count_records(std::uint64_t n, IidDistribution d, std::uint64_t seed) {
    Xoshiro256StarStar rng(seed);
    double best = draw(rng, d);
    std::uint64_t records = 1;
    for (std::uint64_t i = 1; i < n; ++i) {
        const double v = draw(rng, d);
        if (v > best) {
            best = v;
            ++records;
        }
    }
    return records;
}

}  // namespace

IidResult simulate_record_counts(const IidRunConfig& cfg) {
    if (cfg.sequence_length < 1) throw InvalidConfig("sequence_length must be >= 1");
    if (cfg.trials < 1) throw InvalidConfig("trials must be >= 1");

    std::vector<std::uint64_t> counts(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
        counts[t] = count_records(cfg.sequence_length, cfg.distribution, trial_seed(cfg.seed, t));
    });

    IidResult out;
    double sum = 0;
    for (auto c : counts) sum += static_cast<double>(c);
    const auto trials = static_cast<double>(cfg.trials);
    out.mean_records = sum / trials;
    double ss = 0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - out.mean_records;
        ss += d * d;
    }
    out.stddev_records = cfg.trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;
    out.standard_error = out.stddev_records / std::sqrt(trials);

    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    Histogram& h = out.histogram;
    h.total = counts.size();
    for (std::uint64_t v = *lo; v <= *hi + 1; ++v) h.bin_edges.push_back(static_cast<double>(v) - 0.5);
    h.counts.assign(*hi - *lo + 1, 0);
    for (auto c : counts) ++h.counts[c - *lo];
    return out;
}

double expected_iid_records(std::uint64_t n) {
    if (n < 1) throw DomainError("expected_iid_records: N must be >= 1");
    if (n <= 1'000'000) {
        long double h = 0;
        for (std::uint64_t k = n; k >= 1; --k) h += 1.0L / static_cast<long double>(k);
        return static_cast<double>(h);
    }
    const auto x = static_cast<long double>(n);
    const long double inv2 = 1.0L / (x * x);
    return static_cast<double>(std::log(x) + static_cast<long double>(MathConstants::euler_gamma) +
                               0.5L / x - inv2 / 12.0L + inv2 * inv2 / 120.0L);
}

}  // namespace apgap
