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

#include "apgap/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "apgap/error.hpp"

namespace apgap {

namespace {

double median_of_sorted(std::span<const double> s) {
    const std::size_t n = s.size();
    return n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

std::vector<double> sorted_copy(std::span<const double> values) {
    std::vector<double> s(values.begin(), values.end());
    std::sort(s.begin(), s.end());
    return s;
}

struct Moments {
    double mean = 0, m2 = 0, m3 = 0;
};

Moments central_moments(std::span<const double> values) {
    Moments m;
    const auto n = static_cast<double>(values.size());
    m.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    for (double v : values) {
        const double d = v - m.mean;
        m.m2 += d * d;
        m.m3 += d * d * d;
    }
    m.m2 /= n;
    m.m3 /= n;
    return m;
}

// Relative threshold below which the variance is treated as zero.
bool negligible_variance(const Moments& m, std::span<const double> values) {
    double scale = 0;
    for (double v : values) scale = std::max(scale, std::fabs(v));
    return m.m2 <= 1e-24 * scale * scale || m.m2 == 0.0;
}

}  // namespace

double Histogram::density(std::size_t i) const {
    const double w = bin_width(i);
    if (total == 0 || w <= 0) return 0.0;
    return static_cast<double>(counts[i]) / (static_cast<double>(total) * w);
}

double median(std::span<const double> values) {
    if (values.empty()) throw EmptyInput("median of empty data");
    return median_of_sorted(sorted_copy(values));
}

std::pair<double, double> tukey_hinges(std::span<const double> sorted) {
    if (sorted.empty()) throw EmptyInput("hinges of empty data");
    const std::size_t n = sorted.size();
    const std::size_t half = (n + 1) / 2;
    return {median_of_sorted(sorted.first(half)), median_of_sorted(sorted.last(half))};
}

SummaryStats summarize(std::span<const double> values) {
    if (values.empty()) throw EmptyInput("summarize: no values");
    const auto s = sorted_copy(values);
    SummaryStats out;
    out.count = s.size();
    out.min = s.front();
    out.max = s.back();
    out.median = median_of_sorted(s);
    std::tie(out.q1, out.q3) = tukey_hinges(s);

    const Moments m = central_moments(s);
    out.mean = m.mean;
    const auto n = static_cast<double>(s.size());
    out.stddev = s.size() > 1 ? std::sqrt(m.m2 * n / (n - 1)) : 0.0;
    out.degenerate = s.size() < 3 || negligible_variance(m, s);
    out.skewness = out.degenerate ? 0.0 : m.m3 / std::pow(m.m2, 1.5);
    return out;
}

double skewness(std::span<const double> values) {
    if (values.size() < 3) throw DegenerateInput("skewness needs at least 3 values");
    const Moments m = central_moments(values);
    if (negligible_variance(m, values)) throw DegenerateInput("skewness of constant data");
    return m.m3 / std::pow(m.m2, 1.5);
}

Histogram histogram(std::span<const double> values, std::optional<std::size_t> bin_count) {
    if (values.empty()) throw EmptyInput("histogram: no values");
    if (bin_count && *bin_count == 0) throw InvalidConfig("histogram: bin_count must be >= 1");
    const auto s = sorted_copy(values);
    const double lo = s.front();
    const double hi = s.back();
    const std::size_t n = s.size();

    std::size_t bins = 0;
    if (bin_count) {
        bins = *bin_count;
    } else {
        const auto [h1, h3] = tukey_hinges(s);
        const double iqr = h3 - h1;
        if (iqr > 0 && hi > lo) {
            const double width = 2.0 * iqr / std::cbrt(static_cast<double>(n));
            bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
        } else {
            bins = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
        }
        bins = std::max<std::size_t>(bins, 1);
    }

    Histogram h;
    h.total = n;
    h.counts.assign(bins, 0);
    // A zero-width range gets a unit-width bin centred on the value.
    const double left = hi > lo ? lo : lo - 0.5;
    const double right = hi > lo ? hi : hi + 0.5;
    const double width = (right - left) / static_cast<double>(bins);
    h.bin_edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) h.bin_edges[i] = left + width * static_cast<double>(i);
    h.bin_edges.back() = right;
    for (double v : s) {
        auto idx = static_cast<std::size_t>((v - left) / width);
        if (idx >= bins) idx = bins - 1;  // the maximum lands in the last bin
        ++h.counts[idx];
    }
    return h;
}

std::optional<double> censored_order_statistic(std::span<const double> observed,
                                               std::span<const double> lower_bounds,
                                               std::size_t j) {
    const std::size_t total = observed.size() + lower_bounds.size();
    if (j < 1 || j > total) throw InvalidConfig("order statistic index out of range");
    if (observed.size() < j) return std::nullopt;
    auto s = sorted_copy(observed);
    const double candidate = s[j - 1];
    for (double lb : lower_bounds) {
        if (lb < candidate) return std::nullopt;
    }
    return candidate;
}

std::optional<double> censored_median(std::span<const double> observed,
                                      std::span<const double> lower_bounds) {
    const std::size_t total = observed.size() + lower_bounds.size();
    if (total == 0) throw EmptyInput("median of empty data");
    const auto lo = censored_order_statistic(observed, lower_bounds, (total + 1) / 2);
    const auto hi = censored_order_statistic(observed, lower_bounds, total / 2 + 1);
    if (!lo || !hi) return std::nullopt;
    return 0.5 * (*lo + *hi);
}

std::optional<double> censored_median(const Ensemble& ens) {
    if (ens.q == 0) return std::nullopt;
    if (ens.values.size() + ens.censored.size() != totient(ens.q)) return std::nullopt;
    std::vector<double> bounds;
    bounds.reserve(ens.censored.size());
    for (const auto& c : ens.censored) bounds.push_back(static_cast<double>(c.gap));
    return censored_median(ens.gaps(), bounds);
}

}  // namespace apgap
