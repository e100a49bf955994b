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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "apgap/records.hpp"

namespace apgap {

/// Conventions recorded alongside every summary so figures built from the
/// numbers are reproducible.
inline constexpr const char* kQuartileRule = "tukey_hinges";
inline constexpr const char* kSkewnessRule = "g1_population_moments";

struct SummaryStats {
    std::size_t count = 0;
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
    double mean = 0;
    double stddev = 0;    // sample, n-1 denominator (0 for a single value)
    double skewness = 0;  // g1; 0 when degenerate
    bool degenerate = false;  // fewer than 3 values or zero variance
};

struct Histogram {
    std::vector<double> bin_edges;
    std::vector<std::size_t> counts;
    std::size_t total = 0;

    double bin_width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
    double bin_center(std::size_t i) const { return 0.5 * (bin_edges[i] + bin_edges[i + 1]); }
    /// Empirical density count / (total * width) for bin i.
    double density(std::size_t i) const;
};

SummaryStats summarize(std::span<const double> values);

/// g1 = m3 / m2^(3/2) with population moments. Throws DegenerateInput for
/// fewer than three values or constant data.
double skewness(std::span<const double> values);

double median(std::span<const double> values);

/// Tukey hinges of sorted data: medians of the lower and upper halves, each
/// half including the middle element when the count is odd.
std::pair<double, double> tukey_hinges(std::span<const double> sorted);

/// Equal-width bins over [min, max]. bin_count = nullopt selects the
/// Freedman-Diaconis width, falling back to ceil(sqrt(N)) bins when the
/// interquartile range is zero.
Histogram histogram(std::span<const double> values, std::optional<std::size_t> bin_count);

/// The j-th smallest (1-based) of observed values together with
/// right-censored values known only through lower bounds. Returns nullopt
/// when the censored values could occupy position j.
std::optional<double> censored_order_statistic(std::span<const double> observed,
                                               std::span<const double> lower_bounds,
                                               std::size_t j);

std::optional<double> censored_median(std::span<const double> observed,
                                       std::span<const double> lower_bounds);

/// Median over every admissible residue, with residues that lack the n-th
/// record entering as right-censored lower bounds. Returns nullopt when the
/// censoring leaves the median undetermined or residues are missing.
std::optional<double> censored_median(const Ensemble& ens);

}  // namespace apgap
