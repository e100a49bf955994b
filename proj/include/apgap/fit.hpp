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
#include <span>

namespace apgap {

struct FitPoint {
    double x = 0;
    double y = 0;
};

enum class QuadForm { TwoTerm, ThreeTerm };

/// y ~ a n^2 + b n (+ c). Two-term fits keep c = 0.
struct QuadFit {
    double a = 0, b = 0, c = 0;
    double rms_residual = 0;
    QuadForm form = QuadForm::TwoTerm;

    double operator()(double n) const { return (a * n + b) * n + c; }
};

QuadFit fit_quadratic(std::span<const FitPoint> points, QuadForm form);

enum class GumbelMethod { Moments, Mle };

struct GumbelParams {
    double mu = 0;
    double beta = 1;
    GumbelMethod method = GumbelMethod::Moments;

    double pdf(double x) const;
    double mean() const;
    double stddev() const;
};

/// Moments: beta = s*sqrt(6)/pi, mu = mean - gamma*beta with s the sample
/// standard deviation. Mle: the scale solves
///     beta = mean(x) - sum x_i e^{-x_i/beta} / sum e^{-x_i/beta}
/// by bisection on a sign-changing bracket, then mu is closed form.
GumbelParams fit_gumbel(std::span<const double> values,
                        GumbelMethod method = GumbelMethod::Moments);

struct LognormalParams {
    double log_mu = 0;
    double log_sigma = 1;

    double pdf(double x) const;
    /// Model skewness (e^{s^2} + 2) sqrt(e^{s^2} - 1).
    double skewness() const;
};

LognormalParams fit_lognormal(std::span<const double> values);

/// s ~ c n^(-alpha), fitted linearly in (ln n, ln s).
struct PowerLawFit {
    double c = 1;
    double alpha = 0;
    double rms_log_residual = 0;

    double operator()(double n) const;
    /// The n at which the model reaches `level`: (c/level)^(1/alpha).
    double n_at(double level) const;
};

PowerLawFit fit_power_law(std::span<const FitPoint> points);

/// tau(x) ~ 2 - kappa / (ln x - delta).
struct TauModelFit {
    double kappa = 0;
    double delta = 0;
    std::size_t points_used = 0;

    double operator()(double x) const;
    static constexpr double limit() { return 2.0; }
};

/// Points with tau_hat >= 2 are dropped (the linearization
/// 1/(2 - tau) = ln(x)/kappa - delta/kappa has its pole there).
TauModelFit fit_tau_model(std::span<const FitPoint> points);

}  // namespace apgap
