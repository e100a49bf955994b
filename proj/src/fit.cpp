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

#include "apgap/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "apgap/arith.hpp"
#include "apgap/error.hpp"

namespace apgap {

namespace {

// Least-squares solution of design * coef = rhs. Throws SingularSystem when
// the design matrix is rank deficient.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& rhs) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-12);
    if (qr.rank() < design.cols()) throw SingularSystem("least-squares system is rank deficient");
    return qr.solve(rhs);
}

double rms(const Eigen::VectorXd& residual) {
    return std::sqrt(residual.squaredNorm() / static_cast<double>(residual.size()));
}

struct Line {
    double intercept = 0;
    double slope = 0;
    double rms_residual = 0;
};

Line fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    const auto m = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd design(m, 2);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = xs[static_cast<std::size_t>(i)];
        rhs(i) = ys[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd coef = least_squares(design, rhs);
    return {coef(0), coef(1), rms(design * coef - rhs)};
}

double sample_mean(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_stddev(std::span<const double> v, double mean) {
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

constexpr double kSqrt6 = 2.44948974278317809820;

}  // namespace

QuadFit fit_quadratic(std::span<const FitPoint> points, QuadForm form) {
    const Eigen::Index cols = form == QuadForm::TwoTerm ? 2 : 3;
    if (static_cast<Eigen::Index>(points.size()) < cols) {
        throw InsufficientPoints("quadratic fit needs at least " + std::to_string(cols) +
                                 " points");
    }
    const auto m = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd design(m, cols);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double n = points[static_cast<std::size_t>(i)].x;
        design(i, 0) = n * n;
        design(i, 1) = n;
        if (cols == 3) design(i, 2) = 1.0;
        rhs(i) = points[static_cast<std::size_t>(i)].y;
    }
    const Eigen::VectorXd coef = least_squares(design, rhs);
    QuadFit fit;
    fit.form = form;
    fit.a = coef(0);
    fit.b = coef(1);
    fit.c = cols == 3 ? coef(2) : 0.0;
    fit.rms_residual = rms(design * coef - rhs);
    return fit;
}

double GumbelParams::pdf(double x) const {
    const double z = (x - mu) / beta;
    return std::exp(-(z + std::exp(-z))) / beta;
}

double GumbelParams::mean() const { return mu + MathConstants::euler_gamma * beta; }

double GumbelParams::stddev() const { return std::numbers::pi * beta / kSqrt6; }

GumbelParams fit_gumbel(std::span<const double> values, GumbelMethod method) {
    if (values.size() < 2) throw DegenerateInput("Gumbel fit needs at least 2 values");
    const double mean = sample_mean(values);
    const double sd = sample_stddev(values, mean);
    const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
    if (!(sd > 0) || *min_it == *max_it) throw DegenerateInput("Gumbel fit of constant data");

    GumbelParams out;
    out.method = method;
    if (method == GumbelMethod::Moments) {
        out.beta = sd * kSqrt6 / std::numbers::pi;
        out.mu = mean - MathConstants::euler_gamma * out.beta;
        return out;
    }

    // Weights are shifted by the minimum so exp() never overflows.
    const double xmin = *min_it;
    auto weighted_mean = [&](double beta) {
        double num = 0, den = 0;
        for (double x : values) {
            const double w = std::exp(-(x - xmin) / beta);
            num += x * w;
            den += w;
        }
        return num / den;
    };
    // Score for beta: positive below the root, negative above it.
    auto score = [&](double beta) { return mean - weighted_mean(beta) - beta; };

    double lo = sd * 1e-6;
    double hi = sd;
    while (score(lo) <= 0 && lo > std::numeric_limits<double>::min() * 1e6) lo *= 0.5;
    for (int i = 0; i < 200 && score(hi) > 0; ++i) hi *= 2.0;
    if (score(lo) <= 0 || score(hi) > 0) throw DegenerateInput("Gumbel MLE: no bracketing interval");
    for (int i = 0; i < 300 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (score(mid) > 0 ? lo : hi) = mid;
    }
    out.beta = 0.5 * (lo + hi);
    double acc = 0;
    for (double x : values) acc += std::exp(-(x - xmin) / out.beta);
    out.mu = xmin - out.beta * std::log(acc / static_cast<double>(values.size()));
    return out;
}

double LognormalParams::pdf(double x) const {
    if (x <= 0) return 0.0;
    const double z = (std::log(x) - log_mu) / log_sigma;
    return std::exp(-0.5 * z * z) / (x * log_sigma * std::sqrt(2.0 * std::numbers::pi));
}

double LognormalParams::skewness() const {
    const double w = std::exp(log_sigma * log_sigma);
    return (w + 2.0) * std::sqrt(w - 1.0);
}

LognormalParams fit_lognormal(std::span<const double> values) {
    if (values.size() < 2) throw DegenerateInput("lognormal fit needs at least 2 values");
    std::vector<double> logs;
    logs.reserve(values.size());
    for (double v : values) {
        if (!(v > 0)) throw NonPositiveValue("lognormal fit requires positive values");
        logs.push_back(std::log(v));
    }
    LognormalParams out;
    out.log_mu = sample_mean(logs);
    out.log_sigma = sample_stddev(logs, out.log_mu);
    if (!(out.log_sigma > 1e-12 * std::max(1.0, std::fabs(out.log_mu)))) {
        throw DegenerateInput("lognormal fit of constant data");
    }
    return out;
}

double PowerLawFit::operator()(double n) const { return c * std::pow(n, -alpha); }

double PowerLawFit::n_at(double level) const {
    if (alpha <= 0) return std::numeric_limits<double>::infinity();
    return std::pow(c / level, 1.0 / alpha);
}

PowerLawFit fit_power_law(std::span<const FitPoint> points) {
    if (points.size() < 2) throw InsufficientPoints("power-law fit needs at least 2 points");
    std::vector<double> lx, ly;
    for (const auto& p : points) {
        if (!(p.x > 0) || !(p.y > 0)) throw NonPositiveValue("power-law fit requires n > 0, s > 0");
        lx.push_back(std::log(p.x));
        ly.push_back(std::log(p.y));
    }
    const Line line = fit_line(lx, ly);
    return {std::exp(line.intercept), -line.slope, line.rms_residual};
}

double TauModelFit::operator()(double x) const { return limit() - kappa / (std::log(x) - delta); }

TauModelFit fit_tau_model(std::span<const FitPoint> points) {
    std::vector<double> lx, z;
    for (const auto& p : points) {
        if (!(p.y < TauModelFit::limit())) continue;
        if (!(p.x > 0)) throw NonPositiveValue("tau model needs x > 0");
        lx.push_back(std::log(p.x));
        z.push_back(1.0 / (2.0 - p.y));
    }
    if (lx.size() < 2) {
        throw InsufficientPoints("tau model needs at least 2 points with tau_hat < 2, got " +
                                 std::to_string(lx.size()));
    }
    const Line line = fit_line(lx, z);
    if (line.slope == 0.0) throw SingularSystem("tau model: zero slope in ln x");
    TauModelFit out;
    out.kappa = 1.0 / line.slope;
    out.delta = -line.intercept * out.kappa;
    out.points_used = lx.size();
    return out;
}

}  // namespace apgap
