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

namespace apgap {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Constants used by the statistics layer.
struct MathConstants {
    static constexpr double euler_gamma = 0.57721566490153286061;
    static constexpr double zeta3 = 1.20205690315959428540;
    static constexpr double pi = 3.14159265358979323846;

    /// Skewness of every Gumbel distribution, 12*sqrt(6)*zeta(3)/pi^3.
    static double gumbel_skewness();
};

u64 gcd(u64 a, u64 b);

/// Euler's totient by trial factorization of q.
u64 totient(u64 q);

/// Returns b in [1, m-1] with a*b == 1 (mod m). Throws NotInvertible when
/// gcd(a, m) != 1 and DomainError when m < 2.
u64 mod_inverse(i64 a, u64 m);

/// Logarithmic integral li(x) = PV int_0^x dt/ln t, for x >= 2.
///
/// Evaluated with Ramanujan's series in ln x using extended precision. The
/// absolute error stays below 1e-9 while li(x) is small enough for that to
/// be representable (x up to ~1e8); beyond that the relative error is at
/// the level of the long double epsilon.
double log_integral(double x);

// Overflow-checked helpers for progression terms r + k*q.
u64 checked_mul(u64 a, u64 b);
u64 checked_add(u64 a, u64 b);

/// Largest s with s*s <= n.
u64 isqrt(u64 n);

}  // namespace apgap
