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

#include "apgap/arith.hpp"

#include <cmath>
#include <string>

#include "apgap/error.hpp"

namespace apgap {

double MathConstants::gumbel_skewness() {
    return 12.0 * std::sqrt(6.0) * zeta3 / (pi * pi * pi);
}

u64 gcd(u64 a, u64 b) {
    while (b != 0) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 totient(u64 q) {
    u64 result = q;
    u64 n = q;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

u64 mod_inverse(i64 a, u64 m) {
    if (m < 2) throw DomainError("mod_inverse: modulus must be >= 2");
    const auto sm = static_cast<i64>(m);
    i64 a_red = a % sm;
    if (a_red < 0) a_red += sm;

    // Extended Euclid on (a_red, m), tracking only the coefficient of a.
    i64 old_r = a_red, r = sm;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        i64 quot = old_r / r;
        i64 tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) {
        throw NotInvertible("mod_inverse: gcd(" + std::to_string(a) + ", " +
                            std::to_string(m) + ") != 1");
    }
    old_s %= sm;
    if (old_s < 0) old_s += sm;
    return static_cast<u64>(old_s);
}

double log_integral(double x) {
    if (!(x >= 2.0)) throw DomainError("log_integral: requires x >= 2");

    // li(x) = gamma + ln ln x + sqrt(x) * sum_{n>=1} (-1)^(n-1) (ln x)^n
    //         / (n! 2^(n-1)) * sum_{k=0}^{floor((n-1)/2)} 1/(2k+1)
    using ld = long double;
    const ld lx = std::log(static_cast<ld>(x));
    ld term = 1.0L;  // (ln x)^n / (n! 2^(n-1)), built incrementally
    ld inner = 0.0L;
    ld sum = 0.0L;
    for (int n = 1; n < 1000; ++n) {
        term *= (n == 1) ? lx : lx / (2.0L * n);
        if ((n - 1) % 2 == 0) inner += 1.0L / static_cast<ld>(n);
        const ld contrib = term * inner;
        sum += (n % 2 == 1) ? contrib : -contrib;
        if (n > lx && std::fabs(contrib) < std::fabs(sum) * 1e-21L) break;
    }
    const ld gamma = 0.577215664901532860606512090082402431L;
    return static_cast<double>(gamma + std::log(lx) + std::sqrt(static_cast<ld>(x)) * sum);
}

u64 checked_mul(u64 a, u64 b) {
    u64 out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("64-bit multiplication overflow");
    return out;
}

u64 checked_add(u64 a, u64 b) {
    u64 out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("64-bit addition overflow");
    return out;
}

u64 isqrt(u64 n) {
    auto s = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (s > 0 && (s > n / s)) --s;
    while ((s + 1) <= n / (s + 1)) ++s;
    return s;
}

}  // namespace apgap
