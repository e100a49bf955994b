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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "apgap/bounds.hpp"
#include "apgap/error.hpp"
#include "oracles.hpp"

using namespace apgap;

TEST_CASE("bound_value") {
    // 20*100 + 12*50*ln^2 50
    CHECK(std::fabs(bound_value(50, 10, BoundVariant::QLog2Q) - 11182.3) <= 0.1);
    CHECK(bound_value(1, 5, BoundVariant::QLog2Q) == 25.0);
    CHECK(std::fabs(bound_value(11, 1, BoundVariant::QLog2Q) - 199.8) <= 0.1);
    CHECK(33.0 < bound_value(11, 1, BoundVariant::QLog2Q));
    CHECK(bound_value(50, 10, BoundVariant::PhiLog2Q) ==
          doctest::Approx(2000.0 + 12.0 * 20.0 * std::pow(std::log(50.0), 2)));
}

TEST_CASE("bound_value properties") {
    for (u64 q = 1; q <= 300; ++q) {
        for (u64 n = 1; n <= 30; ++n) {
            const double a = bound_value(q, n, BoundVariant::QLog2Q);
            const double b = bound_value(q, n, BoundVariant::PhiLog2Q);
            REQUIRE(a >= b);
            if (q >= 2) {
                REQUIRE(bound_value(q, n + 1, BoundVariant::QLog2Q) > a);
                REQUIRE(bound_value(q, n + 1, BoundVariant::PhiLog2Q) > b);
            }
        }
    }
}

TEST_CASE("audit_bounds") {
    const auto empty = audit_bounds(std::vector<RecordSet>{}, 10, BoundVariant::QLog2Q);
    CHECK(empty.checked == 0);
    CHECK(empty.exceptions.empty());

    std::vector<RecordSet> sets;
    for (u64 q = 2; q <= 30; ++q) {
        auto s = scan_residues(q, admissible_residues(q), SieveConfig{100'000'000, 1 << 16}, 14);
        sets.insert(sets.end(), s.begin(), s.end());
    }
    const auto main = audit_bounds(sets, 14, BoundVariant::QLog2Q);
    CHECK(main.exceptions.empty());
    CHECK(main.checked > 0);
    CHECK(main.q_min == 2);
    CHECK(main.q_max == 30);

    const auto phi = audit_bounds(sets, 14, BoundVariant::PhiLog2Q);
    CHECK(phi.checked == main.checked);
    REQUIRE_FALSE(phi.exceptions.empty());
    for (const auto& e : phi.exceptions) {
        CHECK(static_cast<double>(e.gap) >= e.bound);
        CHECK(e.bound == bound_value(e.q, e.n, BoundVariant::PhiLog2Q));
    }
    CHECK(std::any_of(phi.exceptions.begin(), phi.exceptions.end(), [](auto& e) { return e.q == 20; }));
    CHECK(std::any_of(phi.exceptions.begin(), phi.exceptions.end(), [](auto& e) { return e.q == 23; }));

    // deterministic and ordered by (q, r, n)
    const auto again = audit_bounds(sets, 14, BoundVariant::PhiLog2Q);
    CHECK(to_csv(again) == to_csv(phi));
    CHECK(to_json(again) == to_json(phi));
    for (std::size_t i = 1; i < phi.exceptions.size(); ++i) {
        const auto& a = phi.exceptions[i - 1];
        const auto& b = phi.exceptions[i];
        CHECK(std::tie(a.q, a.r, a.n) < std::tie(b.q, b.r, b.n));
    }
    const std::string csv = to_csv(phi);
    CHECK(csv.rfind("variant,q,r,n,gap,bound\n", 0) == 0);
    CHECK(csv.find("phi_log2q,20,17,9,1600,") != std::string::npos);

    // the q = 1 progression is outside the inequality's domain
    std::vector<RecordSet> classic{extract_records(Progression{1, 1}, SieveConfig{1000})};
    const auto skipped = audit_bounds(classic, 10, BoundVariant::QLog2Q);
    CHECK(skipped.skipped_sets == 1);
    CHECK(skipped.checked == 0);
}

TEST_CASE("audit counts equality as an exception") {
    RecordSet rs;
    rs.prog = Progression{3, 1};
    rs.x_max = 1000;
    const double b = bound_value(3, 1, BoundVariant::PhiLog2Q);
    rs.events.push_back({1, static_cast<u64>(std::ceil(b)), 7, 7 + static_cast<u64>(std::ceil(b))});
    const auto rep = audit_bounds(std::vector{rs}, 1, BoundVariant::PhiLog2Q);
    CHECK(rep.exceptions.size() == 1);
}

TEST_CASE("classic_reality_check") {
    const auto rs = extract_records(Progression{1, 1}, SieveConfig{1'000'000});
    const auto rows = classic_reality_check(rs);
    // brute-force record gaps between primes < 130
    std::vector<u64> primes;
    for (u64 n = 2; n < 130; ++n) {
        if (oracle::is_prime_trial(n)) primes.push_back(n);
    }
    const auto expected = oracle::records_of(primes);
    REQUIRE(expected.size() == 6);
    REQUIRE(rows.size() >= 6);
    const u64 gaps[] = {1, 2, 4, 6, 8, 14};
    const u64 starts[] = {2, 3, 7, 23, 89, 113};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(rows[i].gap == expected[i].gap);
        CHECK(rows[i].start == expected[i].start);
        CHECK(rows[i].gap == gaps[i]);
        CHECK(rows[i].start == starts[i]);
        CHECK(rows[i].end == starts[i] + gaps[i]);
    }
    for (const auto& r : rows) {
        CHECK(static_cast<double>(r.gap) <= r.n_squared);
        CHECK(r.quad_model == 0.25 * r.n_squared + 0.5 * static_cast<double>(r.n));
    }
    CHECK_THROWS_AS(classic_reality_check(extract_records(Progression{4, 1}, SieveConfig{100})),
                    InvalidProgression);
}

TEST_CASE("variant names") {
    CHECK(parse_bound_variant("q") == BoundVariant::QLog2Q);
    CHECK(parse_bound_variant("phi_log2q") == BoundVariant::PhiLog2Q);
    CHECK_THROWS_AS(parse_bound_variant("x"), InvalidConfig);
}
