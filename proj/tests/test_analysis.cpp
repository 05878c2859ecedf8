// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "cantornet/analysis.hpp"
#include "cantornet/minmax.hpp"
#include "cantornet/recursive.hpp"

using namespace cantor;

TEST_CASE("grid spec parsing and defaults") {
    const GridSpec d2 = GridSpec::default_for(2);
    CHECK(d2.x_den == 81);
    CHECK(d2.y_den == 128);
    CHECK(d2.point_count() == 82 * 129);
    const GridSpec g = GridSpec::parse("xden=27,yden=16");
    CHECK(g.x_den == 27);
    CHECK(g.y_den == 16);
    CHECK_THROWS_AS(GridSpec::parse("xden=27"), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::parse("bogus=1,yden=2"), std::invalid_argument);
}

TEST_CASE("all four classifiers agree at level 1, any thread count") {
    const EquivalenceReport r1 = equivalence_check(1, GridSpec::default_for(1), 1);
    CHECK(r1.pass);
    CHECK(r1.mismatches.empty());
    CHECK(r1.points == 28 * 129);
    const EquivalenceReport r2 = equivalence_check(1, GridSpec::default_for(1), 2);
    CHECK(r2.pass);
    CHECK(r2.points == r1.points);
}

TEST_CASE("a corrupted dent line is caught") {
    const int k = 2;
    const ReluNetwork rec = build_recursive_net(k);
    DnfExpression expr = build_dnf(k);
    expr.dents[0].flat.c += Rational(1, 7);
    const ReluNetwork compiled = dnf_to_relu(expr);
    const EquivalenceReport r = equivalence_check(k, GridSpec::default_for(k), rec, expr,
                                                  compiled, 2);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.mismatches.empty());
}

TEST_CASE("mismatch ordering is deterministic across thread counts") {
    const int k = 2;
    const ReluNetwork rec = build_recursive_net(k);
    DnfExpression expr = build_dnf(k);
    expr.dents[1].ascend.c -= Rational(1, 11);
    const ReluNetwork compiled = dnf_to_relu(expr);
    const GridSpec grid = GridSpec::default_for(k);
    const EquivalenceReport r1 = equivalence_check(k, grid, rec, expr, compiled, 1);
    const EquivalenceReport r3 = equivalence_check(k, grid, rec, expr, compiled, 3);
    const EquivalenceReport r8 = equivalence_check(k, grid, rec, expr, compiled, 8);
    CHECK_FALSE(r1.pass);
    CHECK(to_csv(r1) == to_csv(r3));
    CHECK(to_csv(r1) == to_csv(r8));
}

TEST_CASE("equivalence CSV lists one row per mismatch") {
    const int k = 1;
    DnfExpression expr = build_dnf(k);
    expr.dents[0].flat.c = Rational(1, 3);
    const EquivalenceReport r = equivalence_check(k, GridSpec{27, 8}, build_recursive_net(k),
                                                  expr, dnf_to_relu(expr), 1);
    const std::string csv = to_csv(r);
    CHECK(csv.rfind("x,y,oracle,recursive,dnf,compiled\n", 0) == 0);
    std::size_t lines = 0;
    for (const char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == r.mismatches.size() + 1);
    CHECK(to_json_string(r).find("\"pass\": false") != std::string::npos);
}

TEST_CASE("region enumeration: identity net has one region") {
    const ReluNetwork net(
        {AffineLayer({{Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
                     {Rational(0), Rational(0)})},
        false);
    const RegionReport r = region_enumeration(net, GridSpec{9, 9}, 1);
    CHECK(r.entries.size() == 1);
    CHECK(r.gradient_violations == 0);
    CHECK(r.entries[0].samples == 100);
}

TEST_CASE("region enumeration: every level-1 group carries one affine map") {
    const RegionReport r = region_enumeration(build_recursive_net(1), GridSpec::default_for(1), 2);
    CHECK(r.gradient_violations == 0);
    CHECK(r.entries.size() > 1);
    std::int64_t total = 0;
    for (const auto& e : r.entries) total += e.samples;
    CHECK(total == GridSpec::default_for(1).point_count());
}

TEST_CASE("level-k Cantor intervals give 2^k distinct 1-d codes") {
    for (int k = 1; k <= 6; ++k) {
        // midpoints of the 2^k surviving intervals of the classic construction
        std::vector<Rational> mids = {Rational(1, 2)};
        for (int level = 0; level < k; ++level) {
            std::vector<Rational> next;
            for (const auto& m : mids) {
                next.push_back(m / Rational(3));
                next.push_back(m / Rational(3) + Rational(2, 3));
            }
            mids = std::move(next);
        }
        const ReluNetwork net = build_recursive_net_1d(k);
        std::set<std::vector<std::uint8_t>> patterns;
        for (const auto& x : mids) patterns.insert(activation_pattern(net, {x}).bits);
        CHECK(mids.size() == std::size_t{1} << k);
        CHECK(patterns.size() == mids.size());
    }
}

TEST_CASE("complexity rows satisfy the closed forms") {
    const auto rows = complexity_report(8, 5);
    REQUIRE(rows.size() == 8);
    for (const auto& row : rows) {
        CHECK(row.recursive_neurons == 5 * row.k);
        CHECK(row.recursive_layers == 2 * row.k + 1);
        CHECK(row.r_k == (std::int64_t{1} << (row.k + 1)) - 1);
        CHECK(row.z_k == 3 * (row.r_k / 4) + 6);
        if (row.k <= 5) {
            CHECK(row.dnf_neurons >= (std::int64_t{1} << row.k));
            CHECK(row.dnf_layers > 0);
        } else {
            CHECK(row.dnf_neurons == 0);
        }
    }
    const std::string csv = to_csv(rows);
    CHECK(csv.rfind("k,recursive_neurons,recursive_layers,dnf_neurons,dnf_layers,r_k,z_k\n", 0) ==
          0);
}

TEST_CASE("flood fill sees one inset component, no holes") {
    for (int k = 1; k <= 3; ++k) {
        const TopologyReport base = topology_check(k, 2);
        CHECK(base.inset_components == 1);
        CHECK(base.inset_holes == 0);
        CHECK(base.outset_components == 1);
        const TopologyReport fine = topology_check(k, 4);
        CHECK(fine.inset_components == base.inset_components);
        CHECK(fine.inset_holes == base.inset_holes);
        CHECK(fine.outset_components == base.outset_components);
    }
    CHECK_THROWS_AS(topology_check(1, 3), std::invalid_argument);  // odd multiplier
    CHECK(to_json_string(topology_check(1, 2)).find("\"inset_components\": 1") !=
          std::string::npos);
}
