// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cantornet/recursive.hpp"

using namespace cantor;

TEST_CASE("generating function branch values") {
    CHECK(generating_function(Rational(0)) == Rational(1));
    CHECK(generating_function(Rational(1, 2)) == Rational(0));
    CHECK(generating_function(Rational(1, 9)) == Rational(2, 3));
    CHECK(generating_function(Rational(1)) == Rational(1));
    CHECK(generating_function(Rational(1, 3)) == Rational(0));
    CHECK(generating_function(Rational(2, 3)) == Rational(0));
    CHECK_THROWS_AS(generating_function(Rational(-1, 10)), std::domain_error);
    CHECK_THROWS_AS(generating_function(Rational(11, 10)), std::domain_error);
}

TEST_CASE("nested composition") {
    for (int k = 1; k <= 8; ++k) CHECK(nested_generating(Rational(0), k) == Rational(1));
    CHECK(nested_generating(Rational(1, 2), 2) == Rational(1));
    CHECK(nested_generating(Rational(1, 9), 2) == Rational(0));
    CHECK_THROWS_AS(nested_generating(Rational(1, 2), 0), std::invalid_argument);
}

TEST_CASE("range and mirror symmetry of the generator") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> num(0, 6560);
    for (int i = 0; i < 300; ++i) {
        const Rational x(num(rng), 6561);
        const Rational ax = generating_function(x);
        CHECK(ax.sign() >= 0);
        CHECK(ax <= Rational(1));
        CHECK(ax == generating_function(Rational(1) - x));
        const int k = 1 + static_cast<int>(num(rng) % 6);
        CHECK(boundary_height(x, k) == boundary_height(Rational(1) - x, k));
        CHECK(nested_generating(x, k) >= Rational(0));
        CHECK(nested_generating(x, k) <= Rational(1));
    }
}

TEST_CASE("boundary height values") {
    CHECK(boundary_height(Rational(0), 1) == Rational(1));
    CHECK(boundary_height(Rational(0), 5) == Rational(1));
    CHECK(boundary_height(Rational(1, 2), 1) == Rational(1, 2));
    CHECK(boundary_height(Rational(1, 2), 2) == Rational(1));
    // range is [1/2, 1]
    for (int i = 0; i <= 30; ++i) {
        const Rational b = boundary_height(Rational(i, 30), 3);
        CHECK(b >= Rational(1, 2));
        CHECK(b <= Rational(1));
    }
}

TEST_CASE("membership oracle with closed boundary") {
    CHECK(membership_oracle(Rational(1, 2), Rational(3, 5), 1) == ManifoldLabel::Outset);
    CHECK(membership_oracle(Rational(1, 2), Rational(1, 2), 1) == ManifoldLabel::Inset);
    for (int k = 1; k <= 6; ++k)
        CHECK(membership_oracle(Rational(0), Rational(1), k) == ManifoldLabel::Inset);
}

TEST_CASE("recursive net blueprint carries the fixed constants") {
    const RecursiveBlueprint& bp = recursive_blueprint();
    CHECK(bp.w1 == RMat{{Rational(-3), Rational(0)}, {Rational(3), Rational(0)},
                        {Rational(0), Rational(1)}});
    CHECK(bp.b1 == RVec{Rational(1), Rational(-2), Rational(0)});
    CHECK(bp.w2 == RMat{{Rational(1), Rational(1), Rational(0)},
                        {Rational(0), Rational(0), Rational(1)}});
    CHECK(bp.wl == RMat{{Rational(-1, 2), Rational(1)}});
    CHECK(bp.bl == RVec{Rational(-1, 2)});
}

TEST_CASE("recursive net structure") {
    for (int k = 1; k <= 12; ++k) {
        const ReluNetwork net = build_recursive_net(k);
        CHECK(net.hidden_neuron_count() == 5 * static_cast<std::size_t>(k));
        CHECK(net.affine_layer_count() == 2 * static_cast<std::size_t>(k) + 1);
        CHECK(net.final_clamp());
    }
    CHECK_THROWS_AS(build_recursive_net(0), std::invalid_argument);
}

TEST_CASE("level-1 outset point evaluates to its exact margin") {
    const ReluNetwork net = build_recursive_net(1);
    // boundary_height(1/6, 1) = 3/4 and 9/10 > 3/4: outset with margin 3/20
    CHECK(boundary_height(Rational(1, 6), 1) == Rational(3, 4));
    CHECK(forward_value(net, {Rational(1, 6), Rational(9, 10)}) == RVec{Rational(3, 20)});
    CHECK(membership_oracle(Rational(1, 6), Rational(9, 10), 1) == ManifoldLabel::Outset);
}

TEST_CASE("zero-preimage equals the membership oracle on random rational points") {
    std::mt19937_64 rng(20240518);
    for (int k = 1; k <= 6; ++k) {
        const ReluNetwork net = build_recursive_net(k);
        std::uniform_int_distribution<std::int64_t> xi(0, 729);
        std::uniform_int_distribution<std::int64_t> yi(0, 257);
        for (int i = 0; i < 170; ++i) {
            const Rational x(xi(rng), 729);
            const Rational y(yi(rng), 257);
            const bool net_inset = forward_value(net, {x, y})[0].is_zero();
            const bool oracle_inset = membership_oracle(x, y, k) == ManifoldLabel::Inset;
            CHECK(net_inset == oracle_inset);
        }
    }
}

TEST_CASE("net output equals the clamped distance above the decision curve") {
    std::mt19937_64 rng(606);
    for (int k = 1; k <= 8; ++k) {
        const ReluNetwork net = build_recursive_net(k);
        for (int i = 0; i < 80; ++i) {
            const Rational x(static_cast<std::int64_t>(rng() % 2188), 2187);
            const Rational y(static_cast<std::int64_t>(rng() % 129), 128);
            CHECK(forward_value(net, {x, y}) ==
                  RVec{clamp_at_zero(y - boundary_height(x, k))});
        }
    }
}

TEST_CASE("1-d variant computes the nested generator") {
    for (int k = 1; k <= 6; ++k) {
        const ReluNetwork net = build_recursive_net_1d(k);
        CHECK(net.hidden_neuron_count() == 3 * static_cast<std::size_t>(k));
        CHECK(net.affine_layer_count() == 2 * static_cast<std::size_t>(k) + 1);
        for (int i = 0; i <= 27; ++i) {
            const Rational x(i, 27);
            CHECK(forward_value(net, {x}) == RVec{nested_generating(x, k)});
        }
    }
}

TEST_CASE("1-d patterns are the x-neuron bits of the 2-d patterns") {
    std::mt19937_64 rng(607);
    for (int k = 1; k <= 6; ++k) {
        const ReluNetwork net1 = build_recursive_net_1d(k);
        const ReluNetwork net2 = build_recursive_net(k);
        for (int i = 0; i < 40; ++i) {
            const Rational x(static_cast<std::int64_t>(rng() % 730), 729);
            const auto p1 = activation_pattern(net1, {x}).bits;
            const auto p2 = activation_pattern(net2, {x, Rational(1, 10)}).bits;
            REQUIRE(p1.size() == 3 * static_cast<std::size_t>(k));
            REQUIRE(p2.size() == 5 * static_cast<std::size_t>(k));
            for (std::size_t b = 0; b < static_cast<std::size_t>(k); ++b) {
                // block layout: 2-d (x1, x2, y, sum, y) vs 1-d (x1, x2, sum)
                CHECK(p1[3 * b] == p2[5 * b]);
                CHECK(p1[3 * b + 1] == p2[5 * b + 1]);
                CHECK(p1[3 * b + 2] == p2[5 * b + 3]);
            }
        }
    }
}

TEST_CASE("1-d variant block patterns") {
    CHECK(activation_pattern(build_recursive_net_1d(1), {Rational(1, 6)}).str() == "101");
    // x = 1/4 is a fixed point of the left branch map: blocks repeat
    CHECK(activation_pattern(build_recursive_net_1d(2), {Rational(1, 4)}).str_blocks(3) ==
          "101;101");
    CHECK(activation_pattern(build_recursive_net_1d(4), {Rational(1, 4)}).str_blocks(3) ==
          "101;101;101;101");
    // x = 1/2 drops into the middle interval immediately, then walks 0 -> 1 -> 1
    CHECK(activation_pattern(build_recursive_net_1d(3), {Rational(1, 2)}).str_blocks(3) ==
          "000;101;011");
}
