// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cantornet/recursive.hpp"

#include <stdexcept>

namespace cantor {

namespace {

void check_unit_interval(const Rational& x, const char* what) {
    if (x.sign() < 0 || x > Rational(1))
        throw std::domain_error(std::string(what) + " outside [0,1]");
}

void check_level(int k) {
    if (k < 1) throw std::invalid_argument("recursion level must be >= 1");
}

}  // namespace

Rational generating_function(const Rational& x) {
    check_unit_interval(x, "x");
    const Rational left = Rational(1) - Rational(3) * x;
    const Rational right = Rational(3) * x - Rational(2);
    Rational v = max(left, right);
    return v.sign() > 0 ? v : Rational(0);
}

Rational nested_generating(const Rational& x, int k) {
    check_level(k);
    check_unit_interval(x, "x");
    Rational v = x;
    for (int i = 0; i < k; ++i) v = generating_function(v);
    return v;
}

Rational boundary_height(const Rational& x, int k) {
    return (nested_generating(x, k) + Rational(1)) / Rational(2);
}

ManifoldLabel membership_oracle(const Rational& x, const Rational& y, int k) {
    check_unit_interval(x, "x");
    check_unit_interval(y, "y");
    return y <= boundary_height(x, k) ? ManifoldLabel::Inset : ManifoldLabel::Outset;
}

const RecursiveBlueprint& recursive_blueprint() {
    static const RecursiveBlueprint bp = {
        {{Rational(-3), Rational(0)}, {Rational(3), Rational(0)}, {Rational(0), Rational(1)}},
        {Rational(1), Rational(-2), Rational(0)},
        {{Rational(1), Rational(1), Rational(0)}, {Rational(0), Rational(0), Rational(1)}},
        {{Rational(-1, 2), Rational(1)}},
        {Rational(-1, 2)},
    };
    return bp;
}

ReluNetwork build_recursive_net(int k) {
    check_level(k);
    const auto& bp = recursive_blueprint();
    std::vector<AffineLayer> layers;
    layers.reserve(2 * static_cast<std::size_t>(k) + 1);
    const RVec zero2 = {Rational(0), Rational(0)};
    for (int i = 0; i < k; ++i) {
        layers.emplace_back(bp.w1, bp.b1);
        layers.emplace_back(bp.w2, zero2);  // second block stage carries no bias
    }
    layers.emplace_back(bp.wl, bp.bl);
    NetMeta meta;
    meta.repr = "recursive";
    meta.k = k;
    return ReluNetwork(std::move(layers), /*final_clamp=*/true, std::move(meta));
}

ReluNetwork build_recursive_net_1d(int k) {
    check_level(k);
    std::vector<AffineLayer> layers;
    layers.reserve(2 * static_cast<std::size_t>(k) + 1);
    const RMat w1 = {{Rational(-3)}, {Rational(3)}};
    const RVec b1 = {Rational(1), Rational(-2)};
    const RMat w2 = {{Rational(1), Rational(1)}};
    const RVec zero1 = {Rational(0)};
    for (int i = 0; i < k; ++i) {
        layers.emplace_back(w1, b1);
        layers.emplace_back(w2, zero1);
    }
    layers.emplace_back(RMat{{Rational(1)}}, zero1);  // output is A^(k)(x) itself
    NetMeta meta;
    meta.repr = "recursive-1d";
    meta.k = k;
    return ReluNetwork(std::move(layers), /*final_clamp=*/false, std::move(meta));
}

}  // namespace cantor
