// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cantornet/relu_net.hpp"

namespace cantor {

/// A(x) = max{-3x+1, 0, 3x-2}: the tent-like generator whose k-fold
/// composition carves the Cantor-style decision boundary.
Rational generating_function(const Rational& x);

/// A applied k times (k >= 1). Exact.
Rational nested_generating(const Rational& x, int k);

/// (A^(k)(x) + 1) / 2, the exact decision-curve height in [1/2, 1].
Rational boundary_height(const Rational& x, int k);

enum class ManifoldLabel { Inset, Outset };

/// Inset iff y <= boundary_height(x, k); the boundary itself is Inset.
ManifoldLabel membership_oracle(const Rational& x, const Rational& y, int k);

/// The fixed weights of one recursion block and of the output layer.
struct RecursiveBlueprint {
    RMat w1;  // 3x2: (-3,0), (3,0), (0,1)
    RVec b1;  // (1, -2, 0)
    RMat w2;  // 2x3: (1,1,0), (0,0,1)
    RMat wl;  // 1x2: (-1/2, 1)
    RVec bl;  // (-1/2)
};
const RecursiveBlueprint& recursive_blueprint();

/// k recursion blocks followed by the output layer, with a final clamp so
/// the zero-preimage is exactly the inset. 5k hidden neurons, 2k+1 layers.
ReluNetwork build_recursive_net(int k);

/// The x-only variant (y row dropped): computes A^(k)(x), 3k hidden neurons.
ReluNetwork build_recursive_net_1d(int k);

}  // namespace cantor
