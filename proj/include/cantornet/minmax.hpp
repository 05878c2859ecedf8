// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cantornet/dnf.hpp"
#include "cantornet/relu_net.hpp"

namespace cantor {

/// Exact minimum of d inputs as a ReLU net with all weights in {0,+-1} and
/// zero biases: pairwise reduction rounds built from the S = (1,-1,-1) /
/// A = ((0,1),(0,-1),(-1,1)) blocks, pass-through channels as sigma(x) -
/// sigma(-x). Depth is ceil(log2 d) pairing rounds.
ReluNetwork build_min_net(int d);

/// Exact maximum: the min net with input and output weight signs negated,
/// which preserves the {0,+-1} property.
ReluNetwork build_max_net(int d);

/// Compiles a DnfExpression into one equivalent ReLU net. The first affine
/// layer evaluates every affine term (and its negation, so later ternary
/// layers can reassemble raw values after the clamp); it is the only layer
/// with general weights and nonzero biases. Then max-of-3 reductions per
/// dent and a single min reduction over externals, dents and the appended
/// constant-0 channel. Output equals dnf_value exactly.
ReluNetwork dnf_to_relu(const DnfExpression& expr);

/// True iff every weight lies in {-1,0,1} and every bias is zero,
/// optionally ignoring the first affine layer.
bool verify_ternary_weights(const ReluNetwork& net, bool skip_first = false);

}  // namespace cantor
