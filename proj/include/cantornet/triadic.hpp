// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "cantornet/relu_net.hpp"

namespace cantor {

/// Base-3 digit expansion. When a value admits two expansions (terminating
/// vs trailing 2s) the {0,2} form is preferred; `repeating_two_tail` records
/// that the emitted prefix continues with 2s forever, so reconstruction stays
/// exact for every triadic rational.
struct TriadicDigits {
    std::vector<int> digits;  // each in {0,1,2}
    bool cantor_flag = false;  // no digit 1 among the emitted digits
    bool repeating_two_tail = false;
};

TriadicDigits triadic_digits(const Rational& x, int precision);

/// Sum of digit_i / 3^i, plus 1/3^l when the tail of 2s is flagged. Exact.
Rational reconstruct(const TriadicDigits& d);

/// Branch record of the triadic expansion walk with f1(x) = 1-3x,
/// f2(x) = 3x-2 against I1 = [0,1/3], I2 = (1/3,2/3), I3 = [2/3,1].
/// Bit 0 = f1 branch, bit 1 = f2 branch. `endpoint_hit_step` marks the
/// (at most one) step whose value landed exactly on 1/3 or 2/3; from there
/// the walk is pinned to 0 -> 1 -> 1 -> ..., which matters for the pattern
/// isomorphism because such a step fires the same neurons as a middle hit.
struct ActivationCode {
    std::vector<int> bits;
    bool terminated_in_middle = false;
    std::optional<int> endpoint_hit_step;  // 1-based

    bool operator==(const ActivationCode&) const = default;
};

ActivationCode activation_code(const Rational& x, int k);

/// The subinterval labels (1 = left, 2 = middle terminal, 3 = right) visited
/// by the expansion walk; a 2 is always final.
struct IntervalIndex {
    std::vector<int> indices;

    bool operator==(const IntervalIndex&) const = default;
};

IntervalIndex interval_index(const Rational& x, int k);

/// Expands a level-k code into the 5k-bit pattern of the recursion net:
/// bit 0 -> [10111], bit 1 -> [01111]; a middle (or endpoint) hit emits
/// [00101] and then the blocks of the fixed 0 -> 1 -> 1 -> ... continuation.
/// With y_positive = false the two y-neuron bits of every block read 0.
ActivationPattern code_to_pattern(const ActivationCode& code, int k, bool y_positive = true);

/// Full 5k-bit pattern of build_recursive_net(k) at (x, y), computed in
/// exactly k block steps. `block_steps`, when given, receives the step count.
ActivationPattern pattern_fast(const Rational& x, const Rational& y, int k,
                               int* block_steps = nullptr);

}  // namespace cantor
