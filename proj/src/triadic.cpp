// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cantornet/triadic.hpp"

#include <stdexcept>

namespace cantor {

namespace {

const Rational kThird(1, 3);
const Rational kTwoThirds(2, 3);

void check_unit_interval(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("x outside [0,1]");
}

void check_level(int k) {
    if (k < 1) throw std::invalid_argument("recursion level must be >= 1");
}

}  // namespace

TriadicDigits triadic_digits(const Rational& x, int precision) {
    check_unit_interval(x);
    if (precision < 1) throw std::invalid_argument("precision must be >= 1");
    TriadicDigits out;
    out.digits.reserve(static_cast<std::size_t>(precision));
    Rational r = x;
    for (int i = 0; i < precision; ++i) {
        const Rational t = Rational(3) * r;
        // d = floor(t); t is in [0,3]
        int d = 0;
        if (t >= Rational(1)) d = 1;
        if (t >= Rational(2)) d = 2;
        if (t == Rational(3)) d = 3;
        if (t == Rational(d)) {
            // Exact digit boundary: two expansions exist. Prefer {0,2}.
            if (d == 0) {
                for (; i < precision; ++i) out.digits.push_back(0);
            } else if (d == 2) {
                out.digits.push_back(2);
                for (++i; i < precision; ++i) out.digits.push_back(0);
            } else {
                // d == 1 -> emit 0 then all 2s; d == 3 (value was 1) -> all 2s
                if (d == 1) {
                    out.digits.push_back(0);
                    ++i;
                }
                for (; i < precision; ++i) out.digits.push_back(2);
                out.repeating_two_tail = true;
            }
            break;
        }
        out.digits.push_back(d);
        r = t - Rational(d);
    }
    out.cantor_flag = true;
    for (const int d : out.digits)
        if (d == 1) out.cantor_flag = false;
    return out;
}

Rational reconstruct(const TriadicDigits& d) {
    Rational sum(0);
    Rational scale(1);
    for (const int digit : d.digits) {
        scale /= Rational(3);
        sum += Rational(digit) * scale;
    }
    if (d.repeating_two_tail) sum += scale;  // sum_{i>l} 2/3^i = 1/3^l
    return sum;
}

ActivationCode activation_code(const Rational& x, int k) {
    check_unit_interval(x);
    check_level(k);
    ActivationCode code;
    Rational v = x;
    for (int step = 1; step <= k; ++step) {
        if (!code.endpoint_hit_step && (v == kThird || v == kTwoThirds))
            code.endpoint_hit_step = step;
        if (v <= kThird) {
            code.bits.push_back(0);
            v = Rational(1) - Rational(3) * v;
        } else if (v < kTwoThirds) {
            code.terminated_in_middle = true;
            break;
        } else {
            code.bits.push_back(1);
            v = Rational(3) * v - Rational(2);
        }
    }
    return code;
}

IntervalIndex interval_index(const Rational& x, int k) {
    check_unit_interval(x);
    check_level(k);
    IntervalIndex idx;
    Rational v = x;
    for (int step = 1; step <= k; ++step) {
        if (v <= kThird) {
            idx.indices.push_back(1);
            v = Rational(1) - Rational(3) * v;
        } else if (v < kTwoThirds) {
            idx.indices.push_back(2);
            break;
        } else {
            idx.indices.push_back(3);
            v = Rational(3) * v - Rational(2);
        }
    }
    return idx;
}

namespace {

enum class BlockKind { Left, Right, Middle, ValueZero, ValueOne };

void append_block(ActivationPattern& p, BlockKind kind, bool y_positive) {
    // Bits per block: (-3v+1 > 0, 3v-2 > 0, y > 0, A(v) > 0, y > 0).
    const std::uint8_t y = y_positive ? 1 : 0;
    switch (kind) {
        case BlockKind::Left:
        case BlockKind::ValueZero:
            p.bits.insert(p.bits.end(), {1, 0, y, 1, y});
            break;
        case BlockKind::Right:
        case BlockKind::ValueOne:
            p.bits.insert(p.bits.end(), {0, 1, y, 1, y});
            break;
        case BlockKind::Middle:
            p.bits.insert(p.bits.end(), {0, 0, y, 0, y});
            break;
    }
}

}  // namespace

ActivationPattern code_to_pattern(const ActivationCode& code, int k, bool y_positive) {
    check_level(k);
    if (static_cast<int>(code.bits.size()) > k)
        throw std::invalid_argument("activation code longer than recursion level");

    // Step at which the walk collapses onto the fixed 0 -> 1 -> 1 -> ... tail:
    // either an exact endpoint hit (the block there reads [00101] despite the
    // emitted branch bit) or a middle-interval hit one past the last bit.
    int collapse = k + 1;
    if (code.terminated_in_middle) collapse = static_cast<int>(code.bits.size()) + 1;
    if (code.endpoint_hit_step) collapse = std::min(collapse, *code.endpoint_hit_step);
    if (collapse > k && static_cast<int>(code.bits.size()) != k)
        throw std::invalid_argument("activation code shorter than recursion level");
    if (collapse <= k && static_cast<int>(code.bits.size()) < collapse - 1)
        throw std::invalid_argument("activation code missing bits before its terminal step");

    ActivationPattern p;
    p.bits.reserve(5 * static_cast<std::size_t>(k));
    for (int step = 1; step <= k; ++step) {
        if (step < collapse) {
            append_block(p, code.bits[static_cast<std::size_t>(step - 1)] == 0 ? BlockKind::Left
                                                                               : BlockKind::Right,
                         y_positive);
        } else if (step == collapse) {
            append_block(p, BlockKind::Middle, y_positive);
        } else if (step == collapse + 1) {
            append_block(p, BlockKind::ValueZero, y_positive);
        } else {
            append_block(p, BlockKind::ValueOne, y_positive);
        }
    }
    return p;
}

ActivationPattern pattern_fast(const Rational& x, const Rational& y, int k, int* block_steps) {
    check_level(k);
    ActivationPattern p;
    p.bits.reserve(5 * static_cast<std::size_t>(k));
    Rational vx = x;
    Rational vy = y;
    int steps = 0;
    for (int i = 0; i < k; ++i) {
        const Rational left = Rational(1) - Rational(3) * vx;
        const Rational right = Rational(3) * vx - Rational(2);
        const Rational& a = max(left, right);
        const Rational ax = a.sign() > 0 ? a : Rational(0);
        p.bits.push_back(left.sign() > 0 ? 1 : 0);
        p.bits.push_back(right.sign() > 0 ? 1 : 0);
        p.bits.push_back(vy.sign() > 0 ? 1 : 0);
        p.bits.push_back(ax.sign() > 0 ? 1 : 0);
        vy = clamp_at_zero(vy);
        p.bits.push_back(vy.sign() > 0 ? 1 : 0);
        vx = ax;
        ++steps;
    }
    if (block_steps) *block_steps = steps;
    return p;
}

}  // namespace cantor
