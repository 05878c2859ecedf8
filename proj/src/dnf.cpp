// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cantornet/dnf.hpp"

#include <stdexcept>

namespace cantor {

namespace {

const Rational kOne(1);
const Rational kHalf(1, 2);

// Pieces of the generator A itself over [0,1].
std::vector<BoundaryPiece> generator_pieces() {
    return {
        {Rational(0), Rational(1, 3), Rational(-3), Rational(1)},
        {Rational(1, 3), Rational(2, 3), Rational(0), Rational(0)},
        {Rational(2, 3), Rational(1), Rational(3), Rational(-2)},
    };
}

// Given pieces of f (range within [0,1]), produce pieces of A(f(x)).
// Each piece is split where f crosses 1/3 and 2/3; the three branches of A
// compose affinely: A(sx+t) = -3s*x + (1-3t) below 1/3, 0 in the middle,
// and 3s*x + (3t-2) above 2/3.
std::vector<BoundaryPiece> compose_generator(const std::vector<BoundaryPiece>& inner) {
    const Rational third(1, 3);
    const Rational two_thirds(2, 3);
    std::vector<BoundaryPiece> out;
    out.reserve(inner.size() * 3);

    const auto emit = [&out](const Rational& lo, const Rational& hi, Rational slope,
                             Rational intercept) {
        if (lo >= hi) return;  // degenerate slice
        if (!out.empty() && out.back().slope == slope && out.back().intercept == intercept) {
            out.back().x_hi = hi;  // merge equal adjacent pieces
            return;
        }
        out.push_back({lo, hi, std::move(slope), std::move(intercept)});
    };

    for (const auto& p : inner) {
        if (p.slope.is_zero()) {
            const Rational& t = p.intercept;
            Rational v;
            if (t <= third) v = kOne - Rational(3) * t;
            else if (t < two_thirds) v = Rational(0);
            else v = Rational(3) * t - Rational(2);
            emit(p.x_lo, p.x_hi, Rational(0), std::move(v));
            continue;
        }
        // x where f(x) = 1/3 and f(x) = 2/3
        const Rational x13 = (third - p.intercept) / p.slope;
        const Rational x23 = (two_thirds - p.intercept) / p.slope;
        const Rational lo_slope = Rational(-3) * p.slope;
        const Rational lo_icpt = kOne - Rational(3) * p.intercept;
        const Rational hi_slope = Rational(3) * p.slope;
        const Rational hi_icpt = Rational(3) * p.intercept - Rational(2);
        const auto clamp_lo = [&p](const Rational& v) { return max(v, p.x_lo); };
        const auto clamp_hi = [&p](const Rational& v) { return min(v, p.x_hi); };
        if (p.slope.sign() > 0) {
            // f increasing: below-1/3 branch first
            emit(p.x_lo, clamp_hi(x13), lo_slope, lo_icpt);
            emit(clamp_lo(x13), clamp_hi(x23), Rational(0), Rational(0));
            emit(clamp_lo(x23), p.x_hi, hi_slope, hi_icpt);
        } else {
            emit(p.x_lo, clamp_hi(x23), hi_slope, hi_icpt);
            emit(clamp_lo(x23), clamp_hi(x13), Rational(0), Rational(0));
            emit(clamp_lo(x13), p.x_hi, lo_slope, lo_icpt);
        }
    }
    return out;
}

}  // namespace

Rational PiecewiseBoundary::value(const Rational& x) const {
    for (const auto& p : pieces)
        if (x >= p.x_lo && x <= p.x_hi) return p.value(x);
    throw std::domain_error("PiecewiseBoundary: x outside [0,1]");
}

PiecewiseBoundary boundary_pieces(int k) {
    if (k < 1) throw std::invalid_argument("recursion level must be >= 1");
    std::vector<BoundaryPiece> acc = generator_pieces();
    for (int i = 1; i < k; ++i) acc = compose_generator(acc);
    // Lift A^(k) to the decision curve (A^(k)(x) + 1) / 2.
    for (auto& p : acc) {
        p.slope /= Rational(2);
        p.intercept = (p.intercept + kOne) / Rational(2);
    }
    return {std::move(acc)};
}

std::vector<Dent> extract_dents(const PiecewiseBoundary& boundary) {
    const auto& pieces = boundary.pieces;
    if (pieces.empty()) throw std::invalid_argument("extract_dents: empty boundary");
    if (pieces.front().x_lo != Rational(0) || pieces.back().x_hi != kOne)
        throw std::invalid_argument("extract_dents: boundary does not cover [0,1]");
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
        if (pieces[i].x_hi != pieces[i + 1].x_lo ||
            pieces[i].value(pieces[i].x_hi) != pieces[i + 1].value(pieces[i + 1].x_lo))
            throw std::invalid_argument("extract_dents: discontinuous boundary");
    }

    const auto is_top_plateau = [](const BoundaryPiece& p) {
        return p.slope.is_zero() && p.intercept == kOne;
    };

    std::vector<Dent> dents;
    std::size_t i = 0;
    while (i < pieces.size()) {
        if (is_top_plateau(pieces[i])) {
            ++i;
            continue;
        }
        // A notch is exactly descend / flat-at-1/2 / ascend.
        if (i + 2 >= pieces.size())
            throw std::invalid_argument("extract_dents: truncated notch");
        const BoundaryPiece& down = pieces[i];
        const BoundaryPiece& flat = pieces[i + 1];
        const BoundaryPiece& up = pieces[i + 2];
        if (down.slope.sign() >= 0 || up.slope.sign() <= 0 || !flat.slope.is_zero() ||
            flat.intercept != kHalf)
            throw std::invalid_argument("extract_dents: malformed notch");
        Dent d;
        d.descend = {down.slope, Rational(-1), down.intercept};
        d.flat = {Rational(0), Rational(-1), flat.intercept};
        d.ascend = {up.slope, Rational(-1), up.intercept};
        d.span_lo = down.x_lo;
        d.span_hi = up.x_hi;
        dents.push_back(std::move(d));
        i += 3;
    }
    return dents;
}

DnfExpression build_dnf(int k) {
    DnfExpression expr;
    expr.k = k;
    // Unit-square consistency planes: y <= 1, x >= 0, x <= 1.
    expr.externals = {
        {Rational(0), Rational(-1), Rational(1)},
        {Rational(1), Rational(0), Rational(0)},
        {Rational(-1), Rational(0), Rational(1)},
    };
    expr.dents = extract_dents(boundary_pieces(k));
    expr.includes_zero_term = true;
    return expr;
}

Rational dnf_value(const DnfExpression& expr, const Rational& x, const Rational& y) {
    Rational m(0);  // the constant zero term caps the min
    for (const auto& h : expr.externals) m = min(m, h.value(x, y));
    for (const auto& d : expr.dents) m = min(m, d.value(x, y));
    return m;
}

StructuralCounts structural_counts(const DnfExpression& expr) {
    StructuralCounts c;
    c.num_affine = expr.externals.size() + 3 * expr.dents.size();
    c.num_dents = expr.dents.size();
    c.r_formula = (std::int64_t{1} << (expr.k + 1)) - 1;
    c.dent_formula = c.r_formula / 4 + 1;
    return c;
}

}  // namespace cantor
