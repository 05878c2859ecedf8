// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "cantornet/rational.hpp"

namespace cantor {

/// Affine function h(x,y) = a*x + b*y + c. For boundary-derived planes the
/// convention is h = line(x) - y, non-negative on and below the line.
struct HalfPlane {
    Rational a, b, c;

    Rational value(const Rational& x, const Rational& y) const {
        Rational acc = c;
        accumulate(acc, a, x);
        accumulate(acc, b, y);
        return acc;
    }
    bool operator==(const HalfPlane&) const = default;

  private:
    static void accumulate(Rational& acc, const Rational& coeff, const Rational& v) {
        static const Rational kOne(1), kNegOne(-1);
        if (coeff.is_zero()) return;
        if (coeff == kOne) acc += v;
        else if (coeff == kNegOne) acc -= v;
        else acc += coeff * v;
    }
};

struct BoundaryPiece {
    Rational x_lo, x_hi;
    Rational slope, intercept;

    Rational value(const Rational& x) const { return slope * x + intercept; }
    bool operator==(const BoundaryPiece&) const = default;
};

/// The decision curve as an ordered exact piece list partitioning [0,1];
/// adjacent pieces agree at shared endpoints.
struct PiecewiseBoundary {
    std::vector<BoundaryPiece> pieces;

    Rational value(const Rational& x) const;
};

/// Exact linear pieces of x -> (A^(k)(x)+1)/2. Piece count is 2^(k+1)-1.
PiecewiseBoundary boundary_pieces(int k);

/// One notch of the boundary: descending, flat-bottom (height 1/2) and
/// ascending line in h(x,y) = line(x) - y form, plus the spanned x-interval.
struct Dent {
    HalfPlane descend, flat, ascend;
    Rational span_lo, span_hi;

    /// max of the three planes; >= 0 exactly on the inset side.
    Rational value(const Rational& x, const Rational& y) const {
        return max(descend.value(x, y), max(flat.value(x, y), ascend.value(x, y)));
    }
    bool operator==(const Dent&) const = default;
};

/// One Dent per maximal x-interval where the boundary dips below 1.
/// Throws std::invalid_argument if the piece list is not a valid boundary.
std::vector<Dent> extract_dents(const PiecewiseBoundary& boundary);

/// Membership as min(externals, dent maxima, 0): the value is 0 exactly on
/// the inset and strictly negative on the outset.
struct DnfExpression {
    int k = 0;
    std::vector<HalfPlane> externals;
    std::vector<Dent> dents;
    bool includes_zero_term = true;

    bool operator==(const DnfExpression&) const = default;
};

DnfExpression build_dnf(int k);

Rational dnf_value(const DnfExpression& expr, const Rational& x, const Rational& y);

struct StructuralCounts {
    std::size_t num_affine;   // externals + 3 per dent
    std::size_t num_dents;
    std::int64_t r_formula;     // 2^(k+1) - 1
    std::int64_t dent_formula;  // floor(r/4) + 1
};

StructuralCounts structural_counts(const DnfExpression& expr);

}  // namespace cantor
