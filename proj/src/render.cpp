// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cantornet/render.hpp"

#include <cstdint>
#include <stdexcept>

#include "cantornet/dnf.hpp"
#include "cantornet/recursive.hpp"

namespace cantor {

namespace {

constexpr int kDigits = 9;

// SVG y grows downward; the unit square is flipped so y=1 is the top edge.
std::string pt(const Rational& x, const Rational& y) {
    return x.decimal(kDigits) + "," + (Rational(1) - y).decimal(kDigits);
}

std::string svg_open() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" "
           "width=\"640\" height=\"640\">\n";
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string pattern_color(const std::string& bits) {
    const std::uint64_t h = fnv1a(bits);
    const unsigned hue = static_cast<unsigned>(h % 360);
    const unsigned light = 55 + static_cast<unsigned>((h >> 16) % 30);
    return "hsl(" + std::to_string(hue) + ",70%," + std::to_string(light) + "%)";
}

std::string boundary_polyline(const PiecewiseBoundary& boundary) {
    std::string points = pt(boundary.pieces.front().x_lo,
                            boundary.pieces.front().value(boundary.pieces.front().x_lo));
    for (const auto& piece : boundary.pieces) points += " " + pt(piece.x_hi, piece.value(piece.x_hi));
    return points;
}

}  // namespace

std::string render_boundary_svg(int k) {
    const PiecewiseBoundary boundary = boundary_pieces(k);
    const std::string curve = boundary_polyline(boundary);

    std::string svg = svg_open();
    svg += "<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"white\"/>\n";
    // Inset: the region under the curve, closed along the bottom edge.
    svg += "<polygon fill=\"#c8c8c8\" stroke=\"none\" points=\"" + curve + " " +
           pt(Rational(1), Rational(0)) + " " + pt(Rational(0), Rational(0)) + "\"/>\n";
    svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.004\" points=\"" + curve +
           "\"/>\n";
    svg += "</svg>\n";
    return svg;
}

std::string render_tessellation_svg(int k, int cells) {
    if (cells < 3) throw std::invalid_argument("tessellation needs at least 3 cells per axis");
    std::int64_t n = 1;
    for (int i = 0; i < k + 1 && n * 3 <= cells; ++i) n *= 3;
    n = n < 3 ? 3 : n;  // cells per axis, a power of 3 so region edges align

    const ReluNetwork net = build_recursive_net(k);
    std::string svg = svg_open();
    svg += "<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"white\"/>\n";
    for (std::int64_t j = 0; j < n; ++j) {
        const Rational yc(2 * j + 1, 2 * n);
        std::int64_t run_start = 0;
        std::string run_color;
        for (std::int64_t i = 0; i <= n; ++i) {
            std::string color;
            if (i < n) {
                const Rational xc(2 * i + 1, 2 * n);
                color = pattern_color(activation_pattern(net, {xc, yc}).str());
            }
            if (color == run_color) continue;
            if (!run_color.empty()) {
                const Rational x0(run_start, n);
                const Rational w(i - run_start, n);
                const Rational y0 = Rational(1) - Rational(j + 1, n);
                svg += "<rect x=\"" + x0.decimal(kDigits) + "\" y=\"" + y0.decimal(kDigits) +
                       "\" width=\"" + w.decimal(kDigits) + "\" height=\"" +
                       Rational(1, n).decimal(kDigits) + "\" fill=\"" + run_color + "\"/>\n";
            }
            run_color = color;
            run_start = i;
        }
    }
    const std::string curve = boundary_polyline(boundary_pieces(k));
    svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"0.004\" points=\"" + curve +
           "\"/>\n";
    svg += "</svg>\n";
    return svg;
}

std::string render_dnf_lines_svg(int k) {
    const DnfExpression expr = build_dnf(k);
    std::string svg = svg_open();
    svg += "<rect x=\"0\" y=\"0\" width=\"1\" height=\"1\" fill=\"white\"/>\n";
    const std::string curve = boundary_polyline(boundary_pieces(k));
    svg += "<polyline fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.003\" points=\"" + curve +
           "\"/>\n";
    const auto line_at = [](const HalfPlane& h, const Rational& x) {
        // h = a*x - y + c = 0  ->  y = a*x + c
        return h.a * x + h.c;
    };
    for (const auto& d : expr.dents) {
        const Rational mid = (d.span_lo + d.span_hi) / Rational(2);
        svg += "<polyline fill=\"none\" stroke=\"#cc3333\" stroke-width=\"0.004\" points=\"" +
               pt(d.span_lo, line_at(d.descend, d.span_lo)) + " " +
               pt(mid, line_at(d.descend, mid)) + "\"/>\n";
        svg += "<polyline fill=\"none\" stroke=\"#3333cc\" stroke-width=\"0.004\" points=\"" +
               pt(d.span_lo, line_at(d.flat, d.span_lo)) + " " +
               pt(d.span_hi, line_at(d.flat, d.span_hi)) + "\"/>\n";
        svg += "<polyline fill=\"none\" stroke=\"#33aa33\" stroke-width=\"0.004\" points=\"" +
               pt(mid, line_at(d.ascend, mid)) + " " +
               pt(d.span_hi, line_at(d.ascend, d.span_hi)) + "\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace cantor
