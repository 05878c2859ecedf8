// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cantornet/minmax.hpp"

#include <algorithm>
#include <stdexcept>

namespace cantor {

namespace {

// Sparse row-major matrix used while assembling reduction layers; entries
// sorted by column.
using SpRow = std::vector<std::pair<std::uint32_t, Rational>>;
using SpMat = std::vector<SpRow>;

SpMat sp_identity(std::size_t n) {
    SpMat m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = {{static_cast<std::uint32_t>(i), Rational(1)}};
    return m;
}

SpRow sp_row_combine(const SpRow& a, const SpRow& b, const Rational& ca, const Rational& cb) {
    SpRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            Rational v = ca * a[i].second;
            if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
            ++i;
        } else if (i == a.size() || b[j].first < a[i].first) {
            Rational v = cb * b[j].second;
            if (!v.is_zero()) out.emplace_back(b[j].first, std::move(v));
            ++j;
        } else {
            Rational v = ca * a[i].second + cb * b[j].second;
            if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

// rows(A) x rows(B) product where A is given by sparse rows over B's rows.
SpMat sp_mul(const SpMat& a, const SpMat& b) {
    SpMat out;
    out.reserve(a.size());
    static const SpRow kEmpty;
    for (const auto& row : a) {
        SpRow acc;
        for (const auto& [col, w] : row)
            acc = sp_row_combine(acc, b[col], Rational(1), w);
        out.push_back(std::move(acc));
    }
    return out;
}

RMat sp_to_dense(const SpMat& m, std::size_t cols) {
    RMat dense(m.size(), RVec(cols, Rational(0)));
    for (std::size_t r = 0; r < m.size(); ++r)
        for (const auto& [c, v] : m[r]) dense[r][c] = v;
    return dense;
}

struct Block {
    enum Kind { PairMin, PairMax, Pass } kind;
    std::uint32_t i = 0, j = 0;  // j unused for Pass
};

// Emits the sigma-sandwiched (A, S) pair of one reduction stage. Each block
// contributes rows to A and exactly one row to S; output channels appear in
// block order.
void build_stage(const std::vector<Block>& blocks, SpMat& a, SpMat& s) {
    a.clear();
    s.clear();
    const Rational one(1), neg(-1);
    for (const auto& blk : blocks) {
        const auto base = static_cast<std::uint32_t>(a.size());
        switch (blk.kind) {
            case Block::PairMin:
                a.push_back({{blk.j, one}});
                a.push_back({{blk.j, neg}});
                a.push_back({{blk.i, neg}, {blk.j, one}});
                s.push_back({{base, one}, {base + 1, neg}, {base + 2, neg}});
                break;
            case Block::PairMax:
                a.push_back({{blk.j, one}});
                a.push_back({{blk.j, neg}});
                a.push_back({{blk.i, one}, {blk.j, neg}});
                s.push_back({{base, one}, {base + 1, neg}, {base + 2, one}});
                break;
            case Block::Pass:
                a.push_back({{blk.i, one}});
                a.push_back({{blk.i, neg}});
                s.push_back({{base, one}, {base + 1, neg}});
                break;
        }
    }
}

// Pairs channels left to right with the given kind, passing an odd leftover.
std::vector<Block> pairing_round(std::uint32_t m, Block::Kind kind) {
    std::vector<Block> blocks;
    for (std::uint32_t i = 0; i + 1 < m; i += 2) blocks.push_back({kind, i, i + 1});
    if (m % 2 == 1) blocks.push_back({Block::Pass, m - 1, 0});
    return blocks;
}

// Assembles affine layers from a stage list: adjacent S / A matrices compose
// into single affine stages, so a sigma sits between every pair of layers.
std::vector<AffineLayer> realize_stages(const std::vector<std::vector<Block>>& stages,
                                        SpMat carry, std::size_t input_dim,
                                        std::vector<AffineLayer> layers) {
    std::size_t carry_cols = layers.empty() ? input_dim : layers.back().rows();
    for (const auto& stage : stages) {
        SpMat a, s;
        build_stage(stage, a, s);
        SpMat layer = sp_mul(a, carry);
        layers.emplace_back(sp_to_dense(layer, carry_cols),
                            RVec(layer.size(), Rational(0)));
        carry = std::move(s);
        carry_cols = layers.back().rows();
    }
    layers.emplace_back(sp_to_dense(carry, carry_cols), RVec(carry.size(), Rational(0)));
    return layers;
}

}  // namespace

ReluNetwork build_min_net(int d) {
    if (d < 1) throw std::invalid_argument("build_min_net: d must be >= 1");
    std::vector<std::vector<Block>> stages;
    if (d == 1) {
        stages.push_back({{Block::Pass, 0, 0}});
    } else {
        for (std::uint32_t m = static_cast<std::uint32_t>(d); m > 1; m = (m + 1) / 2)
            stages.push_back(pairing_round(m, Block::PairMin));
    }
    NetMeta meta;
    meta.repr = "min";
    meta.d = d;
    auto layers = realize_stages(stages, sp_identity(static_cast<std::size_t>(d)),
                                 static_cast<std::size_t>(d), {});
    return ReluNetwork(std::move(layers), /*final_clamp=*/false, std::move(meta));
}

ReluNetwork build_max_net(int d) {
    const ReluNetwork min_net = build_min_net(d);
    std::vector<AffineLayer> layers = min_net.layers();
    for (auto& row : layers.front().weights)
        for (auto& w : row) w = -w;
    for (auto& row : layers.back().weights)
        for (auto& w : row) w = -w;
    NetMeta meta;
    meta.repr = "max";
    meta.d = d;
    return ReluNetwork(std::move(layers), /*final_clamp=*/false, std::move(meta));
}

ReluNetwork dnf_to_relu(const DnfExpression& expr) {
    const std::size_t n_ext = expr.externals.size();
    const std::size_t n_dent = expr.dents.size();
    const std::size_t m0 = n_ext + 3 * n_dent + 1;  // affine terms plus the zero channel

    // First layer: every term and its negation, so sigma preserves enough to
    // reassemble raw values; the zero term is a zero-weight row.
    std::vector<HalfPlane> terms;
    terms.reserve(m0 - 1);
    for (const auto& h : expr.externals) terms.push_back(h);
    for (const auto& d : expr.dents) {
        terms.push_back(d.descend);
        terms.push_back(d.flat);
        terms.push_back(d.ascend);
    }
    RMat w0(2 * m0, RVec(2, Rational(0)));
    RVec b0(2 * m0, Rational(0));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        w0[i] = {terms[i].a, terms[i].b};
        b0[i] = terms[i].c;
        w0[m0 + i] = {-terms[i].a, -terms[i].b};
        b0[m0 + i] = -terms[i].c;
    }
    std::vector<AffineLayer> layers;
    layers.emplace_back(std::move(w0), std::move(b0));

    // Reassembly matrix: raw term i = sigma(h_i) - sigma(-h_i).
    SpMat recon(m0);
    for (std::size_t i = 0; i < m0; ++i)
        recon[i] = {{static_cast<std::uint32_t>(i), Rational(1)},
                    {static_cast<std::uint32_t>(m0 + i), Rational(-1)}};

    std::vector<std::vector<Block>> stages;
    // Two max rounds fold each dent triple; everything else passes through.
    {
        std::vector<Block> s1;
        for (std::uint32_t e = 0; e < n_ext; ++e) s1.push_back({Block::Pass, e, 0});
        for (std::uint32_t t = 0; t < n_dent; ++t) {
            const std::uint32_t base = static_cast<std::uint32_t>(n_ext) + 3 * t;
            s1.push_back({Block::PairMax, base, base + 1});
            s1.push_back({Block::Pass, base + 2, 0});
        }
        s1.push_back({Block::Pass, static_cast<std::uint32_t>(m0 - 1), 0});
        stages.push_back(std::move(s1));

        std::vector<Block> s2;
        for (std::uint32_t e = 0; e < n_ext; ++e) s2.push_back({Block::Pass, e, 0});
        for (std::uint32_t t = 0; t < n_dent; ++t) {
            const std::uint32_t base = static_cast<std::uint32_t>(n_ext) + 2 * t;
            s2.push_back({Block::PairMax, base, base + 1});
        }
        s2.push_back({Block::Pass, static_cast<std::uint32_t>(n_ext + 2 * n_dent), 0});
        stages.push_back(std::move(s2));
    }
    // Then a min reduction over externals, dent values and the zero channel.
    for (std::uint32_t m = static_cast<std::uint32_t>(n_ext + n_dent + 1); m > 1;
         m = (m + 1) / 2)
        stages.push_back(pairing_round(m, Block::PairMin));

    NetMeta meta;
    meta.repr = "dnf-compiled";
    meta.k = expr.k;
    auto all = realize_stages(stages, std::move(recon), 2, std::move(layers));
    return ReluNetwork(std::move(all), /*final_clamp=*/false, std::move(meta));
}

bool verify_ternary_weights(const ReluNetwork& net, bool skip_first) {
    static const Rational kOne(1), kNegOne(-1);
    const auto& layers = net.layers();
    for (std::size_t l = skip_first ? 1 : 0; l < layers.size(); ++l) {
        for (const auto& row : layers[l].weights)
            for (const auto& w : row)
                if (!w.is_zero() && w != kOne && w != kNegOne) return false;
        for (const auto& b : layers[l].biases)
            if (!b.is_zero()) return false;
    }
    return true;
}

}  // namespace cantor
