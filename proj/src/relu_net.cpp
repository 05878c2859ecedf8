// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cantornet/relu_net.hpp"

#include <stdexcept>

namespace cantor {

AffineLayer::AffineLayer(RMat w, RVec b) : weights(std::move(w)), biases(std::move(b)) {
    if (weights.empty()) throw std::invalid_argument("AffineLayer: no rows");
    const std::size_t c = weights.front().size();
    for (const auto& row : weights)
        if (row.size() != c) throw std::invalid_argument("AffineLayer: ragged weight matrix");
    if (biases.size() != weights.size())
        throw std::invalid_argument("AffineLayer: bias length != row count");
}

ReluNetwork::ReluNetwork(std::vector<AffineLayer> layers, bool final_clamp, NetMeta meta)
    : layers_(std::move(layers)), final_clamp_(final_clamp), meta_(std::move(meta)) {
    if (layers_.empty()) throw std::invalid_argument("ReluNetwork: no layers");
    for (std::size_t i = 0; i + 1 < layers_.size(); ++i) {
        if (layers_[i].rows() != layers_[i + 1].cols())
            throw std::invalid_argument("ReluNetwork: layer dimension mismatch");
        hidden_neurons_ += layers_[i].rows();
    }
    sparse_.reserve(layers_.size());
    for (const auto& layer : layers_) {
        SparseLayer s;
        s.row_begin.reserve(layer.rows() + 1);
        s.row_begin.push_back(0);
        for (const auto& row : layer.weights) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (row[c].is_zero()) continue;
                std::int8_t pm = 0;
                if (!row[c].is_big() && row[c].den_small() == 1) {
                    if (row[c].num_small() == 1) pm = 1;
                    else if (row[c].num_small() == -1) pm = -1;
                }
                s.entries.push_back({static_cast<std::uint32_t>(c), pm, row[c]});
            }
            s.row_begin.push_back(static_cast<std::uint32_t>(s.entries.size()));
        }
        sparse_.push_back(std::move(s));
    }
}

RVec ReluNetwork::eval(const RVec& input, ForwardTrace* trace) const {
    if (input.size() != input_dim())
        throw std::invalid_argument("ReluNetwork: input dimension mismatch");
    if (trace) {
        trace->pre_activations.clear();
        trace->pre_activations.reserve(layers_.size() - 1);
    }
    RVec cur = input;
    RVec next;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const auto& layer = layers_[l];
        const auto& sp = sparse_[l];
        next.assign(layer.rows(), Rational(0));
        for (std::size_t r = 0; r < layer.rows(); ++r) {
            Rational acc = layer.biases[r];
            for (std::uint32_t e = sp.row_begin[r]; e < sp.row_begin[r + 1]; ++e) {
                const Entry& en = sp.entries[e];
                const Rational& x = cur[en.col];
                if (x.is_zero()) continue;
                if (en.pm == 1) acc += x;
                else if (en.pm == -1) acc -= x;
                else acc += en.w * x;
            }
            next[r] = std::move(acc);
        }
        const bool last = (l + 1 == layers_.size());
        if (!last) {
            if (trace) trace->pre_activations.push_back(next);
            for (auto& v : next)
                if (v.sign() <= 0) v = Rational(0);
        } else if (final_clamp_) {
            for (auto& v : next)
                if (v.sign() <= 0) v = Rational(0);
        }
        cur.swap(next);
    }
    if (trace) trace->output = cur;
    return cur;
}

RVec relu(RVec v) {
    for (auto& x : v)
        if (x.sign() <= 0) x = Rational(0);
    return v;
}

ForwardResult forward(const ReluNetwork& net, const RVec& input) {
    ForwardResult res;
    res.output = net.eval(input, &res.trace);
    return res;
}

RVec forward_value(const ReluNetwork& net, const RVec& input) { return net.eval(input); }

ActivationPattern binarize(const ForwardTrace& trace) {
    ActivationPattern p;
    std::size_t n = 0;
    for (const auto& layer : trace.pre_activations) n += layer.size();
    p.bits.reserve(n);
    for (const auto& layer : trace.pre_activations)
        for (const auto& v : layer) p.bits.push_back(v.sign() > 0 ? 1 : 0);
    return p;
}

ActivationPattern activation_pattern(const ReluNetwork& net, const RVec& point) {
    ForwardTrace trace;
    net.eval(point, &trace);
    return binarize(trace);
}

std::string ActivationPattern::str() const {
    std::string s;
    s.reserve(bits.size());
    for (const auto b : bits) s.push_back(b ? '1' : '0');
    return s;
}

std::string ActivationPattern::str_blocks(std::size_t block_size) const {
    if (block_size == 0) return str();
    std::string s;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i > 0 && i % block_size == 0) s.push_back(';');
        s.push_back(bits[i] ? '1' : '0');
    }
    return s;
}

RVec AffineMap::apply(const RVec& point) const {
    RVec out;
    out.reserve(matrix.size());
    for (std::size_t r = 0; r < matrix.size(); ++r) {
        Rational acc = offset[r];
        for (std::size_t c = 0; c < point.size(); ++c) acc += matrix[r][c] * point[c];
        out.push_back(std::move(acc));
    }
    return out;
}

AffineMap affine_gradient(const ReluNetwork& net, const RVec& point) {
    ForwardTrace trace;
    net.eval(point, &trace);

    const auto& layers = net.layers();
    RMat m = layers.front().weights;
    RVec o = layers.front().biases;
    for (std::size_t l = 0; l + 1 < layers.size(); ++l) {
        // Mask rows whose pre-activation is not strictly positive.
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (trace.pre_activations[l][r].sign() > 0) continue;
            for (auto& v : m[r]) v = Rational(0);
            o[r] = Rational(0);
        }
        const auto& nxt = layers[l + 1];
        RMat m2(nxt.rows(), RVec(point.size(), Rational(0)));
        RVec o2 = nxt.biases;
        for (std::size_t r = 0; r < nxt.rows(); ++r) {
            for (std::size_t c = 0; c < nxt.cols(); ++c) {
                const Rational& w = nxt.weights[r][c];
                if (w.is_zero()) continue;
                for (std::size_t j = 0; j < point.size(); ++j) m2[r][j] += w * m[c][j];
                o2[r] += w * o[c];
            }
        }
        m = std::move(m2);
        o = std::move(o2);
    }
    return {std::move(m), std::move(o)};
}

}  // namespace cantor
