// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantornet/rational.hpp"

namespace cantor {

using RVec = std::vector<Rational>;
using RMat = std::vector<std::vector<Rational>>;

/// One affine stage: rows of `weights` are output neurons, columns inputs.
struct AffineLayer {
    RMat weights;
    RVec biases;

    AffineLayer(RMat w, RVec b);

    std::size_t rows() const { return weights.size(); }
    std::size_t cols() const { return weights.empty() ? 0 : weights.front().size(); }

    bool operator==(const AffineLayer&) const = default;
};

struct NetMeta {
    std::string repr;
    std::optional<std::int64_t> k;
    std::optional<std::int64_t> d;

    bool operator==(const NetMeta&) const = default;
};

/// Pre-clamp values of every hidden layer plus the network output.
struct ForwardTrace {
    std::vector<RVec> pre_activations;
    RVec output;
};

/// Binary fingerprint of a linear region: one bit per hidden neuron,
/// layer-major, within a layer in weight-row order.
struct ActivationPattern {
    std::vector<std::uint8_t> bits;

    bool operator==(const ActivationPattern&) const = default;
    bool operator<(const ActivationPattern& o) const { return bits < o.bits; }

    std::string str() const;
    // "10111;00101" style view, useful for block-structured nets.
    std::string str_blocks(std::size_t block_size) const;
};

/// Feedforward ReLU network: alternating affine / clamp-at-zero stages.
/// If `final_clamp` is set the last affine output is clamped as well.
/// Immutable after construction; evaluation is pure and thread-safe.
class ReluNetwork {
  public:
    ReluNetwork(std::vector<AffineLayer> layers, bool final_clamp, NetMeta meta = {});

    const std::vector<AffineLayer>& layers() const { return layers_; }
    bool final_clamp() const { return final_clamp_; }
    const NetMeta& meta() const { return meta_; }

    std::size_t input_dim() const { return layers_.front().cols(); }
    std::size_t output_dim() const { return layers_.back().rows(); }
    std::size_t affine_layer_count() const { return layers_.size(); }
    std::size_t hidden_neuron_count() const { return hidden_neurons_; }

    /// Evaluates the network; when `trace` is non-null, fills in all hidden
    /// pre-activations. Throws std::invalid_argument on dimension mismatch.
    RVec eval(const RVec& input, ForwardTrace* trace = nullptr) const;

    bool operator==(const ReluNetwork& o) const {
        return layers_ == o.layers_ && final_clamp_ == o.final_clamp_ && meta_ == o.meta_;
    }

  private:
    struct Entry {
        std::uint32_t col;
        std::int8_t pm;  // +1 / -1 for unit weights, 0 for general
        Rational w;
    };
    struct SparseLayer {
        std::vector<std::uint32_t> row_begin;  // size rows+1
        std::vector<Entry> entries;
    };

    std::vector<AffineLayer> layers_;
    bool final_clamp_ = false;
    NetMeta meta_;
    std::size_t hidden_neurons_ = 0;
    std::vector<SparseLayer> sparse_;
};

RVec relu(RVec v);

struct ForwardResult {
    RVec output;
    ForwardTrace trace;
};

ForwardResult forward(const ReluNetwork& net, const RVec& input);

/// Output only, no trace materialization; the hot path for grid sweeps.
RVec forward_value(const ReluNetwork& net, const RVec& input);

/// Bit i is 1 iff the i-th hidden pre-activation is strictly positive
/// (exact comparison: a value of exactly zero maps to 0).
ActivationPattern binarize(const ForwardTrace& trace);

ActivationPattern activation_pattern(const ReluNetwork& net, const RVec& point);

struct AffineMap {
    RMat matrix;
    RVec offset;

    bool operator==(const AffineMap&) const = default;
    RVec apply(const RVec& point) const;
};

/// The exact affine map realized on the linear region containing `point`,
/// with zero pre-activations masked to 0. For nets with a final clamp this is
/// the map inside the clamp; the network output there is its clamp.
AffineMap affine_gradient(const ReluNetwork& net, const RVec& point);

inline std::size_t neuron_count(const ReluNetwork& net) { return net.hidden_neuron_count(); }
inline std::size_t layer_count(const ReluNetwork& net) { return net.affine_layer_count(); }

}  // namespace cantor
