// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cantornet/dnf.hpp"
#include "cantornet/relu_net.hpp"

namespace cantor {

/// Exact sample lattice: x = i/x_den for i = 0..x_den, y = j/y_den likewise.
/// The default anchors x to denominator 3^(k+2) so every boundary breakpoint
/// is sampled exactly.
struct GridSpec {
    std::int64_t x_den = 0;
    std::int64_t y_den = 0;

    static GridSpec default_for(int k);
    static GridSpec parse(const std::string& text);  // "xden=729,yden=128"
    std::string describe() const;
    std::int64_t point_count() const { return (x_den + 1) * (y_den + 1); }
};

struct Mismatch {
    Rational x, y;
    bool oracle, recursive, dnf, compiled;  // true = Inset
};

struct EquivalenceReport {
    int k = 0;
    std::string grid;
    std::int64_t points = 0;
    std::vector<Mismatch> mismatches;
    bool pass = false;
};

/// Compares the four classifiers (direct oracle, recursive net zero-output,
/// DNF value zero-test, compiled DNF net zero-output) on every grid point.
EquivalenceReport equivalence_check(int k, const GridSpec& grid, int jobs = 1);

/// Same check against caller-supplied artifacts (deserialized files,
/// deliberately corrupted expressions, ...).
EquivalenceReport equivalence_check(int k, const GridSpec& grid, const ReluNetwork& recursive_net,
                                    const DnfExpression& expr, const ReluNetwork& compiled_net,
                                    int jobs = 1);

std::string to_csv(const EquivalenceReport& report);
std::string to_json_string(const EquivalenceReport& report);

struct RegionEntry {
    ActivationPattern pattern;
    RVec representative;
    AffineMap map;
    std::int64_t samples = 0;
};

struct RegionReport {
    std::string scope;  // states the sampling resolution this is complete for
    std::vector<RegionEntry> entries;
    std::int64_t gradient_violations = 0;
};

/// Groups grid points by activation pattern; per group verifies that every
/// member realizes one exact affine map and that the map reproduces the
/// network output at each sample.
RegionReport region_enumeration(const ReluNetwork& net, const GridSpec& grid, int jobs = 1);

struct ComplexityRow {
    int k = 0;
    std::int64_t recursive_neurons = 0;
    std::int64_t recursive_layers = 0;
    std::int64_t dnf_neurons = 0;  // 0 when the DNF build was skipped for this k
    std::int64_t dnf_layers = 0;
    std::int64_t r_k = 0;  // 2^(k+1) - 1
    std::int64_t z_k = 0;  // 3*floor(r/4) + 6
};

/// Builds both representations for k = 1..k_max and records exact counts.
/// The DNF side is built only up to dnf_k_max (it grows as 2^k).
std::vector<ComplexityRow> complexity_report(int k_max, int dnf_k_max);

std::string to_csv(const std::vector<ComplexityRow>& rows);

struct TopologyReport {
    int k = 0;
    int resolution = 0;  // cells per unit = resolution * 3^(k+1)
    std::int64_t inset_components = 0;
    std::int64_t inset_holes = 0;
    std::int64_t outset_components = 0;
};

/// Rasterizes the square at step 1/(resolution*3^(k+1)), labels cell centers
/// with the exact membership oracle and flood-fills with 4-connectivity.
/// Centers provably never land on the boundary for even resolutions; this is
/// also rechecked exactly. Outset regions that touch the frame connect
/// through the ambient exterior and count as one region; outset regions that
/// do not reach the frame are holes in the inset.
TopologyReport topology_check(int k, int resolution = 2);

std::string to_json_string(const TopologyReport& report);

}  // namespace cantor
