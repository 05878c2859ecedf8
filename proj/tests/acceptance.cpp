// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the binary exits nonzero if any criterion fails. All checks are
// exact-arithmetic properties; the few wall-clock budgets are asserted too.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "cantornet/analysis.hpp"
#include "cantornet/minmax.hpp"
#include "cantornet/recursive.hpp"
#include "cantornet/serialization.hpp"
#include "cantornet/triadic.hpp"

using namespace cantor;

namespace {

int g_jobs = 1;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- criterion 1: the three level-1 interval patterns -----------------------

Outcome criterion_interval_patterns() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    const ReluNetwork net = build_recursive_net(1);
    const Rational y(1, 10);
    out.require(activation_pattern(net, {Rational(1, 6), y}).str() == "10111",
                "pattern at (1/6,1/10)");
    out.require(activation_pattern(net, {Rational(1, 2), y}).str() == "00101",
                "pattern at (1/2,1/10)");
    out.require(activation_pattern(net, {Rational(5, 6), y}).str() == "01111",
                "pattern at (5/6,1/10)");
    const double dt = seconds_since(t0);
    out.require(dt < 1.0, "exceeded 1 s budget");
    out.detail << (out.detail.str().empty() ? "" : "; ") << "3 patterns exact";
    return out;
}

// --- criterion 2: four-way representation equivalence, k = 1..6 -------------

Outcome criterion_equivalence() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    std::int64_t total_points = 0;
    for (int k = 1; k <= 6; ++k) {
        const EquivalenceReport r = equivalence_check(k, GridSpec::default_for(k), g_jobs);
        total_points += r.points;
        out.require(r.pass, "k=" + std::to_string(k) + " had " +
                                std::to_string(r.mismatches.size()) + " mismatches");
    }
    const double dt = seconds_since(t0);
    out.require(dt < 60.0, "exceeded 60 s budget");
    out.detail << total_points << " points, 4 classifiers, 0 tolerance";
    return out;
}

// --- criterion 3: piece and dent counts, k = 1..10 ---------------------------

Outcome criterion_piece_dent_counts() {
    Outcome out;
    for (int k = 1; k <= 10; ++k) {
        const PiecewiseBoundary b = boundary_pieces(k);
        const std::size_t r = (std::size_t{1} << (k + 1)) - 1;
        out.require(b.pieces.size() == r, "piece count at k=" + std::to_string(k));
        const std::size_t dents = extract_dents(b).size();
        out.require(dents == (r / 4) + 1, "dent count vs floor(r/4)+1 at k=" + std::to_string(k));
        out.require(dents == std::size_t{1} << (k - 1),
                    "dent count vs 2^(k-1) at k=" + std::to_string(k));
    }
    out.detail << "r(k)=2^(k+1)-1 and 2^(k-1) dents for k=1..10";
    return out;
}

// --- criterion 4: min/max networks vs the fold oracle ------------------------

Outcome criterion_minmax() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::int64_t> num(-1'000'000, 1'000'000);
    std::uniform_int_distribution<std::int64_t> den(1, 10'000);
    std::int64_t checked = 0;
    for (const int d : {1, 2, 3, 5, 8, 16, 33, 64}) {
        const ReluNetwork mn = build_min_net(d);
        const ReluNetwork mx = build_max_net(d);
        out.require(verify_ternary_weights(mn), "min net d=" + std::to_string(d) + " not ternary");
        out.require(verify_ternary_weights(mx), "max net d=" + std::to_string(d) + " not ternary");
        for (int t = 0; t < 1000; ++t) {
            RVec v;
            v.reserve(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) v.emplace_back(num(rng), den(rng));
            Rational lo = v.front(), hi = v.front();
            for (const auto& x : v) {
                lo = min(lo, x);
                hi = max(hi, x);
            }
            if (forward_value(mn, v)[0] != lo || forward_value(mx, v)[0] != hi) {
                out.require(false, "extremum mismatch at d=" + std::to_string(d));
                break;
            }
            ++checked;
        }
    }
    const double dt = seconds_since(t0);
    out.require(dt < 30.0, "exceeded 30 s budget");
    out.detail << checked << " random vectors exact";
    return out;
}

// --- criterion 5: complexity counts and growth -------------------------------

Outcome criterion_complexity() {
    Outcome out;
    const auto rows = complexity_report(12, 9);
    double c_rec = 0.0, c_dnf = 0.0;
    for (const auto& row : rows) {
        out.require(row.recursive_neurons == 5 * row.k,
                    "recursive neurons at k=" + std::to_string(row.k));
        out.require(row.recursive_layers == 2 * row.k + 1,
                    "recursive layers at k=" + std::to_string(row.k));
        c_rec = std::max(c_rec, static_cast<double>(row.recursive_layers) / row.k);
        if (row.dnf_neurons > 0) {
            out.require(row.dnf_neurons >= (std::int64_t{1} << row.k),
                        "dnf neuron lower bound at k=" + std::to_string(row.k));
            c_dnf = std::max(c_dnf, static_cast<double>(row.dnf_layers) / row.k);
        }
    }
    for (int k = 4; k <= 8; ++k) {
        const double ratio = static_cast<double>(rows[static_cast<std::size_t>(k)].dnf_neurons) /
                             static_cast<double>(rows[static_cast<std::size_t>(k - 1)].dnf_neurons);
        out.require(ratio >= 1.8 && ratio <= 2.2,
                    "dnf growth ratio " + std::to_string(ratio) + " at k=" + std::to_string(k));
    }
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        out.require(rows[i + 1].recursive_layers > rows[i].recursive_layers,
                    "recursive layer monotonicity");
        if (rows[i + 1].dnf_layers > 0)
            out.require(rows[i + 1].dnf_layers >= rows[i].dnf_layers, "dnf layer monotonicity");
    }
    out.detail << "5k neurons / 2k+1 layers to k=12; layer growth <= " << c_rec
               << "*k (recursive), <= " << c_dnf << "*k (dnf)";
    return out;
}

// --- criterion 6: triadic code / pattern isomorphism -------------------------

Outcome criterion_triadic_isomorphism() {
    Outcome out;
    std::mt19937_64 rng(0xcafe);
    std::vector<ReluNetwork> nets;
    for (int k = 1; k <= 12; ++k) nets.push_back(build_recursive_net(k));
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        const int k = 1 + static_cast<int>(rng() % 12);
        std::int64_t den = 1;
        for (int i = 0; i < k; ++i) den *= 3;
        const Rational x(static_cast<std::int64_t>(rng() % (den + 1)), den);
        const Rational y(1 + static_cast<std::int64_t>(rng() % 128), 128);
        const ActivationPattern reference =
            activation_pattern(nets[static_cast<std::size_t>(k - 1)], {x, y});
        if (code_to_pattern(activation_code(x, k), k) != reference) {
            out.require(false, "code mismatch at x=" + x.str() + " k=" + std::to_string(k));
            break;
        }
        int steps = 0;
        if (pattern_fast(x, y, k, &steps) != reference || steps != k) {
            out.require(false, "fast pattern mismatch at x=" + x.str() + " k=" + std::to_string(k));
            break;
        }
        ++checked;
    }
    out.detail << checked << " random triadic rationals, block counter = k";
    return out;
}

// --- criterion 7: topology proxy ---------------------------------------------

Outcome criterion_topology() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 1; k <= 5; ++k) {
        const TopologyReport base = topology_check(k, 2);
        const TopologyReport fine = topology_check(k, 4);
        const auto expect = [&](const TopologyReport& r, const char* which) {
            out.require(r.inset_components == 1,
                        std::string(which) + " inset components at k=" + std::to_string(k));
            out.require(r.inset_holes == 0,
                        std::string(which) + " holes at k=" + std::to_string(k));
            out.require(r.outset_components == 1,
                        std::string(which) + " outset components at k=" + std::to_string(k));
        };
        expect(base, "base");
        expect(fine, "refined");
    }
    const double dt = seconds_since(t0);
    out.require(dt < 30.0, "exceeded 30 s budget");
    out.detail << "components 1/1, holes 0, stable under 2x refinement, k=1..5";
    return out;
}

// --- criterion 8: gradient / region correspondence ---------------------------

Outcome criterion_regions() {
    Outcome out;
    std::size_t regions = 0;
    for (int k = 1; k <= 4; ++k) {
        const RegionReport r =
            region_enumeration(build_recursive_net(k), GridSpec::default_for(k), g_jobs);
        out.require(r.gradient_violations == 0,
                    std::to_string(r.gradient_violations) + " violations at k=" +
                        std::to_string(k));
        regions += r.entries.size();
    }
    out.detail << regions << " pattern groups, one exact affine map each";
    return out;
}

// --- criterion 9: serialization round trip ------------------------------------

Outcome criterion_serialization() {
    Outcome out;
    const int k = 3;
    const ReluNetwork rec = build_recursive_net(k);
    const DnfExpression expr = build_dnf(k);
    const ReluNetwork compiled = dnf_to_relu(expr);

    const std::string rec_text = serialize(rec);
    const std::string expr_text = serialize(expr);
    const std::string compiled_text = serialize(compiled);

    const ReluNetwork rec2 = deserialize_network(rec_text);
    const DnfExpression expr2 = deserialize_dnf(expr_text);
    const ReluNetwork compiled2 = deserialize_network(compiled_text);

    out.require(serialize(rec2) == rec_text, "recursive re-serialization not byte-identical");
    out.require(serialize(expr2) == expr_text, "expression re-serialization not byte-identical");
    out.require(serialize(compiled2) == compiled_text,
                "compiled re-serialization not byte-identical");

    const GridSpec grid = GridSpec::default_for(k);
    const EquivalenceReport fresh = equivalence_check(k, grid, rec, expr, compiled, g_jobs);
    const EquivalenceReport reloaded = equivalence_check(k, grid, rec2, expr2, compiled2, g_jobs);
    out.require(fresh.pass, "fresh artifacts failed equivalence");
    out.require(reloaded.pass, "reloaded artifacts failed equivalence");
    out.require(fresh.points == reloaded.points &&
                    fresh.mismatches.size() == reloaded.mismatches.size(),
                "reports differ");
    out.detail << "k=3 rebuilt from files, " << reloaded.points << " points identical";
    return out;
}

}  // namespace

int main() {
    const unsigned hw = std::thread::hardware_concurrency();
    g_jobs = hw == 0 ? 1 : static_cast<int>(hw);

    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"interval patterns", criterion_interval_patterns},
        {"representation equivalence", criterion_equivalence},
        {"piece/dent counts", criterion_piece_dent_counts},
        {"min/max networks", criterion_minmax},
        {"complexity growth", criterion_complexity},
        {"triadic isomorphism", criterion_triadic_isomorphism},
        {"topology proxy", criterion_topology},
        {"gradient/region correspondence", criterion_regions},
        {"serialization round trip", criterion_serialization},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = criteria[i].run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail << "exception: " << e.what();
        }
        const double dt = seconds_since(t0);
        std::cout << "[" << i + 1 << "/" << criteria.size() << "] "
                  << (out.pass ? "PASS" : "FAIL") << " " << criteria[i].name << " ("
                  << std::fixed;
        std::cout.precision(2);
        std::cout << dt << " s)";
        if (!out.detail.str().empty()) std::cout << " -- " << out.detail.str();
        std::cout << "\n";
        if (!out.pass) ++failures;
    }
    std::cout << (failures == 0 ? "RESULT: all criteria passed"
                                : "RESULT: " + std::to_string(failures) + " criteria failed")
              << "\n";
    return failures == 0 ? 0 : 1;
}
