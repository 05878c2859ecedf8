// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cantornet/analysis.hpp"

#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cantornet/minmax.hpp"
#include "cantornet/recursive.hpp"

#include "json.hpp"

namespace cantor {

namespace {

std::int64_t pow3(int e) {
    std::int64_t v = 1;
    for (int i = 0; i < e; ++i) v *= 3;
    return v;
}

int clamp_jobs(int jobs) { return jobs < 1 ? 1 : jobs; }

// Splits [0, n) into `parts` stripes and runs fn(part_index, begin, end) on a
// thread each; results must be merged by stripe index to stay deterministic.
template <typename Fn>
void parallel_stripes(std::int64_t n, int parts, Fn fn) {
    if (parts <= 1 || n < 2 * parts) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(parts));
    const std::int64_t chunk = (n + parts - 1) / parts;
    for (int p = 0; p < parts; ++p) {
        const std::int64_t lo = p * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([=]() { fn(p, lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

GridSpec GridSpec::default_for(int k) {
    if (k < 1) throw std::invalid_argument("recursion level must be >= 1");
    return {pow3(k + 2), 128};
}

GridSpec GridSpec::parse(const std::string& text) {
    GridSpec g;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad grid spec: " + text);
        const std::string key = part.substr(0, eq);
        const std::int64_t val = std::stoll(part.substr(eq + 1));
        if (val < 1) throw std::invalid_argument("grid denominators must be >= 1");
        if (key == "xden") g.x_den = val;
        else if (key == "yden") g.y_den = val;
        else throw std::invalid_argument("unknown grid key: " + key);
    }
    if (g.x_den == 0 || g.y_den == 0)
        throw std::invalid_argument("grid spec must set xden and yden");
    return g;
}

std::string GridSpec::describe() const {
    return "x=i/" + std::to_string(x_den) + " (i=0.." + std::to_string(x_den) + "), y=j/" +
           std::to_string(y_den) + " (j=0.." + std::to_string(y_den) + ")";
}

EquivalenceReport equivalence_check(int k, const GridSpec& grid, const ReluNetwork& recursive_net,
                                    const DnfExpression& expr, const ReluNetwork& compiled_net,
                                    int jobs) {
    EquivalenceReport report;
    report.k = k;
    report.grid = grid.describe();
    report.points = grid.point_count();

    const int parts = clamp_jobs(jobs);
    std::vector<std::vector<Mismatch>> found(static_cast<std::size_t>(parts));

    parallel_stripes(grid.x_den + 1, parts, [&](int part, std::int64_t lo, std::int64_t hi) {
        auto& local = found[static_cast<std::size_t>(part)];
        for (std::int64_t i = lo; i < hi; ++i) {
            const Rational x(i, grid.x_den);
            for (std::int64_t j = 0; j <= grid.y_den; ++j) {
                const Rational y(j, grid.y_den);
                const bool by_oracle = membership_oracle(x, y, k) == ManifoldLabel::Inset;
                const RVec point = {x, y};
                const bool by_recursive = forward_value(recursive_net, point)[0].is_zero();
                const bool by_dnf = dnf_value(expr, x, y).is_zero();
                const bool by_compiled = forward_value(compiled_net, point)[0].is_zero();
                if (by_oracle != by_recursive || by_oracle != by_dnf || by_oracle != by_compiled)
                    local.push_back({x, y, by_oracle, by_recursive, by_dnf, by_compiled});
            }
        }
    });

    for (auto& local : found)
        report.mismatches.insert(report.mismatches.end(), local.begin(), local.end());
    report.pass = report.mismatches.empty();
    return report;
}

EquivalenceReport equivalence_check(int k, const GridSpec& grid, int jobs) {
    const ReluNetwork recursive_net = build_recursive_net(k);
    const DnfExpression expr = build_dnf(k);
    const ReluNetwork compiled_net = dnf_to_relu(expr);
    return equivalence_check(k, grid, recursive_net, expr, compiled_net, jobs);
}

std::string to_csv(const EquivalenceReport& report) {
    std::string out = "x,y,oracle,recursive,dnf,compiled\n";
    for (const auto& m : report.mismatches) {
        out += m.x.str() + "," + m.y.str() + "," + (m.oracle ? "inset" : "outset") + "," +
               (m.recursive ? "inset" : "outset") + "," + (m.dnf ? "inset" : "outset") + "," +
               (m.compiled ? "inset" : "outset") + "\n";
    }
    return out;
}

std::string to_json_string(const EquivalenceReport& report) {
    nlohmann::ordered_json doc;
    doc["k"] = report.k;
    doc["grid"] = report.grid;
    doc["points"] = report.points;
    doc["pass"] = report.pass;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& m : report.mismatches) {
        nlohmann::ordered_json jm;
        jm["x"] = m.x.str();
        jm["y"] = m.y.str();
        jm["oracle"] = m.oracle;
        jm["recursive"] = m.recursive;
        jm["dnf"] = m.dnf;
        jm["compiled"] = m.compiled;
        arr.push_back(std::move(jm));
    }
    doc["mismatches"] = std::move(arr);
    return doc.dump(2) + "\n";
}

RegionReport region_enumeration(const ReluNetwork& net, const GridSpec& grid, int jobs) {
    RegionReport report;
    report.scope = "patterns observed on " + grid.describe();

    const bool one_dim = net.input_dim() == 1;
    using Key = std::vector<std::uint8_t>;
    using Group = std::map<Key, RegionEntry>;

    const int parts = clamp_jobs(jobs);
    std::vector<Group> groups(static_cast<std::size_t>(parts));
    std::vector<std::int64_t> violations(static_cast<std::size_t>(parts), 0);

    const auto visit = [&](Group& group, std::int64_t& bad, const RVec& point) {
        const ActivationPattern pat = activation_pattern(net, point);
        const AffineMap map = affine_gradient(net, point);
        // The masked map must reproduce the network output at the sample.
        RVec predicted = map.apply(point);
        if (net.final_clamp())
            for (auto& v : predicted)
                if (v.sign() <= 0) v = Rational(0);
        if (predicted != forward_value(net, point)) ++bad;
        auto [it, inserted] = group.try_emplace(pat.bits, RegionEntry{pat, point, map, 1});
        if (!inserted) {
            ++it->second.samples;
            if (it->second.map != map) ++bad;
        }
    };

    parallel_stripes(grid.x_den + 1, parts, [&](int part, std::int64_t lo, std::int64_t hi) {
        auto& group = groups[static_cast<std::size_t>(part)];
        auto& bad = violations[static_cast<std::size_t>(part)];
        for (std::int64_t i = lo; i < hi; ++i) {
            const Rational x(i, grid.x_den);
            if (one_dim) {
                visit(group, bad, {x});
                continue;
            }
            for (std::int64_t j = 0; j <= grid.y_den; ++j)
                visit(group, bad, {x, Rational(j, grid.y_den)});
        }
    });

    Group merged;
    std::int64_t cross_stripe = 0;
    for (auto& g : groups) {
        for (auto& [key, entry] : g) {
            auto [it, inserted] = merged.try_emplace(key, entry);
            if (!inserted) {
                it->second.samples += entry.samples;
                if (it->second.map != entry.map) ++cross_stripe;
            }
        }
    }
    for (const auto& v : violations) report.gradient_violations += v;
    report.gradient_violations += cross_stripe;
    for (auto& [key, entry] : merged) report.entries.push_back(std::move(entry));
    return report;
}

std::vector<ComplexityRow> complexity_report(int k_max, int dnf_k_max) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    std::vector<ComplexityRow> rows;
    rows.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        ComplexityRow row;
        row.k = k;
        const ReluNetwork rec = build_recursive_net(k);
        row.recursive_neurons = static_cast<std::int64_t>(rec.hidden_neuron_count());
        row.recursive_layers = static_cast<std::int64_t>(rec.affine_layer_count());
        row.r_k = (std::int64_t{1} << (k + 1)) - 1;
        row.z_k = 3 * (row.r_k / 4) + 6;
        if (k <= dnf_k_max) {
            const ReluNetwork compiled = dnf_to_relu(build_dnf(k));
            row.dnf_neurons = static_cast<std::int64_t>(compiled.hidden_neuron_count());
            row.dnf_layers = static_cast<std::int64_t>(compiled.affine_layer_count());
        }
        rows.push_back(row);
    }
    return rows;
}

std::string to_csv(const std::vector<ComplexityRow>& rows) {
    std::string out = "k,recursive_neurons,recursive_layers,dnf_neurons,dnf_layers,r_k,z_k\n";
    for (const auto& r : rows) {
        out += std::to_string(r.k) + "," + std::to_string(r.recursive_neurons) + "," +
               std::to_string(r.recursive_layers) + "," + std::to_string(r.dnf_neurons) + "," +
               std::to_string(r.dnf_layers) + "," + std::to_string(r.r_k) + "," +
               std::to_string(r.z_k) + "\n";
    }
    return out;
}

TopologyReport topology_check(int k, int resolution) {
    if (k < 1) throw std::invalid_argument("recursion level must be >= 1");
    if (resolution < 1 || resolution % 2 != 0)
        throw std::invalid_argument("resolution must be a positive even multiplier");
    const std::int64_t n = resolution * pow3(k + 1);  // cells per side
    if (n > 1 << 14) throw std::invalid_argument("resolution too fine for this k");

    TopologyReport report;
    report.k = k;
    report.resolution = resolution;

    std::vector<std::uint8_t> inset(static_cast<std::size_t>(n * n));
    for (std::int64_t i = 0; i < n; ++i) {
        const Rational xc(2 * i + 1, 2 * n);
        const Rational height = boundary_height(xc, k);
        for (std::int64_t j = 0; j < n; ++j) {
            const Rational yc(2 * j + 1, 2 * n);
            if (yc == height)
                throw std::runtime_error("cell center exactly on the boundary; "
                                         "pick a different resolution");
            inset[static_cast<std::size_t>(j * n + i)] =
                membership_oracle(xc, yc, k) == ManifoldLabel::Inset ? 1 : 0;
        }
    }

    std::vector<std::int32_t> comp(static_cast<std::size_t>(n * n), -1);
    std::int32_t next_comp = 0;
    std::vector<bool> comp_is_inset;
    std::vector<bool> comp_touches_border;
    std::vector<std::int64_t> stack;
    for (std::int64_t start = 0; start < n * n; ++start) {
        if (comp[static_cast<std::size_t>(start)] != -1) continue;
        const std::uint8_t kind = inset[static_cast<std::size_t>(start)];
        comp_is_inset.push_back(kind != 0);
        comp_touches_border.push_back(false);
        stack.assign(1, start);
        comp[static_cast<std::size_t>(start)] = next_comp;
        while (!stack.empty()) {
            const std::int64_t cur = stack.back();
            stack.pop_back();
            const std::int64_t cx = cur % n;
            const std::int64_t cy = cur / n;
            if (cx == 0 || cy == 0 || cx == n - 1 || cy == n - 1)
                comp_touches_border[static_cast<std::size_t>(next_comp)] = true;
            const std::int64_t nbrs[4] = {cur - 1, cur + 1, cur - n, cur + n};
            const bool ok[4] = {cx > 0, cx < n - 1, cy > 0, cy < n - 1};
            for (int t = 0; t < 4; ++t) {
                if (!ok[t]) continue;
                const auto idx = static_cast<std::size_t>(nbrs[t]);
                if (comp[idx] != -1 || inset[idx] != kind) continue;
                comp[idx] = next_comp;
                stack.push_back(nbrs[t]);
            }
        }
        ++next_comp;
    }

    // Figure/ground convention: outset regions touching the frame connect
    // through the ambient exterior and count as one; the rest are holes.
    bool ambient = false;
    for (std::int32_t c = 0; c < next_comp; ++c) {
        if (comp_is_inset[static_cast<std::size_t>(c)]) {
            ++report.inset_components;
        } else if (comp_touches_border[static_cast<std::size_t>(c)]) {
            ambient = true;
        } else {
            ++report.inset_holes;
            ++report.outset_components;
        }
    }
    if (ambient) ++report.outset_components;
    return report;
}

std::string to_json_string(const TopologyReport& report) {
    nlohmann::ordered_json doc;
    doc["k"] = report.k;
    doc["resolution"] = report.resolution;
    doc["cells_per_side"] = report.resolution * pow3(report.k + 1);
    doc["inset_components"] = report.inset_components;
    doc["inset_holes"] = report.inset_holes;
    doc["outset_components"] = report.outset_components;
    return doc.dump(2) + "\n";
}

}  // namespace cantor
