// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
//
// cantornet: build, evaluate and cross-check the two exact ReLU
// representations of the Cantor-style decision region.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "cantornet/analysis.hpp"
#include "cantornet/dnf.hpp"
#include "cantornet/minmax.hpp"
#include "cantornet/recursive.hpp"
#include "cantornet/render.hpp"
#include "cantornet/serialization.hpp"
#include "cantornet/triadic.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

constexpr int kDefaultMaxKRecursive = 12;
constexpr int kDefaultMaxKDnf = 8;

struct Caps {
    std::optional<int> override_max_k;  // --max-k or CANTORNET_MAX_K

    int recursive() const { return override_max_k.value_or(kDefaultMaxKRecursive); }
    int dnf() const { return override_max_k.value_or(kDefaultMaxKDnf); }
};

bool check_cap(int k, int cap, const char* what) {
    if (k >= 1 && k <= cap) return true;
    std::cerr << "error: k=" << k << " outside configured range [1," << cap << "] for " << what
              << " (override with --max-k or CANTORNET_MAX_K)\n";
    return false;
}

std::pair<cantor::Rational, cantor::Rational> parse_point(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("point must be \"x,y\" with exact rational or decimal parts");
    return {cantor::Rational::parse(text.substr(0, comma)),
            cantor::Rational::parse(text.substr(comma + 1))};
}

void warn_if_outside_unit_square(const cantor::Rational& x, const cantor::Rational& y) {
    const cantor::Rational one(1);
    if (x.sign() < 0 || x > one || y.sign() < 0 || y > one)
        std::cerr << "warning: point outside [0,1]^2; evaluating anyway\n";
}

int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact CantorNet constructions, cross-checks and reports"};
    app.require_subcommand(1);

    Caps caps;
    if (const char* env = std::getenv("CANTORNET_MAX_K")) {
        try {
            caps.override_max_k = std::stoi(env);
        } catch (...) {
            std::cerr << "error: CANTORNET_MAX_K is not an integer\n";
            return kExitUsage;
        }
    }
    int max_k_flag = 0;
    app.add_option("--max-k", max_k_flag, "override the per-representation k cap")
        ->check(CLI::PositiveNumber);
    int jobs = default_jobs();
    app.add_option("--jobs", jobs, "worker threads for grid sweeps")->check(CLI::PositiveNumber);

    // ---- build ----
    auto* cmd_build = app.add_subcommand("build", "construct a representation and write it");
    std::string build_repr;
    int build_k = 1;
    std::string build_out;
    cmd_build->add_option("--repr", build_repr, "recursive | dnf | dnf-compiled")
        ->required()
        ->check(CLI::IsMember({"recursive", "dnf", "dnf-compiled"}));
    cmd_build->add_option("--k", build_k, "recursion level")->required();
    cmd_build->add_option("--out", build_out, "output path")->required();

    // ---- eval ----
    auto* cmd_eval = app.add_subcommand("eval", "evaluate a stored net or expression at a point");
    std::string eval_net, eval_expr, eval_point;
    cmd_eval->add_option("--net", eval_net, "network JSON path");
    cmd_eval->add_option("--expr", eval_expr, "DNF expression JSON path");
    cmd_eval->add_option("--point", eval_point, "\"x,y\" (rationals like 1/2 or decimals)")
        ->required();

    // ---- pattern ----
    auto* cmd_pattern = app.add_subcommand("pattern", "activation pattern of the recursion net");
    int pattern_k = 1;
    std::string pattern_point;
    bool pattern_fast_flag = false;
    bool pattern_blocks = false;
    cmd_pattern->add_option("--k", pattern_k, "recursion level")->required();
    cmd_pattern->add_option("--point", pattern_point, "\"x,y\"")->required();
    cmd_pattern->add_flag("--fast", pattern_fast_flag, "k-block-step computation");
    cmd_pattern->add_flag("--blocks", pattern_blocks, "group bits as 5-bit blocks");

    // ---- triadic ----
    auto* cmd_triadic = app.add_subcommand("triadic", "triadic expansion walk of an x value");
    std::string triadic_x;
    int triadic_k = 1;
    cmd_triadic->add_option("--x", triadic_x, "x in [0,1]")->required();
    cmd_triadic->add_option("--k", triadic_k, "recursion level / digit precision")->required();

    // ---- equiv ----
    auto* cmd_equiv = app.add_subcommand(
        "equiv", "compare oracle, recursive net, DNF value and compiled net on an exact grid");
    int equiv_k = 1;
    std::string equiv_grid;
    std::string equiv_out;
    bool equiv_json = false;
    cmd_equiv->add_option("--k", equiv_k, "recursion level")->required();
    cmd_equiv->add_option("--grid", equiv_grid,
                          "grid spec \"xden=N,yden=M\" (default xden=3^(k+2), yden=128)");
    cmd_equiv->add_option("--out", equiv_out, "write mismatch CSV here");
    cmd_equiv->add_flag("--json", equiv_json, "print the full JSON report");

    // ---- report ----
    auto* cmd_report = app.add_subcommand("report", "complexity table for k = 1..kmax");
    int report_kmax = 1;
    std::string report_out;
    cmd_report->add_option("--kmax", report_kmax, "largest recursion level")->required();
    cmd_report->add_option("--out", report_out, "CSV output path")->required();

    // ---- topology ----
    auto* cmd_topology = app.add_subcommand("topology", "flood-fill component / hole counts");
    int topology_k = 1;
    int topology_res = 2;
    bool topology_json = false;
    cmd_topology->add_option("--k", topology_k, "recursion level")->required();
    cmd_topology->add_option("--resolution", topology_res,
                             "even cell multiplier; cells per side = resolution * 3^(k+1)");
    cmd_topology->add_flag("--json", topology_json, "print the JSON report");

    // ---- render ----
    auto* cmd_render = app.add_subcommand("render", "emit a deterministic SVG figure");
    int render_k = 1;
    std::string render_what, render_out;
    int render_cells = 243;
    cmd_render->add_option("--k", render_k, "recursion level")->required();
    cmd_render->add_option("--what", render_what, "boundary | tessellation | dnf-lines")
        ->required()
        ->check(CLI::IsMember({"boundary", "tessellation", "dnf-lines"}));
    cmd_render->add_option("--out", render_out, "SVG output path")->required();
    cmd_render->add_option("--cells", render_cells, "tessellation raster cap per axis");

    // ---- minnet ----
    auto* cmd_minnet = app.add_subcommand("minnet", "ternary-weight min/max network");
    int minnet_d = 2;
    std::string minnet_kind = "min";
    std::string minnet_out;
    cmd_minnet->add_option("--d", minnet_d, "input arity")->required()->check(CLI::PositiveNumber);
    cmd_minnet->add_option("--kind", minnet_kind, "min | max")
        ->check(CLI::IsMember({"min", "max"}));
    cmd_minnet->add_option("--out", minnet_out, "optional network JSON path");

    // let global flags (--jobs, --max-k) appear after the subcommand too
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (max_k_flag > 0) caps.override_max_k = max_k_flag;

    try {
        if (cmd_build->parsed()) {
            using namespace cantor;
            if (build_repr == "recursive") {
                if (!check_cap(build_k, caps.recursive(), "recursive nets")) return kExitUsage;
                const ReluNetwork net = build_recursive_net(build_k);
                save_text_file(build_out, serialize(net));
                std::cout << "wrote " << build_out << ": hidden neurons " << neuron_count(net)
                          << ", affine layers " << layer_count(net) << "\n";
            } else if (build_repr == "dnf") {
                if (!check_cap(build_k, caps.dnf(), "DNF expressions")) return kExitUsage;
                const DnfExpression expr = build_dnf(build_k);
                const StructuralCounts c = structural_counts(expr);
                save_text_file(build_out, serialize(expr));
                std::cout << "wrote " << build_out << ": dents " << c.num_dents
                          << ", affine terms " << c.num_affine << " (r(k) " << c.r_formula
                          << ")\n";
            } else {
                if (!check_cap(build_k, caps.dnf(), "compiled DNF nets")) return kExitUsage;
                const ReluNetwork net = dnf_to_relu(build_dnf(build_k));
                save_text_file(build_out, serialize(net));
                std::cout << "wrote " << build_out << ": hidden neurons " << neuron_count(net)
                          << ", affine layers " << layer_count(net) << ", ternary after layer 1: "
                          << (verify_ternary_weights(net, true) ? "yes" : "no") << "\n";
            }
            return kExitOk;
        }

        if (cmd_eval->parsed()) {
            using namespace cantor;
            if (eval_net.empty() == eval_expr.empty()) {
                std::cerr << "error: eval needs exactly one of --net / --expr\n";
                return kExitUsage;
            }
            const auto [x, y] = parse_point(eval_point);
            warn_if_outside_unit_square(x, y);
            Rational value;
            bool has_label = false;
            if (!eval_net.empty()) {
                const ReluNetwork net = deserialize_network(load_text_file(eval_net));
                if (net.input_dim() != 2) {
                    std::cerr << "error: network expects " << net.input_dim()
                              << " inputs, point has 2\n";
                    return kExitUsage;
                }
                value = forward_value(net, {x, y})[0];
                has_label = net.output_dim() == 1;
            } else {
                const DnfExpression expr = deserialize_dnf(load_text_file(eval_expr));
                value = dnf_value(expr, x, y);
                has_label = true;
            }
            std::cout << "value = " << value.str();
            if (has_label) std::cout << "\nlabel = " << (value.is_zero() ? "Inset" : "Outset");
            std::cout << "\n";
            return kExitOk;
        }

        if (cmd_pattern->parsed()) {
            using namespace cantor;
            if (!check_cap(pattern_k, caps.recursive(), "recursive nets")) return kExitUsage;
            const auto [x, y] = parse_point(pattern_point);
            warn_if_outside_unit_square(x, y);
            ActivationPattern pat;
            if (pattern_fast_flag) {
                pat = pattern_fast(x, y, pattern_k);
            } else {
                pat = activation_pattern(build_recursive_net(pattern_k), {x, y});
            }
            std::cout << (pattern_blocks ? pat.str_blocks(5) : pat.str()) << "\n";
            return kExitOk;
        }

        if (cmd_triadic->parsed()) {
            using namespace cantor;
            if (!check_cap(triadic_k, caps.recursive(), "triadic walks")) return kExitUsage;
            const Rational x = Rational::parse(triadic_x);
            const TriadicDigits digits = triadic_digits(x, triadic_k);
            const ActivationCode code = activation_code(x, triadic_k);
            const IntervalIndex idx = interval_index(x, triadic_k);
            std::cout << "digits:";
            for (const int d : digits.digits) std::cout << " " << d;
            if (digits.repeating_two_tail) std::cout << " (then 2s forever)";
            std::cout << "\ncantor-digit prefix: " << (digits.cantor_flag ? "yes" : "no") << "\n";
            std::cout << "code:";
            for (const int b : code.bits) std::cout << " " << b;
            if (code.bits.empty()) std::cout << " (empty)";
            std::cout << "\nmiddle-terminated: " << (code.terminated_in_middle ? "yes" : "no")
                      << "\n";
            if (code.endpoint_hit_step)
                std::cout << "interval endpoint hit at step " << *code.endpoint_hit_step << "\n";
            std::cout << "intervals:";
            for (const int i : idx.indices) std::cout << " " << i;
            std::cout << "\n";
            return kExitOk;
        }

        if (cmd_equiv->parsed()) {
            using namespace cantor;
            if (!check_cap(equiv_k, caps.dnf(), "equivalence sweeps")) return kExitUsage;
            const GridSpec grid =
                equiv_grid.empty() ? GridSpec::default_for(equiv_k) : GridSpec::parse(equiv_grid);
            const EquivalenceReport report = equivalence_check(equiv_k, grid, jobs);
            if (!equiv_out.empty()) save_text_file(equiv_out, to_csv(report));
            if (equiv_json) std::cout << to_json_string(report);
            std::cout << (report.pass ? "PASS" : "FAIL") << " " << report.mismatches.size()
                      << " mismatches / " << report.points << " points\n";
            return report.pass ? kExitOk : kExitVerification;
        }

        if (cmd_report->parsed()) {
            using namespace cantor;
            if (!check_cap(report_kmax, caps.recursive(), "complexity reports")) return kExitUsage;
            const int dnf_cap = std::min(report_kmax, caps.dnf());
            const auto rows = complexity_report(report_kmax, dnf_cap);
            save_text_file(report_out, to_csv(rows));
            std::cout << "wrote " << report_out << " (" << rows.size() << " rows, DNF built to k="
                      << dnf_cap << ")\n";
            return kExitOk;
        }

        if (cmd_topology->parsed()) {
            using namespace cantor;
            if (!check_cap(topology_k, caps.dnf(), "topology rasters")) return kExitUsage;
            const TopologyReport report = topology_check(topology_k, topology_res);
            if (topology_json) std::cout << to_json_string(report);
            std::cout << "inset components " << report.inset_components << ", inset holes "
                      << report.inset_holes << ", outset components " << report.outset_components
                      << "\n";
            return kExitOk;
        }

        if (cmd_render->parsed()) {
            using namespace cantor;
            if (!check_cap(render_k, caps.dnf(), "renders")) return kExitUsage;
            std::string svg;
            if (render_what == "boundary") svg = render_boundary_svg(render_k);
            else if (render_what == "tessellation") svg = render_tessellation_svg(render_k, render_cells);
            else svg = render_dnf_lines_svg(render_k);
            save_text_file(render_out, svg);
            std::cout << "wrote " << render_out << "\n";
            return kExitOk;
        }

        if (cmd_minnet->parsed()) {
            using namespace cantor;
            const ReluNetwork net =
                minnet_kind == "min" ? build_min_net(minnet_d) : build_max_net(minnet_d);
            if (!minnet_out.empty()) save_text_file(minnet_out, serialize(net));
            std::cout << minnet_kind << " net for d=" << minnet_d << ": hidden neurons "
                      << neuron_count(net) << ", affine layers " << layer_count(net)
                      << ", ternary weights: " << (verify_ternary_weights(net) ? "yes" : "no")
                      << "\n";
            return kExitOk;
        }
    } catch (const cantor::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
