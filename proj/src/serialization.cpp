// Copyright (c) CantorNet contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cantornet/serialization.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cantor {

namespace {

using json = nlohmann::ordered_json;

json rational_to_json(const Rational& r) { return r.str(); }

Rational rational_from_json(const json& j, const std::string& path) {
    if (!j.is_string()) throw ParseError("expected rational string", path);
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), path);
    }
}

json vec_to_json(const RVec& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(rational_to_json(r));
    return a;
}

json mat_to_json(const RMat& m) {
    json a = json::array();
    for (const auto& row : m) a.push_back(vec_to_json(row));
    return a;
}

RVec vec_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError("expected array", path);
    RVec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

RMat mat_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) throw ParseError("expected array of arrays", path);
    RMat m;
    m.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        m.push_back(vec_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    return m;
}

json parse_document(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), "byte " + std::to_string(e.byte));
    }
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field '") + key + "'", path);
    return j.at(key);
}

HalfPlane halfplane_from_json(const json& j, const std::string& path) {
    return {rational_from_json(require(j, "a", path), path + ".a"),
            rational_from_json(require(j, "b", path), path + ".b"),
            rational_from_json(require(j, "c", path), path + ".c")};
}

json halfplane_to_json(const HalfPlane& h) {
    json j = json::object();
    j["a"] = rational_to_json(h.a);
    j["b"] = rational_to_json(h.b);
    j["c"] = rational_to_json(h.c);
    return j;
}

}  // namespace

std::string serialize(const ReluNetwork& net) {
    json doc = json::object();
    doc["final_clamp"] = net.final_clamp();
    json layers = json::array();
    for (const auto& layer : net.layers()) {
        json jl = json::object();
        jl["weights"] = mat_to_json(layer.weights);
        jl["biases"] = vec_to_json(layer.biases);
        layers.push_back(std::move(jl));
    }
    doc["layers"] = std::move(layers);
    json meta = json::object();
    if (!net.meta().repr.empty()) meta["repr"] = net.meta().repr;
    if (net.meta().k) meta["k"] = *net.meta().k;
    if (net.meta().d) meta["d"] = *net.meta().d;
    doc["meta"] = std::move(meta);
    return doc.dump(2) + "\n";
}

ReluNetwork deserialize_network(std::string_view text) {
    const json doc = parse_document(text);
    if (!doc.is_object()) throw ParseError("expected top-level object", "$");
    const json& jclamp = require(doc, "final_clamp", "$");
    if (!jclamp.is_boolean()) throw ParseError("final_clamp must be boolean", "$.final_clamp");
    const json& jlayers = require(doc, "layers", "$");
    if (!jlayers.is_array() || jlayers.empty())
        throw ParseError("layers must be a nonempty array", "$.layers");

    std::vector<AffineLayer> layers;
    layers.reserve(jlayers.size());
    for (std::size_t i = 0; i < jlayers.size(); ++i) {
        const std::string path = "$.layers[" + std::to_string(i) + "]";
        RMat w = mat_from_json(require(jlayers[i], "weights", path), path + ".weights");
        RVec b = vec_from_json(require(jlayers[i], "biases", path), path + ".biases");
        try {
            layers.emplace_back(std::move(w), std::move(b));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), path);
        }
    }

    NetMeta meta;
    if (doc.contains("meta") && doc.at("meta").is_object()) {
        const json& jm = doc.at("meta");
        if (jm.contains("repr") && jm.at("repr").is_string())
            meta.repr = jm.at("repr").get<std::string>();
        if (jm.contains("k") && jm.at("k").is_number_integer())
            meta.k = jm.at("k").get<std::int64_t>();
        if (jm.contains("d") && jm.at("d").is_number_integer())
            meta.d = jm.at("d").get<std::int64_t>();
    }
    try {
        return ReluNetwork(std::move(layers), jclamp.get<bool>(), std::move(meta));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), "$.layers");
    }
}

std::string serialize(const DnfExpression& expr) {
    json doc = json::object();
    doc["k"] = expr.k;
    json ext = json::array();
    for (const auto& h : expr.externals) ext.push_back(halfplane_to_json(h));
    doc["externals"] = std::move(ext);
    json dents = json::array();
    for (const auto& d : expr.dents) {
        json jd = json::object();
        jd["descend"] = halfplane_to_json(d.descend);
        jd["flat"] = halfplane_to_json(d.flat);
        jd["ascend"] = halfplane_to_json(d.ascend);
        jd["span"] = json::array({rational_to_json(d.span_lo), rational_to_json(d.span_hi)});
        dents.push_back(std::move(jd));
    }
    doc["dents"] = std::move(dents);
    return doc.dump(2) + "\n";
}

DnfExpression deserialize_dnf(std::string_view text) {
    const json doc = parse_document(text);
    if (!doc.is_object()) throw ParseError("expected top-level object", "$");
    const json& jk = require(doc, "k", "$");
    if (!jk.is_number_integer() || jk.get<std::int64_t>() < 1)
        throw ParseError("k must be a positive integer", "$.k");

    DnfExpression expr;
    expr.k = static_cast<int>(jk.get<std::int64_t>());
    const json& jext = require(doc, "externals", "$");
    if (!jext.is_array()) throw ParseError("externals must be an array", "$.externals");
    for (std::size_t i = 0; i < jext.size(); ++i)
        expr.externals.push_back(
            halfplane_from_json(jext[i], "$.externals[" + std::to_string(i) + "]"));
    const json& jdents = require(doc, "dents", "$");
    if (!jdents.is_array()) throw ParseError("dents must be an array", "$.dents");
    for (std::size_t i = 0; i < jdents.size(); ++i) {
        const std::string path = "$.dents[" + std::to_string(i) + "]";
        const json& jd = jdents[i];
        Dent d;
        d.descend = halfplane_from_json(require(jd, "descend", path), path + ".descend");
        d.flat = halfplane_from_json(require(jd, "flat", path), path + ".flat");
        d.ascend = halfplane_from_json(require(jd, "ascend", path), path + ".ascend");
        const json& span = require(jd, "span", path);
        if (!span.is_array() || span.size() != 2)
            throw ParseError("span must be [lo, hi]", path + ".span");
        d.span_lo = rational_from_json(span[0], path + ".span[0]");
        d.span_hi = rational_from_json(span[1], path + ".span[1]");
        expr.dents.push_back(std::move(d));
    }
    expr.includes_zero_term = true;
    return expr;
}

void save_text_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string load_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace cantor
