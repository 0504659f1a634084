#ifndef FHC_IO_HPP
#define FHC_IO_HPP

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fhc/combinatorics.hpp"
#include "fhc/skeleton.hpp"
#include "fhc/verify.hpp"

namespace fhc::io {

using json = nlohmann::json;

inline std::string token(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw InvalidInput("labels must be strings or integers");
}

/// Integers stay integers on output so numeric fixtures round-trip.
inline json token_json(const std::string& s) {
    if (!s.empty() && s.size() < 18 && (std::isdigit(static_cast<unsigned char>(s[0])) || (s[0] == '-' && s.size() > 1)) &&
        std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
        (s == "0" || s[0] != '0'))
        return std::stoll(s);
    return s;
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    try {
        return json::parse(in, nullptr, true, true);
    } catch (const json::exception& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path);
    out << text;
}

inline LabeledGraph graph_from_json(const json& j) {
    if (!j.contains("vertices") || !j.contains("edges")) throw InvalidInput("graph JSON needs vertices and edges");
    std::vector<std::string> labels;
    for (const auto& v : j.at("vertices")) labels.push_back(token(v));
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw InvalidInput("edge must be a pair");
        edges.emplace_back(token(e[0]), token(e[1]));
    }
    return LabeledGraph(labels, edges);
}

inline json graph_to_json(const LabeledGraph& g) {
    json j;
    j["vertices"] = json::array();
    for (const auto& l : g.labels()) j["vertices"].push_back(token_json(l));
    j["edges"] = json::array();
    for (auto [a, b] : g.edges()) j["edges"].push_back({token_json(g.label(a)), token_json(g.label(b))});
    return j;
}

inline json tubing_to_json(const LabeledGraph& g, const Tubing& t) {
    json j = json::array();
    for (const auto& tube : tubing_labels(g, t)) {
        json a = json::array();
        for (const auto& l : tube) a.push_back(token_json(l));
        j.push_back(a);
    }
    return j;
}

inline Tubing tubing_from_json(const LabeledGraph& g, const json& j) {
    std::vector<VertexSet> tubes;
    for (const auto& tube : j) {
        VertexSet s = 0;
        for (const auto& l : tube) s |= bit(g.index(token(l)));
        tubes.push_back(s);
    }
    return Tubing(tubes);
}

/// Graph with optional rotation system, as used by planar fixtures.
inline PlanarInput planar_from_json(const json& j) {
    PlanarInput in;
    std::map<std::string, int> idx;
    for (const auto& v : j.at("vertices")) {
        idx[token(v)] = static_cast<int>(in.ids.size());
        in.ids.push_back(token(v));
    }
    auto at = [&](const json& v) {
        auto it = idx.find(token(v));
        if (it == idx.end()) throw InvalidInput("unknown vertex " + token(v));
        return it->second;
    };
    for (const auto& e : j.at("edges")) in.edges.emplace_back(at(e.at(0)), at(e.at(1)));
    if (j.contains("embedding")) {
        std::vector<std::vector<int>> rot(in.ids.size());
        for (const auto& [k, order] : j.at("embedding").items()) {
            auto it = idx.find(k);
            if (it == idx.end()) throw InvalidInput("embedding names unknown vertex " + k);
            for (const auto& w : order) rot[it->second].push_back(at(w));
        }
        in.rotation = rot;
    }
    return in;
}

/// Skeleton JSON; facets are traced from the embedding when not listed.
inline FacetedSkeleton skeleton_from_json(const json& j) {
    if (!j.contains("facets")) return skeleton_from_planar_embedding(planar_from_json(j));
    FacetedSkeleton s;
    for (const auto& v : j.at("vertices")) s.add_vertex(token(v));
    for (const auto& e : j.at("edges")) s.add_edge(s.index(token(e.at(0))), s.index(token(e.at(1))));
    for (const auto& [label, verts] : j.at("facets").items()) {
        std::vector<int> vs;
        for (const auto& v : verts) vs.push_back(s.index(token(v)));
        s.add_facet(label, vs);
    }
    if (j.contains("embedding")) {
        auto in = planar_from_json(j);
        s.set_rotation(*in.rotation);
    }
    return s;
}

inline json skeleton_to_json(const FacetedSkeleton& s) {
    json j;
    j["vertices"] = json::array();
    for (const auto& id : s.ids()) j["vertices"].push_back(token_json(id));
    j["edges"] = json::array();
    for (int u = 0; u < s.num_vertices(); ++u)
        for (int v : s.neighbors(u))
            if (u < v) j["edges"].push_back({token_json(s.id(u)), token_json(s.id(v))});
    j["facets"] = json::object();
    for (int f = 0; f < s.num_facets(); ++f) {
        json a = json::array();
        for (int v : s.facet(f)) a.push_back(token_json(s.id(v)));
        j["facets"][s.facet_label(f)] = a;
    }
    if (s.has_rotation()) {
        j["embedding"] = json::object();
        for (int v = 0; v < s.num_vertices(); ++v) {
            json a = json::array();
            for (int w : s.rotation()[v]) a.push_back(token_json(s.id(w)));
            j["embedding"][s.id(v)] = a;
        }
    }
    return j;
}

/// Unknown ids map to -1 so that verification reports them instead of throwing.
inline Walk walk_from_json(const FacetedSkeleton& s, const json& j) {
    Walk w;
    w.closed = j.value("closed", false);
    for (const auto& v : j.at("vertices")) w.vertices.push_back(s.find(token(v)).value_or(-1));
    return w;
}

inline json walk_to_json(const FacetedSkeleton& s, const Walk& w) {
    json j;
    j["closed"] = w.closed;
    j["vertices"] = json::array();
    for (int v : w.vertices) j["vertices"].push_back(token_json(s.id(v)));
    return j;
}

inline json report_to_json(const VerificationReport& r) {
    json j;
    j["valid_walk"] = r.valid_walk;
    if (!r.problem.empty()) j["problem"] = r.problem;
    j["is_facet_hamiltonian"] = r.is_facet_hamiltonian;
    j["length"] = r.length;
    if (r.every_facet_has_edge) j["every_facet_has_edge"] = *r.every_facet_has_edge;
    j["per_facet"] = json::object();
    for (const auto& f : r.per_facet)
        j["per_facet"][f.label] = {{"visited", f.visited}, {"interval_count", f.interval_count}};
    return j;
}

}  // namespace fhc::io

#endif  // FHC_IO_HPP
