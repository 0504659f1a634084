#ifndef FHC_CLI_HPP
#define FHC_CLI_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fhc/cluster.hpp"
#include "fhc/graph_assoc.hpp"
#include "fhc/hardness.hpp"
#include "fhc/io.hpp"
#include "fhc/permutahedron.hpp"
#include "fhc/rhombic.hpp"
#include "fhc/triangulations.hpp"
#include "fhc/verify.hpp"

namespace fhc::cli {

using json = nlohmann::json;
using namespace fhc::cluster;

enum class Status { ok = 0, none = 1, unknown = 2, invalid = 3 };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::ok: return "ok";
        case Status::none: return "none";
        case Status::unknown: return "unknown";
        case Status::invalid: return "invalid";
    }
    return "?";
}

struct CommandResult {
    Status status = Status::ok;
    json payload;
    /// Plain-text output replacing the JSON payload (frieze tables, help).
    std::optional<std::string> text;
    std::vector<std::string> diagnostics;
    int exit_code() const { return static_cast<int>(status); }
};

// ---------------------------------------------------------------------------
// JSON conversions not covered by io

inline json tubing_walk_to_json(const gassoc::TubingWalk& w) {
    json j;
    j["graph"] = io::graph_to_json(w.graph);
    j["closed"] = w.closed;
    j["tubings"] = json::array();
    for (const auto& t : w.tubings) j["tubings"].push_back(io::tubing_to_json(w.graph, t));
    return j;
}

inline gassoc::TubingWalk tubing_walk_from_json(const json& j) {
    gassoc::TubingWalk w;
    w.graph = io::graph_from_json(j.at("graph"));
    w.closed = j.value("closed", false);
    for (const auto& t : j.at("tubings")) w.tubings.push_back(io::tubing_from_json(w.graph, t));
    return w;
}

inline json integer_json(const Integer& c) {
    if (c >= std::numeric_limits<long long>::min() && c <= std::numeric_limits<long long>::max())
        return static_cast<long long>(c);
    return c.str();
}

/// {"[e1,...,en]": coefficient} with exponents of x1..xn.
inline json laurent_to_json(const LaurentPoly& p) {
    json j = json::object();
    for (const auto& [e, c] : p.terms()) j[json(e).dump()] = integer_json(c);
    return j;
}

inline json strip_to_json(const rhombic::RhombicStrip& s) {
    json j;
    j["n"] = s.n;
    j["closed"] = s.closed;
    j["rows"] = json::array();
    for (const auto& row : s.rows) {
        json r = json::array();
        for (const auto& v : row) {
            json x = {{"set", s.set_name(v.label)}};
            if (v.clone == rhombic::Clone::left) x["clone"] = "left";
            if (v.clone == rhombic::Clone::right) x["clone"] = "right";
            r.push_back(x);
        }
        j["rows"].push_back(r);
    }
    j["edges"] = json::array();
    for (const auto& e : s.edges) j["edges"].push_back({{"rank", e.rank}, {"lower", e.lower}, {"upper", e.upper}});
    j["faces"] = json::array();
    for (const auto& f : s.faces)
        j["faces"].push_back({{"rank", f.rank},
                              {"left", f.left},
                              {"right", f.right},
                              {"lower", f.lower},
                              {"upper", f.upper},
                              {"step", f.step}});
    return j;
}

/// Graph JSON with an optional "embedding" (label -> cyclic neighbor labels).
inline trvb::TrvbInstance trvb_from_json(const json& j) {
    auto g = io::graph_from_json(j);
    if (!j.contains("embedding")) return trvb::instance_from_graph(g);
    trvb::TrvbInstance t{g, std::vector<std::vector<int>>(g.size())};
    for (const auto& [k, order] : j.at("embedding").items())
        for (const auto& w : order) t.rotation.at(g.index(k)).push_back(g.index(io::token(w)));
    trvb::validate_instance(t);
    return t;
}

inline json vertex_set_json(const LabeledGraph& g, VertexSet s) {
    json a = json::array();
    for (int v : members_of(s)) a.push_back(io::token_json(g.label(v)));
    return a;
}

// ---------------------------------------------------------------------------

namespace detail {

struct Globals {
    std::string out, dot;
    std::uint64_t budget = SearchOptions{}.budget;
};

inline std::vector<std::string> failing_facets(const VerificationReport& r) {
    std::vector<std::string> out;
    for (const auto& f : r.per_facet)
        if (f.interval_count != 1) out.push_back(f.label + " (" + std::to_string(f.interval_count) + " intervals)");
    return out;
}

inline CommandResult refuse(CommandResult r, const std::string& why) {
    r.status = Status::invalid;
    r.diagnostics.push_back(why);
    return r;
}

/// Verification outcome for a constructed walk; the payload is kept only when it verifies.
inline CommandResult checked(json payload, const VerificationReport& rep, const std::string& by) {
    CommandResult r;
    if (!rep.is_facet_hamiltonian) {
        r = refuse(r, "constructed walk failed verification against " + by);
        if (!rep.problem.empty()) r.diagnostics.push_back(rep.problem);
        for (const auto& f : failing_facets(rep)) r.diagnostics.push_back("facet " + f);
        return r;
    }
    payload["length"] = rep.length;
    payload["verified_by"] = by;
    r.payload = std::move(payload);
    return r;
}

inline LabeledGraph named_graph(const std::string& family, int n, int m, int k) {
    if (family == "complete") return graphs::complete(n);
    if (family == "path-graph") return graphs::path(n);
    if (family == "cycle-graph") return graphs::cycle(n);
    if (family == "star") return graphs::star(n);
    if (family == "fan") return graphs::fan(n);
    if (family == "wheel") return graphs::wheel(n);
    if (family == "split") return graphs::complete_split(n, k);
    if (family == "complete-bipartite") return graphs::complete_bipartite(n, m);
    throw InvalidInput("unknown graph family " + family);
}

inline CommandResult construct_permutahedron(int n, bool cycle) {
    if (n < 2 || n > 12) throw InvalidInput("permutahedron construction supports 2 <= n <= 12");
    auto walk = cycle ? perm::perm_fh_cycle(n) : perm::perm_fh_path(n);
    json payload;
    payload["family"] = "permutahedron";
    payload["n"] = n;
    payload["closed"] = cycle;
    payload["permutations"] = walk;
    if (n <= 7) {
        auto a = skeleton_from_graph_associahedron(graphs::complete(n));
        Walk w;
        w.closed = cycle;
        for (const auto& p : walk) w.vertices.push_back(a.vertex(perm::tubing_of(p)));
        return checked(std::move(payload), verify_walk(a.skeleton, w), "permutahedron skeleton");
    }
    perm::PrefixIntervalChecker check(n);
    for (const auto& p : walk) check.push(p);
    VerificationReport rep;
    rep.valid_walk = true;
    rep.is_facet_hamiltonian = check.finish(cycle);
    rep.length = static_cast<int>(check.length(cycle));
    return checked(std::move(payload), rep, "prefix intervals");
}

inline json diagonals_json(const std::vector<tri::Diagonal>& ds) {
    json a = json::array();
    for (const auto& d : ds) a.push_back({d.a, d.b});
    return a;
}

inline CommandResult construct_triangulations(const std::string& family, int n, tri::Strategy strategy) {
    json payload;
    payload["family"] = family;
    payload["n"] = n;
    payload["closed"] = true;
    json seq = json::array();
    Walk w;
    w.closed = true;
    if (family == "associahedron") {
        if (n < 3 || n > 9) throw InvalidInput("associahedron construction supports 3 <= n <= 9");
        auto cyc = strategy == tri::Strategy::bistar ? tri::assoc_cycle_bistar(n) : tri::assoc_cycle_parallel(n);
        auto a = skeleton_from_graph_associahedron(graphs::path(n));
        for (const auto& t : cyc) {
            seq.push_back(diagonals_json(t.diagonals));
            w.vertices.push_back(a.vertex(tri::tubing_from_triangulation_a(t)));
        }
        payload["polygon"] = n + 2;
        payload["strategy"] = strategy == tri::Strategy::bistar ? "bistar" : "parallel";
        payload["triangulations"] = seq;
        return checked(std::move(payload), verify_walk(a.skeleton, w), "associahedron skeleton");
    }
    if (family == "cyclohedron") {
        if (n < 3 || n > 8) throw InvalidInput("cyclohedron construction supports 3 <= n <= 8");
        auto cyc = tri::cyclo_cycle(n, strategy);
        auto a = skeleton_from_graph_associahedron(graphs::cycle(n));
        for (const auto& t : cyc) {
            seq.push_back(diagonals_json(t.representatives()));
            w.vertices.push_back(a.vertex(tri::tubing_from_triangulation_b(t)));
        }
        payload["polygon"] = 2 * n;
        payload["strategy"] = strategy == tri::Strategy::bistar ? "bistar" : "parallel";
        payload["triangulations"] = seq;
        return checked(std::move(payload), verify_walk(a.skeleton, w), "cyclohedron skeleton");
    }
    if (n < 3 || n > 6) throw InvalidInput("type D construction supports 3 <= n <= 6");
    auto cyc = tri::assocD_cycle(n);
    auto d = tri::skeleton_type_d(n);
    for (const auto& t : cyc) {
        json cs = json::array();
        for (const auto& c : t.reps) cs.push_back(tri::chord_name(c));
        seq.push_back(cs);
        w.vertices.push_back(d.vertex_of.at(t));
    }
    payload["polygon"] = 2 * n;
    payload["pseudotriangulations"] = seq;
    return checked(std::move(payload), verify_walk(d.skeleton, w), "type D flip graph");
}

inline CommandResult construct_graph_family(const std::string& family, int n, int m, int k, bool cycle,
                                            const std::string& graph_file) {
    gassoc::TubingWalk w;
    if (family == "caterpillar") {
        if (graph_file.empty()) throw InvalidInput("caterpillar needs --graph");
        if (cycle) throw InvalidInput("caterpillar construction gives a path; use --path");
        w = gassoc::caterpillar_fh_path(io::graph_from_json(io::read_file(graph_file))).path;
    } else if (family == "complete-bipartite") {
        if (cycle) throw InvalidInput("complete bipartite construction gives a path; use --path");
        w = gassoc::complete_bipartite_fh_path(n, m).path;
    } else if (family == "star" || family == "path-graph" || family == "cycle-graph") {
        auto f = family == "star" ? gassoc::Family::star
                 : family == "path-graph" ? gassoc::Family::path
                                          : gassoc::Family::cycle;
        auto b = gassoc::base_path(f, n);
        w = cycle ? b.cycle : b.path;
    } else if (family == "fan" || family == "wheel" || family == "split") {
        if (!cycle) throw InvalidInput(family + " construction gives a cycle; use --cycle");
        w = family == "fan" ? gassoc::fan_cycle(n) : family == "wheel" ? gassoc::wheel_cycle(n)
                                                                        : gassoc::complete_split_cycle(n, k);
    } else {
        throw InvalidInput("unknown family " + family);
    }
    json payload = tubing_walk_to_json(w);
    payload["family"] = family;
    return checked(std::move(payload), gassoc::verify(w), "graph associahedron skeleton");
}

}  // namespace detail

/// Parses and runs one command. Never throws for bad input: problems come
/// back as status invalid with diagnostics.
inline CommandResult run(const std::vector<std::string>& args) {
    CLI::App app{"facet-Hamiltonian cycles and paths on polytopes", "fhc"};
    app.require_subcommand(1);
    app.fallthrough();
    detail::Globals g;
    app.add_option("--out", g.out, "write the JSON payload to FILE");
    app.add_option("--dot", g.dot, "write a DOT rendering to FILE");
    app.add_option("--budget", g.budget, "search expansion budget");

    std::string graph_file, skeleton_file, walk_file, family, solution_file, type, evaluate, strategy = "bistar",
                                                                                             shape = "balanced";
    int n = 0, m = 0, k = 1, rank = 0, steps = 0, length = 0, last = 0;
    bool want_cycle = false, want_path = false, venn = false, emit_cycle = false, tubings = false;

    auto* tubes = app.add_subcommand("tubes", "list the tubes of a graph");
    tubes->add_option("--graph", graph_file, "graph JSON");
    tubes->add_option("--family", family, "named graph family");
    tubes->add_option("--n", n);
    tubes->add_option("--m", m);
    tubes->add_option("--k", k);
    tubes->add_flag("--tubings", tubings, "also list the maximal tubings");

    auto* verify = app.add_subcommand("verify", "check a walk for the facet-Hamiltonian property");
    verify->add_option("--skeleton", skeleton_file)->required();
    verify->add_option("--walk", walk_file)->required();

    auto* search = app.add_subcommand("search", "search for a facet-Hamiltonian cycle or path");
    search->add_option("--skeleton", skeleton_file, "skeleton JSON");
    search->add_option("--graph", graph_file, "graph JSON: search nested tubings of its graph associahedron");
    search->add_flag("--cycle", want_cycle);
    search->add_flag("--path", want_path);
    search->add_option("--length", length, "restrict cycles to this many edges");

    auto* construct = app.add_subcommand("construct", "build and verify a walk from a construction");
    construct->add_option("--family", family)->required();
    construct->add_option("--n", n);
    construct->add_option("--m", m);
    construct->add_option("--k", k);
    construct->add_option("--graph", graph_file, "caterpillar graph JSON");
    construct->add_option("--strategy", strategy)->check(CLI::IsMember({"bistar", "parallel"}));
    construct->add_flag("--cycle", want_cycle);
    construct->add_flag("--path", want_path);

    auto* belt = app.add_subcommand("belt", "bipartite belt of a finite-type cluster algebra");
    belt->add_option("--type", type)->required();
    belt->add_option("--rank", rank);
    belt->add_option("--steps", steps, "belt steps (default one full period bound)");
    belt->add_option("--evaluate", evaluate, "evaluate at the all-ones seed and print the frieze")
        ->check(CLI::IsMember({"ones"}));
    belt->add_option("--last", last, "last frieze column");
    belt->add_flag("--emit-cycle", emit_cycle, "emit the single-mutation cycle on the cluster complex");

    auto* strip = app.add_subcommand("strip", "rhombic strip of a nested walk");
    strip->add_option("--walk", walk_file)->required();
    strip->add_flag("--venn", venn);

    auto* reduce = app.add_subcommand("reduce-trvb", "gadget graph of a planar 4-regular graph");
    reduce->add_option("--graph", graph_file)->required();
    reduce->add_option("--solution", solution_file, "breaking set JSON {\"broken\": [labels]}");
    reduce->add_option("--shape", shape)->check(CLI::IsMember({"balanced", "caterpillar"}));

    auto* solve = app.add_subcommand("solve-trvb", "brute-force tree-residue vertex breaking");
    solve->add_option("--graph", graph_file)->required();

    CommandResult r;
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        r.text = app.help();
        return r;
    } catch (const CLI::ParseError& e) {
        r.status = Status::invalid;
        r.diagnostics.push_back(e.what());
        r.diagnostics.push_back(app.help());
        return r;
    }

    auto write_dot = [&](const std::string& text) {
        if (!g.dot.empty()) io::write_file(g.dot, text);
    };

    try {
        if (tubes->parsed()) {
            LabeledGraph gr = !graph_file.empty() ? io::graph_from_json(io::read_file(graph_file))
                                                  : detail::named_graph(family, n, m, k);
            auto ts = enumerate_tubes(gr);
            r.payload["count"] = ts.size();
            r.payload["tubes"] = json::array();
            for (VertexSet t : ts) r.payload["tubes"].push_back(vertex_set_json(gr, t));
            if (tubings) {
                auto all = enumerate_maximal_tubings(gr);
                r.payload["maximal_tubings"] = json::array();
                for (const auto& t : all) r.payload["maximal_tubings"].push_back(io::tubing_to_json(gr, t));
            }
        } else if (verify->parsed()) {
            auto s = io::skeleton_from_json(io::read_file(skeleton_file));
            auto w = io::walk_from_json(s, io::read_file(walk_file));
            auto rep = verify_walk(s, w);
            r.payload = io::report_to_json(rep);
            if (!rep.is_facet_hamiltonian) {
                r.status = Status::invalid;
                if (!rep.problem.empty()) r.diagnostics.push_back(rep.problem);
                for (const auto& f : detail::failing_facets(rep)) r.diagnostics.push_back("facet " + f);
            }
            write_dot(s.to_dot(w.vertices, w.closed));
        } else if (search->parsed()) {
            if (want_cycle == want_path) throw InvalidInput("give exactly one of --cycle and --path");
            if (skeleton_file.empty() == graph_file.empty()) throw InvalidInput("give exactly one of --skeleton and --graph");
            SearchOptions opt;
            opt.budget = g.budget;
            if (length > 0) opt.cycle_length = length;
            if (!graph_file.empty()) {
                if (!want_cycle) throw InvalidInput("nested search looks for cycles; use --cycle");
                auto [st, w] = gassoc::search_nested_fh_cycle(io::graph_from_json(io::read_file(graph_file)), opt);
                if (w) r.payload = tubing_walk_to_json(*w);
                r.payload["status"] = fhc::to_string(st);
                r.status = st == SearchStatus::found  ? Status::ok
                           : st == SearchStatus::none ? Status::none
                                                      : Status::unknown;
            } else {
                auto s = io::skeleton_from_json(io::read_file(skeleton_file));
                auto res = search_fh(s, want_cycle ? SearchMode::cycle : SearchMode::path, opt);
                r.payload["status"] = fhc::to_string(res.status);
                r.payload["expansions"] = res.expansions;
                if (res.walk) {
                    r.payload["walk"] = io::walk_to_json(s, *res.walk);
                    r.payload["length"] = res.walk->length();
                    write_dot(s.to_dot(res.walk->vertices, res.walk->closed));
                }
                r.status = res.status == SearchStatus::found  ? Status::ok
                           : res.status == SearchStatus::none ? Status::none
                                                              : Status::unknown;
            }
        } else if (construct->parsed()) {
            if (want_cycle && want_path) throw InvalidInput("give at most one of --cycle and --path");
            bool cycle = !want_path;
            auto strat = strategy == "parallel" ? tri::Strategy::parallel : tri::Strategy::bistar;
            if (family == "permutahedron") {
                r = detail::construct_permutahedron(n, cycle);
            } else if (family == "associahedron" || family == "cyclohedron" || family == "assoc-d") {
                if (!cycle) throw InvalidInput(family + " construction gives a cycle; use --cycle");
                r = detail::construct_triangulations(family, n, strat);
            } else {
                r = detail::construct_graph_family(family, n, m, k, cycle, graph_file);
            }
        } else if (belt->parsed()) {
            auto spec = parse_type(type, rank);
            validate(spec);
            int h = coxeter_number(spec);
            if (evaluate == "ones") {
                r.text = frieze_text(evaluate_frieze(spec, last > 0 ? last : h + 2));
            } else if (emit_cycle) {
                auto cyc = extract_fh_cycle_from_belt(spec);
                auto cc = cluster_complex(spec);
                auto w = belt_walk(cc, cyc);
                json payload;
                payload["type"] = type_name(spec);
                payload["closed"] = true;
                payload["directions"] = cyc.directions;
                payload["variables"] = json::array();
                for (const auto& v : cc.variables) payload["variables"].push_back(laurent_to_json(v));
                payload["clusters"] = json::array();
                for (int c : w.vertices)
                    payload["clusters"].push_back(c >= 0 ? json(cc.clusters[c]) : json(nullptr));
                r = detail::checked(std::move(payload), verify_walk(cc.skeleton, w), "cluster complex");
            } else {
                auto b = bipartite_belt(spec, steps > 0 ? steps : 2 * (h + 2));
                r.payload["type"] = type_name(spec);
                r.payload["signs"] = b.signs;
                if (auto p = belt_period(b)) r.payload["period"] = *p;
                r.payload["seeds"] = json::array();
                for (std::size_t t = 0; t < b.seeds.size(); ++t) {
                    json vars = json::array();
                    for (const auto& v : b.seeds[t].variables) vars.push_back(laurent_to_json(v));
                    r.payload["seeds"].push_back({{"t", t}, {"mutated", b.changed[t]}, {"variables", vars}});
                }
            }
        } else if (strip->parsed()) {
            auto j = io::read_file(walk_file);
            rhombic::RhombicStrip s;
            std::optional<std::vector<VertexSet>> universe;
            if (j.contains("permutations")) {
                std::vector<perm::Permutation> ps = j.at("permutations").get<std::vector<perm::Permutation>>();
                s = rhombic::strip_from_permutation_walk(ps, j.value("closed", false));
                if (s.n <= 20) {
                    universe.emplace();
                    for (VertexSet x = 0; x < bit(s.n); ++x) universe->push_back(x);
                }
            } else {
                auto w = tubing_walk_from_json(j);
                s = rhombic::strip_from_nested_walk(w);
                universe = std::vector<VertexSet>{0, w.graph.all()};
                for (VertexSet t : enumerate_tubes(w.graph)) universe->push_back(t);
            }
            auto rep = rhombic::validate_strip(s, universe);
            r.payload = strip_to_json(s);
            r.payload["valid"] = rep.valid;
            r.payload["issues"] = json::array();
            for (const auto& i : rep.issues) r.payload["issues"].push_back(std::string(to_string(i.kind)) + ": " + i.detail);
            r.payload["gray_codes"] = json::object();
            for (const auto& [rk, seq] : rhombic::gray_codes_per_rank(s)) {
                json a = json::array();
                for (VertexSet x : seq) a.push_back(s.set_name(x));
                r.payload["gray_codes"][std::to_string(rk)] = a;
            }
            if (venn) {
                try {
                    auto d = rhombic::venn_curves(s, s.n);
                    json curves = json::array();
                    for (const auto& c : d.curves)
                        curves.push_back({{"element", s.names.at(c.element)}, {"crossings", c.crossings}, {"faces", c.faces}});
                    r.payload["venn"] = {{"curves", curves},
                                         {"crossing_points", d.crossing_points},
                                         {"regions", d.regions},
                                         {"simple", d.simple}};
                } catch (const Unsupported& e) {
                    r.payload["venn"] = nullptr;
                    r.diagnostics.push_back(std::string("no Venn diagram: ") + e.what());
                }
            }
            if (!rep.valid) r.status = Status::invalid;
            write_dot(rhombic::to_dot(s));
        } else if (reduce->parsed()) {
            auto inst = trvb_from_json(io::read_file(graph_file));
            auto red = trvb::reduce_trvb(inst, shape == "caterpillar" ? trvb::FaceTreeShape::caterpillar
                                                                     : trvb::FaceTreeShape::balanced);
            auto st = trvb::check_structure(red.skeleton);
            r.payload["skeleton"] = io::skeleton_to_json(red.skeleton);
            r.payload["structure"] = {{"cubic", st.cubic}, {"planar", st.planar}, {"three_connected", st.three_connected}};
            if (!st.ok()) {
                r.status = Status::invalid;
                r.diagnostics.push_back("reduced graph failed its structural checks");
            }
            std::optional<Walk> walk;
            if (!solution_file.empty()) {
                VertexSet broken = 0;
                auto solution = io::read_file(solution_file);
                for (const auto& l : solution.at("broken"))
                    broken |= bit(inst.graph.index(io::token(l)));
                walk = trvb::translate_solution(red, broken);
                auto rep = verify_walk(red.skeleton, *walk);
                if (!rep.is_facet_hamiltonian)
                    return detail::refuse(r, "translated cycle failed verification");
                r.payload["walk"] = io::walk_to_json(red.skeleton, *walk);
                r.payload["walk"]["length"] = rep.length;
            }
            write_dot(red.skeleton.to_dot(walk ? walk->vertices : std::vector<int>{}, true));
        } else if (solve->parsed()) {
            auto gr = io::graph_from_json(io::read_file(graph_file));
            auto s = trvb::solve_trvb_bruteforce(gr);
            r.payload["status"] = s ? "found" : "none";
            if (s) r.payload["broken"] = vertex_set_json(gr, *s);
            if (!s) r.status = Status::none;
        }
    } catch (const std::exception& e) {
        return detail::refuse(r, e.what());
    }
    if (!g.out.empty() && r.status != Status::invalid) {
        io::write_file(g.out, r.text ? *r.text : r.payload.dump(1) + "\n");
        r.diagnostics.push_back("wrote " + g.out);
    }
    return r;
}

}  // namespace fhc::cli

#endif  // FHC_CLI_HPP
