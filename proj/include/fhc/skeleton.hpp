#ifndef FHC_SKELETON_HPP
#define FHC_SKELETON_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include "fhc/combinatorics.hpp"

namespace fhc {

/// Abstract polytope skeleton with facets stored as vertex sets.
/// Vertices are addressed by index; `ids` holds the external names.
class FacetedSkeleton {
public:
    int add_vertex(const std::string& id) {
        if (index_.count(id)) throw InvalidInput("duplicate vertex id " + id);
        int v = static_cast<int>(ids_.size());
        ids_.push_back(id);
        index_[id] = v;
        adj_.emplace_back();
        vertex_facets_.emplace_back();
        return v;
    }

    void add_edge(int u, int v) {
        if (u == v) throw InvalidInput("self-loop at " + ids_.at(u));
        if (adjacent(u, v)) return;
        insert_sorted(adj_.at(u), v);
        insert_sorted(adj_.at(v), u);
    }

    int add_facet(const std::string& label, std::vector<int> verts) {
        if (facet_index_.count(label)) throw InvalidInput("duplicate facet label " + label);
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        int f = static_cast<int>(facets_.size());
        for (int v : verts) vertex_facets_.at(v).push_back(f);
        facet_labels_.push_back(label);
        facet_index_[label] = f;
        facets_.push_back(std::move(verts));
        return f;
    }

    void set_rotation(std::vector<std::vector<int>> rot) { rotation_ = std::move(rot); }

    int num_vertices() const { return static_cast<int>(ids_.size()); }
    int num_facets() const { return static_cast<int>(facets_.size()); }
    int num_edges() const {
        std::size_t s = 0;
        for (const auto& a : adj_) s += a.size();
        return static_cast<int>(s / 2);
    }

    const std::string& id(int v) const { return ids_.at(v); }
    const std::vector<std::string>& ids() const { return ids_; }
    std::optional<int> find(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    int index(const std::string& id) const {
        auto v = find(id);
        if (!v) throw InvalidInput("unknown vertex id " + id);
        return *v;
    }

    const std::vector<int>& neighbors(int v) const { return adj_.at(v); }
    bool adjacent(int u, int v) const { return std::binary_search(adj_.at(u).begin(), adj_.at(u).end(), v); }
    int degree(int v) const { return static_cast<int>(adj_.at(v).size()); }

    const std::string& facet_label(int f) const { return facet_labels_.at(f); }
    const std::vector<int>& facet(int f) const { return facets_.at(f); }
    const std::vector<int>& facets_of(int v) const { return vertex_facets_.at(v); }
    std::optional<int> find_facet(const std::string& label) const {
        auto it = facet_index_.find(label);
        if (it == facet_index_.end()) return std::nullopt;
        return it->second;
    }
    bool on_facet(int v, int f) const {
        const auto& fs = vertex_facets_.at(v);
        return std::find(fs.begin(), fs.end(), f) != fs.end();
    }

    bool has_rotation() const { return rotation_.has_value(); }
    const std::vector<std::vector<int>>& rotation() const { return rotation_.value(); }

    /// Simple of dimension d: every vertex has degree d and lies on exactly d facets.
    bool is_simple(int d) const {
        for (int v = 0; v < num_vertices(); ++v)
            if (degree(v) != d || static_cast<int>(facets_of(v).size()) != d) return false;
        return num_vertices() > 0;
    }

    /// Dimension inferred from the first vertex when the skeleton is simple, else 0.
    int simple_dimension() const {
        if (num_vertices() == 0) return 0;
        int d = degree(0);
        return is_simple(d) ? d : 0;
    }

    bool is_connected() const {
        if (num_vertices() == 0) return false;
        return component_size(0, [](int) { return true; }) == num_vertices();
    }

    /// Structural problems, empty when the skeleton satisfies its invariants.
    std::vector<std::string> problems() const {
        std::vector<std::string> out;
        if (!is_connected()) out.push_back("adjacency graph is disconnected");
        for (int v = 0; v < num_vertices(); ++v)
            if (facets_of(v).empty()) out.push_back("vertex " + id(v) + " lies on no facet");
        for (int f = 0; f < num_facets(); ++f) {
            const auto& fv = facet(f);
            if (fv.empty()) {
                out.push_back("facet " + facet_label(f) + " is empty");
                continue;
            }
            auto in = [&](int v) { return std::binary_search(fv.begin(), fv.end(), v); };
            if (component_size(fv.front(), in) != static_cast<int>(fv.size()))
                out.push_back("facet " + facet_label(f) + " is not connected");
        }
        return out;
    }

    std::string to_dot(const std::vector<int>& highlight = {}, bool closed = false) const {
        std::set<std::pair<int, int>> marked;
        for (std::size_t i = 0; i + 1 < highlight.size(); ++i)
            marked.insert(std::minmax(highlight[i], highlight[i + 1]));
        if (closed && highlight.size() > 2) marked.insert(std::minmax(highlight.back(), highlight.front()));
        std::ostringstream os;
        os << "graph skeleton {\n";
        for (int v = 0; v < num_vertices(); ++v) os << "  v" << v << " [label=\"" << escape(id(v)) << "\"];\n";
        for (int u = 0; u < num_vertices(); ++u)
            for (int v : neighbors(u))
                if (u < v) {
                    os << "  v" << u << " -- v" << v;
                    if (marked.count({u, v})) os << " [color=red, penwidth=3]";
                    os << ";\n";
                }
        os << "}\n";
        return os.str();
    }

private:
    static void insert_sorted(std::vector<int>& v, int x) { v.insert(std::lower_bound(v.begin(), v.end(), x), x); }

    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out;
    }

    template <class Pred>
    int component_size(int start, Pred in) const {
        std::vector<char> seen(num_vertices(), 0);
        std::vector<int> stack{start};
        seen[start] = 1;
        int count = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            ++count;
            for (int w : adj_[v])
                if (!seen[w] && in(w)) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
        }
        return count;
    }

    std::vector<std::string> ids_;
    std::map<std::string, int> index_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::string> facet_labels_;
    std::map<std::string, int> facet_index_;
    std::vector<std::vector<int>> facets_;
    std::vector<std::vector<int>> vertex_facets_;
    std::optional<std::vector<std::vector<int>>> rotation_;
};

/// Skeleton of a graph associahedron together with the tubing behind each vertex.
struct AssociahedronSkeleton {
    FacetedSkeleton skeleton;
    std::vector<Tubing> tubings;
    std::map<Tubing, int> vertex_of;
    std::vector<VertexSet> tubes;
    std::map<VertexSet, int> facet_of;

    int vertex(const Tubing& t) const {
        auto it = vertex_of.find(t);
        if (it == vertex_of.end()) throw InvalidInput("tubing is not a vertex of this associahedron");
        return it->second;
    }
};

inline AssociahedronSkeleton skeleton_from_graph_associahedron(const LabeledGraph& g) {
    if (!g.is_connected()) throw InvalidInput("graph is disconnected");
    AssociahedronSkeleton out;
    out.tubings = enumerate_maximal_tubings(g);
    for (std::size_t i = 0; i < out.tubings.size(); ++i) {
        out.skeleton.add_vertex(tubing_name(g, out.tubings[i]));
        out.vertex_of[out.tubings[i]] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < out.tubings.size(); ++i)
        for (VertexSet t : out.tubings[i].tubes) {
            int j = out.vertex(flip(g, out.tubings[i], t).first);
            if (static_cast<int>(i) < j) out.skeleton.add_edge(static_cast<int>(i), j);
        }
    out.tubes = enumerate_tubes(g);
    std::map<VertexSet, std::vector<int>> members;
    for (std::size_t i = 0; i < out.tubings.size(); ++i)
        for (VertexSet t : out.tubings[i].tubes) members[t].push_back(static_cast<int>(i));
    for (VertexSet t : out.tubes) {
        out.facet_of[t] = out.skeleton.add_facet(tube_name(g, t), members[t]);
    }
    return out;
}

/// Undirected graph with an optional rotation system, input to face tracing.
struct PlanarInput {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> edges;
    /// Cyclic neighbor order per vertex; computed when absent.
    std::optional<std::vector<std::vector<int>>> rotation;
};

enum class PlanarError { none, not_planar, embedding_not_planar, not_3_connected, malformed };

inline const char* to_string(PlanarError e) {
    switch (e) {
        case PlanarError::none: return "ok";
        case PlanarError::not_planar: return "graph is not planar";
        case PlanarError::embedding_not_planar: return "rotation system does not describe a planar embedding";
        case PlanarError::not_3_connected: return "graph is not 3-connected";
        case PlanarError::malformed: return "malformed input";
    }
    return "";
}

struct PlanarInputError : InvalidInput {
    PlanarError kind;
    PlanarInputError(PlanarError k, const std::string& what) : InvalidInput(what), kind(k) {}
};

namespace detail {

inline std::vector<std::vector<int>> adjacency_lists(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj.at(u).push_back(v);
        adj.at(v).push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
}

/// True when the graph minus `removed` is connected and has no articulation point.
inline bool biconnected_without(const std::vector<std::vector<int>>& adj, int removed) {
    int n = static_cast<int>(adj.size());
    int root = removed == 0 ? 1 : 0;
    std::vector<int> disc(n, -1), low(n, 0);
    int timer = 0, visited = 0;
    bool ok = true;
    // iterative DFS computing low-links
    struct Frame { int v, parent; std::size_t next; int children; };
    std::vector<Frame> stack{{root, -1, 0, 0}};
    disc[root] = low[root] = timer++;
    ++visited;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next < adj[f.v].size()) {
            int w = adj[f.v][f.next++];
            if (w == removed || w == f.parent) continue;
            if (disc[w] >= 0) {
                low[f.v] = std::min(low[f.v], disc[w]);
            } else {
                disc[w] = low[w] = timer++;
                ++visited;
                ++f.children;
                stack.push_back({w, f.v, 0, 0});
            }
            continue;
        }
        Frame done = f;
        stack.pop_back();
        if (stack.empty()) {
            if (done.children > 1) ok = false;
        } else {
            Frame& p = stack.back();
            low[p.v] = std::min(low[p.v], low[done.v]);
            if (p.parent != -1 && low[done.v] >= disc[p.v]) ok = false;
        }
    }
    return ok && visited == n - (removed >= 0 ? 1 : 0);
}

inline bool is_3_connected(const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    if (n < 4) return false;
    for (int a = 0; a < n; ++a)
        if (!biconnected_without(adj, a)) return false;
    return true;
}

inline std::optional<std::vector<std::vector<int>>> boost_embedding(int n, const std::vector<std::pair<int, int>>& edges) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                        boost::property<boost::vertex_index_t, int>,
                                        boost::property<boost::edge_index_t, int>>;
    Graph g(n);
    for (auto [u, v] : edges) boost::add_edge(u, v, g);
    auto eidx = boost::get(boost::edge_index, g);
    int k = 0;
    for (auto [it, end] = boost::edges(g); it != end; ++it) boost::put(eidx, *it, k++);
    using Edge = boost::graph_traits<Graph>::edge_descriptor;
    std::vector<std::vector<Edge>> emb(n);
    bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = g,
        boost::boyer_myrvold_params::embedding =
            boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, g)));
    if (!planar) return std::nullopt;
    std::vector<std::vector<int>> rot(n);
    for (int v = 0; v < n; ++v)
        for (const Edge& e : emb[v]) {
            int s = static_cast<int>(boost::source(e, g)), t = static_cast<int>(boost::target(e, g));
            rot[v].push_back(s == v ? t : s);
        }
    return rot;
}

}  // namespace detail

/// Face cycles of a rotation system. Darts (u,v) continue with (v,w) where w
/// follows u in the cyclic order at v.
inline std::vector<std::vector<int>> trace_faces(const std::vector<std::vector<int>>& rot) {
    int n = static_cast<int>(rot.size());
    std::map<std::pair<int, int>, bool> used;
    for (int u = 0; u < n; ++u)
        for (int v : rot[u]) used[{u, v}] = false;
    std::vector<std::vector<int>> faces;
    for (int u = 0; u < n; ++u)
        for (int v : rot[u]) {
            if (used[{u, v}]) continue;
            std::vector<int> face;
            int a = u, b = v;
            while (!used[{a, b}]) {
                used[{a, b}] = true;
                face.push_back(a);
                const auto& r = rot[b];
                auto it = std::find(r.begin(), r.end(), a);
                if (it == r.end()) throw PlanarInputError(PlanarError::malformed, "rotation system is not symmetric");
                ++it;
                if (it == r.end()) it = r.begin();
                a = b;
                b = *it;
            }
            faces.push_back(std::move(face));
        }
    return faces;
}

/// Facets are the traced faces, labeled f0, f1, ... in discovery order.
inline FacetedSkeleton skeleton_from_planar_embedding(const PlanarInput& in) {
    int n = static_cast<int>(in.ids.size());
    auto adj = detail::adjacency_lists(n, in.edges);
    for (int v = 0; v < n; ++v)
        if (std::adjacent_find(adj[v].begin(), adj[v].end()) != adj[v].end())
            throw PlanarInputError(PlanarError::malformed, "repeated edge at " + in.ids[v]);
    auto rot = in.rotation;
    if (!rot) {
        rot = detail::boost_embedding(n, in.edges);
        if (!rot) throw PlanarInputError(PlanarError::not_planar, "graph is not planar");
    } else {
        if (static_cast<int>(rot->size()) != n) throw PlanarInputError(PlanarError::malformed, "rotation system size mismatch");
        for (int v = 0; v < n; ++v) {
            auto r = (*rot)[v];
            std::sort(r.begin(), r.end());
            if (r != adj[v]) throw PlanarInputError(PlanarError::malformed, "rotation at " + in.ids[v] + " does not match edges");
        }
    }
    if (!detail::is_3_connected(adj)) {
        if (!detail::boost_embedding(n, in.edges)) throw PlanarInputError(PlanarError::not_planar, "graph is not planar");
        throw PlanarInputError(PlanarError::not_3_connected, "graph is not 3-connected");
    }
    auto faces = trace_faces(*rot);
    int e = static_cast<int>(in.edges.size());
    if (n - e + static_cast<int>(faces.size()) != 2) {
        if (!detail::boost_embedding(n, in.edges)) throw PlanarInputError(PlanarError::not_planar, "graph is not planar");
        throw PlanarInputError(PlanarError::embedding_not_planar, "rotation system does not describe a planar embedding");
    }
    FacetedSkeleton s;
    for (const auto& id : in.ids) s.add_vertex(id);
    for (auto [u, v] : in.edges) s.add_edge(u, v);
    for (std::size_t i = 0; i < faces.size(); ++i) s.add_facet("f" + std::to_string(i), faces[i]);
    s.set_rotation(*rot);
    return s;
}

}  // namespace fhc

#endif  // FHC_SKELETON_HPP
