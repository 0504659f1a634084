#ifndef FHC_HARDNESS_HPP
#define FHC_HARDNESS_HPP

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fhc/combinatorics.hpp"
#include "fhc/skeleton.hpp"
#include "fhc/verify.hpp"

namespace fhc::trvb {

/// Planar 4-regular graph with a rotation system (neighbor indices per vertex).
struct TrvbInstance {
    LabeledGraph graph;
    std::vector<std::vector<int>> rotation;
};

namespace detail {

inline std::vector<std::vector<int>> neighbor_lists(const LabeledGraph& g) {
    std::vector<std::vector<int>> adj(g.size());
    for (auto [a, b] : g.edges()) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    return adj;
}

inline bool connected(const LabeledGraph& g) {
    if (g.size() == 0) return false;
    VertexSet seen = bit(0), frontier = bit(0);
    while (frontier) {
        VertexSet next = 0;
        for (int v : members_of(frontier)) next |= g.neighbors(v);
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == g.all();
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[a] = b;
        return true;
    }
};

}  // namespace detail

/// Throws InvalidInput unless the instance is connected, 4-regular and its
/// rotation system traces a planar embedding.
inline void validate_instance(const TrvbInstance& t) {
    const auto& g = t.graph;
    if (!detail::connected(g)) throw InvalidInput("graph is not connected");
    auto adj = detail::neighbor_lists(g);
    for (int v = 0; v < g.size(); ++v)
        if (adj[v].size() != 4)
            throw InvalidInput("vertex " + g.label(v) + " has degree " + std::to_string(adj[v].size()) + ", expected 4");
    if (static_cast<int>(t.rotation.size()) != g.size()) throw InvalidInput("rotation system size mismatch");
    for (int v = 0; v < g.size(); ++v) {
        auto r = t.rotation[v];
        std::sort(r.begin(), r.end());
        if (r != adj[v]) throw InvalidInput("rotation at " + g.label(v) + " does not list its neighbors");
    }
    int faces = static_cast<int>(trace_faces(t.rotation).size());
    int e = static_cast<int>(g.edges().size());
    if (g.size() - e + faces != 2) throw InvalidInput("rotation system does not describe a planar embedding");
}

/// Instance with a rotation system computed by the planarity test.
inline TrvbInstance instance_from_graph(const LabeledGraph& g) {
    auto rot = fhc::detail::boost_embedding(g.size(), g.edges());
    if (!rot) throw InvalidInput("graph is not planar");
    TrvbInstance t{g, *rot};
    validate_instance(t);
    return t;
}

/// Medial graph of a plane graph: one vertex per edge, adjacent when the edges
/// are consecutive on a face. Rotation inherited from the skeleton's embedding.
inline TrvbInstance medial_instance(const FacetedSkeleton& s) {
    if (!s.has_rotation()) throw InvalidInput("skeleton has no rotation system");
    const auto& rot = s.rotation();
    std::map<std::pair<int, int>, int> edge_index;
    std::vector<std::string> labels;
    for (int u = 0; u < s.num_vertices(); ++u)
        for (int v : s.neighbors(u))
            if (u < v) {
                edge_index[{u, v}] = static_cast<int>(labels.size());
                labels.push_back(s.id(u) + "-" + s.id(v));
            }
    auto eid = [&](int a, int b) { return edge_index.at(std::minmax(a, b)); };
    auto pos = [&](int v, int w) {
        return static_cast<int>(std::find(rot[v].begin(), rot[v].end(), w) - rot[v].begin());
    };
    auto succ = [&](int v, int w) { return rot[v][(pos(v, w) + 1) % rot[v].size()]; };
    auto pred = [&](int v, int w) { return rot[v][(pos(v, w) + rot[v].size() - 1) % rot[v].size()]; };
    std::vector<std::vector<int>> mrot(labels.size());
    std::set<std::pair<std::string, std::string>> edges;
    for (auto [key, m] : edge_index) {
        auto [u, v] = key;
        mrot[m] = {eid(v, pred(v, u)), eid(u, succ(u, v)), eid(u, pred(u, v)), eid(v, succ(v, u))};
        for (int w : mrot[m]) edges.insert(std::minmax(labels[m], labels[w]));
    }
    TrvbInstance t{LabeledGraph(labels, {edges.begin(), edges.end()}), mrot};
    validate_instance(t);
    return t;
}

inline TrvbInstance octahedron_instance() {
    std::vector<std::pair<std::string, std::string>> edges;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            if (b != (a ^ 1)) edges.emplace_back(std::to_string(a), std::to_string(b));
    return instance_from_graph(LabeledGraph({"0", "1", "2", "3", "4", "5"}, edges));
}

/// Antiprism on 2n vertices; n = 3 is the octahedron.
inline TrvbInstance antiprism_instance(int n) {
    if (n < 3) throw InvalidInput("antiprism needs n >= 3");
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
    for (int i = 0; i < n; ++i) labels.push_back("b" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < n; ++i) {
        int j = (i + 1) % n;
        edges.emplace_back(labels[i], labels[j]);
        edges.emplace_back(labels[n + i], labels[n + j]);
        edges.emplace_back(labels[i], labels[n + i]);
        edges.emplace_back(labels[i], labels[n + j]);
    }
    return instance_from_graph(LabeledGraph(labels, edges));
}

/// Named small instances: antiprisms and medial graphs of small polyhedra.
inline std::vector<std::pair<std::string, TrvbInstance>> small_catalog() {
    std::vector<std::pair<std::string, TrvbInstance>> out;
    auto medial = [&](const std::string& name, int n, const std::vector<std::pair<int, int>>& edges) {
        PlanarInput in;
        for (int i = 0; i < n; ++i) in.ids.push_back(std::to_string(i));
        in.edges = edges;
        out.emplace_back("medial(" + name + ")", medial_instance(skeleton_from_planar_embedding(in)));
    };
    for (int n = 3; n <= 6; ++n) out.emplace_back("antiprism(" + std::to_string(n) + ")", antiprism_instance(n));
    medial("square pyramid", 5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 0}, {4, 1}, {4, 2}, {4, 3}});
    medial("triangular prism", 6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
    medial("pentagonal pyramid", 6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {5, 0}, {5, 1}, {5, 2}, {5, 3}, {5, 4}});
    medial("octahedron minus an edge", 6,
           {{0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 4}, {2, 5}, {3, 4}});
    out.emplace_back("medial(cube)", [] {
        PlanarInput in;
        for (int i = 0; i < 8; ++i) in.ids.push_back(std::to_string(i));
        for (int a = 0; a < 8; ++a)
            for (int k = 0; k < 3; ++k)
                if (!(a >> k & 1)) in.edges.emplace_back(a, a | 1 << k);
        return medial_instance(skeleton_from_planar_embedding(in));
    }());
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.second.graph.size() < b.second.graph.size(); });
    return out;
}

/// Does breaking every vertex of `broken` turn g into a tree? A broken vertex
/// of degree d becomes d vertices of degree 1.
inline bool is_trvb_solution(const LabeledGraph& g, VertexSet broken) {
    if (broken & ~g.all()) return false;
    int nodes = g.size();
    std::vector<int> id(g.size());
    std::iota(id.begin(), id.end(), 0);
    auto edges = g.edges();
    for (int v : members_of(broken)) nodes += popcount(g.neighbors(v)) - 1;
    if (static_cast<int>(edges.size()) != nodes - 1) return false;
    detail::UnionFind uf(nodes + popcount(broken));
    int fresh = g.size();
    auto end = [&](int v) { return (broken >> v & 1) ? fresh++ : v; };
    for (auto [a, b] : edges)
        if (!uf.unite(end(a), end(b))) return false;
    return true;
}

/// Smallest breaking set (fewest vertices, then lowest bitmask) or nullopt
/// after exhausting all subsets.
inline std::optional<VertexSet> solve_trvb_bruteforce(const LabeledGraph& g, int max_vertices = 30) {
    int n = g.size();
    if (n > max_vertices) throw InvalidInput("brute force limited to " + std::to_string(max_vertices) + " vertices");
    int excess = static_cast<int>(g.edges().size()) + 1 - n;
    std::vector<int> surplus(n);
    for (int v = 0; v < n; ++v) surplus[v] = popcount(g.neighbors(v)) - 1;
    if (excess == 0 && is_trvb_solution(g, 0)) return VertexSet{0};
    for (int k = 1; k <= n; ++k) {
        std::uint64_t s = (std::uint64_t{1} << k) - 1, limit = std::uint64_t{1} << n;
        while (s < limit) {
            int sum = 0;
            for (int v : members_of(s)) sum += surplus[v];
            if (sum == excess && is_trvb_solution(g, s)) return s;
            std::uint64_t c = s & -s, r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    return std::nullopt;
}

enum class FaceTreeShape { balanced, caterpillar };

/// Ring of 24 vertices around an instance vertex. Slot i faces half-edge i
/// (rotation order) through b, x, x', a; corner i (between half-edges i and
/// i+1) holds y and y'. center = n0..n3, r1, r2; n_i joins x_i and y'_i.
struct VertexGadget {
    std::array<int, 4> b{}, x{}, xp{}, a{}, y{}, yp{};
    std::array<int, 6> center{};
};

/// Gadget for the instance edge from slot i of u to slot j of v. Lane P runs
/// a(u,i) - k1 - [k1 k2 k3 k4] - k3 - b(v,j), lane Q runs b(u,i) - m1 - [m1 m2
/// m3 m4] - m3 - a(v,j). k2 and m2 are face stubs; k4 and m4 hang off the
/// spine s_u - s_v, which also meets x'(u,i) and x'(v,j).
struct EdgeGadget {
    int u = 0, i = 0, v = 0, j = 0;
    std::array<int, 4> k{}, m{};
    int su = 0, sv = 0;
};

/// Cubic tree joining the 2e stubs of an instance face (e = boundary length).
struct FaceGadget {
    int boundary = 0;
    std::vector<int> stubs;
    std::vector<int> tree;
};

struct GadgetLayout {
    std::vector<VertexGadget> vertices;
    std::vector<EdgeGadget> edges;
    std::vector<FaceGadget> faces;
};

struct TrvbReduction {
    TrvbInstance instance;
    FacetedSkeleton skeleton;
    GadgetLayout layout;
};

namespace detail {

struct Builder {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> edges;
    int add(std::string id) {
        ids.push_back(std::move(id));
        return static_cast<int>(ids.size()) - 1;
    }
    void join(int a, int b) { edges.emplace_back(a, b); }
};

inline std::vector<int> face_tree(Builder& bd, const std::string& prefix, const std::vector<int>& leaves,
                                  FaceTreeShape shape) {
    std::vector<int> nodes;
    auto node = [&] {
        int id = bd.add(prefix + std::to_string(nodes.size()));
        nodes.push_back(id);
        return id;
    };
    int m = static_cast<int>(leaves.size());
    if (shape == FaceTreeShape::caterpillar) {
        int prev = node();
        bd.join(prev, leaves[0]);
        bd.join(prev, leaves[1]);
        for (int i = 2; i < m - 1; ++i) {
            int c = node();
            bd.join(c, prev);
            bd.join(c, leaves[i]);
            prev = c;
        }
        bd.join(prev, leaves[m - 1]);
        return nodes;
    }
    auto build = [&](auto& self, int lo, int hi) -> int {
        if (hi - lo == 1) return leaves[lo];
        int mid = (lo + hi) / 2;
        int c = node();
        bd.join(c, self(self, lo, mid));
        bd.join(c, self(self, mid, hi));
        return c;
    };
    int root = node();
    int cut1 = m / 3, cut2 = m - (m - cut1) / 2;
    bd.join(root, build(build, 0, cut1));
    bd.join(root, build(build, cut1, cut2));
    bd.join(root, build(build, cut2, m));
    return nodes;
}

}  // namespace detail

/// Builds the cubic gadget graph; its embedding is recomputed by the
/// planarity test, and the skeleton's facets are the traced faces.
inline TrvbReduction reduce_trvb(const TrvbInstance& t, FaceTreeShape shape = FaceTreeShape::balanced) {
    validate_instance(t);
    const auto& g = t.graph;
    const auto& rot = t.rotation;
    int n = g.size();
    detail::Builder bd;
    GadgetLayout lay;
    auto slot = [&](int v, int w) {
        return static_cast<int>(std::find(rot[v].begin(), rot[v].end(), w) - rot[v].begin());
    };

    for (int v = 0; v < n; ++v) {
        VertexGadget vg;
        std::string p = g.label(v) + ":";
        std::vector<int> ring;
        for (int i = 0; i < 4; ++i) {
            std::string s = std::to_string(i);
            for (auto [arr, name] : {std::pair{&vg.b, "b"}, {&vg.x, "x"}, {&vg.xp, "x'"}, {&vg.a, "a"}, {&vg.y, "y"},
                                     {&vg.yp, "y'"}}) {
                (*arr)[i] = bd.add(p + name + s);
                ring.push_back((*arr)[i]);
            }
        }
        for (std::size_t r = 0; r < ring.size(); ++r) bd.join(ring[r], ring[(r + 1) % ring.size()]);
        for (int i = 0; i < 4; ++i) vg.center[i] = bd.add(p + "n" + std::to_string(i));
        vg.center[4] = bd.add(p + "r1");
        vg.center[5] = bd.add(p + "r2");
        for (int i = 0; i < 4; ++i) {
            bd.join(vg.center[i], vg.x[i]);
            bd.join(vg.center[i], vg.yp[i]);
            bd.join(vg.center[i], vg.center[4 + i / 2]);
        }
        bd.join(vg.center[4], vg.center[5]);
        lay.vertices.push_back(vg);
    }

    // stub of the lane leaving b at (vertex, slot)
    std::map<std::pair<int, int>, int> lane_stub;
    for (auto [u, v] : g.edges()) {
        EdgeGadget eg;
        eg.u = u;
        eg.v = v;
        eg.i = slot(u, v);
        eg.j = slot(v, u);
        std::string p = g.label(u) + "~" + g.label(v) + ":";
        for (int q = 0; q < 4; ++q) {
            eg.k[q] = bd.add(p + "k" + std::to_string(q + 1));
            eg.m[q] = bd.add(p + "m" + std::to_string(q + 1));
        }
        eg.su = bd.add(p + "su");
        eg.sv = bd.add(p + "sv");
        for (int q = 0; q < 4; ++q) {
            bd.join(eg.k[q], eg.k[(q + 1) % 4]);
            bd.join(eg.m[q], eg.m[(q + 1) % 4]);
        }
        const auto& U = lay.vertices[u];
        const auto& V = lay.vertices[v];
        bd.join(U.a[eg.i], eg.k[0]);
        bd.join(eg.k[2], V.b[eg.j]);
        bd.join(U.b[eg.i], eg.m[0]);
        bd.join(eg.m[2], V.a[eg.j]);
        bd.join(eg.su, U.xp[eg.i]);
        bd.join(eg.sv, V.xp[eg.j]);
        bd.join(eg.su, eg.sv);
        bd.join(eg.su, eg.k[3]);
        bd.join(eg.sv, eg.m[3]);
        lane_stub[{u, eg.i}] = eg.m[1];
        lane_stub[{v, eg.j}] = eg.k[1];
        lay.edges.push_back(eg);
    }

    auto faces = trace_faces(rot);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto& cyc = faces[f];
        FaceGadget fg;
        fg.boundary = static_cast<int>(cyc.size());
        if (fg.boundary < 3) throw InvalidInput("instance face of length " + std::to_string(fg.boundary));
        for (std::size_t q = 0; q < cyc.size(); ++q) {
            int a = cyc[q], b = cyc[(q + 1) % cyc.size()];
            int h = slot(a, b);
            fg.stubs.push_back(lay.vertices[a].y[(h + 3) % 4]);
            fg.stubs.push_back(lane_stub.at({a, h}));
        }
        fg.tree = detail::face_tree(bd, "F" + std::to_string(f) + ":t", fg.stubs, shape);
        lay.faces.push_back(std::move(fg));
    }

    PlanarInput in{bd.ids, bd.edges, std::nullopt};
    return {t, skeleton_from_planar_embedding(in), std::move(lay)};
}

struct StructureReport {
    bool cubic = false;
    bool planar = false;
    bool three_connected = false;
    bool ok() const { return cubic && planar && three_connected; }
};

/// Independent structural checks: degrees, a fresh planarity test plus the
/// Euler count of the stored embedding, and vertex 3-connectivity.
inline StructureReport check_structure(const FacetedSkeleton& s) {
    StructureReport r;
    int n = s.num_vertices();
    r.cubic = n > 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj(n);
    for (int v = 0; v < n; ++v) {
        if (s.degree(v) != 3) r.cubic = false;
        adj[v] = s.neighbors(v);
        for (int w : s.neighbors(v))
            if (v < w) edges.emplace_back(v, w);
    }
    bool euler = s.has_rotation() &&
                 n - static_cast<int>(edges.size()) + static_cast<int>(trace_faces(s.rotation()).size()) == 2;
    r.planar = euler && fhc::detail::boost_embedding(n, edges).has_value();
    r.three_connected = fhc::detail::is_3_connected(adj);
    return r;
}

/// Facets of the reduced skeleton that contain a tree node of instance face f.
inline std::vector<int> facets_of_face(const TrvbReduction& r, int f) {
    std::set<int> out;
    for (int node : r.layout.faces.at(f).tree)
        for (int fa : r.skeleton.facets_of(node)) out.insert(fa);
    return {out.begin(), out.end()};
}

/// Cycle edges for a breaking set: every lane, plus a(i)-y(i)-y'(i)-b(i+1)
/// around each corner of an unbroken vertex or b(i)-x(i)-x'(i)-a(i) at each
/// slot of a broken one.
inline std::vector<std::pair<int, int>> solution_edges(const TrvbReduction& r, VertexSet broken) {
    std::vector<std::pair<int, int>> out;
    for (const auto& e : r.layout.edges) {
        const auto& U = r.layout.vertices[e.u];
        const auto& V = r.layout.vertices[e.v];
        for (auto [a, b] : {std::pair{U.a[e.i], e.k[0]}, {e.k[0], e.k[1]}, {e.k[1], e.k[2]}, {e.k[2], V.b[e.j]},
                            {U.b[e.i], e.m[0]}, {e.m[0], e.m[1]}, {e.m[1], e.m[2]}, {e.m[2], V.a[e.j]}})
            out.emplace_back(a, b);
    }
    for (int v = 0; v < static_cast<int>(r.layout.vertices.size()); ++v) {
        const auto& G = r.layout.vertices[v];
        for (int i = 0; i < 4; ++i) {
            if (broken >> v & 1) {
                out.emplace_back(G.b[i], G.x[i]);
                out.emplace_back(G.x[i], G.xp[i]);
                out.emplace_back(G.xp[i], G.a[i]);
            } else {
                out.emplace_back(G.a[i], G.y[i]);
                out.emplace_back(G.y[i], G.yp[i]);
                out.emplace_back(G.yp[i], G.b[(i + 1) % 4]);
            }
        }
    }
    return out;
}

/// Facet-Hamiltonian cycle from a breaking set; refuses sets that do not
/// leave a tree.
inline Walk translate_solution(const TrvbReduction& r, VertexSet broken) {
    if (!is_trvb_solution(r.instance.graph, broken)) throw InvalidInput("breaking set does not leave a tree");
    auto edges = solution_edges(r, broken);
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (const auto& [v, nb] : adj)
        if (nb.size() != 2) throw std::logic_error("solution edges are not 2-regular at " + r.skeleton.id(v));
    Walk w;
    w.closed = true;
    int start = adj.begin()->first, prev = -1, cur = start;
    do {
        w.vertices.push_back(cur);
        int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
    } while (cur != start);
    if (w.vertices.size() != adj.size()) throw std::logic_error("solution edges form more than one cycle");
    return w;
}

}  // namespace fhc::trvb

#endif  // FHC_HARDNESS_HPP
