#ifndef FHC_GRAPH_ASSOC_HPP
#define FHC_GRAPH_ASSOC_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fhc/combinatorics.hpp"
#include "fhc/permutahedron.hpp"
#include "fhc/skeleton.hpp"
#include "fhc/verify.hpp"

namespace fhc::gassoc {

/// Sequence of maximal tubings on one graph; consecutive tubings differ by a flip.
struct TubingWalk {
    LabeledGraph graph;
    std::vector<Tubing> tubings;
    bool closed = false;

    std::size_t size() const { return tubings.size(); }
    int length() const {
        int n = static_cast<int>(tubings.size());
        if (n == 0) return 0;
        return closed ? n : n - 1;
    }
};

inline bool differs_by_flip(const LabeledGraph& g, const Tubing& a, const Tubing& b) {
    if (a.size() != b.size() || static_cast<int>(a.size()) != g.size() - 1) return false;
    std::vector<VertexSet> gone;
    for (VertexSet t : a.tubes)
        if (!b.contains(t)) gone.push_back(t);
    if (gone.size() != 1) return false;
    return flip(g, a, gone[0]).first == b;
}

/// Index i of the first pair (i, i+1) that is not a flip, wrapping when closed.
inline std::optional<int> first_bad_step(const TubingWalk& w) {
    int n = static_cast<int>(w.tubings.size());
    for (int i = 0; i < n; ++i) {
        if (!is_maximal_tubing(w.graph, w.tubings[i])) return i;
        if (i + 1 < n && !differs_by_flip(w.graph, w.tubings[i], w.tubings[i + 1])) return i;
    }
    if (w.closed && n > 2 && !differs_by_flip(w.graph, w.tubings.back(), w.tubings.front())) return n - 1;
    return std::nullopt;
}

inline Walk to_walk(const AssociahedronSkeleton& a, const TubingWalk& w) {
    Walk out;
    out.closed = w.closed;
    for (const auto& t : w.tubings) out.vertices.push_back(a.vertex(t));
    return out;
}

/// Verifies against the full associahedron skeleton of the walk's graph.
inline VerificationReport verify(const TubingWalk& w) {
    auto a = skeleton_from_graph_associahedron(w.graph);
    for (std::size_t i = 0; i < w.tubings.size(); ++i)
        if (!a.vertex_of.count(w.tubings[i])) {
            VerificationReport r;
            r.problem = "step " + std::to_string(i) + " is not a maximal tubing";
            return r;
        }
    return verify_walk(a.skeleton, to_walk(a, w));
}

inline TubingWalk reversed(TubingWalk w) {
    std::reverse(w.tubings.begin(), w.tubings.end());
    return w;
}

inline VertexOrder rotate_right(VertexOrder o) {
    std::rotate(o.rbegin(), o.rbegin() + 1, o.rend());
    return o;
}

inline VertexOrder rotate_left(VertexOrder o) {
    std::rotate(o.begin(), o.begin() + 1, o.end());
    return o;
}

namespace detail {

inline void push(std::vector<Tubing>& seq, const Tubing& t) {
    if (seq.empty() || seq.back() != t) seq.push_back(t);
}

inline void push_order(const LabeledGraph& g, std::vector<Tubing>& seq, const VertexOrder& o) {
    push(seq, nested_tubing_from_order(g, o));
}

inline void append(std::vector<Tubing>& seq, const std::vector<Tubing>& more) {
    for (const auto& t : more) push(seq, t);
}

/// Moves the element at position `from` to position `to` by adjacent swaps,
/// emitting every intermediate order (the start included).
inline std::vector<VertexOrder> move_element(VertexOrder o, int from, int to) {
    std::vector<VertexOrder> out{o};
    while (from != to) {
        int next = from < to ? from + 1 : from - 1;
        std::swap(o[from], o[next]);
        from = next;
        out.push_back(o);
    }
    return out;
}

inline void close_walk(TubingWalk& w) {
    if (w.tubings.size() > 1 && w.tubings.back() == w.tubings.front()) w.tubings.pop_back();
    w.closed = true;
}

/// Vertex order of a nested chain whose top is `whole`; nullopt if not a chain.
inline std::optional<VertexOrder> chain_order(const Tubing& t, VertexSet whole) {
    std::vector<VertexSet> chain = t.tubes;
    std::sort(chain.begin(), chain.end(), [](VertexSet a, VertexSet b) { return popcount(a) < popcount(b); });
    chain.push_back(whole);
    VertexOrder order;
    VertexSet prev = 0;
    for (VertexSet s : chain) {
        if ((s & prev) != prev) return std::nullopt;
        VertexSet d = s & ~prev;
        if (popcount(d) != 1) return std::nullopt;
        order.push_back(lowest(d));
        prev = s;
    }
    return order;
}

/// The path of the permutahedron on the given arrangement: it starts at `m`
/// and moves the last element to the front.
inline std::vector<VertexOrder> perm_path_on(const VertexOrder& m) {
    std::vector<VertexOrder> out;
    if (m.empty()) return out;
    for (const auto& p : perm::perm_fh_path(static_cast<int>(m.size()))) {
        VertexOrder o;
        for (int x : p) o.push_back(m[x - 1]);
        out.push_back(std::move(o));
    }
    return out;
}

/// Flips the smallest tube containing v until no tube contains it.
inline void expel_by_flips(const LabeledGraph& g, std::vector<Tubing>& seq, int v) {
    while (true) {
        const Tubing& cur = seq.back();
        std::optional<VertexSet> best;
        for (VertexSet t : cur.tubes)
            if ((t & bit(v)) && (!best || popcount(t) < popcount(*best))) best = t;
        if (!best) return;
        push(seq, flip(g, cur, *best).first);
    }
}

}  // namespace detail

inline VertexOrder order_of(const LabeledGraph& g, const Tubing& t) { return order_from_nested_tubing(g, t); }

inline int kernel(const LabeledGraph& g, const Tubing& t) { return order_of(g, t).front(); }

/// Absorbing v into a nested tubing of the graph without v. The tubing lives on
/// the supergraph's indices and must not cover v.
inline TubingWalk absorb(const LabeledGraph& sup, const Tubing& t, int v) {
    VertexSet rest = sup.all() & ~bit(v);
    for (VertexSet s : t.tubes)
        if (s & bit(v)) throw InvalidInput("absorb: tubing already covers the absorbed vertex");
    auto order = detail::chain_order(t, rest);
    if (!order || !sup.is_connected(rest)) throw InvalidInput("absorb: tubing is not nested");
    if (!sup.has_edge(order->front(), v)) throw InvalidInput("absorb: kernel is not adjacent to the absorbed vertex");
    order->push_back(v);
    TubingWalk w{sup, {}, false};
    for (const auto& o : detail::move_element(*order, sup.size() - 1, 0)) detail::push_order(sup, w.tubings, o);
    return w;
}

/// Expelling v from a nested tubing whose kernel is v: v moves to the end.
inline TubingWalk expel(const LabeledGraph& sup, const Tubing& t, int v) {
    if (!is_nested(t) || static_cast<int>(t.size()) != sup.size() - 1) throw InvalidInput("expel: tubing is not nested");
    auto order = order_of(sup, t);
    if (order.front() != v) throw InvalidInput("expel: vertex is not the kernel");
    TubingWalk w{sup, {}, false};
    for (const auto& o : detail::move_element(order, 0, sup.size() - 1)) {
        try {
            detail::push_order(sup, w.tubings, o);
        } catch (const InvalidInput&) {
            throw InvalidInput("expel: the vertex after v is not adjacent to it");
        }
    }
    return w;
}

/// Every tube gains the apex v and {v} is added. The supergraph must extend the
/// walk's graph by one vertex placed last.
inline TubingWalk lift_path_with_apex(const TubingWalk& path, const LabeledGraph& sup, int v) {
    const auto& g = path.graph;
    if (sup.size() != g.size() + 1 || v != g.size()) throw InvalidInput("lift: apex must be the last vertex of the supergraph");
    for (int i = 0; i < g.size(); ++i)
        if ((sup.neighbors(i) & g.all()) != g.neighbors(i)) throw InvalidInput("lift: supergraph does not extend the graph");
    TubingWalk out{sup, {}, path.closed};
    for (std::size_t i = 0; i < path.tubings.size(); ++i) {
        const auto& t = path.tubings[i];
        std::string at = "lift: step " + std::to_string(i);
        if (!is_nested(t)) throw InvalidInput(at + " is not nested");
        if (!sup.has_edge(kernel(g, t), v)) throw InvalidInput(at + " has a kernel not adjacent to the apex");
        std::vector<VertexSet> tubes{bit(v)};
        for (VertexSet s : t.tubes) tubes.push_back(s | bit(v));
        out.tubings.emplace_back(std::move(tubes));
    }
    return out;
}

struct UniversalVertexResult {
    TubingWalk cycle;
    /// Path on the enlarged graph that again starts at the right rotation of its end.
    TubingWalk path;
};

/// Adds a universal vertex to the base path's graph. The base path must start
/// and end in nested tubings with start = rotate_right(end).
inline UniversalVertexResult universal_vertex_cycle(const TubingWalk& base, std::string label = "") {
    const auto& g = base.graph;
    if (base.tubings.empty() || base.closed) throw InvalidInput("universal vertex: base must be an open path");
    if (!is_nested(base.tubings.front()) || !is_nested(base.tubings.back()))
        throw InvalidInput("universal vertex: base path endpoints must be nested");
    auto s = order_of(g, base.tubings.front()), e = order_of(g, base.tubings.back());
    if (s != rotate_right(e))
        throw InvalidInput("universal vertex: base path must start at the rotation of its end with the last element first");
    int n = g.size();
    if (label.empty()) label = std::to_string(n + 1);
    LabeledGraph sup = g.with_vertex(label, g.all());
    int v = n;

    std::vector<Tubing> p_plus;
    for (const auto& t : base.tubings) {
        auto tubes = t.tubes;
        tubes.push_back(g.all());
        p_plus.emplace_back(std::move(tubes));
    }
    auto q = absorb(sup, base.tubings.back(), v).tubings;
    std::vector<Tubing> lifted;
    for (auto o : detail::perm_path_on(e)) {
        o.insert(o.begin(), v);
        lifted.push_back(nested_tubing_from_order(sup, o));
    }
    VertexOrder top = rotate_right(e);
    top.insert(top.begin(), v);
    auto q_inv = expel(sup, nested_tubing_from_order(sup, top), v).tubings;

    UniversalVertexResult r;
    r.cycle.graph = sup;
    std::vector<Tubing>& c = r.cycle.tubings;
    detail::append(c, p_plus);
    detail::append(c, q);
    detail::append(c, lifted);
    detail::append(c, q_inv);
    detail::close_walk(r.cycle);

    r.path.graph = sup;
    detail::append(r.path.tubings, lifted);
    detail::append(r.path.tubings, q_inv);
    detail::append(r.path.tubings, p_plus);
    return r;
}

/// Maps a walk onto an isomorphic graph; map[i] is the target index of vertex i.
inline TubingWalk relabel(const TubingWalk& w, const LabeledGraph& target, const std::vector<int>& map) {
    const auto& g = w.graph;
    if (target.size() != g.size() || static_cast<int>(map.size()) != g.size()) throw InvalidInput("relabel: size mismatch");
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j)
            if (i != j && g.has_edge(i, j) != target.has_edge(map[i], map[j]))
                throw InvalidInput("relabel: map is not an isomorphism");
    TubingWalk out{target, {}, w.closed};
    for (const auto& t : w.tubings) {
        std::vector<VertexSet> tubes;
        for (VertexSet s : t.tubes) {
            VertexSet m = 0;
            for (int i : members_of(s)) m |= bit(map[i]);
            tubes.push_back(m);
        }
        out.tubings.emplace_back(std::move(tubes));
    }
    return out;
}

enum class Family { path, cycle, star };

inline const char* to_string(Family f) {
    switch (f) {
        case Family::path: return "path";
        case Family::cycle: return "cycle";
        case Family::star: return "star";
    }
    return "";
}

struct BasePath {
    TubingWalk path;
    TubingWalk cycle;
};

namespace detail {

/// Each tube of the graph occurs in exactly one run of the sequence.
inline bool single_runs(const LabeledGraph& g, const std::vector<Tubing>& seq, bool closed) {
    std::map<VertexSet, int> runs;
    int n = static_cast<int>(seq.size());
    for (int i = 0; i < n; ++i)
        for (VertexSet t : seq[i].tubes) {
            bool before = i > 0 ? seq[i - 1].contains(t) : (closed && seq[n - 1].contains(t));
            if (!before) ++runs[t];
        }
    int tubes = 0;
    for (VertexSet s = 1; s < g.all(); ++s)
        if (g.is_connected(s)) ++tubes;
    for (auto& [t, c] : runs)
        if (c > 1) return false;
    for (VertexSet t : seq.front().tubes)
        if (closed && runs[t] == 0) runs[t] = 1;
    return static_cast<int>(runs.size()) == tubes;
}

/// Removes the first run of |V|-1 consecutive edges of a facet-Hamiltonian cycle
/// that leaves a facet-Hamiltonian path between nested, mutually rotated ends.
/// The path is oriented so that it starts at the right rotation of its end.
inline TubingWalk break_open(const TubingWalk& cycle) {
    const auto& g = cycle.graph;
    const auto& c = cycle.tubings;
    int len = static_cast<int>(c.size()), cut = g.size() - 1;
    for (int i = 0; i < len; ++i) {
        std::vector<Tubing> seq;
        for (int j = 0; j <= len - cut; ++j) seq.push_back(c[(i + cut + j) % len]);
        if (!is_nested(seq.front()) || !is_nested(seq.back())) continue;
        auto s = order_from_nested_tubing(g, seq.front()), e = order_from_nested_tubing(g, seq.back());
        bool right = s == rotate_right(e), left = e == rotate_right(s);
        if ((!right && !left) || !single_runs(g, seq, false)) continue;
        if (!right) std::reverse(seq.begin(), seq.end());
        return TubingWalk{g, seq, false};
    }
    throw ContractViolation("cycle has no cut with rotated nested ends");
}

/// Downward interval shifting on P_n, smallest flippable tube first, until the
/// order is reversed; then every tube is flipped once more, largest first.
inline BasePath path_family(int n) {
    auto g = graphs::path(n);
    VertexOrder pi = perm::identity(n);
    for (int& x : pi) --x;
    VertexOrder done(pi.rbegin(), pi.rend());
    std::vector<Tubing> c;
    push_order(g, c, pi);
    while (pi != done) {
        int pick = -1;
        int lo = pi[0], hi = pi[0];
        for (int k = 1; k < n; ++k) {
            // prefix of size k is [lo, hi]
            if (pi[k] == hi + 1 && (k == 1 || pi[k - 1] == lo)) {
                pick = k;
                break;
            }
            lo = std::min(lo, pi[k]);
            hi = std::max(hi, pi[k]);
        }
        if (pick < 0) throw ContractViolation("path family: no tube can shift down");
        std::swap(pi[pick - 1], pi[pick]);
        push_order(g, c, pi);
    }
    std::vector<VertexSet> original = c.back().tubes;
    std::sort(original.begin(), original.end(), [](VertexSet a, VertexSet b) { return popcount(a) > popcount(b); });
    for (VertexSet t : original) push(c, flip(g, c.back(), t).first);
    if (c.back() != c.front()) throw ContractViolation("path family: closing flips do not return to the start");
    c.pop_back();

    BasePath r;
    r.cycle = TubingWalk{g, c, true};
    r.path = break_open(r.cycle);
    return r;
}

/// n phases; phase i moves the current first element to the end by flipping
/// the tubes in increasing size.
inline BasePath cycle_family(int n) {
    auto g = graphs::cycle(n);
    VertexOrder pi(n);
    for (int i = 0; i < n; ++i) pi[i] = i;
    std::vector<Tubing> c;
    push_order(g, c, pi);
    std::size_t path_end = 0;
    for (int phase = 0; phase < n; ++phase) {
        for (int k = 1; k < n; ++k) {
            std::swap(pi[k - 1], pi[k]);
            push_order(g, c, pi);
        }
        if (phase == n - 2) path_end = c.size();
    }
    BasePath r;
    r.path = TubingWalk{g, std::vector<Tubing>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(path_end)), false};
    r.cycle = TubingWalk{g, c, false};
    close_walk(r.cycle);
    return r;
}

/// Center 1 prepended to the permutahedron path on the leaves, then the center
/// is expelled down to all singletons; the closing flips rebuild 1..n.
inline BasePath star_family(int n) {
    auto g = graphs::star(n);
    VertexOrder leaves;
    for (int i = 1; i < n; ++i) leaves.push_back(i);
    std::vector<Tubing> c;
    for (auto o : perm_path_on(leaves)) {
        o.insert(o.begin(), 0);
        push_order(g, c, o);
    }
    expel_by_flips(g, c, 0);
    BasePath r;
    r.path = TubingWalk{g, c, false};
    for (int leaf = n - 1; leaf >= 1; --leaf) push(c, flip(g, c.back(), bit(leaf)).first);
    r.cycle = TubingWalk{g, c, false};
    close_walk(r.cycle);
    return r;
}

}  // namespace detail

inline BasePath base_path(Family f, int n) {
    if (n < 3) throw InvalidInput("base families need n >= 3");
    switch (f) {
        case Family::path: return detail::path_family(n);
        case Family::cycle: return detail::cycle_family(n);
        case Family::star: return detail::star_family(n);
    }
    throw InvalidInput("unsupported family");
}

/// Path on A(S_n) from 2,1,3,..,n to 1,3,..,n,2: tubes through the center and
/// leaf 2 first, then all singletons, then the tubes through the center only.
inline TubingWalk apex_ready_star_path(int n) {
    if (n < 3) throw InvalidInput("star needs n >= 3");
    auto g = graphs::star(n);
    VertexOrder others;
    for (int i = 2; i < n; ++i) others.push_back(i);
    std::vector<Tubing> seq;
    for (auto o : detail::perm_path_on(others)) {
        o.insert(o.begin(), {1, 0});
        detail::push_order(g, seq, o);
    }
    detail::expel_by_flips(g, seq, 0);
    detail::push(seq, flip(g, seq.back(), bit(1)).first);
    for (int leaf = n - 2; leaf >= 2; --leaf) detail::push(seq, flip(g, seq.back(), bit(leaf)).first);
    detail::push(seq, flip(g, seq.back(), bit(n - 1)).first);
    auto tail = detail::perm_path_on(others);
    std::reverse(tail.begin(), tail.end());
    for (auto o : tail) {
        o.insert(o.begin(), 0);
        o.push_back(1);
        detail::push_order(g, seq, o);
    }
    return TubingWalk{g, seq, false};
}

/// Orients a base path so that it starts at the right rotation of its end.
inline TubingWalk apex_oriented(const TubingWalk& p) {
    const auto& g = p.graph;
    if (!p.tubings.empty() && is_nested(p.tubings.front()) && is_nested(p.tubings.back())) {
        auto s = order_of(g, p.tubings.front()), e = order_of(g, p.tubings.back());
        if (s == rotate_right(e)) return p;
        if (e == rotate_right(s)) return reversed(p);
    }
    throw InvalidInput("path endpoints are not rotations of each other");
}

/// Fan on n vertices: P_{n-1} plus a universal vertex.
inline TubingWalk fan_cycle(int n) {
    if (n < 4) throw InvalidInput("fan needs n >= 4");
    return universal_vertex_cycle(apex_oriented(base_path(Family::path, n - 1).path)).cycle;
}

/// Wheel on n vertices: C_{n-1} plus a hub.
inline TubingWalk wheel_cycle(int n) {
    if (n < 4) throw InvalidInput("wheel needs n >= 4");
    return universal_vertex_cycle(apex_oriented(base_path(Family::cycle, n - 1).path)).cycle;
}

/// Complete split graph with clique size k: a star on n-k+1 vertices plus k-1
/// universal vertices, relabeled onto graphs::complete_split(n, k).
inline TubingWalk complete_split_cycle(int n, int k) {
    int m = n - k + 1;
    if (k < 1 || m < 3) throw InvalidInput("complete split graph needs k >= 1 and n - k >= 2");
    TubingWalk cycle;
    if (k == 1) {
        cycle = base_path(Family::star, m).cycle;
    } else {
        TubingWalk path = apex_ready_star_path(m);
        for (int j = 1; j < k; ++j) {
            auto r = universal_vertex_cycle(path);
            cycle = std::move(r.cycle);
            path = std::move(r.path);
        }
    }
    std::vector<int> map(n);
    map[0] = n - k;
    for (int i = 1; i < m; ++i) map[i] = i - 1;
    for (int j = 1; j < k; ++j) map[m - 1 + j] = n - k + j;
    return relabel(cycle, graphs::complete_split(n, k), map);
}

// ---------------------------------------------------------------- caterpillars

struct CaterpillarLayout {
    std::vector<int> spine;
    std::vector<std::vector<int>> leaves;
    /// s1, leaves of s1, s2, leaves of s2, ...
    VertexOrder order;
};

inline CaterpillarLayout caterpillar_layout(const LabeledGraph& g) {
    int n = g.size();
    if (n < 2 || !g.is_connected() || static_cast<int>(g.edges().size()) != n - 1)
        throw InvalidInput("not a caterpillar: graph is not a tree on at least two vertices");
    VertexSet inner = 0;
    for (int i = 0; i < n; ++i)
        if (popcount(g.neighbors(i)) >= 2) inner |= bit(i);
    CaterpillarLayout c;
    if (!inner) {
        c.spine = {0};
    } else {
        std::vector<int> ends;
        for (int i : members_of(inner)) {
            int d = popcount(g.neighbors(i) & inner);
            if (d > 2) throw InvalidInput("not a caterpillar: spine branches");
            if (d <= 1) ends.push_back(i);
        }
        std::vector<int> best;
        for (int start : ends) {
            std::vector<int> walk{start};
            VertexSet seen = bit(start);
            while (true) {
                VertexSet next = g.neighbors(walk.back()) & inner & ~seen;
                if (!next) break;
                walk.push_back(lowest(next));
                seen |= next;
            }
            if (best.empty() || walk < best) best = walk;
        }
        c.spine = best;
    }
    VertexSet covered = 0;
    for (int s : c.spine) {
        covered |= bit(s);
        std::vector<int> ls;
        for (int u : members_of(g.neighbors(s)))
            if (popcount(g.neighbors(u)) == 1 && !(inner & bit(u)) && !(covered & bit(u))) ls.push_back(u);
        for (int u : ls) covered |= bit(u);
        c.leaves.push_back(ls);
    }
    if (covered != g.all()) throw InvalidInput("not a caterpillar: vertices off the spine and its leaves");
    for (std::size_t i = 0; i < c.spine.size(); ++i) {
        c.order.push_back(c.spine[i]);
        for (int u : c.leaves[i]) c.order.push_back(u);
    }
    return c;
}

struct CaterpillarPath {
    CaterpillarLayout layout;
    TubingWalk path;
    /// Index where the nested part starting at the layout order begins.
    std::size_t nested_from = 0;
};

/// Built vertex by vertex along the layout order. A new leaf of the spine end s
/// gives Q A Xbar^-1 with the leaf second in Xbar; a new spine vertex x gives
/// Q A (x X)^-1 with a full absorption so that x becomes the kernel of X.
inline CaterpillarPath caterpillar_fh_path(const LabeledGraph& g) {
    CaterpillarPath r;
    r.layout = caterpillar_layout(g);
    const auto& sigma = r.layout.order;
    VertexSet spine_set = 0;
    for (int s : r.layout.spine) spine_set |= bit(s);

    std::vector<VertexOrder> p{{sigma[0], sigma[1]}};
    std::size_t xs = 0;
    for (std::size_t k = 2; k < sigma.size(); ++k) {
        int x = sigma[k];
        std::vector<VertexOrder> next;
        for (auto o : p) {
            o.push_back(x);
            next.push_back(std::move(o));
        }
        int last = static_cast<int>(k);
        int s = p[xs].front();
        if (!g.has_edge(s, x)) throw ContractViolation("caterpillar: new vertex is not adjacent to the kernel of X");
        bool extends_spine = (spine_set & bit(x)) != 0;
        auto a = detail::move_element(next.back(), last, extends_spine ? 0 : 1);
        next.insert(next.end(), a.begin() + 1, a.end());
        std::vector<VertexOrder> bar;
        for (std::size_t i = xs; i < p.size(); ++i) {
            auto o = p[i];
            o.insert(o.begin() + (extends_spine ? 0 : 1), x);
            bar.push_back(std::move(o));
        }
        if (bar.back() != next.back()) throw ContractViolation("caterpillar: absorption does not meet the lifted X");
        std::size_t new_xs = extends_spine ? next.size() - 1 : xs;
        for (auto it = bar.rbegin() + 1; it != bar.rend(); ++it) next.push_back(*it);
        p = std::move(next);
        xs = new_xs;
    }

    std::vector<VertexSet> start;
    VertexSet acc = 0;
    for (std::size_t i = 0; i < r.layout.spine.size(); ++i) {
        acc |= bit(r.layout.spine[i]);
        for (int u : r.layout.leaves[i]) {
            start.push_back(bit(u));
            acc |= bit(u);
        }
        if (i + 1 < r.layout.spine.size()) start.push_back(acc);
    }
    std::vector<Tubing> seq{Tubing(start)};
    for (const auto& ls : r.layout.leaves)
        for (auto it = ls.rbegin(); it != ls.rend(); ++it) detail::push(seq, flip(g, seq.back(), bit(*it)).first);
    if (seq.back() != nested_tubing_from_order(g, sigma))
        throw ContractViolation("caterpillar: initial flips do not reach the layout order");
    r.nested_from = seq.size() - 1;
    for (const auto& o : p) detail::push_order(g, seq, o);
    r.path = TubingWalk{g, seq, false};
    return r;
}

/// Whether joining the ends of a path by one more flip yields a facet-Hamiltonian cycle.
inline bool closes_to_cycle(const TubingWalk& path) {
    if (path.tubings.size() < 3 || !differs_by_flip(path.graph, path.tubings.back(), path.tubings.front())) return false;
    auto c = path;
    c.closed = true;
    return verify(c).is_facet_hamiltonian;
}

// ------------------------------------------------------- complete bipartite

enum class Shift { left, right };

/// Bookkeeping for shaving the first vertex of the left part of a nested order.
struct ShavingState {
    std::vector<int> a, b;
    VertexOrder perm;
    /// Positions 2 .. 2+|active|-1 of perm, in order.
    std::vector<int> active;
    std::vector<Shift> log;
};

struct ShavingPhase {
    std::vector<VertexOrder> orders;
    /// Orders after each shift and after each absorption, the start included.
    std::vector<VertexOrder> milestones;
    /// (B vertex at position 2, index into orders where its segment begins).
    std::vector<std::pair<int, std::size_t>> segments;
};

/// One shaving phase on the first `left` positions of st.perm. `dir` picks the
/// direction of the k-th shift.
inline ShavingPhase shave(ShavingState& st, int left, const std::function<Shift(int)>& dir) {
    auto in = [](const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); };
    auto& pi = st.perm;
    if (left < 2 || left > static_cast<int>(pi.size()) || !in(st.a, pi[0]) || !in(st.b, pi[1]))
        throw InvalidInput("shave: order must start with an A vertex followed by a B vertex");
    int pos = 2;
    while (pos < left && in(st.a, pi[pos])) ++pos;
    for (int i = pos; i < left; ++i)
        if (!in(st.b, pi[i])) throw InvalidInput("shave: left part does not have pattern ABA..AB..B");
    st.active.assign(pi.begin() + 2, pi.begin() + pos);

    ShavingPhase ph;
    ph.orders.push_back(pi);
    ph.milestones.push_back(pi);
    ph.segments.emplace_back(pi[1], 0);
    int shifts = 0;
    auto shift = [&] {
        Shift d = dir(shifts++);
        st.log.push_back(d);
        VertexOrder m = st.active;
        std::vector<VertexOrder> path;
        if (d == Shift::right) {
            path = detail::perm_path_on(m);
        } else {
            // the reversed path must start at m, so m plays k,1,..,k-1
            path = detail::perm_path_on(rotate_left(m));
            std::reverse(path.begin(), path.end());
        }
        for (std::size_t i = 1; i < path.size(); ++i) {
            std::copy(path[i].begin(), path[i].end(), pi.begin() + 2);
            ph.orders.push_back(pi);
        }
        if (!path.empty()) st.active = path.back();
        ph.milestones.push_back(pi);
    };
    shift();
    while (2 + static_cast<int>(st.active.size()) < left) {
        int from = 2 + static_cast<int>(st.active.size());
        ph.segments.emplace_back(pi[from], ph.orders.size() - 1);
        auto moves = detail::move_element(pi, from, 1);
        ph.orders.insert(ph.orders.end(), moves.begin() + 1, moves.end());
        pi = moves.back();
        st.active.insert(st.active.begin(), pi[2]);
        ph.milestones.push_back(pi);
        shift();
    }
    return ph;
}

struct BipartiteResult {
    TubingWalk path;
    std::vector<ShavingPhase> phases;
};

/// Shave a1, flip the 2-tube, expel a1 behind the shaved part, and repeat; with
/// one A vertex left flip the singleton and continue with the roles swapped.
inline BipartiteResult complete_bipartite_fh_path(int n, int m) {
    if (n < 1 || m < 1) throw InvalidInput("complete bipartite graph needs n, m >= 1");
    auto g = graphs::complete_bipartite(n, m);
    ShavingState st;
    for (int i = 0; i < n; ++i) st.a.push_back(i);
    for (int j = 0; j < m; ++j) st.b.push_back(n + j);
    st.perm.push_back(0);
    st.perm.push_back(n);
    for (int i = 1; i < n; ++i) st.perm.push_back(i);
    for (int j = 1; j < m; ++j) st.perm.push_back(n + j);

    BipartiteResult r;
    std::vector<Tubing>& seq = r.path.tubings;
    r.path.graph = g;
    detail::push_order(g, seq, st.perm);
    int left = n + m;
    bool swapped = false;
    auto count_a = [&] {
        int c = 0;
        for (int i = 0; i < left; ++i)
            if (std::find(st.a.begin(), st.a.end(), st.perm[i]) != st.a.end()) ++c;
        return c;
    };
    while (true) {
        if (count_a() >= 2) {
            auto ph = shave(st, left, [](int) { return Shift::left; });
            for (const auto& o : ph.orders) detail::push_order(g, seq, o);
            r.phases.push_back(std::move(ph));
            auto& pi = st.perm;
            detail::push(seq, flip(g, seq.back(), bit(pi[0]) | bit(pi[1])).first);
            detail::push(seq, flip(g, seq.back(), bit(pi[0])).first);
            VertexOrder o = {pi[2], pi[1], pi[0]};
            o.insert(o.end(), pi.begin() + 3, pi.end());
            if (seq.back() != nested_tubing_from_order(g, o)) throw ContractViolation("bipartite: expulsion start is not nested");
            auto moves = detail::move_element(o, 2, left - 1);
            for (const auto& x : moves) detail::push_order(g, seq, x);
            pi = moves.back();
            --left;
            continue;
        }
        if (swapped) break;
        std::swap(st.perm[0], st.perm[1]);
        detail::push_order(g, seq, st.perm);
        std::swap(st.a, st.b);
        swapped = true;
    }
    return r;
}

// ------------------------------------------------------------ nested cycles

struct KernelTrace {
    std::vector<int> cycle;
    bool hamiltonian = false;
};

/// Kernels along a closed all-nested walk, consecutive repeats merged.
inline KernelTrace nested_cycle_hamiltonicity_check(const TubingWalk& w) {
    const auto& g = w.graph;
    if (!w.closed) throw InvalidInput("kernel trace needs a closed walk");
    KernelTrace r;
    for (std::size_t i = 0; i < w.tubings.size(); ++i) {
        if (!is_nested(w.tubings[i])) throw InvalidInput("step " + std::to_string(i) + " is not nested");
        int k = kernel(g, w.tubings[i]);
        if (r.cycle.empty() || r.cycle.back() != k) r.cycle.push_back(k);
    }
    while (r.cycle.size() > 1 && r.cycle.back() == r.cycle.front()) r.cycle.pop_back();
    VertexSet seen = 0;
    bool ok = static_cast<int>(r.cycle.size()) == g.size();
    for (std::size_t i = 0; ok && i < r.cycle.size(); ++i) {
        int u = r.cycle[i], v = r.cycle[(i + 1) % r.cycle.size()];
        if ((seen & bit(u)) || !g.has_edge(u, v)) ok = false;
        seen |= bit(u);
    }
    r.hamiltonian = ok && g.size() >= 3;
    return r;
}

/// Associahedron skeleton restricted to nested tubings; facets are all tubes.
inline AssociahedronSkeleton nested_subskeleton(const LabeledGraph& g) {
    auto full = skeleton_from_graph_associahedron(g);
    AssociahedronSkeleton out;
    for (const auto& t : full.tubings)
        if (is_nested(t)) {
            out.vertex_of[t] = out.skeleton.add_vertex(tubing_name(g, t));
            out.tubings.push_back(t);
        }
    for (std::size_t i = 0; i < out.tubings.size(); ++i)
        for (VertexSet t : out.tubings[i].tubes) {
            auto it = out.vertex_of.find(flip(g, out.tubings[i], t).first);
            if (it != out.vertex_of.end() && static_cast<int>(i) < it->second) out.skeleton.add_edge(static_cast<int>(i), it->second);
        }
    out.tubes = full.tubes;
    std::map<VertexSet, std::vector<int>> members;
    for (std::size_t i = 0; i < out.tubings.size(); ++i)
        for (VertexSet t : out.tubings[i].tubes) members[t].push_back(static_cast<int>(i));
    for (VertexSet t : out.tubes) out.facet_of[t] = out.skeleton.add_facet(tube_name(g, t), members[t]);
    return out;
}

/// Facet-Hamiltonian cycle through nested tubings only, by exhaustive search.
/// `none` proves that no such cycle exists.
inline std::pair<SearchStatus, std::optional<TubingWalk>> search_nested_fh_cycle(const LabeledGraph& g,
                                                                                const SearchOptions& opt = {}) {
    auto sub = nested_subskeleton(g);
    auto res = search_fh(sub.skeleton, SearchMode::cycle, opt);
    if (res.status != SearchStatus::found) return {res.status, std::nullopt};
    TubingWalk w{g, {}, true};
    for (int v : res.walk->vertices) w.tubings.push_back(sub.tubings[v]);
    return {res.status, w};
}

}  // namespace fhc::gassoc

#endif  // FHC_GRAPH_ASSOC_HPP
