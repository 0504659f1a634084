#ifndef FHC_COMBINATORICS_HPP
#define FHC_COMBINATORICS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fhc {

/// Bitmask over vertex positions of a LabeledGraph (at most 64 vertices).
using VertexSet = std::uint64_t;

inline int popcount(VertexSet s) { return std::popcount(s); }
inline int lowest(VertexSet s) { return std::countr_zero(s); }
inline VertexSet bit(int i) { return VertexSet{1} << i; }

inline std::vector<int> members_of(VertexSet s) {
    std::vector<int> out;
    while (s) {
        out.push_back(lowest(s));
        s &= s - 1;
    }
    return out;
}

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Well-formed input outside the domain an operation handles.
struct Unsupported : InvalidInput {
    using InvalidInput::InvalidInput;
};

/// Simple undirected graph whose vertices carry opaque string labels.
/// Label order is the declaration order.
class LabeledGraph {
public:
    LabeledGraph() = default;

    LabeledGraph(std::vector<std::string> labels,
                 const std::vector<std::pair<std::string, std::string>>& edges)
        : labels_(std::move(labels)), adj_(labels_.size(), 0) {
        if (labels_.size() > 64) throw InvalidInput("graph has more than 64 vertices");
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
                throw InvalidInput("duplicate vertex label " + labels_[i]);
        }
        for (const auto& [a, b] : edges) add_edge(index(a), index(b));
    }

    static LabeledGraph from_indices(int n, const std::vector<std::pair<int, int>>& edges) {
        LabeledGraph g;
        for (int i = 1; i <= n; ++i) g.labels_.push_back(std::to_string(i));
        g = LabeledGraph(g.labels_, {});
        for (auto [a, b] : edges) g.add_edge(a, b);
        return g;
    }

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_.at(i); }
    const std::vector<std::string>& labels() const { return labels_; }

    int index(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw InvalidInput("unknown vertex label " + label);
        return it->second;
    }
    bool has_label(const std::string& label) const { return index_.count(label) != 0; }

    VertexSet neighbors(int i) const { return adj_.at(i); }
    bool has_edge(int a, int b) const { return (adj_.at(a) >> b) & 1; }
    VertexSet all() const { return labels_.size() == 64 ? ~VertexSet{0} : bit(size()) - 1; }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> out;
        for (int i = 0; i < size(); ++i)
            for (int j : members_of(adj_[i]))
                if (i < j) out.emplace_back(i, j);
        return out;
    }

    /// Connected component of `within` containing vertex `start`.
    VertexSet component(VertexSet within, int start) const {
        VertexSet seen = bit(start), frontier = bit(start);
        while (frontier) {
            int v = lowest(frontier);
            frontier &= frontier - 1;
            VertexSet fresh = adj_[v] & within & ~seen;
            seen |= fresh;
            frontier |= fresh;
        }
        return seen;
    }

    std::vector<VertexSet> components(VertexSet within) const {
        std::vector<VertexSet> out;
        while (within) {
            VertexSet c = component(within, lowest(within));
            out.push_back(c);
            within &= ~c;
        }
        return out;
    }

    bool is_connected(VertexSet s) const { return s != 0 && component(s, lowest(s)) == s; }
    bool is_connected() const { return size() > 0 && is_connected(all()); }

    VertexSet set_of(const std::vector<std::string>& labels) const {
        VertexSet s = 0;
        for (const auto& l : labels) s |= bit(index(l));
        return s;
    }
    std::vector<std::string> labels_of(VertexSet s) const {
        std::vector<std::string> out;
        for (int i : members_of(s)) out.push_back(labels_[i]);
        return out;
    }

    void add_edge(int a, int b) {
        if (a == b) throw InvalidInput("self-loop on " + labels_.at(a));
        if (has_edge(a, b)) throw InvalidInput("repeated edge " + labels_[a] + "-" + labels_[b]);
        adj_.at(a) |= bit(b);
        adj_.at(b) |= bit(a);
    }

    /// Append a vertex adjacent to the listed existing vertices.
    LabeledGraph with_vertex(const std::string& label, VertexSet nbrs) const {
        auto g = *this;
        if (g.index_.count(label)) throw InvalidInput("duplicate vertex label " + label);
        if (g.labels_.size() == 64) throw InvalidInput("graph has more than 64 vertices");
        int v = g.size();
        g.labels_.push_back(label);
        g.index_[label] = v;
        g.adj_.push_back(0);
        for (int u : members_of(nbrs)) g.add_edge(u, v);
        return g;
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, int> index_;
    std::vector<VertexSet> adj_;
};

namespace graphs {

inline LabeledGraph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return LabeledGraph::from_indices(n, e);
}

inline LabeledGraph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return LabeledGraph::from_indices(n, e);
}

inline LabeledGraph cycle(int n) {
    auto e = std::vector<std::pair<int, int>>{};
    for (int i = 0; i < n; ++i) e.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    return LabeledGraph::from_indices(n, e);
}

/// Star on n vertices; the center is labeled 1.
inline LabeledGraph star(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i < n; ++i) e.emplace_back(0, i);
    return LabeledGraph::from_indices(n, e);
}

/// Fan: path 1..n-1 plus vertex n joined to all of them.
inline LabeledGraph fan(int n) {
    auto e = std::vector<std::pair<int, int>>{};
    for (int i = 0; i + 2 < n; ++i) e.emplace_back(i, i + 1);
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, n - 1);
    return LabeledGraph::from_indices(n, e);
}

/// Wheel: cycle 1..n-1 plus hub n.
inline LabeledGraph wheel(int n) {
    auto e = std::vector<std::pair<int, int>>{};
    int m = n - 1;
    for (int i = 0; i < m; ++i) e.emplace_back(std::min(i, (i + 1) % m), std::max(i, (i + 1) % m));
    for (int i = 0; i < m; ++i) e.emplace_back(i, n - 1);
    return LabeledGraph::from_indices(n, e);
}

/// Complete split graph: independent set 1..n-k, clique on the last k vertices,
/// every independent vertex joined to every clique vertex.
inline LabeledGraph complete_split(int n, int k) {
    auto e = std::vector<std::pair<int, int>>{};
    for (int i = n - k; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    for (int i = 0; i < n - k; ++i)
        for (int j = n - k; j < n; ++j) e.emplace_back(i, j);
    return LabeledGraph::from_indices(n, e);
}

/// K_{n,m} with parts a1..an and b1..bm.
inline LabeledGraph complete_bipartite(int n, int m) {
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back("a" + std::to_string(i));
    for (int j = 1; j <= m; ++j) labels.push_back("b" + std::to_string(j));
    std::vector<std::pair<std::string, std::string>> e;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= m; ++j) e.emplace_back("a" + std::to_string(i), "b" + std::to_string(j));
    return LabeledGraph(labels, e);
}

}  // namespace graphs

/// A tube is a vertex set; validity is relative to a host graph.
struct Tube {
    VertexSet members = 0;
    auto operator<=>(const Tube&) const = default;
};

inline bool is_tube(const LabeledGraph& g, VertexSet s) {
    return s != 0 && (s & ~g.all()) == 0 && s != g.all() && g.is_connected(s);
}

/// Tubes of a connected graph, ordered by size and then by bitmask.
inline std::vector<VertexSet> enumerate_tubes(const LabeledGraph& g) {
    if (g.size() < 2) throw InvalidInput("graph needs at least two vertices");
    if (!g.is_connected()) throw InvalidInput("graph is disconnected; decompose into components");
    if (g.size() > 30) throw InvalidInput("tube enumeration limited to 30 vertices");
    std::vector<VertexSet> out;
    for (VertexSet s = 1; s < g.all(); ++s)
        if (g.is_connected(s)) out.push_back(s);
    std::stable_sort(out.begin(), out.end(),
                     [](VertexSet a, VertexSet b) { return popcount(a) < popcount(b); });
    return out;
}

inline bool are_compatible(const LabeledGraph& g, VertexSet t1, VertexSet t2) {
    if (t1 == t2) throw ContractViolation("are_compatible called on equal tubes");
    if ((t1 & t2) == t1 || (t1 & t2) == t2) return true;
    return !g.is_connected(t1 | t2);
}

/// A set of tubes kept sorted by bitmask.
struct Tubing {
    std::vector<VertexSet> tubes;

    Tubing() = default;
    explicit Tubing(std::vector<VertexSet> t) : tubes(std::move(t)) {
        std::sort(tubes.begin(), tubes.end());
        tubes.erase(std::unique(tubes.begin(), tubes.end()), tubes.end());
    }
    bool contains(VertexSet t) const { return std::binary_search(tubes.begin(), tubes.end(), t); }
    std::size_t size() const { return tubes.size(); }
    auto operator<=>(const Tubing&) const = default;
};

inline bool is_tubing(const LabeledGraph& g, const Tubing& t) {
    for (std::size_t i = 0; i < t.tubes.size(); ++i) {
        if (!is_tube(g, t.tubes[i])) return false;
        for (std::size_t j = i + 1; j < t.tubes.size(); ++j)
            if (!are_compatible(g, t.tubes[i], t.tubes[j])) return false;
    }
    return true;
}

inline bool is_maximal_tubing(const LabeledGraph& g, const Tubing& t) {
    return g.is_connected() && static_cast<int>(t.size()) == g.size() - 1 && is_tubing(g, t);
}

inline bool is_nested(const Tubing& t) {
    for (std::size_t i = 0; i < t.tubes.size(); ++i)
        for (std::size_t j = i + 1; j < t.tubes.size(); ++j) {
            VertexSet a = t.tubes[i], b = t.tubes[j];
            if ((a & b) != a && (a & b) != b) return false;
        }
    return true;
}

/// Smallest tube of the tubing strictly containing t, or the full vertex set.
inline VertexSet parent_tube(const LabeledGraph& g, const Tubing& tubing, VertexSet t) {
    VertexSet best = g.all();
    for (VertexSet u : tubing.tubes)
        if (u != t && (u & t) == t && popcount(u) < popcount(best)) best = u;
    return best;
}

/// Vertices of s not covered by tubes of the tubing strictly inside s.
inline VertexSet kernel_of(const Tubing& tubing, VertexSet s) {
    VertexSet k = s;
    for (VertexSet u : tubing.tubes)
        if (u != s && (u & s) == u) k &= ~u;
    return k;
}

/// Replace `tube` in a maximal tubing by the unique other compatible tube.
/// Returns the new tubing and the tube that entered.
inline std::pair<Tubing, VertexSet> flip(const LabeledGraph& g, const Tubing& tubing, VertexSet tube) {
    if (!tubing.contains(tube)) throw ContractViolation("flip: tube not in tubing");
    if (static_cast<int>(tubing.size()) != g.size() - 1)
        throw ContractViolation("flip: tubing is not maximal");
    VertexSet x = kernel_of(tubing, tube);
    VertexSet up = parent_tube(g, tubing, tube);
    VertexSet y = kernel_of(tubing, up) & ~tube;
    if (popcount(x) != 1 || popcount(y) != 1) throw ContractViolation("flip: tubing is not maximal");
    VertexSet fresh = g.component(up & ~x, lowest(y));
    std::vector<VertexSet> next;
    for (VertexSet u : tubing.tubes)
        if (u != tube) next.push_back(u);
    next.push_back(fresh);
    return {Tubing(std::move(next)), fresh};
}

/// Index-space permutation of the vertices of a graph.
using VertexOrder = std::vector<int>;

/// Tubes are the proper prefixes of the order; throws if a prefix is disconnected.
inline Tubing nested_tubing_from_order(const LabeledGraph& g, const VertexOrder& order) {
    if (static_cast<int>(order.size()) != g.size()) throw InvalidInput("order length differs from vertex count");
    VertexSet acc = 0;
    std::vector<VertexSet> tubes;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (acc & bit(order[i])) throw InvalidInput("order repeats a vertex");
        acc |= bit(order[i]);
        if (i + 1 == order.size()) break;
        if (!g.is_connected(acc)) throw InvalidInput("prefix induces a disconnected subgraph; not a nested tubing");
        tubes.push_back(acc);
    }
    return Tubing(std::move(tubes));
}

inline VertexOrder order_from_nested_tubing(const LabeledGraph& g, const Tubing& t) {
    if (!is_nested(t) || static_cast<int>(t.size()) != g.size() - 1)
        throw InvalidInput("tubing is not a nested maximal tubing");
    std::vector<VertexSet> chain = t.tubes;
    std::sort(chain.begin(), chain.end(), [](VertexSet a, VertexSet b) { return popcount(a) < popcount(b); });
    chain.push_back(g.all());
    VertexOrder order;
    VertexSet prev = 0;
    for (VertexSet s : chain) {
        VertexSet d = s & ~prev;
        if (popcount(d) != 1) throw InvalidInput("tubing is not a nested maximal tubing");
        order.push_back(lowest(d));
        prev = s;
    }
    return order;
}

inline Tubing nested_tubing_from_permutation(const LabeledGraph& g, const std::vector<std::string>& perm) {
    VertexOrder order;
    for (const auto& l : perm) order.push_back(g.index(l));
    return nested_tubing_from_order(g, order);
}

inline std::vector<std::string> permutation_from_nested_tubing(const LabeledGraph& g, const Tubing& t) {
    std::vector<std::string> out;
    for (int i : order_from_nested_tubing(g, t)) out.push_back(g.label(i));
    return out;
}

namespace detail {

inline void tubings_below(const LabeledGraph& g, VertexSet s, std::vector<std::vector<VertexSet>>& out) {
    out.clear();
    for (int x : members_of(s)) {
        std::vector<std::vector<VertexSet>> acc{{}};
        for (VertexSet c : g.components(s & ~bit(x))) {
            std::vector<std::vector<VertexSet>> sub;
            tubings_below(g, c, sub);
            std::vector<std::vector<VertexSet>> next;
            for (const auto& a : acc)
                for (const auto& b : sub) {
                    auto t = a;
                    t.insert(t.end(), b.begin(), b.end());
                    t.push_back(c);
                    next.push_back(std::move(t));
                }
            acc = std::move(next);
        }
        out.insert(out.end(), acc.begin(), acc.end());
    }
}

}  // namespace detail

/// All maximal tubings by recursive choice of a kernel in every component.
inline std::vector<Tubing> enumerate_maximal_tubings(const LabeledGraph& g) {
    if (!g.is_connected()) throw InvalidInput("graph is disconnected; decompose into components");
    std::vector<std::vector<VertexSet>> raw;
    detail::tubings_below(g, g.all(), raw);
    std::vector<Tubing> out;
    out.reserve(raw.size());
    for (auto& r : raw) out.emplace_back(std::move(r));
    std::sort(out.begin(), out.end());
    return out;
}

/// Sorted list of sorted label lists; sorting uses declaration order of labels.
inline std::vector<std::vector<std::string>> tubing_labels(const LabeledGraph& g, const Tubing& t) {
    std::vector<std::vector<int>> idx;
    for (VertexSet s : t.tubes) idx.push_back(members_of(s));
    std::sort(idx.begin(), idx.end());
    std::vector<std::vector<std::string>> out;
    for (const auto& v : idx) {
        std::vector<std::string> l;
        for (int i : v) l.push_back(g.label(i));
        out.push_back(std::move(l));
    }
    return out;
}

inline std::string tube_name(const LabeledGraph& g, VertexSet s) {
    std::string out = "{";
    bool first = true;
    for (int i : members_of(s)) {
        if (!first) out += ",";
        out += g.label(i);
        first = false;
    }
    return out + "}";
}

inline std::string tubing_name(const LabeledGraph& g, const Tubing& t) {
    std::string out = "[";
    bool first = true;
    for (const auto& tube : tubing_labels(g, t)) {
        if (!first) out += ",";
        out += "{";
        for (std::size_t i = 0; i < tube.size(); ++i) out += (i ? "," : "") + tube[i];
        out += "}";
        first = false;
    }
    return out + "]";
}

}  // namespace fhc

#endif  // FHC_COMBINATORICS_HPP
