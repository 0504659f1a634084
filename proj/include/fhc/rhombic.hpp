#ifndef FHC_RHOMBIC_HPP
#define FHC_RHOMBIC_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fhc/combinatorics.hpp"
#include "fhc/graph_assoc.hpp"
#include "fhc/permutahedron.hpp"

namespace fhc::rhombic {

/// Maximal chain of subsets, ranks 0..n.
using Chain = std::vector<VertexSet>;

/// On a closed strip the two ends of a row may carry the same set; the copies
/// are marked so the left and right boundary can be glued.
enum class Clone { none, left, right };

struct StripVertex {
    VertexSet label = 0;
    Clone clone = Clone::none;
};

/// Cover edge from position `lower` of row `rank` to position `upper` of row rank+1.
struct StripEdge {
    int rank = 0;
    int lower = 0;
    int upper = 0;
    auto operator<=>(const StripEdge&) const = default;
};

/// Rhombus of rank k: left and right are consecutive in row k, lower sits in
/// row k-1 and upper in row k+1. `step` is the walk step that added it.
struct Rhombus {
    int rank = 0;
    int left = 0;
    int right = 0;
    int lower = 0;
    int upper = 0;
    int step = 0;
};

struct RhombicStrip {
    int n = 0;
    std::vector<std::string> names;
    std::vector<std::vector<StripVertex>> rows;
    std::vector<StripEdge> edges;
    std::vector<Rhombus> faces;
    bool closed = false;

    std::string set_name(VertexSet s) const {
        std::string out = "{";
        bool first = true;
        for (int i : members_of(s)) {
            if (!first) out += ",";
            out += i < static_cast<int>(names.size()) ? names[i] : std::to_string(i);
            first = false;
        }
        return out + "}";
    }
    int vertex_count() const {
        int c = 0;
        for (const auto& r : rows) c += static_cast<int>(r.size());
        return c;
    }
};

/// First chain gives the rows; every later chain differs from the current one
/// in a single rank and adds one rhombus on the right end of that row.
inline RhombicStrip strip_from_chains(int n, std::vector<std::string> names, const std::vector<Chain>& chains,
                                      bool closed) {
    if (n < 1) throw InvalidInput("strip needs n >= 1");
    if (chains.empty()) throw InvalidInput("strip needs at least one chain");
    VertexSet full = n == 64 ? ~VertexSet{0} : bit(n) - 1;
    for (std::size_t i = 0; i < chains.size(); ++i) {
        const auto& c = chains[i];
        bool ok = static_cast<int>(c.size()) == n + 1 && c.front() == 0 && c.back() == full;
        for (int k = 1; ok && k <= n; ++k) ok = (c[k - 1] & c[k]) == c[k - 1] && popcount(c[k]) == k;
        if (!ok) throw InvalidInput("step " + std::to_string(i) + " is not a maximal chain");
    }
    RhombicStrip s;
    s.n = n;
    s.names = std::move(names);
    s.closed = closed;
    s.rows.resize(n + 1);
    std::vector<int> cur(n + 1, 0);
    for (int k = 0; k <= n; ++k) s.rows[k].push_back({chains[0][k], Clone::none});
    for (int k = 0; k < n; ++k) s.edges.push_back({k, 0, 0});

    std::size_t steps = chains.size() - 1 + (closed && chains.size() > 1 ? 1 : 0);
    for (std::size_t i = 0; i < steps; ++i) {
        const Chain& a = chains[i];
        const Chain& b = chains[(i + 1) % chains.size()];
        std::vector<int> changed;
        for (int k = 1; k < n; ++k)
            if (a[k] != b[k]) changed.push_back(k);
        if (changed.size() != 1)
            throw InvalidInput("step " + std::to_string(i) + " changes " + std::to_string(changed.size()) +
                               " ranks; expected one");
        int k = changed[0];
        int right = static_cast<int>(s.rows[k].size());
        s.rows[k].push_back({b[k], Clone::none});
        s.faces.push_back({k, cur[k], right, cur[k - 1], cur[k + 1], static_cast<int>(i)});
        s.edges.push_back({k - 1, cur[k - 1], right});
        s.edges.push_back({k, right, cur[k + 1]});
        cur[k] = right;
    }
    if (closed)
        for (auto& row : s.rows)
            if (row.size() > 1 && row.front().label == row.back().label) {
                row.front().clone = Clone::left;
                row.back().clone = Clone::right;
            }
    std::sort(s.edges.begin(), s.edges.end());
    return s;
}

inline Chain chain_of_order(const VertexOrder& o) {
    Chain c{0};
    for (int v : o) c.push_back(c.back() | bit(v));
    return c;
}

/// Strip of a walk through nested tubings; ranks are tube sizes.
inline RhombicStrip strip_from_nested_walk(const gassoc::TubingWalk& w) {
    std::vector<Chain> chains;
    for (std::size_t i = 0; i < w.tubings.size(); ++i) {
        if (!is_nested(w.tubings[i]) || !is_maximal_tubing(w.graph, w.tubings[i]))
            throw InvalidInput("step " + std::to_string(i) + " is not a nested maximal tubing");
        chains.push_back(chain_of_order(order_from_nested_tubing(w.graph, w.tubings[i])));
    }
    return strip_from_chains(w.graph.size(), w.graph.labels(), chains, w.closed);
}

/// Strip of a walk on the permutahedron; rank k holds the k-prefixes.
inline RhombicStrip strip_from_permutation_walk(const std::vector<perm::Permutation>& walk, bool closed) {
    if (walk.empty()) throw InvalidInput("empty permutation walk");
    int n = static_cast<int>(walk.front().size());
    std::vector<Chain> chains;
    for (std::size_t i = 0; i < walk.size(); ++i) {
        VertexOrder o;
        for (int x : walk[i]) {
            if (x < 1 || x > n) throw InvalidInput("step " + std::to_string(i) + " is not a permutation of 1..n");
            o.push_back(x - 1);
        }
        auto c = chain_of_order(o);
        if (static_cast<int>(walk[i].size()) != n || popcount(c.back()) != n)
            throw InvalidInput("step " + std::to_string(i) + " is not a permutation of 1..n");
        chains.push_back(std::move(c));
    }
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
    return strip_from_chains(n, std::move(names), chains, closed);
}

// ------------------------------------------------------------- validation

enum class IssueKind { rank, face, spanning, closure };

inline const char* to_string(IssueKind k) {
    switch (k) {
        case IssueKind::rank: return "rank";
        case IssueKind::face: return "face";
        case IssueKind::spanning: return "spanning";
        case IssueKind::closure: return "closure";
    }
    return "";
}

struct StripIssue {
    IssueKind kind;
    std::string detail;
};

/// Two consecutive rhombi at ranks at least two apart commute: the walk may
/// pass through either middle chain.
struct Interchange {
    int step = 0;
    Chain visited, alternative;
};

struct StripReport {
    bool valid = true;
    bool closed = false;
    std::vector<StripIssue> issues;
    std::vector<Interchange> interchangeable;

    bool has(IssueKind k) const {
        return std::any_of(issues.begin(), issues.end(), [&](const StripIssue& i) { return i.kind == k; });
    }
};

namespace detail {

/// Chain of the walk after each step, read back from the faces.
inline std::vector<Chain> chains_of(const RhombicStrip& s) {
    Chain c;
    for (const auto& row : s.rows) c.push_back(row.empty() ? 0 : row.front().label);
    std::vector<Chain> out{c};
    std::vector<Rhombus> by_step = s.faces;
    std::sort(by_step.begin(), by_step.end(), [](const Rhombus& a, const Rhombus& b) { return a.step < b.step; });
    for (const auto& f : by_step) {
        c[f.rank] = s.rows[f.rank][f.right].label;
        out.push_back(c);
    }
    return out;
}

}  // namespace detail

/// Checks rank placement, rhombus faces of a plane layered drawing, that the
/// strip spans (optionally all of `universe`), and closure.
inline StripReport validate_strip(const RhombicStrip& s, const std::optional<std::vector<VertexSet>>& universe = {}) {
    StripReport r;
    r.closed = s.closed;
    auto issue = [&](IssueKind k, std::string d) { r.issues.push_back({k, std::move(d)}); };
    int n = s.n;
    if (static_cast<int>(s.rows.size()) != n + 1) {
        issue(IssueKind::rank, "expected " + std::to_string(n + 1) + " rows");
        r.valid = false;
        return r;
    }
    for (int k = 0; k <= n; ++k) {
        if (s.rows[k].empty()) issue(IssueKind::spanning, "row " + std::to_string(k) + " is empty");
        for (std::size_t i = 0; i < s.rows[k].size(); ++i)
            if (popcount(s.rows[k][i].label) != k)
                issue(IssueKind::rank, s.set_name(s.rows[k][i].label) + " placed on row " + std::to_string(k));
    }
    if (s.rows[0].size() != 1 || s.rows[n].size() != 1) issue(IssueKind::rank, "rows 0 and n must hold one vertex");
    if (!r.issues.empty()) {
        r.valid = false;
        return r;
    }
    auto at = [&](int k, int i) { return s.rows[k][i].label; };
    auto in_row = [&](int k, int i) { return k >= 0 && k <= n && i >= 0 && i < static_cast<int>(s.rows[k].size()); };

    std::set<StripEdge> edges;
    std::vector<std::vector<int>> down(n + 1), up(n + 1);
    for (int k = 0; k <= n; ++k) {
        down[k].assign(s.rows[k].size(), 0);
        up[k].assign(s.rows[k].size(), 0);
    }
    for (const auto& e : s.edges) {
        if (!in_row(e.rank, e.lower) || !in_row(e.rank + 1, e.upper)) {
            issue(IssueKind::rank, "edge endpoint outside its row");
            continue;
        }
        VertexSet lo = at(e.rank, e.lower), hi = at(e.rank + 1, e.upper);
        if ((lo & hi) != lo) issue(IssueKind::rank, "edge " + s.set_name(lo) + "-" + s.set_name(hi) + " is not a cover");
        if (!edges.insert(e).second) issue(IssueKind::face, "repeated edge " + s.set_name(lo) + "-" + s.set_name(hi));
        ++up[e.rank][e.lower];
        ++down[e.rank + 1][e.upper];
    }
    // plane layered drawing: no two edges between the same rows cross
    for (int k = 0; k < n; ++k) {
        std::vector<std::pair<int, int>> band;
        for (const auto& e : edges)
            if (e.rank == k) band.emplace_back(e.lower, e.upper);
        std::sort(band.begin(), band.end());
        for (std::size_t i = 1; i < band.size(); ++i)
            if (band[i].second < band[i - 1].second)
                issue(IssueKind::face, "edges cross between rows " + std::to_string(k) + " and " + std::to_string(k + 1));
    }
    for (int k = 0; k <= n; ++k)
        for (std::size_t i = 0; i < s.rows[k].size(); ++i) {
            if ((k > 0 && !down[k][i]) || (k < n && !up[k][i]))
                issue(IssueKind::spanning, s.set_name(at(k, static_cast<int>(i))) + " on row " + std::to_string(k) +
                                               " lacks an edge to a neighbouring row");
        }

    std::map<std::pair<int, int>, int> between;
    for (std::size_t f = 0; f < s.faces.size(); ++f) {
        const auto& q = s.faces[f];
        std::string id = "face " + std::to_string(f);
        if (q.rank < 1 || q.rank >= n || !in_row(q.rank, q.left) || !in_row(q.rank, q.right) ||
            !in_row(q.rank - 1, q.lower) || !in_row(q.rank + 1, q.upper)) {
            issue(IssueKind::face, id + " has a vertex outside its row");
            continue;
        }
        if (q.right != q.left + 1) issue(IssueKind::face, id + " joins vertices that are not consecutive in the row");
        ++between[{q.rank, q.left}];
        VertexSet lo = at(q.rank - 1, q.lower), a = at(q.rank, q.left), b = at(q.rank, q.right),
                  hi = at(q.rank + 1, q.upper);
        if (a == b || (lo & a) != lo || (lo & b) != lo || (a & hi) != a || (b & hi) != b)
            issue(IssueKind::face, id + " is not a rhombus " + s.set_name(lo) + " < " + s.set_name(a) + ", " +
                                       s.set_name(b) + " < " + s.set_name(hi));
        StripEdge need[4] = {{q.rank - 1, q.lower, q.left},
                             {q.rank - 1, q.lower, q.right},
                             {q.rank, q.left, q.upper},
                             {q.rank, q.right, q.upper}};
        for (const auto& e : need)
            if (!edges.count(e))
                issue(IssueKind::spanning, id + " misses edge " + s.set_name(at(e.rank, e.lower)) + "-" +
                                               s.set_name(at(e.rank + 1, e.upper)));
    }
    for (int k = 1; k < n; ++k)
        for (int i = 0; i + 1 < static_cast<int>(s.rows[k].size()); ++i) {
            int c = between.count({k, i}) ? between[{k, i}] : 0;
            if (c != 1)
                issue(IssueKind::face, "row " + std::to_string(k) + " positions " + std::to_string(i) + "," +
                                           std::to_string(i + 1) + " bound " + std::to_string(c) + " rhombi");
        }
    // a connected plane graph has E - V + 1 bounded faces; all must be listed rhombi
    int bounded = static_cast<int>(edges.size()) - s.vertex_count() + 1;
    if (bounded != static_cast<int>(s.faces.size()))
        issue(IssueKind::face, std::to_string(bounded) + " bounded faces but " + std::to_string(s.faces.size()) +
                                   " rhombi");

    if (universe) {
        std::set<VertexSet> have;
        for (const auto& row : s.rows)
            for (const auto& v : row) have.insert(v.label);
        for (VertexSet u : *universe)
            if (!have.count(u)) issue(IssueKind::spanning, s.set_name(u) + " missing from the strip");
    }

    for (int k = 0; k < n; ++k) {
        if (!edges.count({k, 0, 0})) issue(IssueKind::spanning, "left boundary broken at row " + std::to_string(k));
        StripEdge last{k, static_cast<int>(s.rows[k].size()) - 1, static_cast<int>(s.rows[k + 1].size()) - 1};
        if (!edges.count(last)) issue(IssueKind::spanning, "right boundary broken at row " + std::to_string(k));
    }
    if (s.closed) {
        for (int k = 0; k <= n; ++k) {
            const auto& row = s.rows[k];
            if (row.front().label != row.back().label) {
                issue(IssueKind::closure, "row " + std::to_string(k) + " ends in " + s.set_name(row.back().label) +
                                              " but starts in " + s.set_name(row.front().label));
            } else if (row.size() > 1 && (row.front().clone != Clone::left || row.back().clone != Clone::right)) {
                issue(IssueKind::closure, "row " + std::to_string(k) + " boundary copies are not marked");
            }
        }
    }
    r.valid = r.issues.empty();
    if (!r.valid) return r;

    auto chains = detail::chains_of(s);
    std::vector<Rhombus> by_step = s.faces;
    std::sort(by_step.begin(), by_step.end(), [](const Rhombus& a, const Rhombus& b) { return a.step < b.step; });
    int m = static_cast<int>(by_step.size());
    int pairs = s.closed ? m : m - 1;
    for (int i = 0; i < pairs && m >= 2; ++i) {
        const auto& f = by_step[i];
        const auto& g = by_step[(i + 1) % m];
        if (std::abs(f.rank - g.rank) < 2) continue;
        Interchange x;
        x.step = f.step;
        x.visited = chains[i + 1];
        x.alternative = chains[i];
        x.alternative[g.rank] = s.rows[g.rank][g.right].label;
        r.interchangeable.push_back(std::move(x));
    }
    return r;
}

/// Left-to-right labels of each row 1..n-1, right boundary copies dropped.
inline std::map<int, std::vector<VertexSet>> gray_codes_per_rank(const RhombicStrip& s) {
    std::map<int, std::vector<VertexSet>> out;
    for (int k = 1; k < s.n; ++k) {
        auto& seq = out[k];
        for (const auto& v : s.rows[k])
            if (v.clone != Clone::right) seq.push_back(v.label);
    }
    return out;
}

// ------------------------------------------------------------------- Venn

struct VennCurve {
    int element = 0;
    /// Indices into strip.edges, in the order the curve crosses them.
    std::vector<int> crossings;
    /// Rhombi passed, one per crossing with another curve.
    std::vector<int> faces;
};

struct VennDiagram {
    std::vector<VennCurve> curves;
    /// Each rhombus holds one crossing point of the two curves of its top minus bottom.
    int crossing_points = 0;
    /// Faces of the curve arrangement on the sphere by Euler's formula.
    int regions = 0;
    bool simple = false;
    /// pair_crossings[i][j]: crossing points of curves i and j.
    std::vector<std::vector<int>> pair_crossings;
};

/// Curve i runs left to right with exactly the sets containing i above it.
/// It enters a rhombus through a left edge that adds i and leaves through
/// the opposite right edge.
inline VennDiagram venn_curves(const RhombicStrip& s, int n) {
    if (n < 2) throw Unsupported("Venn tracing needs n >= 2");
    if (s.n != n || !s.closed) throw Unsupported("Venn tracing needs a closed strip on n elements");
    std::set<VertexSet> labels;
    std::size_t count = 0;
    for (const auto& row : s.rows)
        for (const auto& v : row)
            if (v.clone != Clone::right) {
                labels.insert(v.label);
                ++count;
            }
    if (n > 20 || count != (std::size_t{1} << n) || labels.size() != count)
        throw Unsupported("strip labels do not form the Boolean lattice once each");
    if (!validate_strip(s).valid) throw InvalidInput("strip is not valid");

    std::map<StripEdge, int> edge_id;
    for (std::size_t i = 0; i < s.edges.size(); ++i) edge_id[s.edges[i]] = static_cast<int>(i);
    // left edge -> (face, right edge opposite to it)
    std::map<int, std::pair<int, int>> through;
    for (std::size_t f = 0; f < s.faces.size(); ++f) {
        const auto& q = s.faces[f];
        int ll = edge_id.at({q.rank - 1, q.lower, q.left}), lu = edge_id.at({q.rank, q.left, q.upper});
        int rl = edge_id.at({q.rank - 1, q.lower, q.right}), ru = edge_id.at({q.rank, q.right, q.upper});
        through[ll] = {static_cast<int>(f), ru};
        through[lu] = {static_cast<int>(f), rl};
    }
    auto added = [&](int e) {
        const auto& x = s.edges[e];
        VertexSet d = s.rows[x.rank + 1][x.upper].label & ~s.rows[x.rank][x.lower].label;
        return lowest(d);
    };

    VennDiagram d;
    d.simple = true;
    d.pair_crossings.assign(n, std::vector<int>(n, 0));
    std::vector<int> on_face(s.faces.size(), 0);
    for (int i = 0; i < n; ++i) {
        VennCurve c;
        c.element = i;
        int start = -1;
        for (int k = 0; k < n; ++k) {
            int e = edge_id.at({k, 0, 0});
            if (added(e) == i) start = e;
        }
        int e = start;
        std::set<int> seen_faces;
        while (true) {
            c.crossings.push_back(e);
            auto it = through.find(e);
            if (it == through.end()) break;
            auto [f, next] = it->second;
            if (!seen_faces.insert(f).second) d.simple = false;
            c.faces.push_back(f);
            ++on_face[f];
            e = next;
            if (static_cast<int>(c.crossings.size()) > static_cast<int>(s.edges.size())) throw ContractViolation("Venn curve does not end");
        }
        // the right boundary is glued to the left one
        const auto& last = s.edges[e];
        const auto& first = s.edges[start];
        if (s.rows[last.rank][last.lower].label != s.rows[first.rank][first.lower].label ||
            s.rows[last.rank + 1][last.upper].label != s.rows[first.rank + 1][first.upper].label)
            d.simple = false;
        c.crossings.pop_back();
        // the curve must cross every edge that adds i once; right boundary
        // edges are the glued copies of left ones
        std::set<int> want, got(c.crossings.begin(), c.crossings.end());
        for (std::size_t x = 0; x < s.edges.size(); ++x) {
            const auto& ed = s.edges[x];
            bool on_left = ed.lower == 0 && ed.upper == 0;
            bool on_right = ed.lower == static_cast<int>(s.rows[ed.rank].size()) - 1 &&
                            ed.upper == static_cast<int>(s.rows[ed.rank + 1].size()) - 1;
            if (added(static_cast<int>(x)) == i && (on_left || !on_right)) want.insert(static_cast<int>(x));
        }
        if (want != got || got.size() != c.crossings.size()) d.simple = false;
        d.curves.push_back(std::move(c));
    }
    for (std::size_t f = 0; f < s.faces.size(); ++f) {
        const auto& q = s.faces[f];
        VertexSet two = s.rows[q.rank + 1][q.upper].label & ~s.rows[q.rank - 1][q.lower].label;
        if (on_face[f] != 2 || popcount(two) != 2) d.simple = false;
        auto mem = members_of(two);
        if (mem.size() == 2) {
            ++d.pair_crossings[mem[0]][mem[1]];
            ++d.pair_crossings[mem[1]][mem[0]];
        }
    }
    d.crossing_points = static_cast<int>(s.faces.size());
    // 4-regular arrangement: V crossings, 2V arcs, so V + 2 faces
    d.regions = d.crossing_points + 2;
    return d;
}

/// Layered drawing: x by row position, y by rank.
inline std::string to_dot(const RhombicStrip& s) {
    std::ostringstream out;
    out << "graph strip {\n  node [shape=plaintext];\n";
    for (int k = 0; k <= s.n; ++k)
        for (std::size_t i = 0; i < s.rows[k].size(); ++i) {
            const auto& v = s.rows[k][i];
            out << "  r" << k << "_" << i << " [label=\"" << s.set_name(v.label) << "\", pos=\"" << i << "," << k
                << "!\"";
            if (v.clone != Clone::none) out << ", fontcolor=gray";
            out << "];\n";
        }
    for (const auto& e : s.edges)
        out << "  r" << e.rank << "_" << e.lower << " -- r" << e.rank + 1 << "_" << e.upper << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace fhc::rhombic

#endif  // FHC_RHOMBIC_HPP
