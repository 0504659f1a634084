#ifndef FHC_TRIANGULATIONS_HPP
#define FHC_TRIANGULATIONS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fhc/combinatorics.hpp"
#include "fhc/skeleton.hpp"

namespace fhc::tri {

/// Diagonal between corners a < b of a convex polygon.
struct Diagonal {
    int a = 0, b = 0;
    Diagonal() = default;
    Diagonal(int x, int y) : a(std::min(x, y)), b(std::max(x, y)) {}
    auto operator<=>(const Diagonal&) const = default;
};

inline int mod(int x, int m) { return ((x % m) + m) % m; }

/// Number of polygon sides on the shorter side of the diagonal.
inline int diagonal_length(const Diagonal& d, int m) { return std::min(d.b - d.a, m - (d.b - d.a)); }

inline bool diagonals_cross(const Diagonal& x, const Diagonal& y) {
    if (x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b) return false;
    bool ya_in = x.a < y.a && y.a < x.b;
    bool yb_in = x.a < y.b && y.b < x.b;
    return ya_in != yb_in;
}

/// Corners 0..m-1 in clockwise order.
struct PolygonTriangulation {
    int m = 0;
    std::vector<Diagonal> diagonals;

    PolygonTriangulation() = default;
    PolygonTriangulation(int size, std::vector<Diagonal> ds) : m(size), diagonals(std::move(ds)) {
        std::sort(diagonals.begin(), diagonals.end());
        diagonals.erase(std::unique(diagonals.begin(), diagonals.end()), diagonals.end());
    }

    bool contains(const Diagonal& d) const { return std::binary_search(diagonals.begin(), diagonals.end(), d); }
    bool is_side(int x, int y) const { return mod(x - y, m) == 1 || mod(y - x, m) == 1; }
    bool joined(int x, int y) const { return is_side(x, y) || contains(Diagonal(x, y)); }

    bool is_full() const {
        if (static_cast<int>(diagonals.size()) != m - 3) return false;
        for (const auto& d : diagonals)
            if (d.b - d.a < 2 || d.b - d.a > m - 2 || d.a < 0 || d.b >= m) return false;
        for (std::size_t i = 0; i < diagonals.size(); ++i)
            for (std::size_t j = i + 1; j < diagonals.size(); ++j)
                if (diagonals_cross(diagonals[i], diagonals[j])) return false;
        return true;
    }

    /// Replace d by the other diagonal of the quadrilateral around it.
    std::pair<PolygonTriangulation, Diagonal> flip(const Diagonal& d) const {
        if (!contains(d)) throw ContractViolation("flip: diagonal not in triangulation");
        int c = -1, e = -1;
        for (int x = d.a + 1; x < d.b; ++x)
            if (joined(d.a, x) && joined(x, d.b)) c = x;
        for (int x = d.b + 1; x < d.a + m; ++x)
            if (joined(d.a, mod(x, m)) && joined(mod(x, m), d.b)) e = mod(x, m);
        if (c < 0 || e < 0) throw ContractViolation("flip: triangulation is not full");
        Diagonal fresh(c, e);
        std::vector<Diagonal> next;
        for (const auto& x : diagonals)
            if (x != d) next.push_back(x);
        next.push_back(fresh);
        return {PolygonTriangulation(m, std::move(next)), fresh};
    }

    auto operator<=>(const PolygonTriangulation&) const = default;
};

/// Centrally symmetric triangulation of a 2n-gon, stored in full.
struct SymmetricTriangulation {
    int n = 0;
    PolygonTriangulation full;

    static Diagonal mirror(const Diagonal& d, int n) { return Diagonal(mod(d.a + n, 2 * n), mod(d.b + n, 2 * n)); }
    /// Representative of the symmetric pair: the smaller of the two.
    static Diagonal rep(const Diagonal& d, int n) { return std::min(d, mirror(d, n)); }
    static bool is_long(const Diagonal& d, int n) { return d.b - d.a == n; }

    std::vector<Diagonal> representatives() const {
        std::set<Diagonal> out;
        for (const auto& d : full.diagonals) out.insert(rep(d, n));
        return {out.begin(), out.end()};
    }

    bool is_symmetric() const {
        for (const auto& d : full.diagonals)
            if (!full.contains(mirror(d, n))) return false;
        return true;
    }

    /// Flip a symmetric pair, or a long diagonal on its own.
    std::pair<SymmetricTriangulation, Diagonal> flip(const Diagonal& d) const {
        auto [t1, f1] = full.flip(d);
        if (is_long(d, n)) return {SymmetricTriangulation{n, t1}, rep(f1, n)};
        auto [t2, f2] = t1.flip(mirror(d, n));
        if (f2 != mirror(f1, n)) throw ContractViolation("symmetric flip lost symmetry");
        return {SymmetricTriangulation{n, t2}, rep(f1, n)};
    }

    auto operator<=>(const SymmetricTriangulation&) const = default;
};

enum class Strategy { bistar, parallel };

namespace detail {

inline PolygonTriangulation apply_flip(const PolygonTriangulation& t, const Diagonal& out, const Diagonal& expect) {
    auto [next, fresh] = t.flip(out);
    if (fresh != expect) throw std::logic_error("flip block produced an unexpected diagonal");
    return next;
}

/// Slope class of the m-gon: diagonals {i,j} with i + j = s (mod m).
inline std::vector<Diagonal> slope_class(int m, int s) {
    std::vector<Diagonal> out;
    for (int i = 0; i < m; ++i)
        for (int j = i + 2; j < m; ++j)
            if (j - i <= m - 2 && mod(i + j, m) == mod(s, m)) out.emplace_back(i, j);
    std::sort(out.begin(), out.end(), [m](const Diagonal& x, const Diagonal& y) {
        int lx = diagonal_length(x, m), ly = diagonal_length(y, m);
        return lx != ly ? lx < ly : x < y;
    });
    return out;
}

inline PolygonTriangulation zigzag(int m, int s) {
    auto a = slope_class(m, s), b = slope_class(m, s + 1);
    a.insert(a.end(), b.begin(), b.end());
    return PolygonTriangulation(m, a);
}

}  // namespace detail

/// Bistar cycle on the (n+2)-gon. The returned sequence is cyclic; the last
/// triangulation flips back to the first.
inline std::vector<PolygonTriangulation> assoc_cycle_bistar(int n) {
    if (n < 3) throw InvalidInput("n must be at least 3");
    int m = n + 2;
    // corner labels 1..n+2 map to 0..n+1
    auto D = [](int x, int y) { return Diagonal(x - 1, y - 1); };
    std::vector<Diagonal> s1;
    for (int k = 3; k <= n + 2 - 1; ++k) s1.push_back(D(1, k));
    PolygonTriangulation t(m, s1);
    std::vector<PolygonTriangulation> out{t};
    for (int i = 1; i <= n - 1; ++i)
        for (int k = 2; k <= n + 1 - i; ++k) {
            int far = i + k + 1;
            // {i+1, n+2} is a polygon side when i = n; never reached here
            t = detail::apply_flip(t, D(i, i + k), D(i + 1, far));
            out.push_back(t);
        }
    for (int k = 2; k <= n; ++k) {
        t = detail::apply_flip(t, D(n + 2, k), D(1, k + 1));
        out.push_back(t);
    }
    if (out.back() != out.front()) throw std::logic_error("bistar cycle does not close");
    out.pop_back();
    return out;
}

/// Parallel-class cycle: T_i = P_i u P_{i+1} and each block exchanges P_i for P_{i+2}.
inline std::vector<PolygonTriangulation> assoc_cycle_parallel(int n, int start = 0) {
    if (n < 3) throw InvalidInput("n must be at least 3");
    int m = n + 2;
    PolygonTriangulation t = detail::zigzag(m, start);
    std::vector<PolygonTriangulation> out{t};
    for (int i = 0; i < m; ++i) {
        int s = start + i;
        for (const auto& d : detail::slope_class(m, s)) {
            auto [next, fresh] = t.flip(d);
            if (mod(fresh.a + fresh.b, m) != mod(s + 2, m)) throw std::logic_error("parallel block left its class");
            t = next;
            out.push_back(t);
        }
    }
    if (out.back() != out.front()) throw std::logic_error("parallel cycle does not close");
    out.pop_back();
    return out;
}

/// Sizes of the flip blocks of the parallel-class cycle, in order.
inline std::vector<int> parallel_block_sizes(int n, int start = 0) {
    std::vector<int> out;
    for (int i = 0; i < n + 2; ++i) out.push_back(static_cast<int>(detail::slope_class(n + 2, start + i).size()));
    return out;
}

/// Cyclohedron cycles on centrally symmetric triangulations of the 2n-gon.
inline std::vector<SymmetricTriangulation> cyclo_cycle(int n, Strategy strategy) {
    if (n < 3) throw InvalidInput("n must be at least 3");
    int m = 2 * n;
    std::vector<SymmetricTriangulation> out;
    if (strategy == Strategy::bistar) {
        // S_p: diagonals {p, p+k}, k = 2..n, and their mirror images
        auto star = [&](int p) {
            std::vector<Diagonal> ds;
            for (int k = 2; k <= n; ++k) {
                Diagonal d(mod(p, m), mod(p + k, m));
                ds.push_back(d);
                ds.push_back(SymmetricTriangulation::mirror(d, n));
            }
            return SymmetricTriangulation{n, PolygonTriangulation(m, ds)};
        };
        SymmetricTriangulation t = star(0);
        out.push_back(t);
        for (int p = 0; p < n; ++p)
            for (int k = 2; k <= n; ++k) {
                auto [next, fresh] = t.flip(Diagonal(mod(p, m), mod(p + k, m)));
                if (fresh != SymmetricTriangulation::rep(Diagonal(mod(p + 1, m), mod(p + k + 1, m)), n))
                    throw std::logic_error("cyclohedron bistar block produced an unexpected diagonal");
                t = next;
                out.push_back(t);
            }
    } else {
        SymmetricTriangulation t{n, detail::zigzag(m, 0)};
        out.push_back(t);
        for (int s = 0; s < m; ++s) {
            std::set<Diagonal> done;
            for (const auto& d : detail::slope_class(m, s)) {
                if (done.count(SymmetricTriangulation::rep(d, n))) continue;
                done.insert(SymmetricTriangulation::rep(d, n));
                auto [next, fresh] = t.flip(d);
                if (mod(fresh.a + fresh.b, m) != mod(s + 2, m)) throw std::logic_error("parallel block left its class");
                t = next;
                out.push_back(t);
            }
        }
    }
    if (out.back() != out.front()) throw std::logic_error("cyclohedron cycle does not close");
    out.pop_back();
    return out;
}

// ---------------------------------------------------------------------------
// Type D: chords of a 2n-gon around a small central disk.

enum class ChordKind { diagonal, tangent_cw, tangent_ccw };

/// A chord is a non-long diagonal {corner, other} or one of the two tangents
/// from `corner` to the disk. For tangents `other` is unused (-1).
/// tangent_cw touches the disk at the point a quarter turn clockwise from the
/// corner's direction, tangent_ccw a quarter turn counterclockwise.
struct Chord {
    ChordKind kind = ChordKind::diagonal;
    int corner = 0;
    int other = -1;
    auto operator<=>(const Chord&) const = default;
};

inline Chord make_diagonal(int a, int b) { return Chord{ChordKind::diagonal, std::min(a, b), std::max(a, b)}; }
inline Chord make_tangent(int c, ChordKind k) { return Chord{k, c, -1}; }

inline Chord rotate(const Chord& c, int n, int steps) {
    int m = 2 * n;
    if (c.kind == ChordKind::diagonal) return make_diagonal(mod(c.corner + steps, m), mod(c.other + steps, m));
    return make_tangent(mod(c.corner + steps, m), c.kind);
}

inline Chord mirror(const Chord& c, int n) { return rotate(c, n, n); }
inline Chord chord_rep(const Chord& c, int n) { return std::min(c, mirror(c, n)); }

/// Corner x lies strictly inside the clockwise arc from a to b.
inline bool strictly_between_cw(int a, int x, int b, int m) {
    int dx = mod(x - a, m), db = mod(b - a, m);
    return dx > 0 && dx < db;
}

/// Crossing table for the disk model. Diagonals cross by interleaving; a tangent
/// from c crosses a diagonal exactly when c is strictly on the side of the
/// diagonal away from the disk; a clockwise tangent from c crosses a
/// counterclockwise tangent from d exactly when d lies strictly within the
/// half-turn clockwise from c. Tangents of equal orientation never cross.
inline bool chords_cross(const Chord& x, const Chord& y, int n) {
    int m = 2 * n;
    if (x.kind == ChordKind::diagonal && y.kind == ChordKind::diagonal)
        return diagonals_cross(Diagonal(x.corner, x.other), Diagonal(y.corner, y.other));
    if (x.kind != ChordKind::diagonal && y.kind != ChordKind::diagonal) {
        if (x.kind == y.kind) return false;
        const Chord& cw = x.kind == ChordKind::tangent_cw ? x : y;
        const Chord& ccw = x.kind == ChordKind::tangent_cw ? y : x;
        int k = mod(ccw.corner - cw.corner, m);
        return k >= 1 && k <= n - 1;
    }
    const Chord& d = x.kind == ChordKind::diagonal ? x : y;
    const Chord& t = x.kind == ChordKind::diagonal ? y : x;
    int a = d.corner, b = d.other;
    // the short side of a non-long diagonal is the one away from the disk
    if (b - a < n) return strictly_between_cw(a, t.corner, b, m);
    return strictly_between_cw(b, t.corner, a, m);
}

/// All chords: non-long diagonals and both tangents at every corner.
inline std::vector<Chord> all_chords(int n) {
    int m = 2 * n;
    std::vector<Chord> out;
    for (int a = 0; a < m; ++a)
        for (int b = a + 2; b < m; ++b)
            if (b - a <= m - 2 && b - a != n) out.push_back(make_diagonal(a, b));
    for (int c = 0; c < m; ++c) {
        out.push_back(make_tangent(c, ChordKind::tangent_cw));
        out.push_back(make_tangent(c, ChordKind::tangent_ccw));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Chord> chord_pairs(int n) {
    std::set<Chord> reps;
    for (const auto& c : all_chords(n)) reps.insert(chord_rep(c, n));
    return {reps.begin(), reps.end()};
}

/// Centrally symmetric pseudotriangulation, one representative per chord pair.
struct PseudoTriangulationD {
    int n = 0;
    std::vector<Chord> reps;

    PseudoTriangulationD() = default;
    PseudoTriangulationD(int size, std::vector<Chord> rs) : n(size) {
        for (auto& c : rs) c = chord_rep(c, n);
        std::sort(rs.begin(), rs.end());
        rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
        reps = std::move(rs);
    }

    std::vector<Chord> chords() const {
        std::vector<Chord> out;
        for (const auto& c : reps) {
            out.push_back(c);
            out.push_back(mirror(c, n));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool contains(const Chord& c) const { return std::binary_search(reps.begin(), reps.end(), chord_rep(c, n)); }

    bool is_valid() const {
        if (static_cast<int>(reps.size()) != n) return false;
        auto cs = chords();
        if (static_cast<int>(cs.size()) != 2 * n) return false;
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j)
                if (chords_cross(cs[i], cs[j], n)) return false;
        return true;
    }

    /// Exchange the pair of `c` for the unique other compatible pair.
    std::pair<PseudoTriangulationD, Chord> flip(const Chord& c) const {
        Chord r = chord_rep(c, n);
        if (!contains(r)) throw ContractViolation("flip: chord not in pseudotriangulation");
        std::vector<Chord> rest;
        for (const auto& x : chords())
            if (chord_rep(x, n) != r) rest.push_back(x);
        std::optional<Chord> found;
        for (const auto& cand : chord_pairs(n)) {
            if (cand == r || contains(cand)) continue;
            bool ok = !chords_cross(cand, mirror(cand, n), n);
            for (const auto& x : rest)
                if (ok && (chords_cross(cand, x, n) || chords_cross(mirror(cand, n), x, n))) ok = false;
            if (!ok) continue;
            if (found) throw ContractViolation("flip: replacement is not unique");
            found = cand;
        }
        if (!found) throw ContractViolation("flip: no replacement chord pair");
        std::vector<Chord> next;
        for (const auto& x : reps)
            if (x != r) next.push_back(x);
        next.push_back(*found);
        return {PseudoTriangulationD(n, std::move(next)), *found};
    }

    PseudoTriangulationD rotated(int steps) const {
        std::vector<Chord> rs;
        for (const auto& c : reps) rs.push_back(rotate(c, n, steps));
        return PseudoTriangulationD(n, rs);
    }

    auto operator<=>(const PseudoTriangulationD&) const = default;
};

inline std::string chord_name(const Chord& c) {
    switch (c.kind) {
        case ChordKind::diagonal: return std::to_string(c.corner) + "-" + std::to_string(c.other);
        case ChordKind::tangent_cw: return std::to_string(c.corner) + "-cw";
        case ChordKind::tangent_ccw: return std::to_string(c.corner) + "-ccw";
    }
    return "";
}

/// Zigzag P_0 u P_1 of the 2n-gon with its long diagonal replaced by the four
/// tangents at its endpoints.
inline PseudoTriangulationD zigzag_d(int n) {
    auto z = detail::zigzag(2 * n, 0);
    std::vector<Chord> cs;
    for (const auto& d : z.diagonals) {
        if (d.b - d.a == n) {
            for (int c : {d.a, d.b})
                for (auto k : {ChordKind::tangent_cw, ChordKind::tangent_ccw}) cs.push_back(make_tangent(c, k));
        } else {
            cs.push_back(make_diagonal(d.a, d.b));
        }
    }
    return PseudoTriangulationD(n, cs);
}

struct BlockStep {
    Chord removed, introduced;
};

/// Type D cycle: blocks F_0..F_{n-1} each take T_i to T_{i+1} = T_i rotated by
/// one corner in n single pair flips. Within a block the oldest chord is
/// removed first (the chords of T_0 count as entered shortest first, tangents
/// last); a removal is taken only if its replacement belongs to T_{i+1}, which
/// forces the two-step tangent handling.
inline std::vector<PseudoTriangulationD> assocD_cycle(int n, std::vector<std::vector<BlockStep>>* blocks = nullptr) {
    if (n < 3) throw InvalidInput("n must be at least 3");
    PseudoTriangulationD t = zigzag_d(n);
    if (!t.is_valid()) throw std::logic_error("zigzag pseudotriangulation is invalid");
    std::vector<PseudoTriangulationD> out{t};
    auto order_key = [n](const Chord& c) {
        int len = c.kind == ChordKind::diagonal ? diagonal_length(Diagonal(c.corner, c.other), 2 * n) : 2 * n;
        return std::make_pair(len, c);
    };
    // chords leave in the order they entered, initial chords by length
    std::map<Chord, int> born;
    int clock = 0;
    {
        auto initial = t.reps;
        std::sort(initial.begin(), initial.end(), [&](const Chord& x, const Chord& y) { return order_key(x) < order_key(y); });
        for (const auto& c : initial) born[c] = clock++;
    }
    auto age_key = [&](const Chord& c) { return std::make_pair(born.at(c), order_key(c)); };
    for (int i = 0; i < n; ++i) {
        PseudoTriangulationD target = t.rotated(1);
        std::vector<BlockStep> steps;
        for (int step = 0; step < n; ++step) {
            std::vector<Chord> cand;
            for (const auto& c : t.reps)
                if (!target.contains(c)) cand.push_back(c);
            std::sort(cand.begin(), cand.end(), [&](const Chord& x, const Chord& y) { return age_key(x) < age_key(y); });
            bool moved = false;
            for (const auto& c : cand) {
                auto [next, fresh] = t.flip(c);
                if (!target.contains(fresh)) continue;
                born[fresh] = clock++;
                steps.push_back({c, fresh});
                t = next;
                out.push_back(t);
                moved = true;
                break;
            }
            if (!moved) throw std::logic_error("type D block is stuck");
        }
        if (t != target) throw std::logic_error("type D block did not reach the rotated zigzag");
        if (blocks) blocks->push_back(std::move(steps));
    }
    if (out.back() != out.front()) throw std::logic_error("type D cycle does not close");
    out.pop_back();
    return out;
}

/// Flip graph of all centrally symmetric pseudotriangulations, by brute force.
struct TypeDSkeleton {
    FacetedSkeleton skeleton;
    std::vector<PseudoTriangulationD> vertices;
    std::map<PseudoTriangulationD, int> vertex_of;
    std::vector<Chord> pairs;
};

inline TypeDSkeleton skeleton_type_d(int n) {
    if (n < 3 || n > 6) throw InvalidInput("type D brute force supports 3 <= n <= 6");
    TypeDSkeleton out;
    out.pairs = chord_pairs(n);
    int p = static_cast<int>(out.pairs.size());
    // pair compatibility: both chords of each pair avoid both chords of the other
    std::vector<std::vector<char>> ok(p, std::vector<char>(p, 0));
    std::vector<char> self(p, 0);
    for (int i = 0; i < p; ++i) {
        Chord a = out.pairs[i], am = mirror(a, n);
        self[i] = !chords_cross(a, am, n);
        for (int j = 0; j < p; ++j) {
            Chord b = out.pairs[j], bm = mirror(b, n);
            ok[i][j] = i != j && !chords_cross(a, b, n) && !chords_cross(a, bm, n) && !chords_cross(am, b, n) &&
                       !chords_cross(am, bm, n);
        }
    }
    std::vector<int> cur;
    std::function<void(int)> grow = [&](int from) {
        bool extended = false;
        for (int j = 0; j < p; ++j) {
            if (!self[j]) continue;
            bool fits = std::find(cur.begin(), cur.end(), j) == cur.end();
            for (int i : cur) fits = fits && ok[i][j];
            if (!fits) continue;
            extended = true;
            if (j < from) continue;
            cur.push_back(j);
            grow(j + 1);
            cur.pop_back();
        }
        if (!extended) {
            std::vector<Chord> rs;
            for (int i : cur) rs.push_back(out.pairs[i]);
            out.vertices.emplace_back(n, rs);
        }
    };
    grow(0);
    std::sort(out.vertices.begin(), out.vertices.end());
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
    for (std::size_t i = 0; i < out.vertices.size(); ++i) {
        std::string id;
        for (const auto& c : out.vertices[i].reps) id += (id.empty() ? "" : " ") + chord_name(c);
        out.skeleton.add_vertex(id);
        out.vertex_of[out.vertices[i]] = static_cast<int>(i);
    }
    std::map<Chord, std::vector<int>> members;
    for (std::size_t i = 0; i < out.vertices.size(); ++i)
        for (const auto& c : out.vertices[i].reps) members[c].push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < out.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < out.vertices.size(); ++j) {
            int shared = 0;
            for (const auto& c : out.vertices[i].reps) shared += out.vertices[j].contains(c);
            if (shared == n - 1) out.skeleton.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
    for (const auto& c : out.pairs) out.skeleton.add_facet(chord_name(c), members[c]);
    return out;
}

// ---------------------------------------------------------------------------
// Dictionaries between triangulations and tubings.

/// (n+2)-gon with corners 0..n+1 and the path 1..n: diagonal {i,j} gives the tube {i+1..j-1}.
inline VertexSet tube_of_diagonal_a(const Diagonal& d) {
    VertexSet s = 0;
    for (int v = d.a + 1; v <= d.b - 1; ++v) s |= bit(v - 1);
    return s;
}

inline Diagonal diagonal_of_tube_a(VertexSet tube) {
    auto ms = members_of(tube);
    // labels i+1..j-1 occupy indices i..j-2
    return Diagonal(ms.front(), ms.back() + 2);
}

inline Tubing tubing_from_triangulation_a(const PolygonTriangulation& t) {
    if (!t.is_full()) throw InvalidInput("triangulation is not full");
    std::vector<VertexSet> tubes;
    for (const auto& d : t.diagonals) tubes.push_back(tube_of_diagonal_a(d));
    return Tubing(tubes);
}

inline PolygonTriangulation triangulation_from_tubing_a(int n, const Tubing& tubing) {
    std::vector<Diagonal> ds;
    for (VertexSet t : tubing.tubes) ds.push_back(diagonal_of_tube_a(t));
    PolygonTriangulation out(n + 2, ds);
    if (!out.is_full()) throw InvalidInput("tubing is not maximal on the path");
    return out;
}

/// 2n-gon whose corner c carries label (c mod n) + 1; a diagonal gives the
/// labels strictly inside its shorter side, as a tube of the cycle 1..n.
inline VertexSet tube_of_diagonal_b(const Diagonal& d, int n) {
    int m = 2 * n;
    int from = d.a, to = d.b;
    if (d.b - d.a > n) std::swap(from, to);
    VertexSet s = 0;
    for (int c = mod(from + 1, m); c != to; c = mod(c + 1, m)) s |= bit(mod(c, n));
    return s;
}

inline Diagonal diagonal_of_tube_b(VertexSet tube, int n) {
    int k = popcount(tube);
    // the tube is a cyclic interval; find its first label
    for (int start = 0; start < n; ++start) {
        VertexSet s = 0;
        for (int j = 0; j < k; ++j) s |= bit(mod(start + j, n));
        if (s == tube) return SymmetricTriangulation::rep(Diagonal(mod(start - 1, 2 * n), mod(start + k, 2 * n)), n);
    }
    throw InvalidInput("not a tube of the cycle");
}

inline Tubing tubing_from_triangulation_b(const SymmetricTriangulation& t) {
    if (!t.full.is_full() || !t.is_symmetric()) throw InvalidInput("not a full symmetric triangulation");
    std::vector<VertexSet> tubes;
    for (const auto& d : t.representatives()) tubes.push_back(tube_of_diagonal_b(d, t.n));
    return Tubing(tubes);
}

inline SymmetricTriangulation triangulation_from_tubing_b(int n, const Tubing& tubing) {
    std::vector<Diagonal> ds;
    for (VertexSet tube : tubing.tubes) {
        Diagonal d = diagonal_of_tube_b(tube, n);
        ds.push_back(d);
        ds.push_back(SymmetricTriangulation::mirror(d, n));
    }
    SymmetricTriangulation out{n, PolygonTriangulation(2 * n, ds)};
    if (!out.full.is_full()) throw InvalidInput("tubing is not maximal on the cycle");
    return out;
}

}  // namespace fhc::tri

#endif  // FHC_TRIANGULATIONS_HPP
