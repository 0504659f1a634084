#ifndef FHC_VERIFY_HPP
#define FHC_VERIFY_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fhc/skeleton.hpp"

namespace fhc {

/// Vertex sequence in a skeleton; `closed` adds the edge back to the start.
struct Walk {
    std::vector<int> vertices;
    bool closed = false;

    int length() const {
        int n = static_cast<int>(vertices.size());
        if (n == 0) return 0;
        return closed ? n : n - 1;
    }
};

struct FacetVisit {
    std::string label;
    bool visited = false;
    int interval_count = 0;
    int edge_count = 0;
};

struct VerificationReport {
    bool valid_walk = false;
    std::string problem;
    std::vector<FacetVisit> per_facet;
    bool is_facet_hamiltonian = false;
    int length = 0;
    /// Set for simple skeletons: every facet contains at least one walk edge.
    std::optional<bool> every_facet_has_edge;
};

/// Maximal runs of `true` in a boolean sequence, cyclic when requested.
inline int count_runs(const std::vector<char>& in, bool cyclic) {
    int n = static_cast<int>(in.size());
    int runs = 0;
    for (int i = 0; i < n; ++i)
        if (in[i] && (i == 0 || !in[i - 1])) ++runs;
    if (cyclic && runs > 1 && in.front() && in.back()) --runs;
    return runs;
}

inline VerificationReport verify_walk(const FacetedSkeleton& s, const Walk& w) {
    VerificationReport r;
    r.length = w.length();
    int n = static_cast<int>(w.vertices.size());
    auto fail = [&](std::string why) {
        r.problem = std::move(why);
        return r;
    };
    if (n == 0) return fail("walk is empty");
    std::vector<char> seen(s.num_vertices(), 0);
    for (int v : w.vertices) {
        if (v < 0 || v >= s.num_vertices()) return fail("walk references an unknown vertex");
        if (seen[v]) return fail("vertex " + s.id(v) + " repeats");
        seen[v] = 1;
    }
    for (int i = 0; i + 1 < n; ++i)
        if (!s.adjacent(w.vertices[i], w.vertices[i + 1]))
            return fail(s.id(w.vertices[i]) + " and " + s.id(w.vertices[i + 1]) + " are not adjacent");
    if (w.closed) {
        if (n < 3) return fail("closed walk needs at least three vertices");
        if (!s.adjacent(w.vertices.back(), w.vertices.front())) return fail("closing edge is missing");
    }
    r.valid_walk = true;

    int k = s.num_facets();
    std::vector<std::vector<char>> on(k, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int f : s.facets_of(w.vertices[i])) on[f][i] = 1;
    bool all = true, edges_ok = true;
    for (int f = 0; f < k; ++f) {
        FacetVisit fv;
        fv.label = s.facet_label(f);
        fv.interval_count = count_runs(on[f], w.closed);
        fv.visited = fv.interval_count > 0;
        int m = w.closed ? n : n - 1;
        for (int i = 0; i < m; ++i)
            if (on[f][i] && on[f][(i + 1) % n]) ++fv.edge_count;
        if (fv.interval_count != 1) all = false;
        if (fv.edge_count == 0) edges_ok = false;
        r.per_facet.push_back(fv);
    }
    r.is_facet_hamiltonian = all;
    if (s.simple_dimension() > 0) r.every_facet_has_edge = edges_ok;
    return r;
}

enum class SearchMode { cycle, path };
enum class SearchStatus { found, none, unknown };

inline const char* to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::none: return "none";
        case SearchStatus::unknown: return "unknown";
    }
    return "";
}

struct SearchResult {
    SearchStatus status = SearchStatus::unknown;
    std::optional<Walk> walk;
    std::uint64_t expansions = 0;
};

struct SearchOptions {
    std::uint64_t budget = 50'000'000;
    /// Restrict cycles to this many edges when set.
    std::optional<int> cycle_length;
};

namespace detail {

/// Depth-first search over simple walks. A facet that has been left may not be
/// entered again, except for facets of the start vertex in cycle mode, which may
/// be re-entered once and then must be held until the cycle closes.
class FhSearch {
public:
    FhSearch(const FacetedSkeleton& s, SearchMode mode, const SearchOptions& opt)
        : s_(s), mode_(mode), opt_(opt), k_(s.num_facets()),
          state_(k_, 0), on_path_(s.num_vertices(), 0) {}

    SearchResult run() {
        SearchResult res;
        if (s_.num_vertices() == 0 || k_ == 0) {
            res.status = SearchStatus::none;
            return res;
        }
        for (int start = 0; start < s_.num_vertices() && !found_ && !out_of_budget_; ++start) {
            if (mode_ == SearchMode::cycle && !s_.on_facet(start, rarest_facet())) continue;
            start_ = start;
            enter_all(start);
            path_ = {start};
            on_path_[start] = 1;
            dfs();
            on_path_[start] = 0;
            std::fill(state_.begin(), state_.end(), 0);
            visited_ = 0;
        }
        res.expansions = expansions_;
        if (found_) {
            res.status = SearchStatus::found;
            res.walk = Walk{best_, mode_ == SearchMode::cycle};
        } else {
            res.status = out_of_budget_ ? SearchStatus::unknown : SearchStatus::none;
        }
        return res;
    }

private:
    // facet states
    static constexpr char untouched = 0, open = 1, closed = 2, wrap_open = 3, wrap_closed = 4, wrap_tail = 5;

    int rarest_facet() const {
        int best = 0;
        for (int f = 1; f < k_; ++f)
            if (s_.facet(f).size() < s_.facet(best).size()) best = f;
        return best;
    }

    void enter_all(int v) {
        for (int f : s_.facets_of(v)) {
            state_[f] = mode_ == SearchMode::cycle ? wrap_open : open;
            ++visited_;
        }
    }

    bool closable() const {
        if (path_.size() < 3 || !s_.adjacent(path_.back(), start_)) return false;
        if (opt_.cycle_length && static_cast<int>(path_.size()) != *opt_.cycle_length) return false;
        return path_[1] < path_.back();
    }

    bool step_allowed(int w, std::vector<std::pair<int, char>>& undo) {
        int v = path_.back();
        for (int f : s_.facets_of(v)) {
            if (s_.on_facet(w, f)) continue;
            char st = state_[f];
            if (st == open) set(f, closed, undo);
            else if (st == wrap_open) set(f, wrap_closed, undo);
            else if (st == wrap_tail) return false;
        }
        for (int f : s_.facets_of(w)) {
            char st = state_[f];
            if (st == untouched) {
                set(f, open, undo);
                ++visited_;
                undo.emplace_back(-1, 0);
            } else if (st == closed) {
                return false;
            } else if (st == wrap_closed) {
                if (mode_ != SearchMode::cycle) return false;
                set(f, wrap_tail, undo);
            }
        }
        return true;
    }

    void set(int f, char st, std::vector<std::pair<int, char>>& undo) {
        undo.emplace_back(f, state_[f]);
        state_[f] = st;
    }

    void rollback(std::vector<std::pair<int, char>>& undo) {
        for (auto it = undo.rbegin(); it != undo.rend(); ++it) {
            if (it->first < 0) --visited_;
            else state_[it->first] = it->second;
        }
        undo.clear();
    }

    /// Vertices on closed facets are unusable, and while a start facet is held
    /// for the wrap every later vertex must lie on it. Every untouched facet
    /// needs a usable vertex reachable from the end of the walk.
    bool reachable() {
        int n = s_.num_vertices();
        mark_.assign(n, 0);
        int tails = 0;
        for (int f = 0; f < k_; ++f)
            if (state_[f] == wrap_tail) ++tails;
        auto usable = [&](int u) {
            if (on_path_[u]) return false;
            int held = 0;
            for (int f : s_.facets_of(u)) {
                if (state_[f] == closed) return false;
                if (state_[f] == wrap_tail) ++held;
            }
            return held == tails;
        };
        std::vector<int> stack{path_.back()};
        mark_[path_.back()] = 1;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int x : s_.neighbors(u))
                if (!mark_[x] && usable(x)) {
                    mark_[x] = 1;
                    stack.push_back(x);
                }
        }
        for (int f = 0; f < k_; ++f) {
            if (state_[f] != untouched) continue;
            bool ok = false;
            for (int u : s_.facet(f))
                if (mark_[u] && u != path_.back()) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        if (mode_ == SearchMode::cycle) {
            bool back = path_.size() < 2;
            for (int u : s_.neighbors(start_))
                if (mark_[u] && u != path_.back()) back = true;
            if (path_.size() >= 2 && s_.adjacent(path_.back(), start_)) back = true;
            if (!back) return false;
        }
        return true;
    }

    void dfs() {
        if (found_ || out_of_budget_) return;
        if (++expansions_ > opt_.budget) {
            out_of_budget_ = true;
            return;
        }
        if (visited_ == k_) {
            if (mode_ == SearchMode::path) {
                if (path_.size() == 1 || path_.front() < path_.back()) {
                    best_ = path_;
                    found_ = true;
                    return;
                }
            } else if (closable()) {
                best_ = path_;
                found_ = true;
                return;
            }
        }
        if (opt_.cycle_length && static_cast<int>(path_.size()) >= *opt_.cycle_length) return;
        if (!reachable()) return;
        int v = path_.back();
        for (int w : s_.neighbors(v)) {
            if (on_path_[w]) continue;
            std::vector<std::pair<int, char>> undo;
            if (step_allowed(w, undo)) {
                path_.push_back(w);
                on_path_[w] = 1;
                dfs();
                on_path_[w] = 0;
                path_.pop_back();
            }
            rollback(undo);
            if (found_ || out_of_budget_) return;
        }
    }

    const FacetedSkeleton& s_;
    SearchMode mode_;
    SearchOptions opt_;
    int k_;
    std::vector<char> state_;
    std::vector<char> on_path_;
    std::vector<char> mark_;
    std::vector<int> path_;
    std::vector<int> best_;
    int start_ = 0;
    int visited_ = 0;
    bool found_ = false;
    bool out_of_budget_ = false;
    std::uint64_t expansions_ = 0;
};

}  // namespace detail

/// Exhaustive search for a facet-Hamiltonian cycle or path. "none" is an
/// exhaustion certificate; "unknown" means the expansion budget ran out.
inline SearchResult search_fh(const FacetedSkeleton& s, SearchMode mode, const SearchOptions& opt = {}) {
    return detail::FhSearch(s, mode, opt).run();
}

struct CycleToPath {
    Walk path;
    /// Number of cycle edges removed: 2 when some facet holds the whole cycle, else 3.
    int deleted_edges = 0;
    /// Position in the cycle of the first of the two chosen vertices (3-edge branch).
    int pivot = -1;
};

/// Side of the third edge at cycle vertex c[i] relative to the cycle direction.
/// +1 when it lies between next and prev going around the rotation, -1 otherwise.
inline int side_of_third_edge(const FacetedSkeleton& s, const std::vector<int>& c, int i) {
    int n = static_cast<int>(c.size());
    int v = c[i], prev = c[(i + n - 1) % n], next = c[(i + 1) % n];
    const auto& rot = s.rotation()[v];
    auto pos = [&](int x) { return static_cast<int>(std::find(rot.begin(), rot.end(), x) - rot.begin()); };
    int d = static_cast<int>(rot.size());
    int pp = pos(prev), pn = pos(next);
    return (pn + 1) % d != pp ? +1 : -1;
}

/// Turn a facet-Hamiltonian cycle of a simple 3-polytope into a facet-Hamiltonian path.
inline CycleToPath cycle_to_path_simple3(const FacetedSkeleton& s, const Walk& cycle) {
    if (!s.has_rotation()) throw InvalidInput("cycle_to_path needs a planar embedding");
    if (!s.is_simple(3)) throw InvalidInput("cycle_to_path needs a simple 3-polytope");
    if (!cycle.closed || !verify_walk(s, cycle).is_facet_hamiltonian)
        throw InvalidInput("input is not a facet-Hamiltonian cycle");
    const auto& c = cycle.vertices;
    int n = static_cast<int>(c.size());
    CycleToPath out;
    for (int f = 0; f < s.num_facets(); ++f) {
        bool holds = std::all_of(c.begin(), c.end(), [&](int v) { return s.on_facet(v, f); });
        if (holds) {
            out.deleted_edges = 2;
            out.path.vertices.assign(c.begin() + 2, c.end());
            out.path.vertices.push_back(c[0]);
            return out;
        }
    }
    // a facet met in at least two cycle edges; its last two vertices along the cycle
    for (int f = 0; f < s.num_facets(); ++f) {
        std::vector<char> on(n, 0);
        int edges = 0;
        for (int i = 0; i < n; ++i) on[i] = s.on_facet(c[i], f);
        for (int i = 0; i < n; ++i)
            if (on[i] && on[(i + 1) % n]) ++edges;
        if (edges < 2) continue;
        int last = -1;
        for (int i = 0; i < n; ++i)
            if (on[i] && !on[(i + 1) % n]) last = i;
        if (last < 0) continue;
        int a = (last + n - 1) % n, b = last;
        if (side_of_third_edge(s, c, a) == side_of_third_edge(s, c, b)) continue;
        out.deleted_edges = 3;
        out.pivot = a;
        for (int j = 1; j <= n - 2; ++j) out.path.vertices.push_back(c[(b + j) % n]);
        return out;
    }
    throw InvalidInput("no pair of consecutive cycle vertices with opposite sides");
}

}  // namespace fhc

#endif  // FHC_VERIFY_HPP
