#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "fhc/hardness.hpp"
#include "fixtures.hpp"

using namespace fhc;
using namespace fhc::trvb;

namespace {

LabeledGraph graph_of(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    std::vector<std::pair<std::string, std::string>> e;
    for (auto [a, b] : edges) e.emplace_back(labels[a], labels[b]);
    return LabeledGraph(labels, e);
}

// Breaks the graph explicitly and tests tree-ness by BFS.
bool breaks_into_tree(const LabeledGraph& g, VertexSet broken) {
    std::vector<std::vector<int>> adj;
    std::vector<int> id(g.size(), -1);
    for (int v = 0; v < g.size(); ++v)
        if (!(broken >> v & 1)) {
            id[v] = static_cast<int>(adj.size());
            adj.emplace_back();
        }
    int m = 0;
    for (auto [a, b] : g.edges()) {
        int x = id[a], y = id[b];
        if (x < 0) x = static_cast<int>(adj.size()), adj.emplace_back();
        if (y < 0) y = static_cast<int>(adj.size()), adj.emplace_back();
        adj[x].push_back(y);
        adj[y].push_back(x);
        ++m;
    }
    int n = static_cast<int>(adj.size());
    if (m != n - 1) return false;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++count;
        for (int w : adj[v])
            if (!seen[w]) seen[w] = 1, stack.push_back(w);
    }
    return count == n;
}

const TrvbInstance& yes_instance() {
    static const TrvbInstance t = [] {
        for (auto& [name, inst] : small_catalog())
            if (solve_trvb_bruteforce(inst.graph)) return inst;
        throw std::logic_error("catalog has no yes instance");
    }();
    return t;
}

const TrvbReduction& octahedron_reduction() {
    static const TrvbReduction r = reduce_trvb(octahedron_instance());
    return r;
}

int count_cycles(const std::vector<std::pair<int, int>>& edges) {
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int x) {
        if (!parent.count(x)) parent[x] = x;
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (auto [a, b] : edges) parent[find(a)] = find(b);
    std::set<int> roots;
    for (auto& [v, p] : parent) roots.insert(find(v));
    return static_cast<int>(roots.size());
}

}  // namespace

TEST(TrvbSolver, OctahedronIsNegative) {
    auto t = octahedron_instance();
    EXPECT_FALSE(solve_trvb_bruteforce(t.graph).has_value());
    // breaking k vertices of degree 4 gives 6 + 3k vertices and 12 edges; 12 = 5 + 3k has no integer solution
    EXPECT_NE((t.graph.size() + 1) % 3, 0);
}

TEST(TrvbSolver, TreesNeedNoBreaking) {
    EXPECT_EQ(solve_trvb_bruteforce(graph_of(1, {})), VertexSet{0});
    EXPECT_EQ(solve_trvb_bruteforce(graph_of(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}})), VertexSet{0});
    EXPECT_EQ(solve_trvb_bruteforce(graph_of(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})), VertexSet{0});
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 2 + trial % 12;
        std::vector<std::pair<int, int>> e;
        for (int v = 1; v < n; ++v) e.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
        EXPECT_EQ(solve_trvb_bruteforce(graph_of(n, e)), VertexSet{0});
    }
}

TEST(TrvbSolver, CycleNeedsOneBreak) {
    auto s = solve_trvb_bruteforce(graph_of(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
    ASSERT_TRUE(s);
    EXPECT_EQ(popcount(*s), 1);
}

TEST(TrvbSolver, SquareOfFiveCycleIsNegative) {
    // C5 squared is K5; the count forces two broken vertices and the other three span a triangle
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, (i + 2) % 5);
    }
    auto g = graph_of(5, e);
    EXPECT_EQ(g.edges().size(), 10u);
    EXPECT_FALSE(solve_trvb_bruteforce(g).has_value());
}

TEST(TrvbSolver, DisconnectedGraphIsNegative) {
    EXPECT_FALSE(solve_trvb_bruteforce(graph_of(4, {{0, 1}, {2, 3}})).has_value());
}

TEST(TrvbSolver, CheckerAgreesWithExplicitBreaking) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 3 + trial % 6;
        std::vector<std::pair<int, int>> e;
        for (int v = 1; v < n; ++v) e.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (std::uniform_int_distribution<int>(0, 3)(rng) == 0 &&
                    std::find(e.begin(), e.end(), std::pair{a, b}) == e.end())
                    e.emplace_back(a, b);
        auto g = graph_of(n, e);
        for (VertexSet s = 0; s < bit(n); ++s) ASSERT_EQ(is_trvb_solution(g, s), breaks_into_tree(g, s));
    }
}

TEST(TrvbSolver, BruteForceLimit) {
    std::vector<std::pair<int, int>> e;
    for (int v = 1; v < 31; ++v) e.emplace_back(v - 1, v);
    EXPECT_THROW(solve_trvb_bruteforce(graph_of(31, e)), InvalidInput);
}

TEST(TrvbInstances, RejectsInvalidInstances) {
    auto cube = load_skeleton("cube.json");
    std::vector<std::pair<int, int>> e;
    for (int u = 0; u < cube.num_vertices(); ++u)
        for (int v : cube.neighbors(u))
            if (u < v) e.emplace_back(u, v);
    EXPECT_THROW(instance_from_graph(graph_of(8, e)), InvalidInput);

    auto t = octahedron_instance();
    std::swap(t.rotation[0][0], t.rotation[0][1]);
    EXPECT_THROW(validate_instance(t), InvalidInput);

    t = octahedron_instance();
    t.rotation[0][0] = t.rotation[0][1];
    EXPECT_THROW(validate_instance(t), InvalidInput);

    std::vector<std::pair<int, int>> two;
    for (int base : {0, 6})
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                if (b != (a ^ 1)) two.emplace_back(base + a, base + b);
    EXPECT_THROW(instance_from_graph(graph_of(12, two)), InvalidInput);
}

TEST(TrvbInstances, MedialGraphs) {
    auto tet = medial_instance(load_skeleton("tetrahedron.json"));
    EXPECT_EQ(tet.graph.size(), 6);
    EXPECT_EQ(tet.graph.edges().size(), 12u);
    EXPECT_FALSE(solve_trvb_bruteforce(tet.graph));
    auto cube = medial_instance(load_skeleton("cube.json"));
    EXPECT_EQ(cube.graph.size(), 12);
    EXPECT_EQ(trace_faces(cube.rotation).size(), 14u);
}

TEST(TrvbInstances, CatalogAnswersRespectTheCount) {
    int yes = 0;
    for (auto& [name, t] : small_catalog()) {
        auto s = solve_trvb_bruteforce(t.graph);
        if ((t.graph.size() + 1) % 3 != 0) {
            EXPECT_FALSE(s) << name;
        }
        if (s) {
            ++yes;
            EXPECT_EQ(popcount(*s) * 3, t.graph.size() + 1) << name;
            EXPECT_TRUE(breaks_into_tree(t.graph, *s)) << name;
        }
    }
    EXPECT_GE(yes, 1);
    EXPECT_EQ(yes_instance().graph.size(), 11);
}

TEST(TrvbReduce, OctahedronIsCubicPlanarThreeConnected) {
    const auto& r = octahedron_reduction();
    auto st = check_structure(r.skeleton);
    EXPECT_TRUE(st.cubic);
    EXPECT_TRUE(st.planar);
    EXPECT_TRUE(st.three_connected);
    EXPECT_TRUE(r.skeleton.is_simple(3));
    // 30 per vertex, 10 per edge, 2e - 2 tree nodes per face
    EXPECT_EQ(r.skeleton.num_vertices(), 30 * 6 + 14 * 12 - 2 * 8);
    EXPECT_EQ(r.skeleton.num_facets(), 8 * 6 + 10 * 12);
}

TEST(TrvbReduce, RejectsNonRegularInput) {
    TrvbInstance t{graph_of(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), {{1, 3}, {0, 2}, {1, 3}, {0, 2}}};
    EXPECT_THROW(reduce_trvb(t), InvalidInput);
}

TEST(TrvbReduce, EachInstanceFaceGivesTwiceItsLength) {
    const auto& r = octahedron_reduction();
    ASSERT_EQ(r.layout.faces.size(), 8u);
    for (int f = 0; f < 8; ++f) {
        EXPECT_EQ(r.layout.faces[f].boundary, 3);
        EXPECT_EQ(r.layout.faces[f].stubs.size(), 6u);
        EXPECT_EQ(facets_of_face(r, f).size(), 6u);
    }
}

TEST(TrvbReduce, EdgeGadgetFaceInventory) {
    const auto& r = octahedron_reduction();
    const auto& s = r.skeleton;
    for (const auto& e : r.layout.edges) {
        std::multiset<std::size_t> sizes;
        std::set<int> spine;
        for (int v : {e.su, e.sv})
            for (int f : s.facets_of(v)) spine.insert(f);
        for (int f : spine) sizes.insert(s.facet(f).size());
        EXPECT_EQ(sizes, (std::multiset<std::size_t>{5, 5, 7, 7}));
        for (const auto& sq : {e.k, e.m}) {
            std::vector<int> want(sq.begin(), sq.end());
            std::sort(want.begin(), want.end());
            int hits = 0;
            for (int f = 0; f < s.num_facets(); ++f) hits += s.facet(f) == want;
            EXPECT_EQ(hits, 1);
        }
    }
}

TEST(TrvbReduce, VertexGadgetEnclosesSixVerticesThirteenEdgesEightFaces) {
    const auto& r = octahedron_reduction();
    const auto& s = r.skeleton;
    for (const auto& g : r.layout.vertices) {
        std::set<int> inner(g.center.begin(), g.center.end());
        std::set<std::pair<int, int>> edges;
        std::set<int> faces;
        for (int v : inner) {
            for (int w : s.neighbors(v)) edges.insert(std::minmax(v, w));
            for (int f : s.facets_of(v)) faces.insert(f);
        }
        EXPECT_EQ(inner.size(), 6u);
        EXPECT_EQ(edges.size(), 13u);
        EXPECT_EQ(faces.size(), 8u);
    }
}

TEST(TrvbReduce, UnbrokenVerticesGiveOneLoopPerFace) {
    // with nothing broken the cycle edges trace one loop per instance face
    const auto& r = octahedron_reduction();
    EXPECT_EQ(count_cycles(solution_edges(r, 0)), 8);
    EXPECT_THROW(translate_solution(r, 0), InvalidInput);
}

TEST(TrvbTranslate, YesInstanceCycleVerifies) {
    for (auto shape : {FaceTreeShape::balanced, FaceTreeShape::caterpillar}) {
        auto r = reduce_trvb(yes_instance(), shape);
        EXPECT_TRUE(check_structure(r.skeleton).ok());
        auto broken = *solve_trvb_bruteforce(r.instance.graph);
        auto w = translate_solution(r, broken);
        auto rep = verify_walk(r.skeleton, w);
        EXPECT_TRUE(rep.is_facet_hamiltonian);
        EXPECT_EQ(w.length(), static_cast<int>(solution_edges(r, broken).size()));
    }
}

TEST(TrvbTranslate, ShapeDoesNotChangeCounts) {
    auto a = reduce_trvb(yes_instance(), FaceTreeShape::balanced);
    auto b = reduce_trvb(yes_instance(), FaceTreeShape::caterpillar);
    EXPECT_EQ(a.skeleton.num_vertices(), b.skeleton.num_vertices());
    EXPECT_EQ(a.skeleton.num_facets(), b.skeleton.num_facets());
    EXPECT_TRUE(check_structure(b.skeleton).ok());
}

TEST(TrvbTranslate, EveryBreakingSetOfTheYesInstance) {
    auto r = reduce_trvb(yes_instance());
    const auto& g = r.instance.graph;
    int solutions = 0;
    for (VertexSet s = 0; s < bit(g.size()); ++s) {
        if (!is_trvb_solution(g, s)) {
            if (popcount(s) * 3 == g.size() + 1) {
                EXPECT_THROW(translate_solution(r, s), InvalidInput);
            }
            continue;
        }
        ++solutions;
        EXPECT_TRUE(verify_walk(r.skeleton, translate_solution(r, s)).is_facet_hamiltonian);
    }
    EXPECT_GE(solutions, 1);
}

TEST(TrvbTranslate, CrossGadgetsUseTwoOppositeEdges) {
    auto r = reduce_trvb(yes_instance());
    auto w = translate_solution(r, *solve_trvb_bruteforce(r.instance.graph));
    std::set<std::pair<int, int>> used;
    for (std::size_t i = 0; i < w.vertices.size(); ++i)
        used.insert(std::minmax(w.vertices[i], w.vertices[(i + 1) % w.vertices.size()]));
    const auto& s = r.skeleton;
    for (const auto& e : r.layout.edges)
        for (const auto& sq : {e.k, e.m}) {
            std::set<int> in(sq.begin(), sq.end());
            std::vector<int> touched;
            for (int q = 0; q < 4; ++q)
                for (int out : s.neighbors(sq[q]))
                    if (!in.count(out) && used.count(std::minmax(sq[q], out))) touched.push_back(q);
            ASSERT_EQ(touched.size(), 2u);
            EXPECT_EQ((touched[1] - touched[0]) % 2, 0);
        }
}

TEST(TrvbTranslate, NoInnerVertexGadgetEdge) {
    auto r = reduce_trvb(yes_instance());
    auto w = translate_solution(r, *solve_trvb_bruteforce(r.instance.graph));
    std::set<int> inner;
    for (const auto& g : r.layout.vertices) inner.insert(g.center.begin(), g.center.end());
    for (int v : w.vertices) EXPECT_FALSE(inner.count(v));
}

TEST(TrvbTranslate, SearchSpotCheck) {
    // the reduced octahedron is far beyond exhaustive search; a budgeted run must not find a cycle
    auto res = search_fh(octahedron_reduction().skeleton, SearchMode::cycle, {1'000'000, std::nullopt});
    EXPECT_NE(res.status, SearchStatus::found);
    RecordProperty("octahedron_search", to_string(res.status));
}
