#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "fhc/triangulations.hpp"
#include "fhc/verify.hpp"

using namespace fhc;
using namespace fhc::tri;

namespace {

Walk walk_a(const AssociahedronSkeleton& a, const std::vector<PolygonTriangulation>& cyc) {
    Walk w;
    w.closed = true;
    for (const auto& t : cyc) w.vertices.push_back(a.vertex(tubing_from_triangulation_a(t)));
    return w;
}

Walk walk_b(const AssociahedronSkeleton& a, const std::vector<SymmetricTriangulation>& cyc) {
    Walk w;
    w.closed = true;
    for (const auto& t : cyc) w.vertices.push_back(a.vertex(tubing_from_triangulation_b(t)));
    return w;
}

Walk walk_d(const TypeDSkeleton& d, const std::vector<PseudoTriangulationD>& cyc) {
    Walk w;
    w.closed = true;
    for (const auto& t : cyc) w.vertices.push_back(d.vertex_of.at(t));
    return w;
}

// Diagonals added along the cycle, including the closing flip.
template <class T, class F>
std::vector<Diagonal> introduced(const std::vector<T>& cyc, F diagonals) {
    std::vector<Diagonal> out;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        auto before = diagonals(cyc[i]);
        auto after = diagonals(cyc[(i + 1) % cyc.size()]);
        for (const auto& d : after)
            if (!std::binary_search(before.begin(), before.end(), d)) out.push_back(d);
    }
    return out;
}

// All full triangulations of the m-gon from non-crossing subsets of diagonals.
std::vector<PolygonTriangulation> all_triangulations(int m) {
    std::vector<Diagonal> ds;
    for (int a = 0; a < m; ++a)
        for (int b = a + 2; b < m; ++b)
            if (b - a <= m - 2) ds.emplace_back(a, b);
    std::vector<PolygonTriangulation> out;
    for (unsigned mask = 0; mask < (1u << ds.size()); ++mask) {
        if (std::popcount(mask) != m - 3) continue;
        std::vector<Diagonal> pick;
        for (std::size_t i = 0; i < ds.size(); ++i)
            if (mask >> i & 1) pick.push_back(ds[i]);
        PolygonTriangulation t(m, pick);
        if (t.is_full()) out.push_back(t);
    }
    return out;
}

struct Pt {
    double x, y;
};

double cross3(Pt o, Pt a, Pt b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool segments_cross(Pt p1, Pt p2, Pt q1, Pt q2) {
    auto close = [](Pt a, Pt b) { return std::hypot(a.x - b.x, a.y - b.y) < 1e-9; };
    if (close(p1, q1) || close(p1, q2) || close(p2, q1) || close(p2, q2)) return false;
    double d1 = cross3(q1, q2, p1), d2 = cross3(q1, q2, p2);
    double d3 = cross3(p1, p2, q1), d4 = cross3(p1, p2, q2);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

// Corner c of the regular 2n-gon sits at angle -c*pi/n; tangents end on the disk.
std::pair<Pt, Pt> chord_segment(const Chord& c, int n, double r) {
    double pi = std::acos(-1.0);
    auto corner = [&](int k) { return Pt{std::cos(-k * pi / n), std::sin(-k * pi / n)}; };
    if (c.kind == ChordKind::diagonal) return {corner(c.corner), corner(c.other)};
    double th = -c.corner * pi / n, alpha = std::acos(r);
    double at = c.kind == ChordKind::tangent_cw ? th - alpha : th + alpha;
    return {corner(c.corner), Pt{r * std::cos(at), r * std::sin(at)}};
}

}  // namespace

TEST(TypeA, FlipFindsQuadrilateralPartner) {
    PolygonTriangulation t(5, {{0, 2}, {0, 3}});
    auto [u, fresh] = t.flip({0, 2});
    EXPECT_EQ(fresh, Diagonal(1, 3));
    EXPECT_TRUE(u.is_full());
    EXPECT_THROW(t.flip({1, 3}), ContractViolation);
}

TEST(TypeA, BistarCycleIsFacetHamiltonian) {
    for (int n = 3; n <= 7; ++n) {
        auto cyc = assoc_cycle_bistar(n);
        EXPECT_EQ(static_cast<int>(cyc.size()), (n + 2) * (n - 1) / 2) << n;
        auto a = skeleton_from_graph_associahedron(graphs::path(n));
        auto r = verify_walk(a.skeleton, walk_a(a, cyc));
        EXPECT_TRUE(r.is_facet_hamiltonian) << n << " " << r.problem;
        auto in = introduced(cyc, [](const PolygonTriangulation& t) { return t.diagonals; });
        EXPECT_EQ(std::set<Diagonal>(in.begin(), in.end()).size(), in.size());
    }
}

TEST(TypeA, BistarAnchorsForHexagonPlusTwo) {
    // S_i: corner labels 1..n+2 with diagonals {i,k} for k >= i+2 and {k,n+2} for k <= i
    int n = 6;
    auto cyc = assoc_cycle_bistar(n);
    std::set<PolygonTriangulation> seen(cyc.begin(), cyc.end());
    for (int i = 1; i <= n; ++i) {
        std::vector<Diagonal> ds;
        for (int k = i + 2; k <= n + 2; ++k)
            if (!(i == 1 && k == n + 2)) ds.emplace_back(i - 1, k - 1);
        for (int k = 2; k <= i; ++k) ds.emplace_back(k - 1, n + 1);
        PolygonTriangulation s(n + 2, ds);
        ASSERT_TRUE(s.is_full()) << i;
        EXPECT_TRUE(seen.count(s)) << i;
    }
    EXPECT_EQ(cyc.front().diagonals.front(), Diagonal(0, 2));
}

TEST(TypeA, ParallelBlocks) {
    EXPECT_EQ(parallel_block_sizes(4), (std::vector<int>{2, 1, 2, 1, 2, 1}));
    EXPECT_EQ(parallel_block_sizes(5), std::vector<int>(7, 2));
    EXPECT_EQ(parallel_block_sizes(7), std::vector<int>(9, 3));
    for (int n = 3; n <= 7; ++n) {
        auto a = skeleton_from_graph_associahedron(graphs::path(n));
        for (int s = 0; s < 2; ++s) {
            auto cyc = assoc_cycle_parallel(n, s);
            EXPECT_EQ(static_cast<int>(cyc.size()), (n + 2) * (n - 1) / 2);
            EXPECT_TRUE(verify_walk(a.skeleton, walk_a(a, cyc)).is_facet_hamiltonian) << n << " start " << s;
        }
    }
}

TEST(TypeA, BothStrategiesVisitTheSameFacets) {
    auto key = [](const PolygonTriangulation& t) { return t.diagonals; };
    auto x = introduced(assoc_cycle_bistar(3), key), y = introduced(assoc_cycle_parallel(3), key);
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    EXPECT_EQ(x, y);
    EXPECT_EQ(x.size(), 5u);
}

TEST(TypeA, ParallelBlockReorderingStaysValid) {
    std::mt19937 rng(7);
    for (int n : {4, 5, 6}) {
        int m = n + 2;
        auto a = skeleton_from_graph_associahedron(graphs::path(n));
        for (int trial = 0; trial < 5; ++trial) {
            int shuffled = static_cast<int>(rng() % m);
            PolygonTriangulation t = tri::detail::zigzag(m, 0);
            std::vector<PolygonTriangulation> cyc{t};
            for (int s = 0; s < m; ++s) {
                auto cls = tri::detail::slope_class(m, s);
                if (s == shuffled) std::shuffle(cls.begin(), cls.end(), rng);
                for (const auto& d : cls) {
                    t = t.flip(d).first;
                    cyc.push_back(t);
                }
            }
            ASSERT_EQ(cyc.back(), cyc.front());
            cyc.pop_back();
            EXPECT_TRUE(verify_walk(a.skeleton, walk_a(a, cyc)).is_facet_hamiltonian) << n << " block " << shuffled;
        }
    }
}

TEST(TypeB, CyclesAreFacetHamiltonian) {
    for (int n = 3; n <= 6; ++n) {
        auto a = skeleton_from_graph_associahedron(graphs::cycle(n));
        for (auto st : {Strategy::bistar, Strategy::parallel}) {
            auto cyc = cyclo_cycle(n, st);
            EXPECT_EQ(static_cast<int>(cyc.size()), n * (n - 1));
            for (const auto& t : cyc) EXPECT_TRUE(t.is_symmetric());
            auto r = verify_walk(a.skeleton, walk_b(a, cyc));
            EXPECT_TRUE(r.is_facet_hamiltonian) << n << " " << static_cast<int>(st) << " " << r.problem;
        }
    }
}

TEST(TypeB, LongDiagonalFlipsAlone) {
    auto cyc = cyclo_cycle(3, Strategy::parallel);
    int singles = 0;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
        const auto& x = cyc[i].full.diagonals;
        const auto& y = cyc[(i + 1) % cyc.size()].full.diagonals;
        std::vector<Diagonal> gone;
        std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(gone));
        ASSERT_TRUE(gone.size() == 1 || gone.size() == 2);
        if (gone.size() == 1) {
            ++singles;
            EXPECT_TRUE(SymmetricTriangulation::is_long(gone[0], 3));
        }
    }
    EXPECT_EQ(singles, 3);
}

TEST(TypeB, ParallelBlockReorderingStaysValid) {
    std::mt19937 rng(11);
    int n = 5, m = 10;
    auto a = skeleton_from_graph_associahedron(graphs::cycle(n));
    for (int shuffled = 0; shuffled < m; ++shuffled) {
        SymmetricTriangulation t{n, tri::detail::zigzag(m, 0)};
        std::vector<SymmetricTriangulation> cyc{t};
        for (int s = 0; s < m; ++s) {
            std::vector<Diagonal> reps;
            for (const auto& d : tri::detail::slope_class(m, s)) {
                auto r = SymmetricTriangulation::rep(d, n);
                if (std::find(reps.begin(), reps.end(), r) == reps.end()) reps.push_back(r);
            }
            if (s == shuffled) std::shuffle(reps.begin(), reps.end(), rng);
            for (const auto& d : reps) {
                t = t.flip(d).first;
                cyc.push_back(t);
            }
        }
        ASSERT_EQ(cyc.back(), cyc.front());
        cyc.pop_back();
        EXPECT_TRUE(verify_walk(a.skeleton, walk_b(a, cyc)).is_facet_hamiltonian) << shuffled;
    }
}

TEST(TypeD, CrossingTableMatchesGeometry) {
    for (int n = 3; n <= 7; ++n) {
        auto cs = all_chords(n);
        for (const auto& x : cs)
            for (const auto& y : cs) {
                if (x == y) continue;
                auto [p1, p2] = chord_segment(x, n, 0.02);
                auto [q1, q2] = chord_segment(y, n, 0.02);
                EXPECT_EQ(chords_cross(x, y, n), segments_cross(p1, p2, q1, q2))
                    << n << ": " << chord_name(x) << " / " << chord_name(y);
            }
    }
}

TEST(TypeD, FlipGraphCounts) {
    std::map<int, int> clusters{{3, 14}, {4, 50}, {5, 182}};
    for (auto [n, count] : clusters) {
        auto d = skeleton_type_d(n);
        EXPECT_EQ(d.skeleton.num_vertices(), count) << n;
        EXPECT_EQ(d.skeleton.num_facets(), n * n);
        EXPECT_TRUE(d.skeleton.is_simple(n)) << n;
        EXPECT_TRUE(d.skeleton.is_connected());
        for (const auto& t : d.vertices) EXPECT_TRUE(t.is_valid());
    }
}

TEST(TypeD, ZigzagHasFourTangents) {
    for (int n = 3; n <= 6; ++n) {
        auto z = zigzag_d(n);
        EXPECT_TRUE(z.is_valid());
        int tangents = 0;
        for (const auto& c : z.chords()) tangents += c.kind != ChordKind::diagonal;
        EXPECT_EQ(tangents, 4);
    }
}

TEST(TypeD, CycleIsFacetHamiltonian) {
    for (int n = 3; n <= 5; ++n) {
        std::vector<std::vector<BlockStep>> blocks;
        auto cyc = assocD_cycle(n, &blocks);
        EXPECT_EQ(static_cast<int>(cyc.size()), n * n);
        ASSERT_EQ(static_cast<int>(blocks.size()), n);
        std::set<Chord> fresh;
        for (const auto& b : blocks) {
            EXPECT_EQ(static_cast<int>(b.size()), n);
            for (const auto& s : b) fresh.insert(s.introduced);
        }
        EXPECT_EQ(static_cast<int>(fresh.size()), n * n);
        auto d = skeleton_type_d(n);
        auto r = verify_walk(d.skeleton, walk_d(d, cyc));
        EXPECT_TRUE(r.is_facet_hamiltonian) << n << " " << r.problem;
    }
}

TEST(TypeD, BlocksRotateByOneCorner) {
    int n = 4;
    auto cyc = assocD_cycle(n);
    for (int i = 0; i < n; ++i) EXPECT_EQ(cyc[i * n], zigzag_d(n).rotated(i)) << i;
    // two steps of each block involve tangents
    std::vector<std::vector<BlockStep>> blocks;
    assocD_cycle(n, &blocks);
    for (const auto& b : blocks) {
        int touching = 0;
        for (const auto& s : b)
            touching += s.removed.kind != ChordKind::diagonal || s.introduced.kind != ChordKind::diagonal;
        EXPECT_GE(touching, 2);
    }
}

TEST(Bijection, HeptagonDiagonal) {
    EXPECT_EQ(tube_of_diagonal_a({0, 4}), graphs::path(5).set_of({"1", "2", "3"}));
    EXPECT_EQ(diagonal_of_tube_a(graphs::path(5).set_of({"1", "2", "3"})), Diagonal(0, 4));
}

TEST(Bijection, CyclohedronTube) {
    for (int n = 4; n <= 7; ++n) {
        auto g = graphs::cycle(n);
        Diagonal d = diagonal_of_tube_b(g.set_of({"1", "2", "3"}), n);
        // corners labeled n and 4
        EXPECT_EQ(d, Diagonal(3, 2 * n - 1)) << n;
        EXPECT_EQ(tube_of_diagonal_b(d, n), g.set_of({"1", "2", "3"}));
        EXPECT_EQ(tube_of_diagonal_b(SymmetricTriangulation::mirror(d, n), n), g.set_of({"1", "2", "3"}));
    }
    // a long diagonal misses exactly the label of its endpoints
    EXPECT_EQ(tube_of_diagonal_b({1, 5}, 4), graphs::cycle(4).set_of({"1", "3", "4"}));
}

TEST(Bijection, HexagonRoundTrip) {
    auto tris = all_triangulations(6);
    ASSERT_EQ(tris.size(), 14u);
    auto g = graphs::path(4);
    std::set<Tubing> image;
    for (const auto& t : tris) {
        auto tub = tubing_from_triangulation_a(t);
        EXPECT_TRUE(is_maximal_tubing(g, tub));
        EXPECT_EQ(triangulation_from_tubing_a(4, tub), t);
        image.insert(tub);
        for (const auto& d : t.diagonals) {
            auto [u, fresh] = t.flip(d);
            auto [v, tube] = flip(g, tub, tube_of_diagonal_a(d));
            EXPECT_EQ(tubing_from_triangulation_a(u), v);
            EXPECT_EQ(tube, tube_of_diagonal_a(fresh));
        }
    }
    auto all = enumerate_maximal_tubings(g);
    EXPECT_EQ(image, std::set<Tubing>(all.begin(), all.end()));
}

TEST(Bijection, CyclohedronRoundTrip) {
    for (int n = 3; n <= 5; ++n) {
        auto g = graphs::cycle(n);
        for (const auto& tub : enumerate_maximal_tubings(g)) {
            auto t = triangulation_from_tubing_b(n, tub);
            EXPECT_TRUE(t.is_symmetric());
            EXPECT_EQ(tubing_from_triangulation_b(t), tub);
        }
    }
}

TEST(Bijection, PartialTriangulationRejected) {
    EXPECT_THROW(tubing_from_triangulation_a(PolygonTriangulation(6, {{0, 2}})), InvalidInput);
    SymmetricTriangulation partial{3, PolygonTriangulation(6, {{0, 3}})};
    EXPECT_THROW(tubing_from_triangulation_b(partial), InvalidInput);
}

TEST(Constructions, RejectSmallN) {
    EXPECT_THROW(assoc_cycle_bistar(2), InvalidInput);
    EXPECT_THROW(assoc_cycle_parallel(2), InvalidInput);
    EXPECT_THROW(cyclo_cycle(2, Strategy::bistar), InvalidInput);
    EXPECT_THROW(assocD_cycle(2), InvalidInput);
}
