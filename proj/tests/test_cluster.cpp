#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fhc/cluster.hpp"
#include "fhc/triangulations.hpp"

using namespace fhc;
using namespace fhc::cluster;

namespace {

// x_i with 1-based i in the rank-4 ring
LaurentPoly x(int i, int n = 4) { return LaurentPoly::variable(n, i - 1); }
LaurentPoly inv(int i, int n = 4) { return LaurentPoly::variable(n, i - 1, -1); }
LaurentPoly c(int v, int n = 4) { return LaurentPoly::constant(n, v); }

ExchangeMatrix random_skew_symmetrizable(std::mt19937& rng, int n) {
    std::vector<int> d(n);
    for (auto& v : d) v = 1 + static_cast<int>(rng() % 3);
    ExchangeMatrix b(n, std::vector<int>(n, 0));
    // b_ij = s_ij d_j with s skew-symmetric gives d_i b_ij = -d_j b_ji after scaling
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int s = static_cast<int>(rng() % 5) - 2;
            b[i][j] = s * d[j];
            b[j][i] = -s * d[i];
        }
    return b;
}

const std::vector<DynkinSeedSpec>& finite_types() {
    static const std::vector<DynkinSeedSpec> types = {
        {DynkinType::A, 1}, {DynkinType::A, 2}, {DynkinType::A, 3}, {DynkinType::A, 4}, {DynkinType::A, 5},
        {DynkinType::A, 6}, {DynkinType::B, 2}, {DynkinType::B, 3}, {DynkinType::B, 4}, {DynkinType::C, 3},
        {DynkinType::C, 4}, {DynkinType::D, 4}, {DynkinType::D, 5}, {DynkinType::D, 6}, {DynkinType::E, 6},
        {DynkinType::E, 7}, {DynkinType::E, 8}, {DynkinType::F, 4}, {DynkinType::G, 2}};
    return types;
}

}  // namespace

TEST(Laurent, ArithmeticAndDivision) {
    auto p = (c(1) + x(2)) * inv(1);
    EXPECT_EQ(p.to_string(), "(x2 + 1)/x1");
    auto q = p * (x(3) + c(2));
    auto back = q.divide(x(3) + c(2));
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, p);
    EXPECT_FALSE((x(1) + c(1)).divide(x(1) + c(2)));
    EXPECT_FALSE(c(3).divide(c(2)));
    EXPECT_EQ(*(x(1) * x(2)).divide(inv(3)), x(1) * x(2) * x(3));
    EXPECT_EQ(p.evaluate({1, 1, 1, 1}), Rational(2));
}

TEST(Matrix, A2FlipsSign) {
    EXPECT_EQ(mutate_matrix({{0, 1}, {-1, 0}}, 0), (ExchangeMatrix{{0, -1}, {1, 0}}));
    EXPECT_THROW(mutate_matrix({{0, 1}, {-1, 0}}, 2), InvalidInput);
}

TEST(Matrix, ThreeVertexQuiver) {
    // 0 -> 1 -> 2, mutate at 1
    ExchangeMatrix b = {{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}};
    auto m = mutate_matrix(b, 1);
    EXPECT_EQ(m[0][2], 1);
    EXPECT_EQ(m[1][0], 1);
    EXPECT_EQ(m[2][1], 1);
    EXPECT_EQ(m[0][1], -1);
}

TEST(Matrix, MutationIsAnInvolution) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        auto b = random_skew_symmetrizable(rng, n);
        ASSERT_TRUE(skew_symmetrizer(b));
        int k = static_cast<int>(rng() % n);
        auto m = mutate_matrix(b, k);
        EXPECT_TRUE(skew_symmetrizer(m));
        EXPECT_EQ(mutate_matrix(m, k), b);
    }
    EXPECT_FALSE(skew_symmetrizer({{0, 1}, {1, 0}}));
}

TEST(Seed, MutationFormulaAndInvolution) {
    Seed s = initial_seed({{0, 1}, {-1, 0}});
    auto t = mutate_seed(s, 0);
    EXPECT_EQ(t.variables[0], (LaurentPoly::one(2) + LaurentPoly::variable(2, 1)) * LaurentPoly::variable(2, 0, -1));
    EXPECT_EQ(mutate_seed(t, 0), s);
    std::mt19937 rng(5);
    for (const auto& spec : finite_types()) {
        if (spec.rank > 6) continue;
        Seed cur = dynkin_seed(spec);
        for (int step = 0; step < 10; ++step) {
            int k = static_cast<int>(rng() % spec.rank);
            Seed next = mutate_seed(cur, k);
            EXPECT_EQ(mutate_seed(next, k), cur) << type_name(spec);
            cur = next;
        }
    }
}

TEST(Seed, NonLaurentStartIsReported) {
    Seed s = initial_seed({{0, 1}, {-1, 0}});
    s.variables[0] = LaurentPoly::variable(2, 0) + LaurentPoly::one(2);
    EXPECT_THROW(mutate_seed(s, 0), LaurentViolation);
}

TEST(Dynkin, MatricesAndSymmetrizers) {
    EXPECT_EQ(dynkin_seed({DynkinType::A, 4}).matrix,
              (ExchangeMatrix{{0, -1, 0, 0}, {1, 0, 1, 0}, {0, -1, 0, -1}, {0, 0, 1, 0}}));
    auto b2 = dynkin_seed({DynkinType::B, 2}).matrix;
    EXPECT_EQ(std::abs(b2[0][1] * b2[1][0]), 2);
    auto g2 = dynkin_seed({DynkinType::G, 2}).matrix;
    EXPECT_EQ(std::abs(g2[0][1] * g2[1][0]), 3);
    for (const auto& spec : finite_types()) {
        auto b = dynkin_seed(spec).matrix;
        EXPECT_TRUE(skew_symmetrizer(b)) << type_name(spec);
        EXPECT_TRUE(bipartite_signs(b)) << type_name(spec);
    }
    EXPECT_THROW(dynkin_seed({DynkinType::E, 9}), InvalidInput);
    EXPECT_THROW(dynkin_seed({DynkinType::G, 3}), InvalidInput);
    EXPECT_EQ(type_name(parse_type("e7")), "E7");
}

TEST(Belt, A4MatchesTable) {
    auto belt = bipartite_belt({DynkinType::A, 4}, 7);
    auto at = [&](int m, int row) { return belt.seeds[m].variables[row - 1]; };
    EXPECT_EQ(at(1, 1), (c(1) + x(2)) * inv(1));
    EXPECT_EQ(at(1, 3), (x(2) * x(4) + c(1)) * inv(3));
    EXPECT_EQ(at(2, 2),
              (x(2) * x(2) * x(4) + x(1) * x(3) + x(2) * x(4) + x(2) + c(1)) * inv(1) * inv(2) * inv(3));
    EXPECT_EQ(at(2, 4), (x(2) * x(4) + x(3) + c(1)) * inv(3) * inv(4));
    EXPECT_EQ(at(3, 1), (x(1) * x(3) + x(2) * x(4) + c(1)) * inv(2) * inv(3));
    EXPECT_EQ(at(3, 3), (x(1) * x(3) * x(3) + x(2) * x(2) * x(4) + x(1) * x(3) + x(2) * x(3) + x(2) * x(4) + x(2) +
                         x(3) + c(1)) *
                            inv(1) * inv(2) * inv(3) * inv(4));
    EXPECT_EQ(at(4, 2), (x(1) * x(3) * x(3) + x(1) * x(3) + x(2) * x(4) + x(3) + c(1)) * inv(2) * inv(3) * inv(4));
    EXPECT_EQ(at(4, 4), (x(1) * x(3) + x(2) + c(1)) * inv(1) * inv(2));
    EXPECT_EQ(at(5, 1), (x(3) + c(1)) * inv(4));
    EXPECT_EQ(at(5, 3), (x(1) * x(3) + c(1)) * inv(2));
    EXPECT_EQ(at(6, 2), x(3));
    EXPECT_EQ(at(6, 4), x(1));
    EXPECT_EQ(at(7, 1), x(4));
    EXPECT_EQ(at(7, 3), x(2));
    EXPECT_EQ(belt.changed[1], (std::vector<int>{0, 2}));
    EXPECT_EQ(belt.changed[2], (std::vector<int>{1, 3}));
}

TEST(Belt, ExchangeRelationHoldsOnEveryDiamond) {
    for (const auto& spec : finite_types()) {
        if (spec.rank > 6) continue;
        int h = coxeter_number(spec);
        auto belt = bipartite_belt(spec, 2 * (h + 2));
        auto b = belt.seeds[0].matrix;
        int n = spec.rank;
        for (int m = 1; m + 1 < static_cast<int>(belt.seeds.size()); ++m)
            for (int j : belt.changed[m + 1]) {
                LaurentPoly rhs = LaurentPoly::one(n);
                for (int i = 0; i < n; ++i)
                    if (b[i][j] != 0) rhs = rhs * belt.seeds[m].variables[i].pow(std::abs(b[i][j]));
                EXPECT_EQ(belt.seeds[m - 1].variables[j] * belt.seeds[m + 1].variables[j], rhs + LaurentPoly::one(n))
                    << type_name(spec) << " m=" << m;
            }
    }
}

TEST(Belt, PeriodDividesTwiceCoxeterPlusFour) {
    for (const auto& spec : finite_types()) {
        if (spec.type == DynkinType::E && spec.rank == 8) continue;
        int h = coxeter_number(spec);
        auto belt = bipartite_belt(spec, 2 * (h + 2));
        auto p = belt_period(belt);
        ASSERT_TRUE(p) << type_name(spec);
        EXPECT_EQ(2 * (h + 2) % *p, 0) << type_name(spec) << " period " << *p;
    }
    auto a2 = bipartite_belt({DynkinType::A, 2}, 10);
    EXPECT_EQ(belt_period(a2), 10);
}

TEST(Belt, E8IsLaurentThroughOnePeriod) {
    auto spec = DynkinSeedSpec{DynkinType::E, 8};
    // the belt closes after h + 2 steps, which divides 2(h + 2)
    auto belt = bipartite_belt(spec, coxeter_number(spec) + 2);
    auto p = belt_period(belt);
    ASSERT_TRUE(p);
    EXPECT_EQ(2 * (coxeter_number(spec) + 2) % *p, 0);
    auto vars = distinct_cluster_variables(belt);
    EXPECT_TRUE(vars.complete);
    EXPECT_EQ(static_cast<int>(vars.variables.size()), 128);
}

TEST(Belt, DistinctVariableCounts) {
    for (const auto& spec : finite_types()) {
        if (spec.type == DynkinType::E && spec.rank == 8) continue;
        auto belt = bipartite_belt(spec, 2 * (coxeter_number(spec) + 2));
        auto vars = distinct_cluster_variables(belt);
        EXPECT_TRUE(vars.complete);
        EXPECT_EQ(static_cast<int>(vars.variables.size()), cluster_variable_count(spec)) << type_name(spec);
    }
    auto short_belt = bipartite_belt({DynkinType::A, 4}, 3);
    EXPECT_FALSE(distinct_cluster_variables(short_belt).complete);
}

TEST(Belt, CountsMatchTriangulationModels) {
    for (int r = 1; r <= 5; ++r) {
        auto vars = distinct_cluster_variables(bipartite_belt({DynkinType::A, r}, 2 * (r + 3)));
        int n = r + 1;  // path with n vertices
        int diagonals = (n + 2) * (n - 1) / 2;
        if (n >= 3) {
            EXPECT_EQ(static_cast<int>(tri::assoc_cycle_parallel(n).size()), diagonals);
        }
        EXPECT_EQ(static_cast<int>(vars.variables.size()), diagonals) << r;
    }
    for (int r = 2; r <= 5; ++r) {
        auto vars = distinct_cluster_variables(bipartite_belt({DynkinType::B, r}, 4 * (r + 1)));
        EXPECT_EQ(vars.variables.size(), tri::cyclo_cycle(r + 1, tri::Strategy::parallel).size()) << r;
    }
    for (int r = 3; r <= 5; ++r) {
        auto vars = distinct_cluster_variables(bipartite_belt({DynkinType::D, r}, 4 * r));
        EXPECT_EQ(static_cast<int>(vars.variables.size()), tri::skeleton_type_d(r).skeleton.num_facets()) << r;
    }
}

TEST(Belt, OrderWithinAHalfStepDoesNotMatter) {
    for (const auto& spec : finite_types()) {
        if (spec.rank > 6) continue;
        Seed s = dynkin_seed(spec);
        auto eps = *bipartite_signs(s.matrix);
        for (int sign : {-1, 1}) {
            auto dirs = side(eps, sign);
            Seed fwd = s, rev = s;
            for (int k : dirs) fwd = mutate_seed(fwd, k);
            for (auto it = dirs.rbegin(); it != dirs.rend(); ++it) rev = mutate_seed(rev, *it);
            EXPECT_EQ(fwd, rev) << type_name(spec);
        }
    }
}

TEST(Frieze, A4AllOnes) {
    auto f = evaluate_frieze({DynkinType::A, 4}, 7);
    EXPECT_EQ(frieze_text(f),
              " 1   2   3   2   1\n"
              "   1   5   5   1\n"
              " 1   2   8   2   1\n"
              "   1   3   3   1\n");
}

TEST(Frieze, UnimodularDiamondsInTypeA) {
    for (int r = 1; r <= 6; ++r) {
        auto f = evaluate_frieze({DynkinType::A, r}, 2 * (r + 3));
        for (std::size_t col = 1; col + 1 < f.values.size(); ++col)
            for (int j = 0; j < r; ++j) {
                if (!f.values[col - 1][j]) continue;
                Rational a = *f.values[col - 1][j], d = *f.values[col + 1][j];
                Rational b = j > 0 ? *f.values[col][j - 1] : Rational(1);
                Rational cc = j + 1 < r ? *f.values[col][j + 1] : Rational(1);
                EXPECT_EQ(a * d - b * cc, 1) << r;
            }
    }
}

TEST(Frieze, A2PeriodAndValues) {
    auto f = evaluate_frieze({DynkinType::A, 2}, 10);
    std::vector<Rational> seq;
    for (std::size_t col = 0; col < f.values.size(); ++col)
        for (const auto& v : f.values[col])
            if (v) seq.push_back(*v);
    // x1, x2, then 2, 3, 2, 1, 1, 2, ...
    EXPECT_EQ(seq[2], 2);
    EXPECT_EQ(seq[3], 3);
    for (std::size_t i = 0; i + 5 < seq.size(); ++i) EXPECT_EQ(seq[i], seq[i + 5]);
}

TEST(Frieze, AgreesWithLaurentEvaluation) {
    std::vector<Rational> at = {Rational(2), Rational(1, 3), Rational(-5), Rational(7, 2)};
    auto f = evaluate_frieze({DynkinType::D, 4}, at, 8);
    auto belt = bipartite_belt({DynkinType::D, 4}, 8);
    for (int m = 0; m <= 8; ++m)
        for (int j = 0; j < 4; ++j)
            if (f.values[m + 1][j]) {
                EXPECT_EQ(*f.values[m + 1][j], belt.seeds[m].variables[j].evaluate(at));
            }
}

TEST(Frieze, ZeroDenominatorIsReported) {
    // A2 with x1 = 1, x2 = -1 gives (1 + x2)/x1 = 0, and the next step divides by it
    EXPECT_THROW(evaluate_frieze({DynkinType::A, 2}, {Rational(1), Rational(-1)}, 6), InvalidInput);
    EXPECT_THROW(evaluate_frieze({DynkinType::A, 2}, {Rational(0), Rational(1)}, 2), InvalidInput);
}

TEST(BeltCycle, FacetHamiltonianOnClusterComplex) {
    std::map<std::string, int> clusters{{"A2", 5}, {"A3", 14}, {"A4", 42}, {"B3", 20}, {"C3", 20}, {"D3", 14}, {"D4", 50}, {"D5", 182}, {"G2", 8}};
    for (const auto& [name, count] : clusters) {
        auto spec = parse_type(name);
        auto cc = cluster_complex(spec);
        EXPECT_EQ(static_cast<int>(cc.clusters.size()), count) << name;
        EXPECT_EQ(static_cast<int>(cc.variables.size()), cluster_variable_count(spec));
        EXPECT_TRUE(cc.skeleton.is_simple(spec.rank));
        auto cyc = extract_fh_cycle_from_belt(spec);
        EXPECT_EQ(static_cast<int>(cyc.seeds.size()), cluster_variable_count(spec)) << name;
        auto r = verify_walk(cc.skeleton, belt_walk(cc, cyc));
        EXPECT_TRUE(r.is_facet_hamiltonian) << name << " " << r.problem;
    }
    EXPECT_EQ(extract_fh_cycle_from_belt(parse_type("D4")).seeds.size(), 16u);
}

// The A_r belt lives on the (r+3)-gon, whose parallel-class cycle is the one
// built for the path on r+1 vertices.
TEST(BeltCycle, TypeAFollowsTheParallelClassCycle) {
    for (int r = 2; r <= 5; ++r) {
        int m = r + 3;
        auto tb = type_a_belt_triangulations(r);
        auto a = skeleton_from_graph_associahedron(graphs::path(r + 1));
        Walk w;
        w.closed = true;
        for (const auto& t : tb.triangulations) w.vertices.push_back(a.vertex(tri::tubing_from_triangulation_a(t)));
        EXPECT_TRUE(verify_walk(a.skeleton, w).is_facet_hamiltonian) << r;
        // half steps run through the zigzags T_i = P_i u P_{i+1} with a fixed step
        ASSERT_EQ(static_cast<int>(tb.boundaries.size()), m);
        std::vector<int> which;
        for (auto at : tb.boundaries) {
            int found = -1;
            for (int s = 0; s < m; ++s)
                if (tri::detail::zigzag(m, s) == tb.triangulations[at]) found = s;
            ASSERT_GE(found, 0) << r;
            which.push_back(found);
        }
        int step = (which[1] - which[0] + m) % m;
        EXPECT_TRUE(step == 1 || step == m - 1) << r;
        for (int i = 1; i < m; ++i) EXPECT_EQ((which[i] - which[i - 1] + m) % m, step) << r;
        // every half step flips one whole slope class, as in the parallel construction
        EXPECT_EQ(tri::assoc_cycle_parallel(r + 1, which[0]).front(), tb.triangulations.front());
        for (std::size_t i = 0; i < tb.boundaries.size(); ++i) {
            std::size_t from = tb.boundaries[i];
            std::size_t to = i + 1 < tb.boundaries.size() ? tb.boundaries[i + 1] : tb.triangulations.size();
            const auto& x = tb.triangulations[from].diagonals;
            const auto& y = tb.triangulations[to % tb.triangulations.size()].diagonals;
            std::vector<tri::Diagonal> gone;
            std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(gone));
            auto cls = tri::detail::slope_class(m, gone.front().a + gone.front().b);
            std::sort(cls.begin(), cls.end());
            EXPECT_EQ(gone, cls) << r << " half step " << i;
            EXPECT_EQ(to - from, cls.size());
        }
    }
}

// Per-facet visit counts of the chord-model cycle equal those of the belt cycle.
TEST(BeltCycle, TypeDVisitsMatchChordModel) {
    auto visits = [](const FacetedSkeleton& s, const Walk& w) {
        std::vector<int> on(s.num_facets(), 0);
        for (int v : w.vertices)
            for (int f : s.facets_of(v)) ++on[f];
        std::sort(on.begin(), on.end());
        return on;
    };
    for (int n = 3; n <= 6; ++n) {
        auto spec = DynkinSeedSpec{DynkinType::D, n};
        auto cc = cluster_complex(spec);
        auto belt = belt_walk(cc, extract_fh_cycle_from_belt(spec));
        auto d = tri::skeleton_type_d(n);
        Walk chord;
        chord.closed = true;
        for (const auto& t : tri::assocD_cycle(n)) chord.vertices.push_back(d.vertex_of.at(t));
        EXPECT_EQ(visits(d.skeleton, chord), visits(cc.skeleton, belt)) << n;
    }
}
