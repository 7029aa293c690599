#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"
#include "treedepth/dp/engine.hpp"
#include "treedepth/generators.hpp"
#include "treedepth/oracle.hpp"

using namespace treedepth;
using namespace treedepth::dp;
using util::brute_equivalent;
using util::random_pd;

namespace {

PartialDecomposition pd_of(std::vector<int> parent, std::vector<Vertex> label, std::vector<int> h) {
    PartialDecomposition pd{std::move(parent), std::move(label), std::move(h), {}};
    for (Vertex v : pd.label)
        if (v >= 0) pd.boundary.push_back(v);
    std::sort(pd.boundary.begin(), pd.boundary.end());
    return pd;
}

DpTable table_of(const std::vector<PartialDecomposition>& pds) {
    DpTable t(pds.at(0).boundary);
    for (const auto& pd : pds) t.insert(pd, {});
    return t;
}

bool strict_anc(const std::vector<int>& parent, int a, int b) { return dp::detail::strict_ancestor(parent, a, b); }

// All injective maps small -> big fixing shared names and preserving the
// strict ancestor relation, by exhaustive assignment.
std::set<WitnessMap> brute_witnesses(const PartialDecomposition& big, const PartialDecomposition& small,
                                     const std::vector<Vertex>& shared) {
    auto is_shared = [&](Vertex v) { return v >= 0 && std::binary_search(shared.begin(), shared.end(), v); };
    const int ns = small.num_nodes(), nb = big.num_nodes();
    std::set<WitnessMap> out;
    WitnessMap f(static_cast<std::size_t>(ns), 0);
    std::function<void(int)> go = [&](int s) {
        if (s == ns) {
            std::set<int> img(f.begin(), f.end());
            if (static_cast<int>(img.size()) != ns) return;
            for (int a = 0; a < ns; ++a) {
                if (is_shared(small.label[a]) ? big.label[f[a]] != small.label[a] : is_shared(big.label[f[a]])) return;
                for (int b = 0; b < ns; ++b)
                    if (strict_anc(small.parent, a, b) && !strict_anc(big.parent, f[a], f[b])) return;
            }
            out.insert(f);
            return;
        }
        for (int b = 0; b < nb; ++b) {
            f[s] = b;
            go(s + 1);
        }
    };
    go(0);
    return out;
}

std::vector<std::vector<int>> all_parent_arrays(int n, int root) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(static_cast<std::size_t>(n), -1);
    std::function<void(int)> go = [&](int i) {
        if (i == n) {
            for (int v = 0; v < n; ++v) {
                int steps = 0;
                for (int x = v; x >= 0; x = p[x])
                    if (++steps > n) return;
            }
            out.push_back(p);
            return;
        }
        if (i == root) {
            go(i + 1);
            return;
        }
        for (int q = 0; q < n; ++q)
            if (q != i) {
                p[i] = q;
                go(i + 1);
            }
        p[i] = -1;
    };
    go(0);
    return out;
}

RootedGraph rooted_p3_at_end() { return {Graph(3, {{2, 0}, {0, 1}}), 2}; }

NiceTreeDecomposition nice_for(const RootedGraph& rg) {
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < rg.graph.num_vertices(); ++v)
        if (v != rg.root) rest.push_back(v);
    auto sub = induced_subgraph(rg.graph, rest);
    // rest is 0..n-2 when the root is the last vertex
    return root_and_augment(make_nice(heuristic_decomposition(sub.graph)), rg.root);
}

void expect_invariants(const DpResult& res, const NiceTreeDecomposition& nt) {
    for (int i = 0; i < nt.num_nodes(); ++i) {
        const auto x = nt.nodes[i].bag.size();
        for (const auto& e : res.tables[i].entries()) {
            EXPECT_FALSE(check_invariants(e.pd)) << *check_invariants(e.pd);
            EXPECT_EQ(e.pd.boundary, nt.nodes[i].bag);
            EXPECT_LE(e.pd.height(), res.budget);
            EXPECT_LE(static_cast<std::size_t>(e.pd.num_nodes()), x * static_cast<std::size_t>(res.budget));
        }
        EXPECT_TRUE(within_table_size_bound(res.tables[i].size(), x, res.budget));
    }
    EXPECT_EQ(res.bound_violations, 0u);
}

}  // namespace

TEST(Restrict, ChainDropsLowestNamedNode) {
    // r(3) - a(2) - b(1), boundary {a, b}; vertex ids a = 0, b = 1, r anonymous
    auto pd = pd_of({-1, 0, 1}, {-1, 0, 1}, {3, 2, 1});
    auto r = restrict_with_map(pd, {0});
    EXPECT_EQ(r.pd.num_nodes(), 2);
    EXPECT_EQ(r.pd.parent, (std::vector<int>{-1, 0}));
    EXPECT_EQ(r.pd.label, (std::vector<Vertex>{-1, 0}));
    EXPECT_EQ(r.pd.h, (std::vector<int>{3, 2}));
    EXPECT_EQ(r.to_old, (std::vector<int>{0, 1}));
}

TEST(Restrict, SameBoundaryIsIdentity) {
    gen::Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        auto pd = random_pd(rng, 8, false);
        auto r = restrict(pd, pd.boundary);
        EXPECT_EQ(r.parent, pd.parent);
        EXPECT_EQ(r.label, pd.label);
        EXPECT_EQ(r.h, pd.h);
    }
}

TEST(Restrict, BranchLeftAnonymousIsDeleted) {
    // r(3) with children a(2)-b(1) and c(1); restricting to {r, b} drops c
    auto pd = pd_of({-1, 0, 1, 0}, {9, 0, 1, 2}, {3, 2, 1, 1});
    auto r = restrict(pd, {1, 9});
    EXPECT_EQ(r.num_nodes(), 3);
    EXPECT_EQ(r.label, (std::vector<Vertex>{9, -1, 1}));
    EXPECT_FALSE(check_invariants(r));
}

TEST(Restrict, RejectsNonSubset) {
    auto pd = pd_of({-1}, {0}, {1});
    EXPECT_THROW(restrict(pd, {1}), InputError);
}

TEST(Restrict, TransitiveAndKeepsHeights) {
    gen::Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        auto pd = random_pd(rng, 9, true);
        std::vector<Vertex> mid, low;
        for (Vertex v : pd.boundary)
            if (rng.coin(2, 3)) mid.push_back(v);
        for (Vertex v : mid)
            if (rng.coin(1, 2)) low.push_back(v);
        EXPECT_EQ(canonical_key(restrict(restrict(pd, mid), low)), canonical_key(restrict(pd, low)));
        auto r = restrict_with_map(pd, mid);
        EXPECT_FALSE(check_invariants(r.pd));
        for (int z = 0; z < r.pd.num_nodes(); ++z) EXPECT_EQ(r.pd.h[z], pd.h[r.to_old[z]]);
        if (!mid.empty()) { EXPECT_EQ(r.pd.height(), pd.height()); }
    }
}

TEST(CanonicalKey, Examples) {
    auto a = pd_of({-1}, {0}, {1});
    EXPECT_EQ(canonical_key(a), canonical_key(pd_of({-1}, {0}, {1})));
    EXPECT_NE(canonical_key(a), canonical_key(pd_of({-1}, {0}, {2})));
    // r(3) over two anonymous nodes, each above one named leaf, in both orders
    auto left = pd_of({-1, 0, 0, 1, 2}, {9, -1, -1, 0, 1}, {3, 2, 2, 1, 1});
    auto right = pd_of({-1, 0, 0, 2, 1}, {9, -1, -1, 0, 1}, {3, 2, 2, 1, 1});
    EXPECT_EQ(canonical_key(left), canonical_key(right));
    // swapping which anonymous node is taller changes the class
    auto taller = pd_of({-1, 0, 0, 1, 2}, {9, -1, -1, 0, 1}, {4, 3, 2, 1, 1});
    auto taller_other = pd_of({-1, 0, 0, 1, 2}, {9, -1, -1, 0, 1}, {4, 2, 3, 1, 1});
    EXPECT_NE(canonical_key(taller), canonical_key(taller_other));
}

TEST(CanonicalKey, BoundaryIsPartOfTheKey) {
    auto a = pd_of({-1}, {0}, {1});
    auto b = a;
    b.boundary = {0};
    EXPECT_EQ(canonical_key(a), canonical_key(b));
    auto c = pd_of({-1}, {1}, {1});
    EXPECT_NE(canonical_key(a), canonical_key(c));
}

TEST(CanonicalKey, MatchesBruteIsomorphism) {
    gen::Rng rng(3);
    int equal = 0, differ = 0;
    for (int i = 0; i < 3000; ++i) {
        auto a = random_pd(rng, 7, false);
        auto b = rng.coin(1, 2) ? util::shuffled(a, rng) : util::perturbed(util::shuffled(a, rng), rng);
        bool same = brute_equivalent(a, b);
        (same ? equal : differ)++;
        EXPECT_EQ(canonical_key(a) == canonical_key(b), same);
    }
    EXPECT_GT(equal, 0);
    EXPECT_GT(differ, 0);
}

TEST(Witness, IdentityOnEqualForests) {
    auto pd = pd_of({-1, 0, 1}, {9, 0, 1}, {3, 2, 1});
    auto maps = enumerate_witnesses(pd, pd, pd.boundary);
    ASSERT_EQ(maps.size(), 1u);
    EXPECT_EQ(maps[0], (WitnessMap{0, 1, 2}));
}

TEST(Witness, SiblingsIntoChain) {
    // small: r with children a, b; big: chain r - a - b
    auto small = pd_of({-1, 0, 0}, {9, 0, 1}, {2, 1, 1});
    auto big = pd_of({-1, 0, 1}, {9, 0, 1}, {3, 2, 1});
    auto maps = enumerate_witnesses(big, small, {0, 1, 9});
    ASSERT_EQ(maps.size(), 1u);
    EXPECT_EQ(maps[0], (WitnessMap{0, 1, 2}));
    // the reverse direction breaks the ancestor relation
    EXPECT_TRUE(enumerate_witnesses(small, big, {0, 1, 9}).empty());
}

TEST(Witness, AnonymousNodeHasChoices) {
    // small: r - * - a; big: r - * - * - a
    auto small = pd_of({-1, 0, 1}, {9, -1, 0}, {3, 2, 1});
    auto big = pd_of({-1, 0, 1, 2}, {9, -1, -1, 0}, {4, 3, 2, 1});
    auto maps = enumerate_witnesses(big, small, {0, 9});
    EXPECT_EQ(maps.size(), 2u);
    EXPECT_TRUE(std::is_sorted(maps.begin(), maps.end()));
}

TEST(Witness, MatchesBruteForce) {
    gen::Rng rng(17);
    int nonempty = 0;
    for (int i = 0; i < 400; ++i) {
        auto big = random_pd(rng, 6, rng.coin(1, 2));
        PartialDecomposition small;
        if (rng.coin(1, 2)) {
            std::vector<Vertex> sub;
            for (Vertex v : big.boundary)
                if (rng.coin(1, 2)) sub.push_back(v);
            if (sub.empty()) sub.push_back(big.boundary.front());
            small = util::shuffled(restrict(big, sub), rng);
        } else {
            small = random_pd(rng, 5, rng.coin(1, 2));
        }
        std::vector<Vertex> shared;
        std::set_intersection(big.boundary.begin(), big.boundary.end(), small.boundary.begin(), small.boundary.end(),
                              std::back_inserter(shared));
        auto fast = enumerate_witnesses(big, small, shared);
        std::set<WitnessMap> as_set(fast.begin(), fast.end());
        EXPECT_EQ(as_set.size(), fast.size());
        EXPECT_EQ(as_set, brute_witnesses(big, small, shared));
        if (!fast.empty()) ++nonempty;
    }
    EXPECT_GT(nonempty, 100);
}

TEST(Witness, StopsEarly) {
    auto small = pd_of({-1, 0, 1}, {9, -1, 0}, {3, 2, 1});
    auto big = pd_of({-1, 0, 1, 2}, {9, -1, -1, 0}, {4, 3, 2, 1});
    int calls = 0;
    for_each_witness(big, small, {0, 9}, [&](const WitnessMap&) {
        ++calls;
        return false;
    });
    EXPECT_EQ(calls, 1);
}

TEST(Extensions, MatchBruteForceTrees) {
    gen::Rng rng(23);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = static_cast<int>(rng.between(1, 5));
        // a hidden tree rooted at 0 supplies consistent constraints
        std::vector<int> hidden(static_cast<std::size_t>(n), -1);
        for (int i = 1; i < n; ++i) hidden[i] = static_cast<int>(rng.between(0, i - 1));
        ExtensionProblem p;
        p.n = n;
        p.root = 0;
        p.below = BitMatrix(n);
        for (int b = 1; b < n; ++b) p.below.set(0, b);
        for (int a = 1; a < n; ++a)
            for (int b = 1; b < n; ++b)
                if (strict_anc(hidden, a, b) && rng.coin(1, 3)) p.below.set(a, b);
        ASSERT_TRUE(dp::detail::close_transitively(p.below));
        for (int a = 1; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if ((strict_anc(hidden, a, b) || strict_anc(hidden, b, a)) && rng.coin(1, 4)) p.comparable.emplace_back(a, b);
        p.alpha.resize(static_cast<std::size_t>(n));
        for (auto& a : p.alpha) a = static_cast<int>(rng.between(1, 2));
        p.budget = static_cast<int>(rng.between(2, n + 2));
        p.path_only = rng.coin(1, 4);

        auto admissible = [&](const std::vector<int>& parent) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (p.below.test(a, b) && !strict_anc(parent, a, b)) return false;
            for (auto [a, b] : p.comparable)
                if (!strict_anc(parent, a, b) && !strict_anc(parent, b, a)) return false;
            if (p.path_only) {
                std::vector<int> kids(static_cast<std::size_t>(n), 0);
                for (int i = 0; i < n; ++i)
                    if (parent[i] >= 0 && ++kids[parent[i]] > 1) return false;
            }
            return dp::detail::heights_from(parent, p.alpha)[0] <= p.budget;
        };
        std::set<std::vector<int>> expected;
        for (const auto& parent : all_parent_arrays(n, 0))
            if (admissible(parent)) expected.insert(parent);
        std::set<std::vector<int>> got;
        std::vector<std::vector<int>> emitted;
        for_each_extension(p, [&](const std::vector<int>& parent) {
            emitted.push_back(parent);
            if (admissible(parent)) got.insert(parent);
        });
        EXPECT_EQ(std::set<std::vector<int>>(emitted.begin(), emitted.end()).size(), emitted.size());
        EXPECT_EQ(got, expected) << "trial " << trial;
    }
}

TEST(Extensions, EachTreeOnce) {
    ExtensionProblem p;
    p.n = 4;
    p.root = 0;
    p.below = BitMatrix(4);
    for (int b = 1; b < 4; ++b) p.below.set(0, b);
    p.alpha = {1, 1, 1, 1};
    p.budget = 10;
    std::set<std::vector<int>> seen;
    int count = 0;
    for_each_extension(p, [&](const std::vector<int>& parent) {
        ++count;
        seen.insert(parent);
    });
    EXPECT_EQ(static_cast<std::size_t>(count), seen.size());
    // rooted labeled trees on 4 nodes with a fixed root: 4^2 = 16
    EXPECT_EQ(count, 16);
}

TEST(HeightsFrom, Examples) {
    EXPECT_EQ(dp::detail::heights_from({-1, 0, 1}, {0, 0, 0}), (std::vector<int>{3, 2, 1}));
    EXPECT_EQ(dp::detail::heights_from({-1, 0, 0}, {5, 0, 3}), (std::vector<int>{5, 1, 3}));
    EXPECT_EQ(dp::detail::heights_from({2, -1, 1}, {0, 0, 0}), (std::vector<int>{1, 3, 2}));
}

TEST(Forget, DropsVertexAndKeepsHeight) {
    auto t = table_of({pd_of({-1, 0}, {1, 0}, {2, 1})});
    auto f = forget(t, 0);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f.boundary(), (std::vector<Vertex>{1}));
    EXPECT_EQ(f[0].pd.h, (std::vector<int>{2}));
    EXPECT_EQ(f[0].provenance.kind, NiceKind::kForget);
    EXPECT_EQ(f[0].provenance.map1, (std::vector<int>{0}));
    EXPECT_THROW(forget(t, 5), InputError);
}

TEST(Forget, CollidingEntriesMerge) {
    auto t = table_of({pd_of({-1, 0, 1}, {2, 0, 1}, {3, 2, 1}), pd_of({-1, 0, 1}, {2, 1, 0}, {3, 2, 1})});
    ASSERT_EQ(t.size(), 2u);
    auto once = forget(t, 0);
    EXPECT_EQ(once.size(), 2u);
    auto twice = forget(once, 1);
    EXPECT_EQ(twice.size(), 1u);
}

TEST(Forget, OrderDoesNotMatter) {
    gen::Rng rng(29);
    for (int trial = 0; trial < 50; ++trial) {
        DpTable t;
        for (int i = 0; i < 20; ++i) {
            auto pd = random_pd(rng, 8, true);
            if (pd.boundary.size() < 3) continue;
            pd.boundary.resize(3);
            if (t.boundary().empty()) t = DpTable(pd.boundary);
            // keep only entries named exactly {0, 1, 2}
            if (check_invariants(pd)) continue;
            t.insert(pd, {});
        }
        if (t.size() == 0) continue;
        EXPECT_EQ(forget(forget(t, 0), 1).keys(), forget(forget(t, 1), 0).keys());
    }
}

TEST(Introduce, SingleVertexUnderRoot) {
    auto rg = add_universal_root(Graph(1));
    OperationOptions opt{2};
    auto t = introduce(leaf_table(rg.root), 0, rg, opt);
    ASSERT_EQ(t.size(), 1u);
    const auto& pd = t[0].pd;
    EXPECT_EQ(pd.num_nodes(), 2);
    int a = pd.node_of(0), r = pd.node_of(1);
    EXPECT_EQ(pd.parent[a], r);
    EXPECT_EQ(pd.h[a], 1);
    EXPECT_EQ(pd.h[r], 2);
    opt.budget = 1;
    EXPECT_TRUE(introduce(leaf_table(rg.root), 0, rg, opt).empty());
}

TEST(Introduce, TriangleGivesOnlyChains) {
    auto rg = add_universal_root(gen::clique(3));
    OperationOptions opt{4};
    auto t = leaf_table(rg.root);
    for (Vertex v = 0; v < 3; ++v) t = introduce(t, v, rg, opt);
    EXPECT_EQ(t.size(), 6u);  // orders of the three vertices below r
    for (const auto& e : t.entries()) {
        EXPECT_TRUE(e.pd.is_path());
        EXPECT_EQ(e.pd.height(), 4);
    }
}

TEST(Introduce, IndependentVerticesMayBranch) {
    auto rg = add_universal_root(Graph(2));
    OperationOptions opt{3};
    auto t = introduce(introduce(leaf_table(rg.root), 0, rg, opt), 1, rg, opt);
    // 0 and 1 as siblings, 0 above 1, 1 above 0
    EXPECT_EQ(t.size(), 3u);
    opt.path_only = true;
    auto p = introduce(introduce(leaf_table(rg.root), 0, rg, opt), 1, rg, opt);
    EXPECT_EQ(p.size(), 2u);
}

TEST(Introduce, Rejects) {
    auto rg = add_universal_root(Graph(1));
    OperationOptions opt{3};
    auto t = leaf_table(rg.root);
    EXPECT_THROW(introduce(t, rg.root, rg, opt), InputError);
    EXPECT_THROW(introduce(t, 7, rg, opt), InputError);
}

TEST(Join, SameSingleEntry) {
    auto rg = add_universal_root(Graph(1));
    OperationOptions opt{2};
    auto t = introduce(leaf_table(rg.root), 0, rg, opt);
    auto j = join(t, t, rg, opt);
    EXPECT_EQ(j.keys(), t.keys());
    EXPECT_EQ(j[0].provenance.kind, NiceKind::kJoin);
}

TEST(Join, HeightsTakeTheMaximum) {
    auto rg = add_universal_root(Graph(1));
    OperationOptions opt{3};
    auto a = table_of({pd_of({-1, 0}, {1, 0}, {2, 1})});
    auto b = table_of({pd_of({-1, 0}, {1, 0}, {3, 1})});
    auto j = join(a, b, rg, opt);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0].pd.height(), 3);
}

TEST(Join, AnonymousNodesStayDistinct) {
    auto rg = add_universal_root(Graph(1));
    auto padded = table_of({pd_of({-1, 0, 1}, {1, -1, 0}, {3, 2, 1})});
    OperationOptions opt{4};
    auto j = join(padded, padded, rg, opt);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0].pd.num_nodes(), 4);
    EXPECT_EQ(j[0].pd.height(), 4);
    opt.budget = 3;
    EXPECT_TRUE(join(padded, padded, rg, opt).empty());
    opt.budget = 4;
    opt.naive = true;
    EXPECT_EQ(join(padded, padded, rg, opt).keys(), j.keys());
}

TEST(Join, RejectsDifferentBoundaries) {
    auto rg = add_universal_root(Graph(2));
    OperationOptions opt{3};
    auto a = table_of({pd_of({-1, 0}, {2, 0}, {2, 1})});
    auto b = table_of({pd_of({-1, 0}, {2, 1}, {2, 1})});
    EXPECT_THROW(join(a, b, rg, opt), InputError);
}

TEST(RunDp, RootedEdge) {
    auto rg = add_universal_root(Graph(1));
    auto nt = nice_for(rg);
    EXPECT_FALSE(run_dp(rg, 2, nt).root_table().empty());
    EXPECT_TRUE(run_dp(rg, 1, nt).root_table().empty());
}

TEST(RunDp, RootedP3AtAnEnd) {
    auto rg = rooted_p3_at_end();
    auto nt = nice_for(rg);
    EXPECT_TRUE(run_dp(rg, 2, nt).root_table().empty());
    EXPECT_FALSE(run_dp(rg, 3, nt).root_table().empty());
}

TEST(RunDp, RejectsBadInput) {
    auto rg = add_universal_root(gen::path(2));
    auto nt = nice_for(rg);
    EXPECT_THROW(run_dp(rg, 0, nt), InputError);
    EXPECT_THROW(run_dp(rg, 2, NiceTreeDecomposition{}), InputError);
    auto missing = make_nice(heuristic_decomposition(rg.graph));
    // a plain nice decomposition of the rooted graph has bags without r
    EXPECT_THROW(run_dp(rg, 3, missing), InputError);
}

TEST(RunDp, InvariantsOnSmallGraphs) {
    for (const auto& g : util::connected_graphs_up_to(5)) {
        auto rg = add_universal_root(g);
        auto nt = nice_for(rg);
        for (int budget = 1; budget <= g.num_vertices() + 1; ++budget) expect_invariants(run_dp(rg, budget, nt), nt);
    }
}

TEST(RunDp, NaiveAndFastTablesAgree) {
    for (const auto& g : util::connected_graphs_up_to(4)) {
        auto rg = add_universal_root(g);
        auto nt = nice_for(rg);
        for (int budget = 1; budget <= g.num_vertices() + 1; ++budget) {
            auto fast = run_dp(rg, budget, nt);
            DpConfig cfg;
            cfg.naive = true;
            auto naive = run_dp(rg, budget, nt, cfg);
            for (int i = 0; i < nt.num_nodes(); ++i) ASSERT_EQ(fast.tables[i].keys(), naive.tables[i].keys()) << i;
        }
    }
}

TEST(Decide, Examples) {
    auto k1 = Graph(1);
    EXPECT_TRUE(decide(k1, 1, heuristic_decomposition(k1)).yes);
    EXPECT_FALSE(decide(k1, 0, heuristic_decomposition(k1)).yes);
    auto p7 = gen::path(7);
    EXPECT_FALSE(decide(p7, 2, heuristic_decomposition(p7)).yes);
    EXPECT_TRUE(decide(p7, 3, heuristic_decomposition(p7)).yes);
    auto c4 = gen::cycle(4);
    EXPECT_FALSE(decide(c4, 2, heuristic_decomposition(c4)).yes);
    EXPECT_TRUE(decide(c4, 3, heuristic_decomposition(c4)).yes);
}

TEST(Decide, RejectsInvalidDecomposition) {
    auto p3 = gen::path(3);
    auto td = TreeDecomposition::from_edges({{0, 1}}, {});
    EXPECT_THROW(decide(p3, 3, td), InputError);
    EXPECT_THROW(decide(p3, -1, heuristic_decomposition(p3)), InputError);
}

TEST(Decide, DecideOnlyReleasesTables) {
    auto g = gen::path(5);
    DpConfig cfg;
    cfg.decide_only = true;
    auto d = decide(g, 3, heuristic_decomposition(g), cfg);
    EXPECT_TRUE(d.yes);
    EXPECT_THROW(reconstruct(d), InternalError);
    auto full = decide(g, 3, heuristic_decomposition(g));
    EXPECT_EQ(d.dp.table_sizes, full.dp.table_sizes);
}

TEST(Reconstruct, WitnessesAreValidAndWithinBudget) {
    for (const auto& g : util::connected_graphs_up_to(6)) {
        const int td = oracle_treedepth(g).value;
        auto d = decide(g, td, heuristic_decomposition(g));
        ASSERT_TRUE(d.yes);
        auto t = reconstruct(d);
        EXPECT_FALSE(validate_tdd(g, t));
        EXPECT_EQ(height(t), td);
        EXPECT_FALSE(decide(g, td - 1, heuristic_decomposition(g)).yes);
    }
}

TEST(Reconstruct, Examples) {
    auto k2 = gen::path(2);
    auto t = reconstruct(decide(k2, 2, heuristic_decomposition(k2)));
    EXPECT_EQ(height(t), 2);
    EXPECT_FALSE(validate_tdd(k2, t));
    auto p7 = gen::path(7);
    auto t7 = reconstruct(decide(p7, 3, heuristic_decomposition(p7)));
    EXPECT_FALSE(validate_tdd(p7, t7));
    EXPECT_EQ(height(t7), 3);
}

// Every nice decomposition of the graph below a nice node, rooted at r and
// within budget, restricts to an entry of that node's table.
TEST(RunDp, TablesContainNiceRestrictions) {
    for (const auto& g : util::connected_graphs_up_to(5)) {
        for (int t = 1; t <= g.num_vertices(); ++t) {
            auto d = decide(g, t, heuristic_decomposition(g));
            const auto& nt = d.nice;
            const Vertex r = d.rooted.root;
            for (int x = 0; x < nt.num_nodes(); ++x) {
                std::set<Vertex> below;
                std::vector<int> stack{x};
                while (!stack.empty()) {
                    int y = stack.back();
                    stack.pop_back();
                    below.insert(nt.nodes[y].bag.begin(), nt.nodes[y].bag.end());
                    for (int c : nt.nodes[y].children) stack.push_back(c);
                }
                auto sub = induced_subgraph(d.rooted.graph, std::vector<Vertex>(below.begin(), below.end()));
                const auto local_r = static_cast<Vertex>(
                    std::find(sub.to_original.begin(), sub.to_original.end(), r) - sub.to_original.begin());
                for (const auto& tdd : enumerate_nice_tdds(sub.graph, local_r, t + 1)) {
                    auto pd = from_treedepth_decomposition(tdd);
                    for (auto& v : pd.label) v = sub.to_original[v];
                    pd.boundary.assign(below.begin(), below.end());
                    auto key = canonical_key(restrict(pd, nt.nodes[x].bag));
                    ASSERT_TRUE(d.dp.tables[x].contains(key)) << "node " << x << " t " << t;
                }
            }
        }
    }
}

// On chordal graphs with clique-tree bags every stored forest is a path, so
// the path filter drops nothing.
TEST(PathOnly, LosesNothingOnChordalGraphs) {
    std::vector<Graph> graphs;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        graphs.push_back(gen::k_tree(1 + static_cast<int>(seed % 3), static_cast<Vertex>(5 + seed % 6), seed));
        graphs.push_back(gen::random_tree(static_cast<Vertex>(4 + seed % 7), seed));
        auto iv = gen::interval(static_cast<Vertex>(4 + seed % 7), seed);
        if (is_connected(iv)) graphs.push_back(iv);
    }
    for (const auto& g : graphs) {
        ASSERT_LE(g.num_vertices(), 10);
        auto peo = is_chordal(g);
        ASSERT_TRUE(peo);
        auto td = clique_tree(g, *peo);
        // a large clique makes the unfiltered tables factorial in size
        if (td.width() > 5) continue;
        const int value = oracle_treedepth(g).value;
        for (int t : {value - 1, value}) {
            auto all = decide(g, t, td);
            DpConfig cfg;
            cfg.path_only = true;
            auto paths = decide(g, t, td, cfg);
            EXPECT_EQ(all.dp.non_path_entries, 0u);
            EXPECT_EQ(all.dp.root_table().keys(), paths.dp.root_table().keys());
            EXPECT_EQ(all.yes, t >= value);
            for (int i = 0; i < all.nice.num_nodes(); ++i) EXPECT_EQ(all.dp.tables[i].keys(), paths.dp.tables[i].keys());
        }
    }
}

TEST(TableBound, Examples) {
    EXPECT_DOUBLE_EQ(table_size_bound_log2(1, 1), 1.0);
    EXPECT_DOUBLE_EQ(table_size_bound_log2(2, 2), 2.0 * 2 + 2.0 + 2.0);
    EXPECT_TRUE(within_table_size_bound(1, 0, 1));
    EXPECT_TRUE(within_table_size_bound(2, 1, 1));
    EXPECT_FALSE(within_table_size_bound(3, 1, 1));
}
