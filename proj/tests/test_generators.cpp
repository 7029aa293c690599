#include <gtest/gtest.h>

#include "treedepth/generators.hpp"

using namespace treedepth;

TEST(Generators, Examples) {
    EXPECT_EQ(gen::path(4).num_edges(), 3u);
    EXPECT_EQ(gen::cycle(5).num_edges(), 5u);
    EXPECT_EQ(gen::clique(5).num_edges(), 10u);
    EXPECT_EQ(gen::star(5).num_edges(), 4u);
    EXPECT_EQ(gen::star(5).degree(0), 4u);
    EXPECT_EQ(gen::path(0).num_vertices(), 0);
    EXPECT_EQ(gen::random_gnm(10, 17, 3).num_edges(), 17u);
    EXPECT_THROW(gen::random_gnm(4, 7, 1), InputError);
}

TEST(Generators, Deterministic) {
    for (const auto& family : gen::family_names()) {
        auto a = gen::by_family(family, 12, 5), b = gen::by_family(family, 12, 5);
        EXPECT_EQ(a, b) << family;
        EXPECT_EQ(a.num_vertices(), 12) << family;
    }
    EXPECT_NE(gen::random_gnm(12, 20, 1), gen::random_gnm(12, 20, 2));
    EXPECT_THROW(gen::by_family("lattice", 4, 1), InputError);
}

TEST(Generators, RandomTreeIsATree) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        auto t = gen::random_tree(static_cast<Vertex>(1 + seed % 20), seed);
        EXPECT_EQ(t.num_edges(), static_cast<std::size_t>(t.num_vertices() - 1));
        EXPECT_TRUE(is_connected(t));
    }
}

TEST(Generators, KTreeIsChordalWithCliqueKPlusOne) {
    for (int k = 1; k <= 4; ++k)
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto g = gen::k_tree(k, 15, seed);
            const auto expected_edges = static_cast<std::size_t>(k * (k + 1) / 2 + (15 - k - 1) * k);
            EXPECT_EQ(g.num_edges(), expected_edges);
            auto peo = is_chordal(g);
            ASSERT_TRUE(peo);
            EXPECT_EQ(max_clique_size_chordal(g, *peo), k + 1);
            EXPECT_TRUE(is_connected(g));
        }
    EXPECT_EQ(gen::k_tree(3, 3, 1), gen::clique(3));
}

TEST(Generators, IntervalGraphsAreChordal) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) EXPECT_TRUE(is_chordal(gen::interval(12, seed)));
}

TEST(Generators, GnmDefaultEdges) {
    EXPECT_EQ(gen::by_family("random-gnm", 10, 1).num_edges(), 20u);
    EXPECT_EQ(gen::by_family("random-gnm", 4, 1).num_edges(), 6u);
    gen::FamilyParams p;
    p.edges = 3;
    EXPECT_EQ(gen::by_family("random-gnm", 10, 1, p).num_edges(), 3u);
}
