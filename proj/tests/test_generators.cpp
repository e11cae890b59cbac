#include <doctest.h>

#include "fourblock/generators.hpp"
#include "fourblock/oracle.hpp"
#include "fourblock/splitting.hpp"

#include "support.hpp"

using namespace fourblock;

TEST_CASE("canonical fixtures") {
    CHECK(serialize_rotation_graph(gen_canonical("canon5")) == kCanon5Doc);
    CHECK(serialize_rotation_graph(gen_canonical("canon7")) == kCanon7Doc);
    CHECK(serialize_rotation_graph(gen_canonical("triangle")) == kTriangleDoc);
    CHECK(serialize_rotation_graph(gen_canonical("k4")) == kK4Doc);
    CHECK(separating_triangles(gen_canonical("k4")).empty());
    CHECK(gen_canonical("triangle").num_vertices() == 3);
    CHECK_THROWS_AS(gen_canonical("nope"), std::invalid_argument);
}

TEST_CASE("apollonian instances") {
    CHECK_THROWS_AS(gen_apollonian(3, 0), std::invalid_argument);
    SUBCASE("n=4 is K4 regardless of seed") {
        for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
            RotationGraph g = gen_apollonian(4, seed);
            CHECK(g.num_vertices() == 4);
            CHECK(g.num_edges() == 6);
            CHECK(validate_triangulation(g).empty());
            CHECK(separating_triangles(g).empty());
        }
    }
    SUBCASE("n=5 has at most one separating triangle") {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            RotationGraph g = gen_apollonian(5, seed);
            CHECK(validate_triangulation(g).empty());
            CHECK(separating_triangles(g).size() <= 1);
        }
    }
    SUBCASE("validity, determinism and counts") {
        for (std::uint32_t n : {6u, 17u, 50u, 143u}) {
            RotationGraph g = gen_apollonian(n, 42);
            CHECK(validate_triangulation(g).empty());
            CHECK(g.num_edges() == 3 * n - 6);
            CHECK(enumerate_faces(g).count() == 2 * n - 4);
            CHECK(serialize_rotation_graph(g) ==
                  serialize_rotation_graph(gen_apollonian(n, 42)));
            CHECK(serialize_rotation_graph(g) !=
                  serialize_rotation_graph(gen_apollonian(n, 43)));
        }
    }
    SUBCASE("pipeline agrees with oracle on a larger instance") {
        RotationGraph g = gen_apollonian(200, 42);
        OrderedTriangleList ordered = order_separating_triangles(g, separating_triangles(g));
        FourBlockTree tree = decompose(g, ordered);
        CHECK(oracle::trees_isomorphic(oracle::to_plain(tree), oracle::brute_4block_tree(g)));
    }
}

TEST_CASE("nested chains") {
    CHECK_THROWS_AS(gen_nested_chain(0), std::invalid_argument);
    SUBCASE("k separating triangles forming a total chain") {
        for (std::uint32_t k : {1u, 2u, 9u, 30u, 50u}) {
            RotationGraph g = gen_nested_chain(k);
            CHECK(g.num_vertices() == k + 4);
            CHECK(validate_triangulation(g).empty());
            oracle::ContainmentRelation rel = oracle::containment_relation(g);
            REQUIRE(rel.triangles.size() == k);
            std::size_t comparable = 0;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) comparable += rel.contains[i][j];
            CHECK(comparable == k * (k - 1) / 2); // total order
        }
    }
    SUBCASE("k=1 has a single separating triangle") {
        RotationGraph g = gen_nested_chain(1);
        CHECK(separating_triangles(g).size() == 1);
        FourBlockTree tree = decompose(g, order_separating_triangles(g, separating_triangles(g)));
        CHECK(tree.nodes.size() == 2);
    }
    SUBCASE("k=2 matches the canon7 shape") {
        RotationGraph g = gen_nested_chain(2);
        oracle::PlainTree mine = oracle::brute_4block_tree(g);
        oracle::PlainTree c7 = oracle::brute_4block_tree(testsupport::canon7());
        CHECK(mine.nodes.size() == 3);
        CHECK(oracle::trees_isomorphic(mine, c7)); // same construction
    }
    SUBCASE("large chain stays within the transfer budget") {
        RotationGraph g = gen_nested_chain(1000);
        std::size_t m = g.num_edges();
        FourBlockTree tree = decompose(g, order_separating_triangles(g, separating_triangles(g)));
        CHECK(tree.nodes.size() == 1001);
        CHECK(tree.transfer_count <= 2 * m);
    }
}
