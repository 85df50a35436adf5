#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include "gemcensus/coloured_graph.hpp"
#include "gemcensus/errors.hpp"
#include "gemcensus/invariants.hpp"
#include "gemcensus/moves.hpp"

#include "support.hpp"

using namespace gemcensus;
using testsupport::minimal_sphere3;
using testsupport::random_relabel;
using testsupport::sphere3_order4;

namespace {

// Order-6 crystallization of the 3-sphere. It carries a (1,1)-dipole at
// vertex 0 (cycles 0-1 on colours {0,1} and 0-2 on colours {2,3}), four
// 2-dipoles and a rho2-pair per colour, so it exercises every move finder.
ColouredGraph s3_order6() {
    return ColouredGraph(6, {{{1, 0, 3, 2, 5, 4},
                              {1, 0, 4, 5, 2, 3},
                              {2, 3, 0, 1, 5, 4},
                              {2, 4, 0, 5, 1, 3}}});
}

std::vector<ColouredGraph> connected_order4_graphs() {
    const std::vector<std::vector<int>> matchings{
        {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<ColouredGraph> out;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            for (std::size_t c = 0; c < 3; ++c)
                for (std::size_t d = 0; d < 3; ++d) {
                    try {
                        out.emplace_back(4, ColouredGraph::Involutions{
                                                matchings[a], matchings[b],
                                                matchings[c], matchings[d]});
                    } catch (const Disconnected&) {
                    }
                }
    return out;
}

}  // namespace

TEST_CASE("dipole search reports exact colour sets in vertex order") {
    SECTION("the order-2 graph has no dipoles") {
        CHECK(find_dipoles(minimal_sphere3()).empty());
    }
    SECTION("order-4 two-matching graph has two 1-dipoles and two 3-dipoles") {
        const std::vector<Dipole> found = find_dipoles(sphere3_order4());
        const std::vector<Dipole> expect{{{0, 1}, {0, 1, 2}},
                                         {{0, 2}, {3}},
                                         {{1, 3}, {3}},
                                         {{2, 3}, {0, 1, 2}}};
        CHECK(found == expect);
    }
    SECTION("order-6 crystallization has four 2-dipoles") {
        const std::vector<Dipole> found = find_dipoles(s3_order6());
        const std::vector<Dipole> expect{{{0, 1}, {0, 1}},
                                         {{0, 2}, {2, 3}},
                                         {{3, 5}, {1, 3}},
                                         {{4, 5}, {0, 2}}};
        CHECK(found == expect);
    }
}

TEST_CASE("dipole deletion contracts the pair and rejoins the complement") {
    SECTION("1-dipole deletion turns the order-4 graph into the order-2 one") {
        const ColouredGraph g = delete_dipole(sphere3_order4(), {{0, 2}, {3}});
        CHECK(canonical_code(g) == canonical_code(minimal_sphere3()));
    }
    SECTION("3-dipole deletion reaches the same graph") {
        const ColouredGraph g = delete_dipole(sphere3_order4(), {{0, 1}, {0, 1, 2}});
        CHECK(canonical_code(g) == canonical_code(minimal_sphere3()));
    }
    SECTION("deleting from the order-2 graph would annihilate it") {
        CHECK_THROWS_AS(delete_dipole(minimal_sphere3(), {{0, 1}, {0}}), WouldAnnihilate);
    }
    SECTION("a partial colour set is not a dipole") {
        CHECK_THROWS_AS(delete_dipole(sphere3_order4(), {{0, 1}, {0}}), NotADipole);
    }
    SECTION("a pair sharing its complementary residue is not a dipole") {
        CHECK_THROWS_AS(delete_dipole(s3_order6(), {{2, 3}, {0}}), NotADipole);
    }
    SECTION("deletion preserves manifold gems and their homology") {
        const ColouredGraph g = s3_order6();
        REQUIRE(is_manifold_gem(g));
        const ColouredGraph h = delete_dipole(g, find_dipoles(g).front());
        CHECK(h.order() == 4);
        CHECK(is_manifold_gem(h));
        CHECK(first_homology(h) == first_homology(g));
    }
}

TEST_CASE("dipole insertion is inverse to deletion") {
    SECTION("adding a 3-dipole and deleting it restores the graph exactly") {
        const ColouredGraph g = sphere3_order4();
        const ColouredGraph bigger = add_dipole(g, {{0, 2}}, {0, 1, 2});
        REQUIRE(bigger.order() == 6);
        const std::vector<Dipole> found = find_dipoles(bigger);
        const Dipole inserted{{4, 5}, {0, 1, 2}};
        CHECK(std::find(found.begin(), found.end(), inserted) != found.end());
        CHECK(delete_dipole(bigger, inserted) == g);
    }
    SECTION("deleting a 1-dipole and adding one back restores the code") {
        const ColouredGraph g = sphere3_order4();
        const ColouredGraph small = delete_dipole(g, {{0, 2}, {3}});
        const ColouredGraph back =
            add_dipole(small, {{0, 1}, {0, 1}, {0, 1}}, {3});
        CHECK(canonical_code(back) == canonical_code(g));
    }
    SECTION("an insertion that closes up the complementary residue is refused") {
        CHECK_THROWS_AS(add_dipole(minimal_sphere3(), {{0, 1}, {1, 0}, {0, 1}}, {0}),
                        NotADipole);
    }
    SECTION("malformed sites are rejected") {
        CHECK_THROWS_AS(add_dipole(sphere3_order4(), {{0, 2}}, {0, 1}), InvalidParams);
        CHECK_THROWS_AS(add_dipole(sphere3_order4(), {{0, 3}}, {0, 1, 2}), InvalidParams);
        CHECK_THROWS_AS(add_dipole(sphere3_order4(), {{0, 9}}, {0, 1, 2}), InvalidParams);
    }
}

TEST_CASE("generalized dipole search lists pivot-disjoint cycle pairs") {
    SECTION("the order-2 and order-4 graphs have none") {
        CHECK(find_generalized_dipoles(minimal_sphere3(), 3, 3).empty());
        CHECK(find_generalized_dipoles(sphere3_order4(), 3, 3).empty());
    }
    SECTION("zero bounds always give an empty list") {
        CHECK(find_generalized_dipoles(s3_order6(), 0, 0).empty());
    }
    SECTION("the order-6 crystallization has exactly two (1,1)-dipoles") {
        const std::vector<GeneralizedDipole> found =
            find_generalized_dipoles(s3_order6(), 1, 1);
        REQUIRE(found.size() == 2);
        CHECK(found[0].x0 == 0);
        CHECK(found[0].colours1 == std::array<int, 2>{0, 1});
        CHECK(found[0].colours2 == std::array<int, 2>{2, 3});
        CHECK(found[0].cycle1 == std::vector<int>{0, 1});
        CHECK(found[0].cycle2 == std::vector<int>{0, 2});
        CHECK(gd_token(found[0]) == "GD@(0,1,1)");
        CHECK(found[1].x0 == 5);
        CHECK(found[1].colours1 == std::array<int, 2>{0, 2});
        CHECK(found[1].colours2 == std::array<int, 2>{1, 3});
        CHECK(found[1].cycle1 == std::vector<int>{5, 4});
        CHECK(found[1].cycle2 == std::vector<int>{5, 3});
        CHECK(gd_token(found[1]) == "GD@(5,1,1)");
    }
}

TEST_CASE("generalized dipole cancellation shrinks the graph correctly") {
    const ColouredGraph g = s3_order6();
    const GeneralizedDipole gd = find_generalized_dipoles(g, 1, 1).at(0);
    SECTION("a (1,1)-dipole removes two vertices net") {
        const ColouredGraph h = cancel_generalized_dipole(g, gd);
        REQUIRE(h.order() == 4);
        CHECK(h.involution(0) == std::vector<int>{3, 2, 1, 0});
        CHECK(h.involution(1) == std::vector<int>{2, 3, 0, 1});
        CHECK(h.involution(2) == std::vector<int>{3, 2, 1, 0});
        CHECK(h.involution(3) == std::vector<int>{2, 3, 0, 1});
        CHECK(is_manifold_gem(h));
        CHECK(first_homology(h) == first_homology(g));
    }
    SECTION("tampered cycles are rejected") {
        GeneralizedDipole bad = gd;
        std::swap(bad.cycle1, bad.cycle2);
        CHECK_THROWS_AS(cancel_generalized_dipole(g, bad), NotAGeneralizedDipole);
        bad = gd;
        bad.x0 = 1;
        CHECK_THROWS_AS(cancel_generalized_dipole(g, bad), NotAGeneralizedDipole);
        bad = gd;
        bad.colours1 = {0, 2};
        CHECK_THROWS_AS(cancel_generalized_dipole(g, bad), NotAGeneralizedDipole);
    }
}

TEST_CASE("rho-pair search distinguishes rho2 from rho3") {
    SECTION("the order-2 graph has one edge per colour, hence no pairs") {
        CHECK(find_rho_pairs(minimal_sphere3()).empty());
        CHECK(is_rigid(minimal_sphere3()));
    }
    SECTION("the order-4 two-matching graph has a single rho3-pair") {
        const std::vector<RhoPair> found = find_rho_pairs(sphere3_order4());
        REQUIRE(found.size() == 1);
        CHECK(found[0] == RhoPair{3, {0, 2}, {1, 3}, 3});
        CHECK(rho_token(found[0]) == "R3@3:(0,2),(1,3)");
        CHECK(!is_rigid(sphere3_order4()));
    }
    SECTION("the order-6 crystallization has two rho2-pairs per colour") {
        const std::vector<RhoPair> found = find_rho_pairs(s3_order6());
        REQUIRE(found.size() == 8);
        for (const RhoPair& p : found) CHECK(p.kind == 2);
        CHECK(found[0] == RhoPair{0, {0, 1}, {2, 3}, 2});
        CHECK(found[1] == RhoPair{0, {2, 3}, {4, 5}, 2});
    }
    SECTION("a rho2-pair of a 3-coloured graph shares both cycle families") {
        const TriColouredGraph t(
            6, {{{1, 0, 3, 2, 5, 4}, {3, 2, 1, 0, 5, 4}, {5, 4, 3, 2, 1, 0}}});
        const std::vector<RhoPair> found = find_rho_pairs(t);
        const std::vector<RhoPair> expect{{1, {0, 3}, {1, 2}, 2},
                                          {2, {0, 5}, {1, 4}, 2}};
        CHECK(found == expect);
    }
}

TEST_CASE("rho-pair switching rewires along the shared cycle") {
    SECTION("switching the rho3-pair of the order-4 graph would disconnect it") {
        CHECK_THROWS_AS(switch_rho_pair(sphere3_order4(), {3, {0, 2}, {1, 3}, 3}),
                        Disconnects);
    }
    SECTION("a rho2 switch on the order-6 crystallization is frozen") {
        const auto [g, was_rho3] =
            switch_rho_pair(s3_order6(), {0, {2, 3}, {4, 5}, 2});
        CHECK(!was_rho3);
        CHECK(g.order() == 6);
        CHECK(g.involution(0) == std::vector<int>{1, 0, 4, 5, 2, 3});
        CHECK(is_manifold_gem(g));
        CHECK(first_homology(g) == first_homology(s3_order6()));
        // The rewired edges no longer share two cycles, so the literal
        // reverse switch is not a legal move.
        CHECK_THROWS_AS(switch_rho_pair(g, {0, {2, 4}, {3, 5}, 2}), NotARhoPair);
    }
    SECTION("non-pairs are rejected") {
        CHECK_THROWS_AS(switch_rho_pair(s3_order6(), {0, {0, 1}, {4, 5}, 2}),
                        NotARhoPair);
        CHECK_THROWS_AS(switch_rho_pair(s3_order6(), {0, {0, 1}, {0, 1}, 2}),
                        NotARhoPair);
        CHECK_THROWS_AS(switch_rho_pair(s3_order6(), {0, {0, 2}, {1, 3}, 2}),
                        NotARhoPair);
        CHECK_THROWS_AS(switch_rho_pair(s3_order6(), {0, {0, 1}, {2, 3}, 3}),
                        NotARhoPair);
    }
}

TEST_CASE("reduction reaches a rigid contracted graph deterministically") {
    SECTION("the order-4 graph reduces by its first 1-dipole") {
        const auto [g, log] = reduce_to_rigid(sphere3_order4());
        CHECK(canonical_code(g) == canonical_code(minimal_sphere3()));
        CHECK(log.moves == std::vector<std::string>{"D-{3}@(0,2)"});
        CHECK(log.rho3_count == 0);
    }
    SECTION("the order-6 crystallization reduces through two 2-dipoles") {
        const auto [g, log] = reduce_to_rigid(s3_order6());
        CHECK(canonical_code(g) == canonical_code(minimal_sphere3()));
        CHECK(log.moves ==
              std::vector<std::string>{"D-{0,1}@(0,1)", "D-{0,2}@(0,1)"});
        CHECK(log.rho3_count == 0);
    }
    SECTION("an already rigid graph is a fixed point") {
        const auto [g, log] = reduce_to_rigid(minimal_sphere3());
        CHECK(g == minimal_sphere3());
        CHECK(log.moves.empty());
    }
    SECTION("every connected order-4 graph reduces to a rigid contracted graph") {
        for (const ColouredGraph& g : connected_order4_graphs()) {
            const auto [r, log] = reduce_to_rigid(g);
            CHECK(is_rigid(r));
            CHECK(is_contracted(r));
            if (is_manifold_gem(g)) {
                CHECK(is_manifold_gem(r));
                if (log.rho3_count == 0) CHECK(first_homology(r) == first_homology(g));
            }
        }
    }
    SECTION("reduction is stable under relabelling") {
        std::mt19937 rng(20260819);
        const ColouredGraph g = s3_order6();
        const auto [r, log] = reduce_to_rigid(g);
        for (int k = 0; k < 10; ++k) {
            const auto [r2, log2] = reduce_to_rigid(random_relabel(g, rng));
            CHECK(canonical_code(r2) == canonical_code(r));
            CHECK(log2.rho3_count == log.rho3_count);
        }
    }
}

TEST_CASE("a rho3 switch splits off the handle factor") {
    const ColouredGraph g = testsupport::s1xs2_order8();
    SECTION("the fixture is a genus-1 crystallization with free homology") {
        CHECK(is_crystallization(g));
        CHECK(is_bipartite(g));
        CHECK(regular_genus(g) == 1);
        CHECK(first_homology(g) == HomologyResult{1, {}});
    }
    SECTION("switching the rho3-pair drops the free rank by one") {
        const std::vector<RhoPair> rhos = find_rho_pairs(g);
        const RhoPair rho3{0, {4, 5}, {6, 7}, 3};
        REQUIRE(std::find(rhos.begin(), rhos.end(), rho3) != rhos.end());
        const auto [h, was_rho3] = switch_rho_pair(g, rho3);
        CHECK(was_rho3);
        CHECK(h.order() == 8);
        CHECK(is_bipartite(h));
        CHECK(first_homology(h) == HomologyResult{0, {}});
    }
    SECTION("reduction counts exactly one rho3 switch") {
        const auto [r, log] = reduce_to_rigid(g);
        CHECK(canonical_code(r) == canonical_code(minimal_sphere3()));
        CHECK(log.rho3_count == 1);
    }
    SECTION("a connected sum with the fixture reduces with h = 1") {
        const ColouredGraph sum = connected_sum(s3_order6(), 0, g, 0);
        REQUIRE(sum.order() == 12);
        CHECK(first_homology(sum) == HomologyResult{1, {}});
        const auto [r, log] = reduce_to_rigid(sum);
        CHECK(canonical_code(r) == canonical_code(minimal_sphere3()));
        CHECK(log.rho3_count == 1);
    }
}
