#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <utility>
#include <vector>

#include "gemcensus/coloured_graph.hpp"
#include "gemcensus/errors.hpp"
#include "gemcensus/invariants.hpp"
#include "gemcensus/moves.hpp"
#include "gemcensus/seifert.hpp"

using namespace gemcensus;

namespace {

HomologyResult free_abelian(int rank) {
    HomologyResult h;
    h.free_rank = rank;
    return h;
}

HomologyResult cyclic(long n) {
    HomologyResult h;
    if (n > 1) h.torsion.push_back(n);
    return h;
}

// Homology after collapsing the edge classes named by the given boundary
// labels. A label whose class already lies in the spanning tree contributes
// nothing; otherwise its generator is killed outright.
HomologyResult kill_labels(const Triangulation& t, const std::vector<int>& values) {
    const detail::SkeletonPresentation pres(t);
    GroupPresentation g = pres.group();
    for (const int v : values) {
        const EdgeLabel* hit = nullptr;
        for (const EdgeLabel& l : t.labels)
            if (l.value == v) {
                hit = &l;
                break;
            }
        REQUIRE(hit != nullptr);
        const auto [a, b] = detail::edge_ends[hit->edge];
        const int s = pres.letter(hit->tet, a, b);
        if (s != 0) g.relators.push_back({s});
    }
    return abelianized_homology(g);
}

// Homology of the pants block after collapsing the classes of the given
// directed edge anchors.
HomologyResult kill_anchors(const Triangulation& t,
                            const std::vector<std::array<int, 3>>& anchors) {
    const detail::SkeletonPresentation pres(t);
    GroupPresentation g = pres.group();
    for (const auto& [tet, a, b] : anchors) {
        const int s = pres.letter(tet, a, b);
        if (s != 0) g.relators.push_back({s});
    }
    return abelianized_homology(g);
}

// The lens-space table rows: three (alpha, theta, sigma) label triples per
// space, with the realized coefficient pair (alpha, theta > 0 ? theta :
// -sigma).
const std::array<std::array<SeifertTriple, 3>, 24> kSmallSeifertRows = {{
    {{{3, 1, -4}, {3, 2, -5}, {4, -7, 3}}},
    {{{2, 1, -3}, {4, 1, -5}, {4, -5, 1}}},
    {{{2, 1, -3}, {4, 1, -5}, {5, -9, 4}}},
    {{{3, -2, -1}, {3, 1, -4}, {3, 1, -4}}},
    {{{3, 1, -4}, {3, 1, -4}, {4, -5, 1}}},
    {{{2, 1, -3}, {3, 1, -4}, {7, -13, 6}}},
    {{{3, 1, -4}, {3, 1, -4}, {4, -7, 3}}},
    {{{2, 1, -3}, {3, 2, -5}, {6, -11, 5}}},
    {{{3, 1, -4}, {3, 2, -5}, {5, -9, 4}}},
    {{{2, 1, -3}, {3, 1, -4}, {6, -7, 1}}},
    {{{2, 1, -3}, {4, 1, -5}, {5, -8, 3}}},
    {{{2, 1, -3}, {4, 3, -7}, {5, -9, 4}}},
    {{{2, 1, -3}, {4, 1, -5}, {6, -11, 5}}},
    {{{3, 1, -4}, {3, 2, -5}, {3, -4, 1}}},
    {{{2, 1, -3}, {4, -3, -1}, {4, 1, -5}}},
    {{{3, 2, -5}, {4, 1, -5}, {4, -7, 3}}},
    {{{2, 1, -3}, {4, 1, -5}, {5, -6, 1}}},
    {{{2, 1, -3}, {5, 1, -6}, {5, -9, 4}}},
    {{{3, 1, -4}, {3, 1, -4}, {4, -3, -1}}},
    {{{3, 1, -4}, {4, 1, -5}, {4, -5, 1}}},
    {{{3, 1, -4}, {3, 1, -4}, {5, -6, 1}}},
    {{{2, 1, -3}, {3, 1, -4}, {8, -15, 7}}},
    {{{2, 1, -3}, {3, 1, -4}, {7, -12, 5}}},
    {{{3, 1, -4}, {3, 1, -4}, {5, -9, 4}}},
}};

HomologyResult row_symbol_homology(const std::array<SeifertTriple, 3>& row) {
    long ab[6];
    for (int i = 0; i < 3; ++i) {
        ab[2 * i] = row[i].alpha;
        ab[2 * i + 1] = row[i].theta > 0 ? row[i].theta : -row[i].sigma;
    }
    return seifert_symbol_homology(ab[0], ab[1], ab[2], ab[3], ab[4], ab[5]);
}

SeifertSpec spec_for(const std::array<SeifertTriple, 3>& row) {
    SeifertSpec s;
    s.triples = row;
    return s;
}

}  // namespace

TEST_CASE("one-tetrahedron solid torus carries the {1, 2, -3} boundary") {
    const Triangulation t = detail::base_lst();
    CHECK(t.tets == 1);
    CHECK_FALSE(is_closed(t));
    CHECK(boundary_faces(t) == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}});
    CHECK(euler_characteristic(t) == 0);
    CHECK(boundary_edge_labels(t) == std::vector<int>{-3, 1, 2});
    CHECK(first_homology(t) == free_abelian(1));

    SECTION("each labelled class is the labelled multiple of the core") {
        CHECK(kill_labels(t, {1}) == cyclic(1));
        CHECK(kill_labels(t, {2}) == cyclic(2));
        CHECK(kill_labels(t, {-3}) == cyclic(3));
    }
}

TEST_CASE("layered solid tori follow the subtractive label chain") {
    SECTION("tetrahedron counts along the chain") {
        CHECK(lst({1, 2, -3}).tets == 1);
        CHECK(lst({1, 1, -2}).tets == 2);
        CHECK(lst({2, 3, -5}).tets == 2);
        CHECK(lst({1, 3, -4}).tets == 2);
        CHECK(lst({7, -13, 6}).tets == 6);
        CHECK(lst({8, -15, 7}).tets == 7);
    }

    SECTION("every tower is a solid torus with the requested labels") {
        for (const LstParams p : {LstParams{1, 1, -2}, LstParams{2, 3, -5},
                                  LstParams{3, 4, -7}, LstParams{5, -9, 4},
                                  LstParams{7, -13, 6}}) {
            const Triangulation t = lst(p);
            CHECK(boundary_faces(t).size() == 2);
            CHECK(euler_characteristic(t) == 0);
            CHECK(first_homology(t) == free_abelian(1));
            const std::array<int, 3> want = detail::normalized_lst(p);
            CHECK(boundary_edge_labels(t) ==
                  std::vector<int>(want.begin(), want.end()));
        }
    }

    SECTION("killing a labelled class leaves the cyclic group of the label") {
        for (const LstParams p : {LstParams{1, 1, -2}, LstParams{2, 3, -5},
                                  LstParams{3, 4, -7}, LstParams{5, -9, 4},
                                  LstParams{8, -15, 7}}) {
            const Triangulation t = lst(p);
            for (const EdgeLabel& l : t.labels)
                CHECK(kill_labels(t, {l.value}) == cyclic(std::abs(l.value)));
        }
    }

    SECTION("mirror parameter sets name the same torus") {
        CHECK(lst({-1, -2, 3}) == lst({1, 2, -3}));
        CHECK(lst({-5, 9, -4}) == lst({4, 5, -9}));
    }

    SECTION("degenerate label sets are rejected") {
        CHECK_THROWS_AS(lst({1, 2, 3}), InvalidParams);
        CHECK_THROWS_AS(lst({0, 1, -1}), InvalidParams);
        CHECK_THROWS_AS(lst({2, 4, -6}), InvalidParams);
    }
}

TEST_CASE("layering swaps one boundary label pair for its difference") {
    const Triangulation base = detail::base_lst();

    SECTION("across the 1 class: {1, 2, -3} becomes {2, 3, -5}") {
        const Triangulation t = layering(base, 1);
        CHECK(t.tets == 2);
        CHECK(boundary_edge_labels(t) == std::vector<int>{-5, 2, 3});
        CHECK(first_homology(t) == free_abelian(1));
    }

    SECTION("across the double diagonal: {1, 2, -3} becomes {1, 1, -2}") {
        const Triangulation t = layering(base, -3);
        CHECK(t.tets == 2);
        CHECK(boundary_edge_labels(t) == std::vector<int>{-2, 1, 1});
        CHECK(kill_labels(t, {-2}) == cyclic(2));
    }

    SECTION("a label not on the boundary is reported") {
        CHECK_THROWS_AS(layering(base, 7), NoSuchBoundaryEdge);
        CHECK_THROWS_AS(layering(base, 3), NoSuchBoundaryEdge);
    }
}

TEST_CASE("pants block is the three-holed sphere times a circle") {
    const Triangulation t = pants_block();
    CHECK(t.tets == 15);
    CHECK(euler_characteristic(t) == 0);
    CHECK(boundary_faces(t).size() == 6);
    CHECK(first_homology(t) == free_abelian(3));

    const std::array<detail::TorusMark, 3> marks = detail::pants_marks();

    SECTION("the marked faces are exactly the boundary") {
        std::vector<std::pair<int, int>> marked;
        for (const detail::TorusMark& m : marks)
            for (const auto& f : m.faces) marked.push_back(f);
        std::sort(marked.begin(), marked.end());
        CHECK(marked == boundary_faces(t));
    }

    SECTION("each wall is a one-vertex torus with three edge classes") {
        detail::UnionFind verts = detail::vertex_classes(t);
        detail::UnionFind edges = detail::edge_classes(t);
        std::vector<int> wall_vertices;
        for (const detail::TorusMark& m : marks) {
            std::vector<int> roots;
            for (const auto& [tet, face] : m.faces)
                for (int v = 0; v < 4; ++v)
                    if (v != face) roots.push_back(verts.find(4 * tet + v));
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            REQUIRE(roots.size() == 1);
            wall_vertices.push_back(roots.front());

            const auto anchor_root = [&](const std::array<int, 3>& a) {
                return edges.find(12 * a[0] +
                                  2 * detail::edge_index(a[1], a[2]));
            };
            const int h = anchor_root(m.horizontal);
            const int v = anchor_root(m.vertical);
            const int d = anchor_root(m.diagonal);
            CHECK(h != v);
            CHECK(h != d);
            CHECK(v != d);
        }
        std::sort(wall_vertices.begin(), wall_vertices.end());
        wall_vertices.erase(
            std::unique(wall_vertices.begin(), wall_vertices.end()),
            wall_vertices.end());
        CHECK(wall_vertices.size() == 3);
    }

    SECTION("the three sections sum to zero and the fibre spans the rest") {
        const auto h1 = marks[0].horizontal;
        const auto h2 = marks[1].horizontal;
        const auto h3 = marks[2].horizontal;
        CHECK(kill_anchors(t, {h1, h2}) == free_abelian(1));
        CHECK(kill_anchors(t, {h1, h2, h3}) == free_abelian(1));
        CHECK(kill_anchors(t, {h1, h2, h3, marks[0].vertical}) == cyclic(1));
        CHECK(kill_anchors(t, {h1, h2, h3, marks[2].vertical}) == cyclic(1));
    }

    SECTION("each diagonal is the sum of its section and the fibre") {
        const auto h1 = marks[0].horizontal;
        const auto h2 = marks[1].horizontal;
        const auto h3 = marks[2].horizontal;
        CHECK(kill_anchors(t, {h1, h2, h3, marks[1].diagonal}) == cyclic(1));
    }
}

TEST_CASE("assembling the product example yields the handle space") {
    SeifertSpec spec;
    spec.triples = {{{1, 1, -2}, {1, 1, -2}, {1, -3, 2}}};
    const Triangulation m = assemble(spec);
    CHECK(is_closed(m));
    CHECK(m.tets == 22);
    CHECK(euler_characteristic(m) == 0);
    CHECK(first_homology(m) == free_abelian(1));
    CHECK(first_homology(m) ==
          seifert_symbol_homology(1, 1, 1, 1, 1, -2));

    SECTION("explicit section choices move between fillings") {
        SeifertSpec same = spec;
        same.section = {SectionLabel::theta, SectionLabel::theta,
                        SectionLabel::sigma};
        CHECK(assemble(same) == m);

        SeifertSpec sphere = spec;
        sphere.section[2] = SectionLabel::theta;
        CHECK(first_homology(assemble(sphere)) ==
              seifert_symbol_homology(1, 1, 1, 1, 1, -3));
    }
}

TEST_CASE("assembly rejects malformed fibre triples") {
    SeifertSpec spec;
    spec.triples = {{{1, 1, -2}, {1, 1, -2}, {1, -3, 2}}};

    SECTION("fibre order must be positive") {
        spec.triples[0].alpha = 0;
        CHECK_THROWS_AS(assemble(spec), InvalidSpec);
    }
    SECTION("labels must be nonzero") {
        spec.triples[1] = {2, 0, -2};
        CHECK_THROWS_AS(assemble(spec), InvalidSpec);
    }
    SECTION("labels must sum to zero") {
        spec.triples[1] = {2, 1, -2};
        CHECK_THROWS_AS(assemble(spec), InvalidSpec);
    }
    SECTION("section and fibre order must be coprime") {
        spec.triples[1] = {4, 2, -6};
        CHECK_THROWS_AS(assemble(spec), InvalidSpec);
    }
}

TEST_CASE("every catalogued small Seifert row matches its coefficient homology") {
    for (std::size_t r = 0; r < kSmallSeifertRows.size(); ++r) {
        INFO("row " << r + 1);
        const Triangulation m = assemble(spec_for(kSmallSeifertRows[r]));
        CHECK(is_closed(m));
        CHECK(first_homology(m) == row_symbol_homology(kSmallSeifertRows[r]));
    }
}

TEST_CASE("rows with two-generator fundamental groups match those groups") {
    SECTION("row 2 against the mixed-sign two-generator shape") {
        const Triangulation m = assemble(spec_for(kSmallSeifertRows[1]));
        CHECK(first_homology(m) ==
              seifert_first_homology(SeifertKind::ii, 2, 4, 4, -1));
    }
    SECTION("row 4 against the plain two-generator shape") {
        const Triangulation m = assemble(spec_for(kSmallSeifertRows[3]));
        CHECK(first_homology(m) ==
              seifert_first_homology(SeifertKind::i, 3, 3, -3));
    }
}

TEST_CASE("the dual coloured graph of a closed assembly is a manifold gem") {
    const Triangulation m = assemble(spec_for(kSmallSeifertRows[1]));
    const ColouredGraph gem = barycentric_coloured_graph(m);
    CHECK(gem.order() == 24 * m.tets);
    CHECK(is_manifold_gem(gem));
    CHECK(is_bipartite(gem));
    CHECK(first_homology(gem) == first_homology(m));

    SECTION("a bounded complex has no dual gem") {
        CHECK_THROWS_AS(barycentric_coloured_graph(lst({1, 2, -3})),
                        InvalidParams);
    }
}

TEST_CASE("crystallize contracts a dual gem without losing the space") {
    const Triangulation m = assemble(spec_for(kSmallSeifertRows[3]));
    const ColouredGraph gem = barycentric_coloured_graph(m);
    const auto [reduced, log] = crystallize(gem);
    CHECK(log.rho3_count == 0);
    CHECK(is_crystallization(reduced));
    CHECK(reduced.order() <= 64);
    CHECK(first_homology(reduced) == first_homology(gem));
}

TEST_CASE("crystallize reports handle surgery on the product space") {
    SeifertSpec spec;
    spec.triples = {{{1, 1, -2}, {1, 1, -2}, {1, -3, 2}}};
    const ColouredGraph gem = barycentric_coloured_graph(assemble(spec));
    CHECK(first_homology(gem) == free_abelian(1));
    const auto [reduced, log] = crystallize(gem);
    CHECK(log.rho3_count == 1);
    CHECK(reduced.order() == 2);
    CHECK(first_homology(reduced) == cyclic(1));
}
