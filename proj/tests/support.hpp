#pragma once

#include <array>
#include <numeric>
#include <random>
#include <vector>

#include "gemcensus/coloured_graph.hpp"

namespace testsupport {

using gemcensus::ColouredGraph;
using gemcensus::TriColouredGraph;

// The 2-vertex graph with all four colours joining 0 and 1; the minimal
// crystallization of the 3-sphere.
inline ColouredGraph minimal_sphere3() {
    std::vector<int> swap01{1, 0};
    return ColouredGraph(2, {swap01, swap01, swap01, swap01});
}

// Order-4 gem of the 3-sphere: colours 0,1,2 pair {0,1},{2,3}; colour 3
// pairs {0,2},{1,3}. A manifold gem but not contracted.
inline ColouredGraph sphere3_order4() {
    std::vector<int> a{1, 0, 3, 2};
    std::vector<int> b{2, 3, 0, 1};
    return ColouredGraph(4, {a, a, a, b});
}

// Order-8 bipartite crystallization of S^1 x S^2: regular genus 1, first
// homology Z, and a rho3-pair on colour 0 whose switch stays connected.
inline ColouredGraph s1xs2_order8() {
    return ColouredGraph(8, {{{1, 0, 3, 2, 5, 4, 7, 6},
                              {1, 0, 4, 6, 2, 7, 3, 5},
                              {2, 3, 0, 1, 6, 7, 4, 5},
                              {5, 7, 3, 2, 6, 0, 4, 1}}});
}

template <int NC>
gemcensus::BasicColouredGraph<NC> random_relabel(const gemcensus::BasicColouredGraph<NC>& g,
                                                 std::mt19937& rng) {
    std::vector<int> vperm(g.order());
    std::iota(vperm.begin(), vperm.end(), 0);
    std::shuffle(vperm.begin(), vperm.end(), rng);
    std::array<int, NC> cperm;
    for (int c = 0; c < NC; ++c) cperm[c] = c;
    std::shuffle(cperm.begin(), cperm.end(), rng);
    return gemcensus::relabel(g, vperm, cperm);
}

}  // namespace testsupport
