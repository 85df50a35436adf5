#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gemcensus/errors.hpp"

namespace gemcensus {

// An NC-edge-coloured graph: every vertex meets exactly one edge of each
// colour, so each colour class is a fixed-point-free involution (a perfect
// matching) on {0,...,order-1}. Parallel edges of distinct colours are
// allowed. Instances are immutable after construction; every operation that
// "modifies" a graph builds a new one.
//
// NC = 4 encodes closed 3-manifolds, NC = 3 the 2-sphere seeds used during
// generation.
template <int NC>
class BasicColouredGraph {
    static_assert(NC >= 2, "a coloured graph needs at least two colours");

public:
    using Involutions = std::array<std::vector<int>, NC>;
    static constexpr int colour_count = NC;

    BasicColouredGraph(int order, Involutions adjacency, bool require_connected = true)
        : order_(order), adj_(std::move(adjacency)) {
        if (order_ <= 0 || order_ % 2 != 0)
            throw OddOrder("graph order must be positive and even, got " +
                           std::to_string(order_));
        for (int c = 0; c < NC; ++c) {
            const std::vector<int>& m = adj_[c];
            if (static_cast<int>(m.size()) != order_)
                throw NotInvolution("colour " + std::to_string(c) + " map covers " +
                                    std::to_string(m.size()) + " of " +
                                    std::to_string(order_) + " vertices");
            for (int v = 0; v < order_; ++v) {
                const int w = m[v];
                if (w < 0 || w >= order_)
                    throw NotInvolution("colour " + std::to_string(c) + " maps vertex " +
                                        std::to_string(v) + " to " + std::to_string(w) +
                                        ", outside the vertex range");
                if (w == v)
                    throw FixedPoint("colour " + std::to_string(c) + " fixes vertex " +
                                     std::to_string(v));
                if (m[w] != v)
                    throw NotInvolution("colour " + std::to_string(c) +
                                        " is not an involution at vertices " +
                                        std::to_string(v) + "," + std::to_string(w));
            }
        }
        if (require_connected && !is_connected())
            throw Disconnected("graph is not connected");
    }

    int order() const { return order_; }

    // The vertex joined to v by the colour-c edge.
    int neighbour(int v, int c) const { return adj_[c][v]; }

    const std::vector<int>& involution(int c) const { return adj_[c]; }
    const Involutions& adjacency() const { return adj_; }

    bool is_connected() const {
        std::vector<char> seen(order_, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int c = 0; c < NC; ++c) {
                const int w = adj_[c][v];
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
            }
        }
        return reached == order_;
    }

    friend bool operator==(const BasicColouredGraph& a, const BasicColouredGraph& b) {
        return a.order_ == b.order_ && a.adj_ == b.adj_;
    }

private:
    int order_;
    Involutions adj_;
};

using ColouredGraph = BasicColouredGraph<4>;
using TriColouredGraph = BasicColouredGraph<3>;

// Connected components of the subgraph spanned by a colour subset.
struct ResiduePartition {
    std::vector<int> colour_set;
    std::vector<std::vector<int>> components;  // each sorted; ordered by minimum vertex
};

template <int NC>
BasicColouredGraph<NC> build(int order,
                             typename BasicColouredGraph<NC>::Involutions adjacency) {
    return BasicColouredGraph<NC>(order, std::move(adjacency));
}

inline ColouredGraph build(int order, ColouredGraph::Involutions adjacency) {
    return ColouredGraph(order, std::move(adjacency));
}

namespace detail {

template <int NC>
std::vector<int> checked_colour_subset(const std::vector<int>& b) {
    std::vector<int> colours = b;
    std::sort(colours.begin(), colours.end());
    if (std::adjacent_find(colours.begin(), colours.end()) != colours.end())
        throw InvalidParams("colour subset contains a repeated colour");
    for (int c : colours)
        if (c < 0 || c >= NC)
            throw InvalidParams("colour " + std::to_string(c) +
                                " is outside the palette {0.." + std::to_string(NC - 1) + "}");
    return colours;
}

// Component label per vertex under the given colours, labels assigned in order
// of each component's minimum vertex. Returns the number of components.
template <int NC>
int component_labels(const BasicColouredGraph<NC>& g, const std::vector<int>& colours,
                     std::vector<int>& label) {
    const int n = g.order();
    label.assign(n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int v0 = 0; v0 < n; ++v0) {
        if (label[v0] != -1) continue;
        label[v0] = next;
        stack.assign(1, v0);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int c : colours) {
                const int w = g.neighbour(v, c);
                if (label[w] == -1) {
                    label[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return next;
}

}  // namespace detail

template <int NC>
ResiduePartition residues(const BasicColouredGraph<NC>& g, const std::vector<int>& colour_set) {
    const std::vector<int> colours = detail::checked_colour_subset<NC>(colour_set);
    std::vector<int> label;
    const int count = detail::component_labels(g, colours, label);
    ResiduePartition part;
    part.colour_set = colours;
    part.components.resize(count);
    for (int v = 0; v < g.order(); ++v) part.components[label[v]].push_back(v);
    return part;
}

// Per-vertex ids of the {i,j}-coloured cycles, ids assigned in order of each
// cycle's minimum vertex.
struct CycleIds {
    std::vector<int> id;
    int count = 0;
};

template <int NC>
CycleIds cycle_ids(const BasicColouredGraph<NC>& g, int i, int j) {
    if (i == j) throw InvalidParams("a bicoloured cycle needs two distinct colours");
    detail::checked_colour_subset<NC>({i, j});
    CycleIds out;
    out.id.assign(g.order(), -1);
    for (int v0 = 0; v0 < g.order(); ++v0) {
        if (out.id[v0] != -1) continue;
        int v = v0;
        int c = std::min(i, j);
        const int other = std::max(i, j);
        do {
            out.id[v] = out.count;
            v = g.neighbour(v, c);
            c = (c == other) ? std::min(i, j) : other;
        } while (v != v0);
        ++out.count;
    }
    return out;
}

// The {i,j}-coloured cycles as explicit vertex sequences: each starts at its
// minimum vertex and steps first along the smaller of the two colours.
template <int NC>
std::vector<std::vector<int>> bicoloured_cycles(const BasicColouredGraph<NC>& g, int i, int j) {
    if (i == j) throw InvalidParams("a bicoloured cycle needs two distinct colours");
    detail::checked_colour_subset<NC>({i, j});
    std::vector<std::vector<int>> cycles;
    std::vector<char> seen(g.order(), 0);
    for (int v0 = 0; v0 < g.order(); ++v0) {
        if (seen[v0]) continue;
        std::vector<int> cyc;
        int v = v0;
        int c = std::min(i, j);
        const int other = std::max(i, j);
        do {
            seen[v] = 1;
            cyc.push_back(v);
            v = g.neighbour(v, c);
            c = (c == other) ? std::min(i, j) : other;
        } while (v != v0);
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

template <int NC>
int count_bicoloured_cycles(const BasicColouredGraph<NC>& g, int i, int j) {
    return cycle_ids(g, i, j).count;
}

// 2-colourability of the underlying multigraph. Returns the class (0/1) per
// vertex, with vertex 0 in class 0, or nothing if an odd closed walk exists.
template <int NC>
std::optional<std::vector<int>> bipartition_classes(const BasicColouredGraph<NC>& g) {
    std::vector<int> side(g.order(), -1);
    std::vector<int> stack{0};
    side[0] = 0;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int c = 0; c < NC; ++c) {
            const int w = g.neighbour(v, c);
            if (side[w] == -1) {
                side[w] = 1 - side[v];
                stack.push_back(w);
            } else if (side[w] == side[v]) {
                return std::nullopt;
            }
        }
    }
    return side;
}

template <int NC>
bool is_bipartite(const BasicColouredGraph<NC>& g) {
    return bipartition_classes(g).has_value();
}

// True iff for each colour i the residue spanned by the other NC-1 colours is
// connected.
template <int NC>
bool is_contracted(const BasicColouredGraph<NC>& g) {
    std::vector<int> label;
    for (int i = 0; i < NC; ++i) {
        std::vector<int> colours;
        for (int c = 0; c < NC; ++c)
            if (c != i) colours.push_back(c);
        if (detail::component_labels(g, colours, label) != 1) return false;
    }
    return true;
}

// A 4-coloured graph encodes a closed 3-manifold exactly when each 3-coloured
// residue encodes S^2, i.e. every component R of every i^-residue satisfies
// v - e + f = 2 with e = 3v/2 and f the bicoloured cycles inside R. Stated
// integrally: 2f - v = 4 per component.
inline bool is_manifold_gem(const ColouredGraph& g) {
    std::vector<int> label;
    for (int i = 0; i < 4; ++i) {
        std::vector<int> colours;
        for (int c = 0; c < 4; ++c)
            if (c != i) colours.push_back(c);
        const int comp_count = detail::component_labels(g, colours, label);
        std::vector<int> verts(comp_count, 0);
        std::vector<int> faces(comp_count, 0);
        for (int v = 0; v < g.order(); ++v) ++verts[label[v]];
        for (int a = 0; a < 3; ++a) {
            for (int b = a + 1; b < 3; ++b) {
                const CycleIds ids = cycle_ids(g, colours[a], colours[b]);
                std::vector<char> counted(ids.count, 0);
                for (int v = 0; v < g.order(); ++v) {
                    if (!counted[ids.id[v]]) {
                        counted[ids.id[v]] = 1;
                        ++faces[label[v]];  // the whole cycle lies in v's component
                    }
                }
            }
        }
        for (int k = 0; k < comp_count; ++k)
            if (2 * faces[k] - verts[k] != 4) return false;
    }
    return true;
}

// A connected 3-coloured graph encodes S^2 exactly when its Euler count
// closes: v - 3v/2 + (total bicoloured cycles) = 2.
inline bool is_sphere(const TriColouredGraph& g) {
    const int f = count_bicoloured_cycles(g, 0, 1) + count_bicoloured_cycles(g, 0, 2) +
                  count_bicoloured_cycles(g, 1, 2);
    return 2 * f - g.order() == 4;
}

inline bool is_crystallization(const ColouredGraph& g) {
    return is_contracted(g) && is_manifold_gem(g);
}

// min{g_01, g_02, g_03} - 1 for a crystallization of a closed 3-manifold.
inline int regular_genus(const ColouredGraph& g) {
    if (!is_crystallization(g))
        throw NotCrystallization(
            "regular genus is defined here only for contracted manifold gems");
    int m = count_bicoloured_cycles(g, 0, 1);
    m = std::min(m, count_bicoloured_cycles(g, 0, 2));
    m = std::min(m, count_bicoloured_cycles(g, 0, 3));
    return m - 1;
}

// Rebuild the graph under a vertex bijection and a colour bijection:
// edge (v, w, colour c) becomes (vperm[v], vperm[w], cperm[c]).
template <int NC>
BasicColouredGraph<NC> relabel(const BasicColouredGraph<NC>& g, const std::vector<int>& vperm,
                               const std::array<int, static_cast<std::size_t>(NC)>& cperm) {
    const int n = g.order();
    if (static_cast<int>(vperm.size()) != n)
        throw InvalidParams("vertex permutation has wrong size");
    std::vector<char> vseen(n, 0);
    for (int v : vperm) {
        if (v < 0 || v >= n || vseen[v]) throw InvalidParams("vertex map is not a permutation");
        vseen[v] = 1;
    }
    std::array<char, NC> cseen{};
    for (int c : cperm) {
        if (c < 0 || c >= NC || cseen[c]) throw InvalidParams("colour map is not a permutation");
        cseen[c] = 1;
    }
    typename BasicColouredGraph<NC>::Involutions adj;
    for (int c = 0; c < NC; ++c) adj[cperm[c]].assign(n, -1);
    for (int c = 0; c < NC; ++c)
        for (int v = 0; v < n; ++v) adj[cperm[c]][vperm[v]] = vperm[g.neighbour(v, c)];
    return BasicColouredGraph<NC>(n, std::move(adj));
}

// The colour-c edges as (min,max) endpoint pairs in lexicographic order.
template <int NC>
std::vector<std::pair<int, int>> edges_of_colour(const BasicColouredGraph<NC>& g, int c) {
    detail::checked_colour_subset<NC>({c});
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.order() / 2);
    for (int v = 0; v < g.order(); ++v) {
        const int w = g.neighbour(v, c);
        if (v < w) edges.emplace_back(v, w);
    }
    return edges;
}

// Graph of M' # M'': remove v1 from g1 and v2 from g2 and join the hanging
// edges colour by colour. Surviving g1 vertices keep their relative order and
// come first, then the surviving g2 vertices.
inline ColouredGraph connected_sum(const ColouredGraph& g1, int v1, const ColouredGraph& g2,
                                   int v2) {
    const int n1 = g1.order();
    const int n2 = g2.order();
    if (v1 < 0 || v1 >= n1 || v2 < 0 || v2 >= n2)
        throw InvalidParams("connected-sum vertex out of range");
    const auto m1 = [&](int w) { return w < v1 ? w : w - 1; };
    const auto m2 = [&](int w) { return n1 - 1 + (w < v2 ? w : w - 1); };
    ColouredGraph::Involutions adj;
    for (int c = 0; c < 4; ++c) {
        adj[c].assign(n1 + n2 - 2, -1);
        for (int a = 0; a < n1; ++a) {
            if (a == v1) continue;
            const int b = g1.neighbour(a, c);
            adj[c][m1(a)] = (b == v1) ? m2(g2.neighbour(v2, c)) : m1(b);
        }
        for (int a = 0; a < n2; ++a) {
            if (a == v2) continue;
            const int b = g2.neighbour(a, c);
            adj[c][m2(a)] = (b == v2) ? m1(g1.neighbour(v1, c)) : m2(b);
        }
    }
    return ColouredGraph(n1 + n2 - 2, std::move(adj));
}

// Reverse of connected_sum. Scans quadruples of edges, one per colour
// (colour-0 edges outermost, each colour in (min,max)-lexicographic order),
// for one whose removal splits the graph into two components, each of at
// least two vertices, with every removed edge crossing between them. Each
// side is capped with one new vertex absorbing its four hanging edges. The
// component containing vertex 0 becomes the first summand; the cap is the
// last vertex of each summand.
inline std::optional<std::pair<ColouredGraph, ColouredGraph>> split_condition_sharp(
    const ColouredGraph& g) {
    const int n = g.order();
    std::array<std::vector<std::pair<int, int>>, 4> edges;
    for (int c = 0; c < 4; ++c) edges[c] = edges_of_colour(g, c);

    std::vector<int> parent(n);
    const auto find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };

    std::array<std::pair<int, int>, 4> cut;
    for (const auto& e0 : edges[0]) {
        cut[0] = e0;
        for (const auto& e1 : edges[1]) {
            cut[1] = e1;
            for (const auto& e2 : edges[2]) {
                cut[2] = e2;
                for (const auto& e3 : edges[3]) {
                    cut[3] = e3;
                    for (int v = 0; v < n; ++v) parent[v] = v;
                    for (int c = 0; c < 4; ++c)
                        for (const auto& e : edges[c]) {
                            if (e == cut[c]) continue;
                            const int ra = find(e.first);
                            const int rb = find(e.second);
                            if (ra != rb) parent[ra] = rb;
                        }
                    int components = 0;
                    for (int v = 0; v < n; ++v)
                        if (find(v) == v) ++components;
                    if (components != 2) continue;
                    const int side0 = find(0);
                    bool all_cross = true;
                    for (int c = 0; c < 4 && all_cross; ++c)
                        all_cross = find(cut[c].first) != find(cut[c].second);
                    if (!all_cross) continue;
                    int size0 = 0;
                    for (int v = 0; v < n; ++v)
                        if (find(v) == side0) ++size0;
                    if (size0 < 2 || n - size0 < 2) continue;

                    // Cap each side: surviving vertices in ascending order,
                    // then the new vertex taking over the four cut ends.
                    const auto cap = [&](bool first_side) {
                        std::vector<int> index(n, -1);
                        int k = 0;
                        for (int v = 0; v < n; ++v)
                            if ((find(v) == side0) == first_side) index[v] = k++;
                        ColouredGraph::Involutions adj;
                        for (int c = 0; c < 4; ++c) {
                            adj[c].assign(k + 1, -1);
                            const int inside =
                                (find(cut[c].first) == side0) == first_side ? cut[c].first
                                                                            : cut[c].second;
                            adj[c][index[inside]] = k;
                            adj[c][k] = index[inside];
                            for (int v = 0; v < n; ++v) {
                                if (index[v] == -1 || v == inside) continue;
                                adj[c][index[v]] = index[g.neighbour(v, c)];
                            }
                        }
                        return ColouredGraph(k + 1, std::move(adj));
                    };
                    return std::make_pair(cap(true), cap(false));
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace gemcensus
