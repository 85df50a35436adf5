#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gemcensus/code.hpp"
#include "gemcensus/coloured_graph.hpp"
#include "gemcensus/errors.hpp"

namespace gemcensus {

// A k-dipole: x and y joined by exactly the edges coloured `colours`, lying
// in different residues of the complementary colours.
struct Dipole {
    std::pair<int, int> vertices;  // min, max
    std::vector<int> colours;      // sorted, 1 to 3 entries

    bool operator==(const Dipole&) const = default;
};

inline std::string dipole_token(const Dipole& d) {
    std::string out = "D-{";
    for (std::size_t k = 0; k < d.colours.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(d.colours[k]);
    }
    out += "}@(" + std::to_string(d.vertices.first) + "," +
           std::to_string(d.vertices.second) + ")";
    return out;
}

namespace detail {

// Component labels of the subgraph on the colours NOT in `colours`.
inline std::vector<int> complement_labels(const ColouredGraph& g,
                                          const std::vector<int>& colours) {
    std::vector<int> rest;
    for (int c = 0; c < 4; ++c)
        if (std::find(colours.begin(), colours.end(), c) == colours.end()) rest.push_back(c);
    std::vector<int> label;
    component_labels(g, rest, label);
    return label;
}

}  // namespace detail

// All dipoles of type 1..3, ordered by (x, y). The colour set of a dipole is
// the full set of colours joining the two vertices.
inline std::vector<Dipole> find_dipoles(const ColouredGraph& g) {
    std::vector<Dipole> out;
    std::map<std::vector<int>, std::vector<int>> labels_by_set;
    for (int x = 0; x < g.order(); ++x)
        for (int y = x + 1; y < g.order(); ++y) {
            std::vector<int> set;
            for (int c = 0; c < 4; ++c)
                if (g.neighbour(x, c) == y) set.push_back(c);
            if (set.empty() || set.size() > 3) continue;
            auto [it, fresh] = labels_by_set.try_emplace(set);
            if (fresh) it->second = detail::complement_labels(g, set);
            if (it->second[x] != it->second[y]) out.push_back({{x, y}, set});
        }
    return out;
}

// Removes the dipole's two vertices and reconnects each complementary colour
// across the gap. Survivors keep their relative order.
inline ColouredGraph delete_dipole(const ColouredGraph& g, const Dipole& d) {
    if (g.order() <= 2)
        throw WouldAnnihilate("deleting a dipole from an order-2 graph leaves nothing");
    const int x = std::min(d.vertices.first, d.vertices.second);
    const int y = std::max(d.vertices.first, d.vertices.second);
    if (x < 0 || y >= g.order() || x == y) throw NotADipole("vertex pair out of range");
    const std::vector<int> set = detail::checked_colour_subset<4>(d.colours);
    if (set.empty() || set.size() > 3)
        throw NotADipole("a dipole involves one to three colours");
    for (int c : set)
        if (g.neighbour(x, c) != y)
            throw NotADipole("vertices are not joined by colour " + std::to_string(c));
    const std::vector<int> label = detail::complement_labels(g, set);
    if (label[x] == label[y])
        throw NotADipole("vertices share the residue of the complementary colours");

    std::vector<int> renumber(g.order(), -1);
    int next = 0;
    for (int v = 0; v < g.order(); ++v)
        if (v != x && v != y) renumber[v] = next++;
    ColouredGraph::Involutions adj;
    for (int c = 0; c < 4; ++c) adj[c].assign(next, -1);
    for (int c = 0; c < 4; ++c)
        for (int v = 0; v < g.order(); ++v) {
            const int w = g.neighbour(v, c);
            if (renumber[v] == -1 || renumber[w] == -1) continue;
            adj[c][renumber[v]] = renumber[w];
        }
    for (int c = 0; c < 4; ++c) {
        if (std::find(set.begin(), set.end(), c) != set.end()) continue;
        const int u = renumber[g.neighbour(x, c)];
        const int v = renumber[g.neighbour(y, c)];
        adj[c][u] = v;
        adj[c][v] = u;
    }
    return ColouredGraph(next, std::move(adj));
}

// Inserts a dipole on the given colours. The site names, for each colour not
// in `colours` in ascending order, an existing edge (a,b) of that colour; the
// new vertex x takes the a-side and y the b-side. Throws InvalidParams for a
// malformed site and NotADipole when the inserted pair fails the residue
// condition (possible for one and two colours).
inline ColouredGraph add_dipole(const ColouredGraph& g,
                                const std::vector<std::pair<int, int>>& site,
                                const std::vector<int>& colours) {
    const std::vector<int> set = detail::checked_colour_subset<4>(colours);
    if (set.empty() || set.size() > 3)
        throw InvalidParams("a dipole involves one to three colours");
    std::vector<int> rest;
    for (int c = 0; c < 4; ++c)
        if (std::find(set.begin(), set.end(), c) == set.end()) rest.push_back(c);
    if (site.size() != rest.size())
        throw InvalidParams("site must name one edge per complementary colour");
    for (std::size_t k = 0; k < rest.size(); ++k) {
        const auto [a, b] = site[k];
        if (a < 0 || a >= g.order() || b < 0 || b >= g.order())
            throw InvalidParams("site vertex out of range");
        if (g.neighbour(a, rest[k]) != b)
            throw InvalidParams("site pair is not an edge of colour " +
                                std::to_string(rest[k]));
    }

    const int n = g.order();
    const int x = n;
    const int y = n + 1;
    ColouredGraph::Involutions adj = g.adjacency();
    for (int c = 0; c < 4; ++c) adj[c].resize(n + 2, -1);
    for (int c : set) {
        adj[c][x] = y;
        adj[c][y] = x;
    }
    for (std::size_t k = 0; k < rest.size(); ++k) {
        const auto [a, b] = site[k];
        adj[rest[k]][a] = x;
        adj[rest[k]][x] = a;
        adj[rest[k]][b] = y;
        adj[rest[k]][y] = b;
    }
    ColouredGraph out(n + 2, std::move(adj));
    if (detail::complement_labels(out, set)[x] == detail::complement_labels(out, set)[y])
        throw NotADipole("inserted pair shares the residue of the complementary colours");
    return out;
}

// An (m,n)-dipole: two bicoloured cycles on complementary colour pairs
// meeting exactly in the pivot. cycle1 starts at the pivot and its second
// vertex is adjacent by colours1[0]; likewise for cycle2.
struct GeneralizedDipole {
    int x0 = 0;
    std::array<int, 2> colours1{};
    std::array<int, 2> colours2{};
    std::vector<int> cycle1;
    std::vector<int> cycle2;

    int m() const { return static_cast<int>(cycle1.size()) - 1; }
    int n() const { return static_cast<int>(cycle2.size()) - 1; }
    bool operator==(const GeneralizedDipole&) const = default;
};

inline std::string gd_token(const GeneralizedDipole& gd) {
    return "GD@(" + std::to_string(gd.x0) + "," + std::to_string(gd.m()) + "," +
           std::to_string(gd.n()) + ")";
}

namespace detail {

inline std::vector<int> bicoloured_cycle_through(const ColouredGraph& g, int v0, int i,
                                                 int j) {
    std::vector<int> cycle;
    int v = v0;
    int c = i;
    do {
        cycle.push_back(v);
        v = g.neighbour(v, c);
        c = (c == i) ? j : i;
    } while (v != v0);
    return cycle;
}

}  // namespace detail

// All (m,n)-dipoles with m <= max_m and n <= max_n, where the first cycle
// carries the lexicographically smaller colour pair. Ordered by pivot, then
// by the colour split {0,1}|{2,3}, {0,2}|{1,3}, {0,3}|{1,2}.
inline std::vector<GeneralizedDipole> find_generalized_dipoles(const ColouredGraph& g,
                                                               int max_m, int max_n) {
    static constexpr std::array<std::array<int, 4>, 3> splits{
        {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    std::vector<GeneralizedDipole> out;
    std::vector<char> on_first(g.order(), 0);
    for (int x0 = 0; x0 < g.order(); ++x0)
        for (const auto& s : splits) {
            GeneralizedDipole gd;
            gd.x0 = x0;
            gd.colours1 = {s[0], s[1]};
            gd.colours2 = {s[2], s[3]};
            gd.cycle1 = detail::bicoloured_cycle_through(g, x0, s[0], s[1]);
            gd.cycle2 = detail::bicoloured_cycle_through(g, x0, s[2], s[3]);
            if (gd.m() > max_m || gd.n() > max_n) continue;
            for (int v : gd.cycle1) on_first[v] = 1;
            bool meet_once = true;
            for (int v : gd.cycle2)
                if (v != x0 && on_first[v]) meet_once = false;
            for (int v : gd.cycle1) on_first[v] = 0;
            if (meet_once) out.push_back(std::move(gd));
        }
    return out;
}

// Cancels an (m,n)-dipole per the product construction: the pivot and both
// cycles disappear, an m-by-n grid of product vertices replaces them, edges
// interior to either cycle propagate across the other factor, and outside
// edges reattach at the open ends. Refuses configurations whose literal
// construction cannot produce a properly coloured graph.
inline ColouredGraph cancel_generalized_dipole(const ColouredGraph& g,
                                               const GeneralizedDipole& gd) {
    // Revalidate the dipole against the graph.
    std::vector<int> all{gd.colours1[0], gd.colours1[1], gd.colours2[0], gd.colours2[1]};
    std::vector<int> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::vector<int>{0, 1, 2, 3})
        throw NotAGeneralizedDipole("colour pairs must partition the palette");
    if (gd.x0 < 0 || gd.x0 >= g.order()) throw NotAGeneralizedDipole("pivot out of range");
    if (gd.cycle1 != detail::bicoloured_cycle_through(g, gd.x0, gd.colours1[0], gd.colours1[1]) ||
        gd.cycle2 != detail::bicoloured_cycle_through(g, gd.x0, gd.colours2[0], gd.colours2[1]))
        throw NotAGeneralizedDipole("stored cycles do not match the graph");
    std::vector<char> in1(g.order(), 0);
    std::vector<char> in2(g.order(), 0);
    for (int v : gd.cycle1) in1[v] = 1;
    for (int v : gd.cycle2) in2[v] = 1;
    for (int v = 0; v < g.order(); ++v)
        if (in1[v] && in2[v] && v != gd.x0)
            throw NotAGeneralizedDipole("cycles share a vertex besides the pivot");

    const int m = gd.m();
    const int n = gd.n();
    const int i = gd.colours1[0];
    const int j = gd.colours1[1];
    const int h = gd.colours2[0];
    const int k = gd.colours2[1];

    // Survivors first, in order; then the grid (x_t, y_s), row-major.
    std::vector<int> renumber(g.order(), -1);
    int next = 0;
    for (int v = 0; v < g.order(); ++v)
        if (!in1[v] && !in2[v]) renumber[v] = next++;
    const int base = next;
    const int order = base + m * n;
    const auto grid = [&](int t, int s) { return base + (t - 1) * n + (s - 1); };

    ColouredGraph::Involutions adj;
    for (int c = 0; c < 4; ++c) adj[c].assign(order, -1);
    const auto join = [&adj](int c, int u, int v) {
        if (u == v) throw NotAGeneralizedDipole("construction produced a loop");
        const int su = adj[c][u];
        const int sv = adj[c][v];
        if ((su != -1 && su != v) || (sv != -1 && sv != u))
            throw NotAGeneralizedDipole("construction produced conflicting edges");
        adj[c][u] = v;
        adj[c][v] = u;
    };

    for (int c = 0; c < 4; ++c)
        for (int v = 0; v < g.order(); ++v) {
            const int w = g.neighbour(v, c);
            if (renumber[v] != -1 && renumber[w] != -1 && v < w)
                join(c, renumber[v], renumber[w]);
        }

    // Edges internal to one cycle propagate across the other factor.
    for (int s = 1; s <= n; ++s)
        for (int sp = s + 1; sp <= n; ++sp)
            for (int c = 0; c < 4; ++c)
                if (g.neighbour(gd.cycle2[s], c) == gd.cycle2[sp])
                    for (int t = 1; t <= m; ++t) join(c, grid(t, s), grid(t, sp));
    for (int r = 1; r <= m; ++r)
        for (int rp = r + 1; rp <= m; ++rp)
            for (int c = 0; c < 4; ++c)
                if (g.neighbour(gd.cycle1[r], c) == gd.cycle1[rp])
                    for (int t = 1; t <= n; ++t) join(c, grid(r, t), grid(rp, t));

    // Outside edges reattach at the open ends: the first cycle lost its
    // i-edge at x_1 and its j-edge at x_m, and symmetrically for the second.
    for (int s = 1; s <= n; ++s) {
        const int ys = gd.cycle2[s];
        const int zi = g.neighbour(ys, i);
        if (renumber[zi] != -1) join(i, renumber[zi], grid(1, s));
        const int zj = g.neighbour(ys, j);
        if (renumber[zj] != -1) join(j, renumber[zj], grid(m, s));
    }
    for (int r = 1; r <= m; ++r) {
        const int xr = gd.cycle1[r];
        const int zh = g.neighbour(xr, h);
        if (renumber[zh] != -1) join(h, renumber[zh], grid(r, 1));
        const int zk = g.neighbour(xr, k);
        if (renumber[zk] != -1) join(k, renumber[zk], grid(r, n));
    }

    for (int c = 0; c < 4; ++c)
        for (int v = 0; v < order; ++v)
            if (adj[c][v] == -1)
                throw NotAGeneralizedDipole("construction left colour " + std::to_string(c) +
                                            " unmatched");
    ColouredGraph out(order, std::move(adj), /*require_connected=*/false);
    if (!out.is_connected())
        throw NotAGeneralizedDipole("cancellation would disconnect the graph");
    return out;
}

// Two same-coloured edges sharing at least two bicoloured cycles.
struct RhoPair {
    int colour = 0;
    std::pair<int, int> e;  // each (min,max); e < f
    std::pair<int, int> f;
    int kind = 2;  // number of shared cycles: 2 or 3

    bool operator==(const RhoPair&) const = default;
};

inline std::string rho_token(const RhoPair& p) {
    return "R" + std::to_string(p.kind) + "@" + std::to_string(p.colour) + ":(" +
           std::to_string(p.e.first) + "," + std::to_string(p.e.second) + "),(" +
           std::to_string(p.f.first) + "," + std::to_string(p.f.second) + ")";
}

// All rho-pairs, ordered with every rho2 before every rho3, then by colour
// and edge pair. For 3-coloured graphs a pair shares at most two cycle
// families, so every reported pair has kind 2.
template <int NC>
std::vector<RhoPair> find_rho_pairs(const BasicColouredGraph<NC>& g) {
    std::vector<RhoPair> out;
    for (int i = 0; i < NC; ++i) {
        std::vector<CycleIds> ids;
        std::vector<int> others;
        for (int j = 0; j < NC; ++j)
            if (j != i) {
                others.push_back(j);
                ids.push_back(cycle_ids(g, i, j));
            }
        const std::vector<std::pair<int, int>> edges = edges_of_colour(g, i);
        for (std::size_t a = 0; a < edges.size(); ++a)
            for (std::size_t b = a + 1; b < edges.size(); ++b) {
                int shared = 0;
                for (const CycleIds& c : ids)
                    if (c.id[edges[a].first] == c.id[edges[b].first]) ++shared;
                if (shared >= 2) out.push_back({i, edges[a], edges[b], shared});
            }
    }
    std::stable_sort(out.begin(), out.end(), [](const RhoPair& a, const RhoPair& b) {
        return a.kind < b.kind;
    });
    return out;
}

template <int NC>
bool is_rigid(const BasicColouredGraph<NC>& g) {
    return find_rho_pairs(g).empty();
}

// Switches a rho-pair: both edges are oriented along their shared cycle of
// the lowest participating colour (walked from its minimum vertex, stepping
// the pair's colour first) and the heads are exchanged. Returns the new
// graph and whether the pair was a rho3. Throws Disconnects if the switch
// separates the graph (possible for rho3 on non-contracted gems).
inline std::pair<ColouredGraph, bool> switch_rho_pair(const ColouredGraph& g,
                                                      const RhoPair& pair) {
    const int i = pair.colour;
    if (i < 0 || i >= 4) throw NotARhoPair("colour out of range");
    const auto norm = [](std::pair<int, int> e) {
        return std::make_pair(std::min(e.first, e.second), std::max(e.first, e.second));
    };
    const std::pair<int, int> e = norm(pair.e);
    const std::pair<int, int> f = norm(pair.f);
    if (e == f) throw NotARhoPair("the two edges must differ");
    for (const auto& edge : {e, f}) {
        if (edge.first < 0 || edge.second >= g.order())
            throw NotARhoPair("edge vertex out of range");
        if (g.neighbour(edge.first, i) != edge.second)
            throw NotARhoPair("pair is not an edge of colour " + std::to_string(i));
    }
    std::vector<int> shared;
    for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        const CycleIds ids = cycle_ids(g, i, j);
        if (ids.id[e.first] == ids.id[f.first]) shared.push_back(j);
    }
    if (shared.size() < 2) throw NotARhoPair("edges share fewer than two cycles");
    const int kind = shared.size() == 3 ? 3 : 2;
    if (pair.kind != kind) throw NotARhoPair("stored kind does not match the graph");

    // Orient both edges along the shared cycle of the lowest colour.
    const int j = shared.front();
    const CycleIds ids = cycle_ids(g, i, j);
    const int target = ids.id[e.first];
    int start = 0;
    while (ids.id[start] != target) ++start;
    std::pair<int, int> eo{-1, -1};
    std::pair<int, int> fo{-1, -1};
    int v = start;
    int c = i;
    do {
        const int w = g.neighbour(v, c);
        if (c == i) {
            if (norm({v, w}) == e) eo = {v, w};
            if (norm({v, w}) == f) fo = {v, w};
        }
        v = w;
        c = (c == i) ? j : i;
    } while (v != start);

    ColouredGraph::Involutions adj = g.adjacency();
    adj[i][eo.first] = fo.second;
    adj[i][fo.second] = eo.first;
    adj[i][fo.first] = eo.second;
    adj[i][eo.second] = fo.first;
    ColouredGraph out(g.order(), std::move(adj), /*require_connected=*/false);
    if (!out.is_connected()) throw Disconnects("switching this pair separates the graph");
    return {std::move(out), kind == 3};
}

// Record of an applied move sequence; h counts the rho3 switches.
struct MoveLog {
    std::vector<std::string> moves;
    int rho3_count = 0;
};

// Deterministic reduction: cancel the first 1-dipole, else 2-dipole, else
// 3-dipole, else switch the first rho-pair (rho2 before rho3) that reaches a
// graph not yet visited at this order. Stops when the graph is rigid; the
// result is also contracted, since an edge joining two residues of its
// complementary colours is a 1-dipole.
inline std::pair<ColouredGraph, MoveLog> reduce_to_rigid(const ColouredGraph& g) {
    ColouredGraph cur = g;
    MoveLog log;
    std::set<std::string> seen;
    const long cap = 50L * g.order() + 1000;
    for (long iter = 0;; ++iter) {
        if (iter > cap)
            throw BudgetExhausted("reduction exceeded " + std::to_string(cap) + " moves");
        const std::vector<Dipole> dipoles = find_dipoles(cur);
        const Dipole* pick = nullptr;
        for (std::size_t want = 1; want <= 3 && !pick; ++want)
            for (const Dipole& d : dipoles)
                if (d.colours.size() == want) {
                    pick = &d;
                    break;
                }
        if (pick) {
            log.moves.push_back(dipole_token(*pick));
            cur = delete_dipole(cur, *pick);
            seen.clear();
            continue;
        }
        const std::vector<RhoPair> rhos = find_rho_pairs(cur);
        if (rhos.empty()) break;
        seen.insert(canonical_code(cur).text);
        bool advanced = false;
        for (const RhoPair& rp : rhos) {
            ColouredGraph next = cur;
            bool is_rho3 = false;
            try {
                std::tie(next, is_rho3) = switch_rho_pair(cur, rp);
            } catch (const Disconnects&) {
                continue;
            }
            const std::string code = canonical_code(next).text;
            if (seen.count(code)) continue;
            seen.insert(code);
            log.moves.push_back(rho_token(rp));
            if (is_rho3) ++log.rho3_count;
            cur = std::move(next);
            advanced = true;
            break;
        }
        if (!advanced)
            throw BudgetExhausted("no rho-switch reaches an unvisited graph");
    }
    return {std::move(cur), std::move(log)};
}

}  // namespace gemcensus
