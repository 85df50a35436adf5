#pragma once

#include <algorithm>
#include <array>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gemcensus/catalog.hpp"
#include "gemcensus/code.hpp"
#include "gemcensus/coloured_graph.hpp"
#include "gemcensus/errors.hpp"
#include "gemcensus/moves.hpp"
#include "gemcensus/parallel.hpp"

namespace gemcensus {
namespace detail {

// Bookkeeping for one bicoloured family {c, new} while the matching of the
// new colour grows: the fixed involution of colour c seeds one path per
// edge, every new edge then merges two paths or closes a cycle. After k new
// edges each family has exactly p - k open paths, so it still gains at
// least one (when k < p) and at most p - k more cycles.
//
// Both ends of an open path additionally carry the set of fixed-edge labels
// found along it, as a bitmask. Since a path only ever grows, two fixed
// edges with equal labels on a common path are already certain to share
// their eventual cycle of this family; when the labels identify a second
// shared bicoloured cycle, the merge that would join them can be pruned on
// the spot instead of waiting for the closure.
struct PathTracker {
    std::vector<int> other_end;
    std::vector<unsigned> mask;
    int closed = 0;

    void init(const std::vector<int>& fixed, const std::vector<unsigned>& labels) {
        other_end = fixed;
        mask = labels;
        closed = 0;
    }

    bool closes(int x, int y) const { return other_end[x] == y; }

    // True when the paths ending at x and y carry a common label. Only
    // meaningful for a merge, so call after ruling out closes(x, y).
    bool merge_conflict(int x, int y) const { return (mask[x] & mask[y]) != 0; }

    // Applies new_colour(x) = y; returns whether a cycle closed. The undo
    // record keeps the path ends and their previous masks.
    bool add(int x, int y, std::array<int, 4>& undo, std::array<unsigned, 2>& old_mask) {
        const int a = other_end[x];
        const int b = other_end[y];
        undo = {x, y, a, b};
        if (a == y) {
            ++closed;
            return true;
        }
        other_end[a] = b;
        other_end[b] = a;
        old_mask = {mask[a], mask[b]};
        const unsigned joined = mask[a] | mask[b];
        mask[a] = joined;
        mask[b] = joined;
        return false;
    }

    void remove(const std::array<int, 4>& undo, const std::array<unsigned, 2>& old_mask,
                bool was_closed) {
        if (was_closed) {
            --closed;
            return;
        }
        other_end[undo[2]] = undo[0];
        other_end[undo[3]] = undo[1];
        mask[undo[2]] = old_mask[0];
        mask[undo[3]] = old_mask[1];
    }
};

// Union-find over the fixed bicoloured cycles with a parity relation per
// union (for the two-colouring of the final graph) and per-component counts
// of still-unmatched vertices. No path compression, so unions undo exactly.
struct ParityDsu {
    std::vector<int> parent, rnk, rel, unmatched;
    int comps = 0;

    void init(const std::vector<int>& sizes) {
        const int m = static_cast<int>(sizes.size());
        parent.resize(m);
        rnk.assign(m, 0);
        rel.assign(m, 0);
        unmatched = sizes;
        comps = m;
        for (int i = 0; i < m; ++i) parent[i] = i;
    }

    std::pair<int, int> find(int x) const {
        int par = 0;
        while (parent[x] != x) {
            par ^= rel[x];
            x = parent[x];
        }
        return {x, par};
    }

    struct Undo {
        int attached = -1, to = -1, rnk_bump = 0, count_moved = 0;
    };

    // Records flip[a] xor flip[b] == parity; false on conflict.
    bool unite(int a, int b, int parity, Undo& u) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return (pa ^ pb) == parity;
        const int need = pa ^ pb ^ parity;
        if (rnk[ra] < rnk[rb]) std::swap(ra, rb);
        parent[rb] = ra;
        rel[rb] = need;
        u.attached = rb;
        u.to = ra;
        if (rnk[ra] == rnk[rb]) {
            ++rnk[ra];
            u.rnk_bump = 1;
        }
        u.count_moved = unmatched[rb];
        unmatched[ra] += unmatched[rb];
        --comps;
        return true;
    }

    void undo(const Undo& u) {
        if (u.attached < 0) return;
        unmatched[u.to] -= u.count_moved;
        if (u.rnk_bump) --rnk[u.to];
        parent[u.attached] = u.attached;
        rel[u.attached] = 0;
        ++comps;
    }
};

// Backtracking over the colour-2 matching above a fixed canonical (s0, s1)
// pair. Prunes: two-colourability (sphere graphs are bipartite), the exact
// cycle budget g02 + g12 = p + 2 - g01, saturation of a component while
// others still have unmatched vertices, and the rigidity pairs that become
// decidable on every path merge or cycle closure.
struct SeedSearch {
    int p = 0, n = 0;
    std::vector<int> s0, s1, cyc01, par;
    int g01 = 0, target = 0;
    bool genus_filter = false;
    int min_count = 3;  // genus + 1
    // Stabiliser bookkeeping: first vertex of each {0,1}-cycle block, the
    // previous block of equal length, and how many vertices of each block
    // are already matched.
    std::vector<int> block_first, prev_same, block_matched;

    std::vector<int> cur;  // partial colour-2 involution, -1 when unmatched
    PathTracker t02, t12;
    ParityDsu dsu;
    std::vector<int> closed02_id, closed12_id;
    int next02 = 0, next12 = 0;
    // Restricts the first edge to (0, root_y) so disjoint subtrees of one
    // base pair can run on different threads.
    int root_y = -1;
    // Per-depth cycle edge buffers and a shared duplicate-check scratch,
    // reused across the whole walk to keep the hot loop allocation-free.
    std::vector<std::array<std::vector<int>, 2>> edge_pool;
    std::vector<int> scratch;

    std::vector<std::string>* found = nullptr;

    void run() {
        cur.assign(n, -1);
        std::vector<unsigned> labels(n);
        for (int v = 0; v < n; ++v) labels[v] = 1u << cyc01[v];
        t02.init(s0, labels);
        t12.init(s1, labels);
        closed02_id.assign(n, -1);
        closed12_id.assign(n, -1);
        next02 = next12 = 0;
        edge_pool.assign(static_cast<std::size_t>(p), {});
        extend(0);
    }

    // Walks the just-closed {fixed, 2} cycle through the edge (x, cur[x]).
    // The fixed-colour edges on it are already label-distinct thanks to the
    // merge-time mask checks; a repeat among its colour-2 edges' closed
    // cycles of the other mixed family certifies a pair sharing two
    // bicoloured cycles and kills the branch. Otherwise stamps the colour-2
    // edges with a fresh cycle id and returns true.
    bool close_cycle(int x, const std::vector<int>& fixed,
                     std::vector<int>& own_id, const std::vector<int>& other_id,
                     int& next_id, std::vector<int>& edges) {
        scratch.clear();
        int a = x;
        do {
            const int b = cur[a];
            edges.push_back(std::min(a, b));
            a = fixed[b];
        } while (a != x);
        for (const int e : edges)
            if (other_id[e] != -1) scratch.push_back(other_id[e]);
        std::sort(scratch.begin(), scratch.end());
        if (std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end())
            return false;
        for (const int e : edges) {
            own_id[e] = next_id;
            own_id[cur[e]] = next_id;
        }
        ++next_id;
        return true;
    }

    void unstamp(const std::vector<int>& edges, std::vector<int>& own_id,
                 int& next_id) {
        for (const int e : edges) {
            own_id[e] = -1;
            own_id[cur[e]] = -1;
        }
        --next_id;
    }

    void extend(int k) {
        if (k == p) {
            finish();
            return;
        }
        int x = 0;
        while (cur[x] != -1) ++x;
        const int bx = cyc01[x];
        const int y_first = k == 0 && root_y > 0 ? root_y : x + 1;
        const int y_last = k == 0 && root_y > 0 ? root_y + 1 : n;
        for (int y = y_first; y < y_last; ++y) {
            if (cur[y] != -1) continue;
            // Blocks without any colour-2 endpoint are interchangeable with
            // every untouched block of the same length, and such a block can
            // be rotated and reflected onto itself, so the first edge into
            // fresh territory may as well hit the earliest eligible block at
            // its first vertex. Both moves fix x and the partial matching,
            // so each skipped branch has an equivalent surviving sibling.
            const int by = cyc01[y];
            if (by != bx && block_matched[by] == 0) {
                int earliest = by;
                for (int t = prev_same[by]; t != -1; t = prev_same[t])
                    if (block_matched[t] == 0 && t != bx) earliest = t;
                if (earliest != by || y != block_first[by]) continue;
            }
            if (!t02.closes(x, y) && t02.merge_conflict(x, y)) continue;
            if (!t12.closes(x, y) && t12.merge_conflict(x, y)) continue;
            // The two classes alternate along each {0,1}-cycle, so this edge
            // fixes the relative flip of the two cycles it joins.
            ParityDsu::Undo du;
            const int rel = par[x] ^ par[y] ^ 1;
            if (cyc01[x] == cyc01[y]) {
                if (rel != 0) continue;
            } else if (!dsu.unite(cyc01[x], cyc01[y], rel, du)) {
                continue;
            }
            const int root = dsu.find(cyc01[x]).first;
            dsu.unmatched[root] -= 2;
            cur[x] = y;
            cur[y] = x;
            ++block_matched[bx];
            ++block_matched[by];

            // A component whose vertices are all matched can never join the
            // rest, so the final graph would be disconnected.
            bool ok = !(dsu.unmatched[root] == 0 && k + 1 < p);
            std::array<int, 4> u02{}, u12{};
            std::array<unsigned, 2> m02{}, m12{};
            int trackers = 0;
            bool closed02 = false, closed12 = false;
            bool ids02 = false, ids12 = false;
            std::vector<int>& edges02 = edge_pool[k][0];
            std::vector<int>& edges12 = edge_pool[k][1];
            edges02.clear();
            edges12.clear();
            if (ok) {
                closed02 = t02.add(x, y, u02, m02);
                trackers = 1;
                if (closed02) {
                    ids02 = close_cycle(x, s0, closed02_id, closed12_id,
                                        next02, edges02);
                    ok = ids02;
                }
            }
            if (ok) {
                closed12 = t12.add(x, y, u12, m12);
                trackers = 2;
                if (closed12) {
                    ids12 = close_cycle(x, s1, closed12_id, closed02_id,
                                        next12, edges12);
                    ok = ids12;
                }
            }
            if (ok) {
                const int rem = p - (k + 1);
                const int total = t02.closed + t12.closed;
                if (total + 2 * rem < target)
                    ok = false;
                else if (rem > 0 ? total > target - 2 : total != target)
                    ok = false;
                else if (genus_filter) {
                    if (t02.closed > target - min_count ||
                        t12.closed > target - min_count)
                        ok = false;
                    else if (g01 != min_count && t02.closed > min_count &&
                             t12.closed > min_count)
                        ok = false;
                }
            }
            if (ok) extend(k + 1);

            if (trackers >= 2) {
                if (ids12) unstamp(edges12, closed12_id, next12);
                t12.remove(u12, m12, closed12);
            }
            if (trackers >= 1) {
                if (ids02) unstamp(edges02, closed02_id, next02);
                t02.remove(u02, m02, closed02);
            }
            --block_matched[bx];
            --block_matched[by];
            cur[x] = -1;
            cur[y] = -1;
            dsu.unmatched[root] += 2;
            dsu.undo(du);
        }
    }

    void finish() {
        if (dsu.comps != 1) return;
        if (t02.closed + t12.closed != target) return;
        if (genus_filter) {
            if (t02.closed < min_count || t12.closed < min_count) return;
            if (std::min({g01, t02.closed, t12.closed}) != min_count) return;
        }
        const TriColouredGraph g(n, {s0, s1, cur});
        if (!is_rigid(g)) return;
        found->push_back(canonical_code(g).text);
    }
};

inline std::vector<std::vector<int>> partitions_desc(int p) {
    std::vector<std::vector<int>> out;
    std::vector<int> part;
    const auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.push_back(part);
            return;
        }
        for (int next = std::min(remaining, max_part); next >= 1; --next) {
            part.push_back(next);
            self(self, remaining - next, next);
            part.pop_back();
        }
    };
    rec(rec, p, p);
    return out;
}

}  // namespace detail

// All rigid 3-coloured graphs of order 2p representing the sphere, one per
// colour-isomorphism class, sorted by canonical code and carrying their
// canonical labelling. With genus_filter the list keeps only seeds whose
// three cycle counts all reach genus + 1 with at least one hitting it
// exactly; every completion of such a seed has that regular genus.
inline std::vector<TriColouredGraph> generate_sphere_seeds(int p, bool genus_filter,
                                                           int genus = 2,
                                                           int threads = 1) {
    if (p < 1) throw InvalidParams("seed generation needs p >= 1");
    if (genus < 1) throw InvalidParams("genus must be at least 1");
    const int n = 2 * p;

    std::vector<detail::SeedSearch> bases;
    for (const std::vector<int>& lambda : detail::partitions_desc(p)) {
        const int g01 = static_cast<int>(lambda.size());
        const int target = p + 2 - g01;
        const int min_count = genus + 1;
        if (target < 2) continue;
        if (genus_filter && (g01 < min_count || target < 2 * min_count)) continue;

        // Canonical base pair for this cycle structure: colour 0 matches
        // consecutive pairs, colour 1 closes each block into one cycle.
        detail::SeedSearch search;
        search.p = p;
        search.n = n;
        search.g01 = g01;
        search.target = target;
        search.genus_filter = genus_filter;
        search.min_count = min_count;
        search.s0.assign(n, -1);
        search.s1.assign(n, -1);
        search.cyc01.assign(n, -1);
        search.par.assign(n, 0);
        search.block_first.assign(g01, 0);
        search.prev_same.assign(g01, -1);
        search.block_matched.assign(g01, 0);
        std::vector<int> sizes(g01);
        int base = 0;
        for (int t = 0; t < g01; ++t) {
            const int len = 2 * lambda[t];
            sizes[t] = len;
            search.block_first[t] = base;
            if (t > 0 && lambda[t - 1] == lambda[t]) search.prev_same[t] = t - 1;
            for (int q = 0; q < len; q += 2) {
                search.s0[base + q] = base + q + 1;
                search.s0[base + q + 1] = base + q;
            }
            for (int q = 1; q < len; q += 2) {
                const int w = (q + 1) % len;
                search.s1[base + q] = base + w;
                search.s1[base + w] = base + q;
            }
            for (int q = 0; q < len; ++q) {
                search.cyc01[base + q] = t;
                search.par[base + q] = q % 2;
            }
            base += len;
        }
        search.dsu.init(sizes);
        bases.push_back(std::move(search));
    }

    // One task per (base pair, first edge): the subtrees are disjoint, so
    // they spread over threads without coordination beyond the final merge.
    std::vector<std::string> codes;
    std::mutex merge_mutex;
    std::vector<std::pair<int, int>> tasks;
    for (int b = 0; b < static_cast<int>(bases.size()); ++b)
        for (int y = 1; y < n; ++y) tasks.emplace_back(b, y);
    parallel_for(static_cast<int>(tasks.size()), threads, [&](int i) {
        detail::SeedSearch search = bases[tasks[i].first];
        search.root_y = tasks[i].second;
        std::vector<std::string> local;
        search.found = &local;
        search.run();
        if (local.empty()) return;
        const std::lock_guard<std::mutex> lock(merge_mutex);
        codes.insert(codes.end(), std::make_move_iterator(local.begin()),
                     std::make_move_iterator(local.end()));
    });

    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    std::vector<TriColouredGraph> out;
    out.reserve(codes.size());
    for (const std::string& code : codes) out.push_back(from_code<3>(code));
    return out;
}

namespace detail {

// Backtracking over the colour-3 matching above a sphere seed. A completion
// is a contracted manifold gem exactly when each mixed family {j,3} closes
// the complementary seed count (g03 = g12, g13 = g02, g23 = g01) and the
// three mixed 3-residues are connected, so the exact count targets prune
// without loss. Rigidity pairs are rejected as paths merge and cycles
// close, with a full check at the leaves as the authority.
struct CompletionSearch {
    const TriColouredGraph* seed = nullptr;
    int p = 0, n = 0;
    std::array<int, 3> target{};
    std::array<std::vector<int>, 3> seed_cycle;  // per pair index, see below
    std::vector<int> cur;
    // Two trackers per mixed family {j,3}: one per seed family of colour j,
    // since a colour-j pair sharing either one plus the new cycle is enough.
    std::array<PathTracker, 3> tracker_a, tracker_b;
    std::array<std::vector<int>, 3> closed_id;
    std::array<int, 3> next_id{};
    // Per-depth cycle edge buffers plus duplicate-check scratch space,
    // reused across the whole walk to keep the hot loop allocation-free.
    std::vector<std::array<std::vector<int>, 3>> edge_pool;
    std::vector<int> scratch_a, scratch_b;

    std::vector<std::pair<std::string, ColouredGraph>>* out = nullptr;
    std::set<std::string>* seen = nullptr;

    static int pair_index(int a, int b) {
        // {0,1} -> 0, {0,2} -> 1, {1,2} -> 2 for a < b
        return a + b - 1;
    }

    void run() {
        cur.assign(n, -1);
        for (int j = 0; j < 3; ++j) {
            const int oa = j == 0 ? 1 : 0;
            const int ob = j == 2 ? 1 : 2;
            const int fam_a = pair_index(std::min(j, oa), std::max(j, oa));
            const int fam_b = pair_index(std::min(j, ob), std::max(j, ob));
            std::vector<unsigned> labels_a(n), labels_b(n);
            for (int v = 0; v < n; ++v) {
                labels_a[v] = 1u << seed_cycle[fam_a][v];
                labels_b[v] = 1u << seed_cycle[fam_b][v];
            }
            tracker_a[j].init(seed->involution(j), labels_a);
            tracker_b[j].init(seed->involution(j), labels_b);
            closed_id[j].assign(n, -1);
            next_id[j] = 0;
        }
        edge_pool.assign(static_cast<std::size_t>(p), {});
        extend(0);
    }

    // Walks the just-closed {j,3} cycle through the edge (x, cur[x]). The
    // colour-j edges on it are label-distinct in both seed families thanks
    // to the merge-time mask checks; the colour-3 edges are bucketed by
    // their already-closed cycles of the other two mixed families, and any
    // repeat certifies a pair sharing two bicoloured cycles. Otherwise
    // stamps the colour-3 edges with a fresh id.
    bool close_cycle(int j, int x, std::vector<int>& edges) {
        const std::vector<int>& fixed = seed->involution(j);
        const int ja = (j + 1) % 3, jb = (j + 2) % 3;
        scratch_a.clear();
        scratch_b.clear();
        int a = x;
        do {
            const int b = cur[a];
            edges.push_back(std::min(a, b));
            a = fixed[b];
        } while (a != x);
        for (const int e : edges) {
            if (closed_id[ja][e] != -1) scratch_a.push_back(closed_id[ja][e]);
            if (closed_id[jb][e] != -1) scratch_b.push_back(closed_id[jb][e]);
        }
        const auto has_dup = [](std::vector<int>& v) {
            std::sort(v.begin(), v.end());
            return std::adjacent_find(v.begin(), v.end()) != v.end();
        };
        if (has_dup(scratch_a) || has_dup(scratch_b)) return false;
        for (const int e : edges) {
            closed_id[j][e] = next_id[j];
            closed_id[j][cur[e]] = next_id[j];
        }
        ++next_id[j];
        return true;
    }

    void unstamp(int j, const std::vector<int>& edges) {
        for (const int e : edges) {
            closed_id[j][e] = -1;
            closed_id[j][cur[e]] = -1;
        }
        --next_id[j];
    }

    void extend(int k) {
        if (k == p) {
            finish();
            return;
        }
        int x = 0;
        while (cur[x] != -1) ++x;
        for (int y = x + 1; y < n; ++y) {
            if (cur[y] != -1) continue;
            bool viable = true;
            for (int j = 0; j < 3 && viable; ++j)
                if (!tracker_a[j].closes(x, y) &&
                    (tracker_a[j].merge_conflict(x, y) ||
                     tracker_b[j].merge_conflict(x, y)))
                    viable = false;
            if (!viable) continue;
            cur[x] = y;
            cur[y] = x;
            bool ok = true;
            std::array<std::array<int, 4>, 3> undo_a{}, undo_b{};
            std::array<std::array<unsigned, 2>, 3> old_a{}, old_b{};
            std::array<bool, 3> closed{}, stamped{};
            std::array<std::vector<int>, 3>& edges = edge_pool[k];
            for (std::vector<int>& e : edges) e.clear();
            int trackers = 0;
            for (int j = 0; j < 3 && ok; ++j) {
                closed[j] = tracker_a[j].add(x, y, undo_a[j], old_a[j]);
                tracker_b[j].add(x, y, undo_b[j], old_b[j]);
                ++trackers;
                if (closed[j]) {
                    stamped[j] = close_cycle(j, x, edges[j]);
                    ok = stamped[j];
                }
                if (ok) {
                    const int rem = p - (k + 1);
                    if (tracker_a[j].closed + rem < target[j])
                        ok = false;
                    else if (rem > 0 ? tracker_a[j].closed > target[j] - 1
                                     : tracker_a[j].closed != target[j])
                        ok = false;
                }
            }
            if (ok) extend(k + 1);
            for (int j = trackers - 1; j >= 0; --j) {
                if (stamped[j]) unstamp(j, edges[j]);
                tracker_b[j].remove(undo_b[j], old_b[j], closed[j]);
                tracker_a[j].remove(undo_a[j], old_a[j], closed[j]);
            }
            cur[x] = -1;
            cur[y] = -1;
        }
    }

    void finish() {
        ColouredGraph::Involutions adj;
        for (int j = 0; j < 3; ++j) adj[j] = seed->involution(j);
        adj[3] = cur;
        const ColouredGraph g(n, std::move(adj));
        if (!is_crystallization(g)) return;
        if (!is_rigid(g)) return;
        const Code code = canonical_code(g);
        if (seen->insert(code.text).second) out->emplace_back(code.text, g);
    }
};

}  // namespace detail

// All ways of adding a colour-3 perfect matching to a sphere seed so that
// the result is a rigid crystallization, one per isomorphism class, sorted
// by canonical code.
inline std::vector<ColouredGraph> complete_with_colour3(const TriColouredGraph& seed) {
    if (!is_sphere(seed)) throw InvalidParams("seed does not represent the sphere");
    if (!is_rigid(seed)) throw InvalidParams("seed is not rigid");
    const int n = seed.order();

    detail::CompletionSearch search;
    search.seed = &seed;
    search.p = n / 2;
    search.n = n;
    // Each mixed family must close exactly the count of the complementary
    // seed pair; anything else breaks one of the residue sphere conditions.
    search.target = {count_bicoloured_cycles(seed, 1, 2),
                     count_bicoloured_cycles(seed, 0, 2),
                     count_bicoloured_cycles(seed, 0, 1)};
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            search.seed_cycle[detail::CompletionSearch::pair_index(a, b)] =
                cycle_ids(seed, a, b).id;

    std::vector<std::pair<std::string, ColouredGraph>> found;
    std::set<std::string> seen;
    search.out = &found;
    search.seen = &seen;
    search.run();

    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<ColouredGraph> out;
    out.reserve(found.size());
    for (auto& entry : found) out.push_back(std::move(entry.second));
    return out;
}

// Generates the census of rigid crystallizations of the given regular genus
// up to max_order vertices, sorted by (order, code). Seed subtrees and then
// completions are distributed across threads; the deduplicating merges are
// the only synchronised steps.
inline Catalogue generate_catalogue(int max_order, int genus = 2, int threads = 1) {
    if (max_order < 2 || max_order % 2 != 0)
        throw InvalidParams("max_order must be positive and even");
    if (genus < 1) throw InvalidParams("genus must be at least 1");
    Catalogue cat;
    cat.max_order = max_order;
    cat.genus = genus;
    std::mutex merge_mutex;
    std::set<std::string> seen;
    for (int p = 1; 2 * p <= max_order; ++p) {
        const std::vector<TriColouredGraph> seeds =
            generate_sphere_seeds(p, true, genus, threads);
        parallel_for(static_cast<int>(seeds.size()), threads, [&](int i) {
            const std::vector<ColouredGraph> graphs = complete_with_colour3(seeds[i]);
            std::vector<CatalogueEntry> local;
            for (const ColouredGraph& g : graphs) {
                if (regular_genus(g) != genus) continue;
                CatalogueEntry e;
                e.code = canonical_code(g);
                e.order = g.order();
                e.bipartite = is_bipartite(g);
                e.genus = genus;
                local.push_back(std::move(e));
            }
            const std::lock_guard<std::mutex> lock(merge_mutex);
            for (CatalogueEntry& e : local)
                if (seen.insert(e.code.text).second) cat.entries.push_back(std::move(e));
        });
    }
    std::sort(cat.entries.begin(), cat.entries.end(), catalogue_entry_less);
    return cat;
}

}  // namespace gemcensus
