#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "gemcensus/coloured_graph.hpp"
#include "gemcensus/errors.hpp"
#include "gemcensus/invariants.hpp"
#include "gemcensus/moves.hpp"

namespace gemcensus {

// One side of a face identification: the partner tetrahedron, the partner
// face, and the local vertex map into the partner (perm[face] is the partner
// face index). Unglued faces keep tet == -1.
struct FaceGluing {
    int tet = -1;
    int face = -1;
    std::array<int, 4> perm{0, 1, 2, 3};

    bool glued() const { return tet >= 0; }

    bool operator==(const FaceGluing&) const = default;
};

// A boundary edge anchor: the class of edge `edge` of tetrahedron `tet`
// carries the integer `value`. Labels mark the three curve classes on the
// boundary torus of a layered solid torus.
struct EdgeLabel {
    int tet = 0;
    int edge = 0;
    int value = 0;

    bool operator==(const EdgeLabel&) const = default;
};

// A pseudo-simplicial triangulation: abstract tetrahedra with faces glued in
// pairs by affine maps. A tetrahedron may be glued to itself along two
// distinct faces, and several of its edges may end up identified.
struct Triangulation {
    int tets = 0;
    std::vector<std::array<FaceGluing, 4>> adj;
    std::vector<EdgeLabel> labels;

    bool operator==(const Triangulation&) const = default;
};

namespace detail {

// Tetrahedron edges in the fixed order 01, 02, 03, 12, 13, 23.
inline constexpr std::array<std::array<int, 2>, 6> edge_ends = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline int edge_index(int a, int b) {
    if (a > b) std::swap(a, b);
    return a == 0 ? b - 1 : a + b;
}

// Directed edges get two ids per undirected slot: 12 per tetrahedron.
inline int directed_edge_id(int tet, int a, int b) {
    return 12 * tet + 2 * edge_index(a, b) + (a < b ? 0 : 1);
}

// Union-find whose roots are the smallest ids of their classes, so roots are
// canonical and independent of the merge order.
class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
    }

    int size() const { return static_cast<int>(parent_.size()); }

    int class_count() {
        int n = 0;
        for (int i = 0; i < size(); ++i)
            if (find(i) == i) ++n;
        return n;
    }

private:
    std::vector<int> parent_;
};

// Record a face identification on both sides. The map must send face f of
// tetrahedron a onto face g of tetrahedron b, and both faces must be free.
inline void add_gluing(Triangulation& t, int a, int f, int b, int g,
                       const std::array<int, 4>& perm) {
    if (a == b && f == g)
        throw InvalidParams("cannot glue a face to itself");
    if (t.adj[a][f].glued() || t.adj[b][g].glued())
        throw InvalidParams("face already glued");
    if (perm[f] != g)
        throw InvalidParams("gluing map does not send the face onto its target");
    std::array<int, 4> inv{};
    for (int v = 0; v < 4; ++v) inv[perm[v]] = v;
    t.adj[a][f] = {b, g, perm};
    t.adj[b][g] = {a, f, inv};
}

// Vertex classes of the quotient complex, over the 4*tets local vertices.
inline UnionFind vertex_classes(const Triangulation& t) {
    UnionFind uf(4 * t.tets);
    for (int tet = 0; tet < t.tets; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.adj[tet][f];
            if (!g.glued()) continue;
            for (int v = 0; v < 4; ++v)
                if (v != f) uf.unite(4 * tet + v, 4 * g.tet + g.perm[v]);
        }
    return uf;
}

// Directed edge classes: both directions of every edge shared by a glued
// face pair are identified with their images.
inline UnionFind directed_edge_classes(const Triangulation& t) {
    UnionFind uf(12 * t.tets);
    for (int tet = 0; tet < t.tets; ++tet)
        for (int f = 0; f < 4; ++f) {
            const FaceGluing& g = t.adj[tet][f];
            if (!g.glued()) continue;
            for (int a = 0; a < 4; ++a) {
                if (a == f) continue;
                for (int b = 0; b < 4; ++b) {
                    if (b == f || b == a) continue;
                    uf.unite(directed_edge_id(tet, a, b),
                             directed_edge_id(g.tet, g.perm[a], g.perm[b]));
                }
            }
        }
    return uf;
}

// Undirected edge classes: the directed classes with reversal quotiented out.
inline UnionFind edge_classes(const Triangulation& t) {
    UnionFind uf = directed_edge_classes(t);
    for (int i = 0; i < 12 * t.tets; i += 2) uf.unite(i, i + 1);
    return uf;
}

// A complex is edge-valid when no edge is identified with itself reversed;
// such an identification would pinch the edge mid-way.
inline bool valid_edges(const Triangulation& t) {
    UnionFind uf = directed_edge_classes(t);
    for (int i = 0; i < 12 * t.tets; i += 2)
        if (uf.find(i) == uf.find(i + 1)) return false;
    return true;
}

}  // namespace detail

// Unglued faces, in (tetrahedron, face) order.
inline std::vector<std::pair<int, int>> boundary_faces(const Triangulation& t) {
    std::vector<std::pair<int, int>> out;
    for (int tet = 0; tet < t.tets; ++tet)
        for (int f = 0; f < 4; ++f)
            if (!t.adj[tet][f].glued()) out.emplace_back(tet, f);
    return out;
}

inline bool is_closed(const Triangulation& t) {
    return boundary_faces(t).empty();
}

inline int euler_characteristic(const Triangulation& t) {
    detail::UnionFind verts = detail::vertex_classes(t);
    detail::UnionFind edges = detail::edge_classes(t);
    const int boundary = static_cast<int>(boundary_faces(t).size());
    const int faces = (4 * t.tets - boundary) / 2 + boundary;
    return verts.class_count() - edges.class_count() + faces - t.tets;
}

// The label values present on the boundary, sorted.
inline std::vector<int> boundary_edge_labels(const Triangulation& t) {
    std::vector<int> out;
    out.reserve(t.labels.size());
    for (const EdgeLabel& l : t.labels) out.push_back(l.value);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Fundamental group of the quotient complex from its 2-skeleton: a spanning
// tree of the 1-skeleton is contracted, the remaining edge classes generate,
// and every triangle class contributes the relator tracing its boundary.
class SkeletonPresentation {
public:
    explicit SkeletonPresentation(const Triangulation& t) { build(t); }

    const GroupPresentation& group() const { return group_; }

    // Signed generator crossed when walking the a -> b edge of tetrahedron
    // `tet`; 0 when that edge class lies in the spanning tree.
    int letter(int tet, int a, int b) const {
        const int fwd = dir_root_[directed_edge_id(tet, a, b)];
        const int bwd = dir_root_[directed_edge_id(tet, b, a)];
        const int gen = gen_.at(std::min(fwd, bwd));
        return fwd < bwd ? gen : -gen;
    }

private:
    void build(const Triangulation& t) {
        const int n = 12 * t.tets;
        UnionFind dir = directed_edge_classes(t);
        dir_root_.resize(n);
        for (int i = 0; i < n; ++i) dir_root_[i] = dir.find(i);
        for (int i = 0; i < n; i += 2)
            if (dir_root_[i] == dir_root_[i + 1])
                throw InvalidParams("complex has an edge identified with its reverse");

        UnionFind verts = vertex_classes(t);
        std::map<int, int> vid;
        for (int v = 0; v < 4 * t.tets; ++v) vid.emplace(verts.find(v), 0);
        int nv = 0;
        for (auto& [root, id] : vid) id = nv++;

        // One endpoint pair per undirected class, read off the direction
        // whose root is the class key.
        std::map<int, std::pair<int, int>> endpoints;
        for (int i = 0; i < n; ++i) {
            const int key = std::min(dir_root_[i], dir_root_[i ^ 1]);
            if (dir_root_[i] != key || endpoints.count(key)) continue;
            const int tet = i / 12;
            int a = edge_ends[(i % 12) / 2][0];
            int b = edge_ends[(i % 12) / 2][1];
            if (i % 2) std::swap(a, b);
            endpoints[key] = {vid.at(verts.find(4 * tet + a)),
                              vid.at(verts.find(4 * tet + b))};
        }

        // Breadth-first spanning tree, edges offered in class-key order.
        std::vector<std::vector<std::pair<int, int>>> adj(nv);
        std::vector<int> keys;
        keys.reserve(endpoints.size());
        for (const auto& [key, ends] : endpoints) {
            const int e = static_cast<int>(keys.size());
            keys.push_back(key);
            adj[ends.first].emplace_back(e, ends.second);
            adj[ends.second].emplace_back(e, ends.first);
        }
        std::vector<char> tree(keys.size(), 0);
        std::vector<char> visited(nv, 0);
        std::queue<int> frontier;
        visited[vid.at(verts.find(0))] = 1;
        frontier.push(vid.at(verts.find(0)));
        int reached = 1;
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (const auto& [e, w] : adj[u]) {
                if (visited[w]) continue;
                visited[w] = 1;
                tree[e] = 1;
                ++reached;
                frontier.push(w);
            }
        }
        if (reached != nv)
            throw Disconnected("complex 1-skeleton is not connected");

        int m = 0;
        for (std::size_t e = 0; e < keys.size(); ++e)
            gen_[keys[e]] = tree[e] ? 0 : ++m;
        group_.generators = m;

        // One relator per triangle class; a glued pair is taken from the
        // side with the smaller (tetrahedron, face) id.
        for (int tet = 0; tet < t.tets; ++tet)
            for (int f = 0; f < 4; ++f) {
                const FaceGluing& g = t.adj[tet][f];
                if (g.glued() && std::pair(g.tet, g.face) < std::pair(tet, f))
                    continue;
                std::array<int, 3> v{};
                int k = 0;
                for (int w = 0; w < 4; ++w)
                    if (w != f) v[k++] = w;
                std::vector<int> word;
                for (const auto& [a, b] : {std::pair(v[0], v[1]), std::pair(v[1], v[2]),
                                           std::pair(v[2], v[0])}) {
                    const int s = letter(tet, a, b);
                    if (s != 0) word.push_back(s);
                }
                group_.relators.push_back(std::move(word));
            }
    }

    std::vector<int> dir_root_;
    std::map<int, int> gen_;
    GroupPresentation group_;
};

}  // namespace detail

inline GroupPresentation fundamental_group(const Triangulation& t) {
    return detail::SkeletonPresentation(t).group();
}

inline HomologyResult first_homology(const Triangulation& t) {
    return abelianized_homology(fundamental_group(t));
}

// The three boundary labels of a layered solid torus. The set is unordered;
// a mirror pair like (1, 2, -3) and (-1, -2, 3) names the same torus.
struct LstParams {
    int p = 0;
    int q = 0;
    int r = 0;
};

namespace detail {

// Sorted, sign-normalized label set: entries nonzero, sum zero, at least two
// positive, and the two positive entries coprime.
inline std::array<int, 3> normalized_lst(const LstParams& params) {
    std::array<int, 3> v{params.p, params.q, params.r};
    for (const int x : v)
        if (x == 0) throw InvalidParams("layered solid torus labels must be nonzero");
    if (v[0] + v[1] + v[2] != 0)
        throw InvalidParams("layered solid torus labels must sum to zero");
    int positives = 0;
    for (const int x : v) positives += x > 0 ? 1 : 0;
    if (positives < 2)
        for (int& x : v) x = -x;
    std::sort(v.begin(), v.end());
    if (std::gcd(v[1], v[2]) != 1)
        throw InvalidParams("layered solid torus labels must be coprime");
    return v;
}

// The one-tetrahedron solid torus with boundary labels {1, 2, -3}: faces 013
// and 012 are identified by 0 -> 1, 1 -> 3, 2 -> 0. The boundary edge
// classes are {01, 02, 13} (label 1), {03, 12} (label 2) and the double
// diagonal {23} (label -3); each is the labelled multiple of the core.
inline Triangulation base_lst() {
    Triangulation t;
    t.tets = 1;
    t.adj.resize(1);
    add_gluing(t, 0, 3, 0, 2, {1, 3, 0, 2});
    t.labels = {{0, 1, 1}, {0, 2, 2}, {0, 5, -3}};
    return t;
}

}  // namespace detail

namespace detail {

// Stack a fresh tetrahedron across the two-face boundary torus so that its
// 01 edge lies on the edge class rooted at `target`, which becomes interior.
// The new boundary is faces 0 and 1 of the returned tetrahedron, and the new
// 23 edge is the opposite diagonal of the quadrilateral the old one split.
// Of the four direction combinations the first edge-valid one is used; the
// alternatives differ by a homeomorphism of the layered solid torus.
inline int layer_tetrahedron(Triangulation& t,
                             const std::array<std::pair<int, int>, 2>& bf,
                             int target) {
    UnionFind edges = edge_classes(t);

    // Locate the target edge and the opposite vertex on each boundary face.
    std::array<std::array<int, 2>, 2> on{};
    std::array<int, 2> third{};
    for (int s = 0; s < 2; ++s) {
        const auto& [ft, ff] = bf[s];
        std::array<int, 3> v{};
        int k = 0;
        for (int w = 0; w < 4; ++w)
            if (w != ff) v[k++] = w;
        int found = -1;
        for (int e = 0; e < 3; ++e) {
            const int a = v[(e + 1) % 3];
            const int b = v[(e + 2) % 3];
            if (edges.find(12 * ft + 2 * edge_index(a, b)) == target) {
                found = e;
                break;
            }
        }
        if (found < 0)
            throw Error("layering: target edge missing from a boundary face");
        on[s] = {std::min(v[(found + 1) % 3], v[(found + 2) % 3]),
                 std::max(v[(found + 1) % 3], v[(found + 2) % 3])};
        third[s] = v[found];
    }

    const int nt = t.tets;
    t.tets += 1;
    t.adj.emplace_back();
    for (int d1 = 0; d1 < 2; ++d1)
        for (int d2 = 0; d2 < 2; ++d2) {
            Triangulation trial = t;
            std::array<int, 4> p{}, q{};
            p[0] = on[0][d1];
            p[1] = on[0][1 - d1];
            p[2] = third[0];
            p[3] = bf[0].second;
            q[0] = on[1][d2];
            q[1] = on[1][1 - d2];
            q[3] = third[1];
            q[2] = bf[1].second;
            add_gluing(trial, nt, 3, bf[0].first, bf[0].second, p);
            add_gluing(trial, nt, 2, bf[1].first, bf[1].second, q);
            if (!valid_edges(trial)) continue;
            t = std::move(trial);
            return nt;
        }
    throw Error("layering found no edge-consistent attachment");
}

}  // namespace detail

// Layer a fresh tetrahedron across the boundary edge carrying `edge_label`:
// two of its faces are glued onto the two boundary faces so that its 01 edge
// lies on the labelled class, which becomes interior. When the remaining
// labels are u and w, the new boundary carries u, -w and w - u, negated as a
// whole if fewer than two of those are positive. With duplicate labels the
// anchor stored first is layered.
inline Triangulation layering(const Triangulation& t, int edge_label) {
    int which = -1;
    for (std::size_t i = 0; i < t.labels.size(); ++i)
        if (t.labels[i].value == edge_label) {
            which = static_cast<int>(i);
            break;
        }
    if (which < 0)
        throw NoSuchBoundaryEdge("no boundary edge labelled " +
                                 std::to_string(edge_label));
    const std::vector<std::pair<int, int>> bf = boundary_faces(t);
    if (bf.size() != 2 || t.labels.size() != 3)
        throw InvalidParams("layering needs a labelled one-torus boundary");

    Triangulation out = t;
    detail::UnionFind edges = detail::edge_classes(out);
    const int target =
        edges.find(12 * t.labels[which].tet + 2 * t.labels[which].edge);
    const int nt = detail::layer_tetrahedron(out, {bf[0], bf[1]}, target);

    // Relabel: the remaining classes now run over side edges of the new
    // tetrahedron, the fresh 23 edge is the new diagonal.
    const EdgeLabel& ul = t.labels[which == 0 ? 1 : 0];
    const EdgeLabel& wl = t.labels[which == 2 ? 1 : 2];
    detail::UnionFind after = detail::edge_classes(out);
    const int u_root = after.find(12 * ul.tet + 2 * ul.edge);
    const int w_root = after.find(12 * wl.tet + 2 * wl.edge);
    int u_edge = -1, w_edge = -1;
    for (int e = 1; e <= 4; ++e) {
        const int root = after.find(12 * nt + 2 * e);
        if (root == u_root && u_edge < 0)
            u_edge = e;
        else if (root == w_root && w_edge < 0)
            w_edge = e;
    }
    if (u_edge < 0 || w_edge < 0)
        throw Error("layering lost a boundary label");
    out.labels = {{nt, u_edge, ul.value},
                  {nt, w_edge, -wl.value},
                  {nt, 5, wl.value - ul.value}};
    int positives = 0;
    for (const EdgeLabel& l : out.labels) positives += l.value > 0 ? 1 : 0;
    if (positives < 2)
        for (EdgeLabel& l : out.labels) l.value = -l.value;
    return out;
}

// Build the layered solid torus whose boundary carries the given label set,
// by the subtractive chain down to the one-tetrahedron torus: with positive
// labels j < k, peel off a layering across the k - j class; {1, 1, -2} is
// the base layered across its own diagonal.
inline Triangulation lst(const LstParams& params) {
    const std::array<int, 3> v = detail::normalized_lst(params);
    const int j = v[1];
    const int k = v[2];
    if (j == 1 && k == 2) return detail::base_lst();
    if (j == 1 && k == 1) return layering(detail::base_lst(), -3);
    return layering(lst(LstParams{j, k - j, -k}), k - j);
}

namespace detail {

// A boundary torus of the block: its two faces plus directed anchors for the
// horizontal (section) curve, the vertical (fibre) curve and the diagonal.
struct TorusMark {
    std::array<std::pair<int, int>, 2> faces;
    std::array<int, 3> horizontal;
    std::array<int, 3> vertical;
    std::array<int, 3> diagonal;
};

inline std::array<TorusMark, 3> pants_marks() {
    return {{
        {{{{3, 0}, {4, 0}}}, {3, 1, 2}, {3, 2, 3}, {3, 1, 3}},
        {{{{12, 0}, {13, 0}}}, {12, 1, 2}, {12, 2, 3}, {12, 1, 3}},
        {{{{1, 3}, {2, 3}}}, {1, 0, 1}, {1, 1, 2}, {1, 0, 2}},
    }};
}

}  // namespace detail

// The product of a three-holed sphere with a circle, as fifteen tetrahedra:
// a disc is fanned into five triangles, each triangle times the circle is a
// three-tetrahedron prism column, and two pairs of outer quadrilateral walls
// are identified so exactly three torus walls remain. Its first homology is
// generated by the fibre and the three torus sections, which sum to zero.
inline Triangulation pants_block() {
    Triangulation t;
    t.tets = 15;
    t.adj.resize(15);
    // Prism columns: tets 3q, 3q+1, 3q+2 stacked bottom to top, the column
    // closed onto itself.
    for (int q = 0; q < 5; ++q) {
        const int a = 3 * q;
        detail::add_gluing(t, a, 2, a + 1, 2, {0, 1, 2, 3});
        detail::add_gluing(t, a + 1, 1, a + 2, 1, {0, 1, 2, 3});
        detail::add_gluing(t, a, 3, a + 2, 0, {1, 2, 3, 0});
    }
    // Shared walls between consecutive fan triangles.
    detail::add_gluing(t, 0, 1, 4, 3, {0, 3, 1, 2});
    detail::add_gluing(t, 2, 2, 5, 3, {0, 1, 3, 2});
    detail::add_gluing(t, 3, 1, 6, 1, {0, 1, 2, 3});
    detail::add_gluing(t, 5, 2, 8, 2, {0, 1, 2, 3});
    detail::add_gluing(t, 7, 3, 10, 3, {0, 1, 2, 3});
    detail::add_gluing(t, 8, 3, 11, 3, {0, 1, 2, 3});
    detail::add_gluing(t, 9, 1, 13, 3, {0, 3, 1, 2});
    detail::add_gluing(t, 11, 2, 14, 3, {0, 1, 3, 2});
    // Outer wall identifications closing the disc into a three-holed sphere.
    detail::add_gluing(t, 0, 0, 6, 0, {0, 1, 2, 3});
    detail::add_gluing(t, 1, 0, 7, 0, {0, 1, 2, 3});
    detail::add_gluing(t, 9, 0, 12, 1, {1, 0, 2, 3});
    detail::add_gluing(t, 10, 0, 14, 2, {2, 0, 1, 3});
    return t;
}

// One exceptional fibre: a solid torus with boundary labels alpha (meeting
// the fibre), theta and sigma. The section curve of the block torus is glued
// to the theta class when theta is positive and to the sigma class
// otherwise, so the filling realizes the coefficient pair
// (alpha, theta > 0 ? theta : -sigma).
struct SeifertTriple {
    int alpha = 0;
    int theta = 0;
    int sigma = 0;
};

// Override for the section gluing of a single fibre.
enum class SectionLabel { automatic, theta, sigma };

struct SeifertSpec {
    std::array<SeifertTriple, 3> triples{};
    std::array<SectionLabel, 3> section{SectionLabel::automatic,
                                        SectionLabel::automatic,
                                        SectionLabel::automatic};
};

namespace detail {

// The face vertex opposite the face edge lying in the given class; -1 when
// no face edge does.
inline int vertex_opposite_class(UnionFind& edges, int tet, int face, int root) {
    std::array<int, 3> v{};
    int k = 0;
    for (int w = 0; w < 4; ++w)
        if (w != face) v[k++] = w;
    for (int e = 0; e < 3; ++e) {
        const int a = v[(e + 1) % 3];
        const int b = v[(e + 2) % 3];
        if (edges.find(12 * tet + 2 * edge_index(a, b)) == root) return v[e];
    }
    return -1;
}

}  // namespace detail

// Close the three boundary tori of the block with layered solid tori, one
// per triple: the fibre class of each torus is glued along the alpha label
// and the section along theta or sigma as selected. Returns a closed
// triangulation of the Seifert fibred space the triple list encodes.
inline Triangulation assemble(const SeifertSpec& spec) {
    Triangulation out = pants_block();
    const std::array<detail::TorusMark, 3> marks = detail::pants_marks();
    for (int i = 0; i < 3; ++i) {
        const SeifertTriple& f = spec.triples[i];
        if (f.alpha <= 0)
            throw InvalidSpec("fibre " + std::to_string(i + 1) +
                              ": alpha must be positive");
        if (f.theta == 0 || f.sigma == 0)
            throw InvalidSpec("fibre " + std::to_string(i + 1) +
                              ": labels must be nonzero");
        if (f.alpha + f.theta + f.sigma != 0)
            throw InvalidSpec("fibre " + std::to_string(i + 1) +
                              ": labels must sum to zero");
        if (std::gcd(f.alpha, std::abs(f.theta)) != 1)
            throw InvalidSpec("fibre " + std::to_string(i + 1) +
                              ": alpha and theta must be coprime");

        SectionLabel mode = spec.section[i];
        if (mode == SectionLabel::automatic)
            mode = f.theta > 0 ? SectionLabel::theta : SectionLabel::sigma;
        const int section_value = mode == SectionLabel::theta ? f.theta : f.sigma;
        const int diagonal_value = mode == SectionLabel::theta ? f.sigma : f.theta;

        // Gluing the section to the sigma class realizes the coefficient
        // pair (alpha, -sigma) on the wall as built; the theta class
        // realizes (alpha, theta), which needs the wall diagonal running the
        // other way, so a tetrahedron is layered across it first.
        const detail::TorusMark& mark = marks[i];
        std::array<std::pair<int, int>, 2> block_faces = mark.faces;
        std::array<int, 3> block_h = mark.horizontal;
        std::array<int, 3> block_v = mark.vertical;
        std::array<int, 3> block_d = mark.diagonal;
        if (mode == SectionLabel::theta) {
            detail::UnionFind pre = detail::edge_classes(out);
            const int d_root = pre.find(
                12 * block_d[0] + 2 * detail::edge_index(block_d[1], block_d[2]));
            const int ft = detail::layer_tetrahedron(out, block_faces, d_root);
            block_faces = {{{ft, 0}, {ft, 1}}};
            block_d = {ft, 2, 3};
        }

        Triangulation piece = lst(LstParams{f.alpha, f.theta, f.sigma});
        const int off = out.tets;
        out.tets += piece.tets;
        for (const std::array<FaceGluing, 4>& a : piece.adj) {
            std::array<FaceGluing, 4> shifted = a;
            for (FaceGluing& g : shifted)
                if (g.glued()) g.tet += off;
            out.adj.push_back(shifted);
        }

        // Resolve the three labels to distinct anchors. A triple with both
        // theta and sigma negative is stored mirrored, so the lookup values
        // flip sign together; duplicate values (alpha 1, theta 1) are broken
        // by stored order.
        int sgn = -1;
        for (const EdgeLabel& l : piece.labels)
            if (l.value == f.alpha) {
                sgn = 1;
                break;
            }
        int ia = -1, is = -1, id = -1;
        for (int l = 0; l < 3; ++l)
            if (piece.labels[l].value == sgn * f.alpha) {
                ia = l;
                break;
            }
        for (int l = 0; l < 3; ++l)
            if (l != ia && piece.labels[l].value == sgn * section_value) {
                is = l;
                break;
            }
        for (int l = 0; l < 3; ++l)
            if (l != ia && l != is) id = l;
        if (ia < 0 || is < 0 || piece.labels[id].value != sgn * diagonal_value)
            throw Error("assemble: torus labels disagree with the triple");

        detail::UnionFind edges = detail::edge_classes(out);
        const auto anchor_root = [&](const EdgeLabel& l) {
            return edges.find(12 * (l.tet + off) + 2 * l.edge);
        };
        const std::array<int, 3> piece_roots = {anchor_root(piece.labels[is]),
                                                anchor_root(piece.labels[ia]),
                                                anchor_root(piece.labels[id])};
        const auto mark_root = [&](const std::array<int, 3>& m) {
            return edges.find(12 * m[0] + 2 * detail::edge_index(m[1], m[2]));
        };
        const std::array<int, 3> block_roots = {mark_root(block_h),
                                                mark_root(block_v),
                                                mark_root(block_d)};

        std::array<std::pair<int, int>, 2> torus_faces{};
        int nf = 0;
        for (int tet = off; tet < out.tets; ++tet)
            for (int ff = 0; ff < 4; ++ff)
                if (!out.adj[tet][ff].glued()) {
                    if (nf == 2) throw Error("assemble: solid torus boundary is not two faces");
                    torus_faces[nf++] = {tet, ff};
                }
        if (nf != 2) throw Error("assemble: solid torus boundary is not two faces");

        // Two face pairings; the vertex maps are forced by matching the
        // section, fibre and diagonal classes. The first edge-valid pairing
        // is applied; the other differs by a homeomorphism extending over
        // the solid torus.
        bool done = false;
        for (int s = 0; s < 2 && !done; ++s) {
            Triangulation trial = out;
            for (int side = 0; side < 2; ++side) {
                const auto& [bt, bfc] = block_faces[side];
                const auto& [pt, pf] = torus_faces[side ^ s];
                std::array<int, 4> perm{};
                perm[bfc] = pf;
                for (int r = 0; r < 3; ++r) {
                    const int from = detail::vertex_opposite_class(edges, bt, bfc,
                                                                   block_roots[r]);
                    const int to = detail::vertex_opposite_class(edges, pt, pf,
                                                                 piece_roots[r]);
                    if (from < 0 || to < 0)
                        throw Error("assemble: torus face misses a curve class");
                    perm[from] = to;
                }
                detail::add_gluing(trial, bt, bfc, pt, pf, perm);
            }
            if (!detail::valid_edges(trial)) continue;
            out = std::move(trial);
            done = true;
        }
        if (!done)
            throw InvalidSpec("fibre " + std::to_string(i + 1) +
                              " admits no edge-consistent attachment");
    }
    out.labels.clear();
    return out;
}

// The dual 4-coloured graph of a closed triangulation: one vertex per flag
// (tetrahedron, vertex, edge end, face), colours 0, 1, 2 swap the flag
// within its tetrahedron and colour 3 crosses the face gluing. The result is
// a gem of the underlying manifold, of order 24 times the tetrahedron count.
inline ColouredGraph barycentric_coloured_graph(const Triangulation& t) {
    if (!is_closed(t))
        throw InvalidParams("dual graph needs a closed triangulation");
    int rank[4][4][4];
    int next = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                rank[a][b][c] =
                    (a != b && b != c && a != c) ? next++ : -1;
    const int n = 24 * t.tets;
    ColouredGraph::Involutions inv;
    for (std::vector<int>& m : inv) m.resize(n);
    for (int tet = 0; tet < t.tets; ++tet)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                if (b == a) continue;
                for (int c = 0; c < 4; ++c) {
                    if (c == a || c == b) continue;
                    const int d = 6 - a - b - c;
                    const int v = 24 * tet + rank[a][b][c];
                    inv[0][v] = 24 * tet + rank[b][a][c];
                    inv[1][v] = 24 * tet + rank[a][c][b];
                    inv[2][v] = 24 * tet + rank[a][b][d];
                    const FaceGluing& g = t.adj[tet][d];
                    inv[3][v] =
                        24 * g.tet + rank[g.perm[a]][g.perm[b]][g.perm[c]];
                }
            }
    return ColouredGraph(n, std::move(inv));
}

// Reduce a gem to a rigid crystallization of the same manifold.
inline std::pair<ColouredGraph, MoveLog> crystallize(const ColouredGraph& g) {
    return reduce_to_rigid(g);
}

}  // namespace gemcensus
