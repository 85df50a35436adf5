#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdlib>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "gemcensus/coloured_graph.hpp"
#include "gemcensus/errors.hpp"
#include "gemcensus/snf.hpp"

namespace gemcensus {

// Face counts of the pseudocomplex carried by a 4-coloured graph: one
// tetrahedron per graph vertex, glued along the faces opposite equal colours.
// Vertices of the complex correspond to 3-colour residues, edges to
// bicoloured cycles, triangles to graph edges.
struct FaceVector {
    long vertices = 0;
    long edges = 0;
    long triangles = 0;
    long tetrahedra = 0;

    long euler() const { return vertices - edges + triangles - tetrahedra; }
    bool operator==(const FaceVector&) const = default;
};

inline FaceVector face_vector(const ColouredGraph& g) {
    FaceVector f;
    for (int i = 0; i < 4; ++i) {
        std::vector<int> colours;
        for (int c = 0; c < 4; ++c)
            if (c != i) colours.push_back(c);
        std::vector<int> label;
        f.vertices += detail::component_labels(g, colours, label);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) f.edges += count_bicoloured_cycles(g, i, j);
    f.triangles = 2L * g.order();
    f.tetrahedra = g.order();
    return f;
}

// A finite group presentation. Generators are numbered 1..generators; a
// relator lists signed generator numbers, -k meaning the inverse of k.
struct GroupPresentation {
    int generators = 0;
    std::vector<std::vector<int>> relators;

    bool operator==(const GroupPresentation&) const = default;
};

inline void validate_presentation(const GroupPresentation& p) {
    if (p.generators < 0) throw InvalidParams("generator count must be non-negative");
    for (const auto& rel : p.relators)
        for (int s : rel)
            if (s == 0 || std::abs(s) > p.generators)
                throw InvalidParams("relator references generator " + std::to_string(s) +
                                    " outside 1.." + std::to_string(p.generators));
}

namespace detail {

// Index of the unordered colour pair {a,b} in lexicographic order:
// {0,1},{0,2},{0,3},{1,2},{1,3},{2,3}.
inline int colour_pair_index(int a, int b) {
    if (a > b) std::swap(a, b);
    constexpr int row_offset[3] = {0, 3, 5};
    return row_offset[a] + (b - a - 1);
}

}  // namespace detail

// Edge-path presentation of the pseudocomplex's fundamental group: generators
// are the 1-skeleton edges (one per bicoloured cycle) outside a breadth-first
// spanning tree rooted at the first 0-omitting residue; one relator per graph
// edge traces the boundary of the corresponding triangle. Works on any
// connected 4-coloured graph, crystallization or not.
inline GroupPresentation edge_path_presentation(const ColouredGraph& g) {
    // Vertices of the complex, grouped by the omitted colour.
    std::array<std::vector<int>, 4> vlabel;
    std::array<int, 4> voff{};
    int kvertices = 0;
    for (int i = 0; i < 4; ++i) {
        std::vector<int> colours;
        for (int c = 0; c < 4; ++c)
            if (c != i) colours.push_back(c);
        voff[i] = kvertices;
        kvertices += detail::component_labels(g, colours, vlabel[i]);
    }

    // Edges of the complex: a {k,l}-cycle joins the two residue classes of
    // the complementary colours that contain it.
    std::array<CycleIds, 6> cyc;
    std::array<int, 6> eoff{};
    int kedges = 0;
    for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l) {
            const int p = detail::colour_pair_index(k, l);
            cyc[p] = cycle_ids(g, k, l);
            eoff[p] = kedges;
            kedges += cyc[p].count;
        }
    std::vector<std::pair<int, int>> ends(kedges);
    for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l) {
            const int p = detail::colour_pair_index(k, l);
            std::vector<int> labels;
            for (int c = 0; c < 4; ++c)
                if (c != k && c != l) labels.push_back(c);
            const int x = labels[0];
            const int y = labels[1];
            for (int v = 0; v < g.order(); ++v) {
                const int e = eoff[p] + cyc[p].id[v];
                ends[e] = {voff[x] + vlabel[x][v], voff[y] + vlabel[y][v]};
            }
        }

    // Breadth-first spanning tree from vertex 0, edges taken in global order.
    std::vector<std::vector<std::pair<int, int>>> adj(kvertices);
    for (int e = 0; e < kedges; ++e) {
        adj[ends[e].first].emplace_back(e, ends[e].second);
        adj[ends[e].second].emplace_back(e, ends[e].first);
    }
    std::vector<char> tree(kedges, 0);
    std::vector<char> visited(kvertices, 0);
    std::queue<int> frontier;
    visited[0] = 1;
    frontier.push(0);
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (const auto& [e, w] : adj[u]) {
            if (visited[w]) continue;
            visited[w] = 1;
            tree[e] = 1;
            frontier.push(w);
        }
    }

    std::vector<int> generator(kedges, 0);
    int m = 0;
    for (int e = 0; e < kedges; ++e)
        if (!tree[e]) generator[e] = ++m;

    GroupPresentation p;
    p.generators = m;
    // The triangle dual to a colour-c edge has its vertices labelled by the
    // other three colours x1 < x2 < x3; its side {xi,xj} is the bicoloured
    // cycle of the complementary pair {c,xk} through the edge. Each edge of
    // the complex is oriented from its smaller-labelled end, so the boundary
    // path x1 -> x2 -> x3 -> x1 crosses the {x1,x3} side backwards.
    for (int c = 0; c < 4; ++c) {
        std::vector<int> x;
        for (int d = 0; d < 4; ++d)
            if (d != c) x.push_back(d);
        const int side12 = detail::colour_pair_index(c, x[2]);
        const int side23 = detail::colour_pair_index(c, x[0]);
        const int side13 = detail::colour_pair_index(c, x[1]);
        for (const auto& [u, v] : edges_of_colour(g, c)) {
            (void)v;
            std::vector<int> word;
            const auto push = [&](int pair, int sign) {
                const int gen = generator[eoff[pair] + cyc[pair].id[u]];
                if (gen != 0) word.push_back(sign * gen);
            };
            push(side12, 1);
            push(side23, 1);
            push(side13, -1);
            p.relators.push_back(std::move(word));
        }
    }
    return p;
}

inline GroupPresentation fundamental_group(const ColouredGraph& g) {
    if (!is_crystallization(g))
        throw NotCrystallization("fundamental_group needs a contracted manifold gem");
    return edge_path_presentation(g);
}

// Invariant-factor decomposition of an abelian group: Z^free_rank plus one
// cyclic summand per torsion coefficient, each coefficient dividing the next.
struct HomologyResult {
    int free_rank = 0;
    std::vector<mpz_class> torsion;

    bool operator==(const HomologyResult&) const = default;
};

inline IntMatrix abelianization_matrix(const GroupPresentation& p) {
    validate_presentation(p);
    IntMatrix m(static_cast<int>(p.relators.size()), p.generators);
    for (int r = 0; r < static_cast<int>(p.relators.size()); ++r)
        for (int s : p.relators[r]) m.at(r, std::abs(s) - 1) += (s > 0 ? 1 : -1);
    return m;
}

inline HomologyResult abelianized_homology(const GroupPresentation& p) {
    const SmithResult s = smith_normal_form(abelianization_matrix(p));
    HomologyResult h;
    h.free_rank = p.generators - static_cast<int>(s.factors.size());
    for (const mpz_class& d : s.factors)
        if (d > 1) h.torsion.push_back(d);
    return h;
}

inline HomologyResult first_homology(const ColouredGraph& g) {
    return abelianized_homology(edge_path_presentation(g));
}

// Renders e.g. "0", "Z", "Z^2+Z/2", "Z/2+Z/6".
inline std::string h1_to_string(const HomologyResult& h) {
    std::string out;
    const auto append = [&out](const std::string& part) {
        if (!out.empty()) out += '+';
        out += part;
    };
    if (h.free_rank == 1) append("Z");
    if (h.free_rank >= 2) append("Z^" + std::to_string(h.free_rank));
    for (const mpz_class& d : h.torsion) append("Z/" + d.get_str());
    return out.empty() ? "0" : out;
}

namespace detail {

inline std::vector<int> inverse_word(const std::vector<int>& w) {
    std::vector<int> out(w.rbegin(), w.rend());
    for (int& s : out) s = -s;
    return out;
}

inline void free_and_cyclic_reduce(std::vector<int>& w) {
    std::vector<int> out;
    for (int s : w) {
        if (!out.empty() && out.back() == -s)
            out.pop_back();
        else
            out.push_back(s);
    }
    while (out.size() >= 2 && out.front() == -out.back()) {
        out.erase(out.begin());
        out.pop_back();
    }
    w = std::move(out);
}

}  // namespace detail

// Deterministic greedy Tietze simplification: kills generators forced trivial
// by length-1 relators, then generators appearing exactly once overall, then
// eliminates by substitution where a relator contains some generator exactly
// once. Each elimination consumes one unit of budget; the result presents an
// isomorphic group and never gains generators.
inline GroupPresentation tietze_simplify(const GroupPresentation& p, int budget = 1000) {
    validate_presentation(p);
    std::vector<std::vector<int>> rel = p.relators;
    std::vector<char> alive(static_cast<std::size_t>(p.generators) + 1, 1);

    const auto tidy = [&rel]() {
        for (auto& w : rel) detail::free_and_cyclic_reduce(w);
        std::vector<std::vector<int>> kept;
        for (auto& w : rel) {
            if (w.empty()) continue;
            bool duplicate = false;
            const std::vector<int> inv = detail::inverse_word(w);
            for (const auto& k : kept)
                if (k == w || k == inv) {
                    duplicate = true;
                    break;
                }
            if (!duplicate) kept.push_back(std::move(w));
        }
        rel = std::move(kept);
    };

    const auto erase_generator = [&rel](int gen) {
        for (auto& w : rel) {
            std::vector<int> out;
            for (int s : w)
                if (std::abs(s) != gen) out.push_back(s);
            w = std::move(out);
        }
    };

    // Replaces every occurrence of +-gen by the given word for +gen.
    const auto substitute = [&rel](int gen, const std::vector<int>& value) {
        const std::vector<int> inverse = detail::inverse_word(value);
        for (auto& w : rel) {
            std::vector<int> out;
            for (int s : w) {
                if (s == gen)
                    out.insert(out.end(), value.begin(), value.end());
                else if (s == -gen)
                    out.insert(out.end(), inverse.begin(), inverse.end());
                else
                    out.push_back(s);
            }
            w = std::move(out);
        }
    };

    while (budget > 0) {
        tidy();

        // A length-1 relator makes its generator trivial.
        int done = 0;
        for (std::size_t r = 0; r < rel.size() && !done; ++r) {
            if (rel[r].size() != 1) continue;
            const int gen = std::abs(rel[r][0]);
            rel.erase(rel.begin() + static_cast<std::ptrdiff_t>(r));
            erase_generator(gen);
            alive[gen] = 0;
            done = 1;
        }
        if (done) {
            --budget;
            continue;
        }

        // Occurrence counts per generator, and per (generator, relator).
        std::vector<int> total(static_cast<std::size_t>(p.generators) + 1, 0);
        for (const auto& w : rel)
            for (int s : w) ++total[static_cast<std::size_t>(std::abs(s))];

        // A generator used exactly once anywhere: its relator just defines it.
        for (int gen = 1; gen <= p.generators && !done; ++gen) {
            if (!alive[gen] || total[static_cast<std::size_t>(gen)] != 1) continue;
            for (std::size_t r = 0; r < rel.size(); ++r) {
                bool here = false;
                for (int s : rel[r])
                    if (std::abs(s) == gen) here = true;
                if (!here) continue;
                rel.erase(rel.begin() + static_cast<std::ptrdiff_t>(r));
                break;
            }
            alive[gen] = 0;
            done = 1;
        }
        if (done) {
            --budget;
            continue;
        }

        // Substitution: pick the (relator, generator) with the generator
        // appearing exactly once in that relator, preferring the shortest
        // replacement word, then the smallest generator.
        int best_gen = 0;
        std::size_t best_rel = 0;
        std::size_t best_len = 0;
        for (int gen = 1; gen <= p.generators; ++gen) {
            if (!alive[gen]) continue;
            for (std::size_t r = 0; r < rel.size(); ++r) {
                int here = 0;
                for (int s : rel[r])
                    if (std::abs(s) == gen) ++here;
                if (here != 1) continue;
                if (best_gen == 0 || rel[r].size() < best_len) {
                    best_gen = gen;
                    best_rel = r;
                    best_len = rel[r].size();
                }
                break;
            }
        }
        if (best_gen == 0) break;

        // Rotate the relator so the +-gen term leads, then solve for gen.
        std::vector<int> w = rel[best_rel];
        std::size_t k = 0;
        while (std::abs(w[k]) != best_gen) ++k;
        std::vector<int> rest(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
        rest.insert(rest.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        rel.erase(rel.begin() + static_cast<std::ptrdiff_t>(best_rel));
        // w[k] == +gen means gen * rest == 1, so gen = rest^-1.
        substitute(best_gen, w[k] > 0 ? detail::inverse_word(rest) : rest);
        alive[best_gen] = 0;
        --budget;
    }
    tidy();

    // Renumber the surviving generators.
    std::vector<int> renumber(static_cast<std::size_t>(p.generators) + 1, 0);
    int m = 0;
    for (int gen = 1; gen <= p.generators; ++gen)
        if (alive[gen]) renumber[static_cast<std::size_t>(gen)] = ++m;
    GroupPresentation out;
    out.generators = m;
    for (auto& w : rel) {
        for (int& s : w) {
            const int r = renumber[static_cast<std::size_t>(std::abs(s))];
            s = (s > 0) ? r : -r;
        }
        out.relators.push_back(std::move(w));
    }
    return out;
}

// The three two-generator Seifert group shapes: kind i is
// <a,b | a^a1 = b^a2 = (ab)^a3>, kind ii is
// <a,b | a^a3 = b^a2 = (a^-eps b^eps)^a1> with eps = +-1, and kind iii is the
// fixed group <a,b | a^5 = b^3 = (a b^-2)^-3> (its parameters are implied).
enum class SeifertKind { i, ii, iii };

namespace detail {

inline void append_power(std::vector<int>& word, int gen, long exp) {
    const int s = exp >= 0 ? gen : -gen;
    for (long k = 0; k < std::labs(exp); ++k) word.push_back(s);
}

inline void append_word_power(std::vector<int>& word, const std::vector<int>& base, long exp) {
    const std::vector<int> unit = exp >= 0 ? base : inverse_word(base);
    for (long k = 0; k < std::labs(exp); ++k) word.insert(word.end(), unit.begin(), unit.end());
}

}  // namespace detail

inline GroupPresentation seifert_group(SeifertKind kind, long a1, long a2, long a3,
                                       int eps = 1) {
    constexpr int a = 1;
    constexpr int b = 2;
    std::vector<int> r1;
    std::vector<int> r2;
    switch (kind) {
        case SeifertKind::i: {
            if (a1 <= 0 || a2 <= 0)
                throw InvalidParams("kind i needs positive first and second exponents");
            if (a3 == 0) throw InvalidParams("kind i needs a nonzero third exponent");
            detail::append_power(r1, a, a1);
            detail::append_power(r1, b, -a2);
            detail::append_power(r2, b, a2);
            detail::append_word_power(r2, {a, b}, -a3);
            break;
        }
        case SeifertKind::ii: {
            if (a1 <= 0 || a2 <= 0 || a3 <= 0)
                throw InvalidParams("kind ii needs positive exponents");
            if (eps != 1 && eps != -1) throw InvalidParams("kind ii needs eps = +-1");
            detail::append_power(r1, a, a3);
            detail::append_power(r1, b, -a2);
            std::vector<int> base;
            detail::append_power(base, a, -eps);
            detail::append_power(base, b, eps);
            detail::append_power(r2, b, a2);
            detail::append_word_power(r2, base, -a1);
            break;
        }
        case SeifertKind::iii: {
            detail::append_power(r1, a, 5);
            detail::append_power(r1, b, -3);
            detail::append_power(r2, b, 3);
            detail::append_word_power(r2, {a, -b, -b}, 3);
            break;
        }
    }
    GroupPresentation p;
    p.generators = 2;
    p.relators = {std::move(r1), std::move(r2)};
    return p;
}

inline HomologyResult seifert_first_homology(SeifertKind kind, long a1, long a2, long a3,
                                             int eps = 1) {
    return abelianized_homology(seifert_group(kind, a1, a2, a3, eps));
}

// First homology of the Seifert space (S^2, (a1,b1), (a2,b2), (a3,b3)) from
// the standard presentation <q1,q2,q3,h | [qi,h], qi^ai h^bi, q1 q2 q3>.
inline HomologyResult seifert_symbol_homology(long a1, long b1, long a2, long b2, long a3,
                                              long b3) {
    if (a1 <= 0 || a2 <= 0 || a3 <= 0) throw InvalidParams("fibre orders must be positive");
    IntMatrix m(4, 4);
    const long rows[4][4] = {
        {a1, 0, 0, b1}, {0, a2, 0, b2}, {0, 0, a3, b3}, {1, 1, 1, 0}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m.at(r, c) = rows[r][c];
    const SmithResult s = smith_normal_form(std::move(m));
    HomologyResult h;
    h.free_rank = 4 - static_cast<int>(s.factors.size());
    for (const mpz_class& d : s.factors)
        if (d > 1) h.torsion.push_back(d);
    return h;
}

}  // namespace gemcensus
