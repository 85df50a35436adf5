#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <string>
#include <tuple>
#include <vector>

#include "gemcensus/coloured_graph.hpp"
#include "gemcensus/errors.hpp"

namespace gemcensus {

// Canonical text form of a coloured-isomorphism class. Two graphs have equal
// codes iff one maps onto the other by a vertex bijection composed with a
// colour permutation. Text layout: "<order>;w_1,w_2,..." with order*NC
// neighbour numbers (see canonical_code).
struct Code {
    std::string text;
    int order = 0;

    friend bool operator==(const Code& a, const Code& b) { return a.text == b.text; }
    friend bool operator!=(const Code& a, const Code& b) { return !(a == b); }
    // Catalogue order: by graph order first, then plain text comparison.
    friend bool operator<(const Code& a, const Code& b) {
        return std::tie(a.order, a.text) < std::tie(b.order, b.text);
    }
};

namespace detail {

// Breadth-first numbering from `root` where each vertex's neighbours are
// visited in the colour order given by `perm`; emits each vertex's neighbour
// numbers in that same colour order. The emission determines the graph up to
// the chosen labels, so the lexicographic minimum over all roots and colour
// permutations is a complete isomorphism invariant.
template <int NC>
void bfs_emission(const BasicColouredGraph<NC>& g, int root,
                  const std::array<int, static_cast<std::size_t>(NC)>& perm,
                  std::vector<int>& number, std::vector<int>& order_list,
                  std::vector<int>& emission) {
    const int n = g.order();
    number.assign(n, -1);
    order_list.clear();
    order_list.push_back(root);
    number[root] = 0;
    int next = 1;
    for (int idx = 0; idx < n; ++idx) {
        const int v = order_list[idx];
        for (int k = 0; k < NC; ++k) {
            const int w = g.neighbour(v, perm[k]);
            if (number[w] == -1) {
                number[w] = next++;
                order_list.push_back(w);
            }
        }
    }
    emission.clear();
    emission.reserve(n * NC);
    for (int idx = 0; idx < n; ++idx) {
        const int v = order_list[idx];
        for (int k = 0; k < NC; ++k) emission.push_back(number[g.neighbour(v, perm[k])]);
    }
}

}  // namespace detail

template <int NC>
Code canonical_code(const BasicColouredGraph<NC>& g) {
    const int n = g.order();
    std::array<int, static_cast<std::size_t>(NC)> perm;
    std::vector<int> number, order_list, emission, best;
    for (int root = 0; root < n; ++root) {
        for (int k = 0; k < NC; ++k) perm[k] = k;
        do {
            detail::bfs_emission(g, root, perm, number, order_list, emission);
            if (best.empty() || emission < best) best = emission;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    std::string text = std::to_string(n);
    text.push_back(';');
    for (std::size_t k = 0; k < best.size(); ++k) {
        if (k) text.push_back(',');
        text += std::to_string(best[k]);
    }
    return Code{std::move(text), n};
}

namespace detail {

inline int parse_int(const char*& p, const char* end) {
    int value = 0;
    const auto [next, ec] = std::from_chars(p, end, value);
    if (ec != std::errc() || next == p) throw MalformedCode("expected an integer in code text");
    p = next;
    return value;
}

}  // namespace detail

// Rebuilds a graph from code text; for canonical input the result's
// canonical_code round-trips bit-exactly. Applied per catalogue line.
template <int NC = 4>
BasicColouredGraph<NC> from_code(const std::string& text) {
    const char* p = text.data();
    const char* end = text.data() + text.size();
    while (end > p && (end[-1] == '\n' || end[-1] == '\r' || end[-1] == ' ')) --end;

    const int n = detail::parse_int(p, end);
    if (n <= 0 || n % 2 != 0) throw MalformedCode("code order must be positive and even");
    if (p == end || *p != ';') throw MalformedCode("code order must be followed by ';'");
    ++p;

    std::vector<int> w;
    w.reserve(static_cast<std::size_t>(n) * NC);
    while (true) {
        const int v = detail::parse_int(p, end);
        if (v < 0 || v >= n) throw MalformedCode("neighbour number out of range in code");
        w.push_back(v);
        if (p == end) break;
        if (*p != ',') throw MalformedCode("expected ',' between neighbour numbers");
        ++p;
    }
    if (static_cast<int>(w.size()) != n * NC)
        throw MalformedCode("code carries " + std::to_string(w.size()) + " neighbour numbers, " +
                            std::to_string(n * NC) + " expected");

    typename BasicColouredGraph<NC>::Involutions adj;
    for (int c = 0; c < NC; ++c) {
        adj[c].assign(n, -1);
        for (int v = 0; v < n; ++v) adj[c][v] = w[static_cast<std::size_t>(v) * NC + c];
    }
    try {
        return BasicColouredGraph<NC>(n, std::move(adj));
    } catch (const Error& e) {
        throw MalformedCode(std::string("code does not describe a valid coloured graph: ") +
                            e.what());
    }
}

inline ColouredGraph from_code(const Code& code) { return from_code<4>(code.text); }

}  // namespace gemcensus
