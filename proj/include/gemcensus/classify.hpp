#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gemcensus/catalog.hpp"
#include "gemcensus/code.hpp"
#include "gemcensus/coloured_graph.hpp"
#include "gemcensus/errors.hpp"
#include "gemcensus/invariants.hpp"
#include "gemcensus/moves.hpp"
#include "gemcensus/parallel.hpp"

namespace gemcensus {

// Caps for the class-joining move search. The inflation bounds how far above
// its starting order an intermediate graph may grow, the pair bounds the two
// cycle lengths of a cancelled generalized dipole, and the length bounds the
// number of composite steps in any explored move sequence.
struct SearchBudget {
    int max_order_inflation = 4;
    std::pair<int, int> max_gd_size{4, 4};
    int max_sequence_length = 12;

    bool operator==(const SearchBudget&) const = default;
};

// Cheap invariants computed per catalogue entry. They are used to sanity-check
// the classes after the move search, never to merge: equal fingerprints do not
// imply equivalent graphs.
struct ClassFingerprint {
    HomologyResult h1;
    bool bipartite = true;
    int genus = 2;

    bool operator==(const ClassFingerprint&) const = default;
};

inline ClassFingerprint class_fingerprint(const ColouredGraph& g) {
    ClassFingerprint f;
    f.h1 = first_homology(g);
    f.bipartite = is_bipartite(g);
    f.genus = regular_genus(g);
    return f;
}

// "M", "M # H", "M #_k H": a base manifold plus k handles, where the handle H
// is the orientable or the twisted 2-sphere bundle over the circle, whichever
// matches the side of the base.
inline std::string handle_sum_name(const std::string& base, int handles) {
    if (handles <= 0) return base;
    if (handles == 1) return base + " # H";
    return base + " #_" + std::to_string(handles) + " H";
}

inline std::string member_name(const ClassRecord& c, int h) {
    if (c.name == "?") return "?";
    return handle_sum_name(c.name, h);
}

namespace detail {

inline void check_search_budget(const SearchBudget& b) {
    if (b.max_order_inflation <= 0 || b.max_gd_size.first <= 0 ||
        b.max_gd_size.second <= 0 || b.max_sequence_length <= 0)
        throw InvalidParams("search budget values must all be positive");
}

// Internal schedule limits keeping each per-graph search tractable. Hitting
// either one marks the graph as pruned, which in turn marks its class
// unresolved: the search proved every merge it reports, but pruning means it
// cannot certify that no further merge exists.
constexpr int kMaxStatesPerNode = 48;
constexpr int kMaxChildrenPerState = 512;

// Adjacency dump used as a cache key for graphs that recur during one search.
inline std::string raw_graph_key(const ColouredGraph& g) {
    std::string key;
    key.reserve(static_cast<std::size_t>(g.order()) * 8);
    for (int v = 0; v < g.order(); ++v)
        for (int c = 0; c < 4; ++c) {
            const int w = g.neighbour(v, c);
            key.push_back(static_cast<char>(w & 0xff));
            key.push_back(static_cast<char>((w >> 8) & 0xff));
        }
    return key;
}

// Union-find whose nodes carry handle offsets: off[x] is the number of
// handles of x's manifold minus the number for its parent. find() therefore
// reports each node's handle count relative to its class root, and unite()
// can reject a meeting that contradicts an earlier one.
class HandleUnion {
public:
    explicit HandleUnion(int n) : parent_(n), off_(n, 0), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    // (root of x, handles(x) - handles(root))
    std::pair<int, int> find(int x) {
        int root = x;
        int total = 0;
        while (parent_[root] != root) {
            total += off_[root];
            root = parent_[root];
        }
        int v = x;
        int rel = total;
        while (parent_[v] != root) {
            const int next = parent_[v];
            const int step = off_[v];
            parent_[v] = root;
            off_[v] = rel;
            rel -= step;
            v = next;
        }
        return {root, total};
    }

    // Join given handles(a) - handles(b) = delta.
    void unite(int a, int b, int delta) {
        const auto [ra, da] = find(a);
        const auto [rb, db] = find(b);
        if (ra == rb) {
            if (da - db != delta)
                throw Error("inconsistent handle counts while joining classes");
            return;
        }
        const int diff = delta - da + db;  // handles(ra) - handles(rb)
        if (rank_[ra] < rank_[rb]) {
            parent_[ra] = rb;
            off_[ra] = diff;
        } else {
            parent_[rb] = ra;
            off_[rb] = -diff;
            if (rank_[ra] == rank_[rb]) ++rank_[ra];
        }
    }

private:
    std::vector<int> parent_;
    std::vector<int> off_;
    std::vector<int> rank_;
};

// Cancels proper dipoles until none remain. Unlike reduce_to_rigid this never
// touches rho pairs, so it preserves the represented manifold exactly, handles
// included.
inline ColouredGraph contract_dipoles(ColouredGraph g) {
    for (;;) {
        const std::vector<Dipole> dipoles = find_dipoles(g);
        if (dipoles.empty()) return g;
        g = delete_dipole(g, dipoles.front());
    }
}

}  // namespace detail

// Groups the catalogue into classes of graphs connected by manifold-preserving
// moves and rho switches, with each rho_3 switch counted as one removed
// handle. Two graphs land in one class when their bounded move searches reach
// a common canonical code; the handle counts along the two paths fix their
// relative handle numbers, and contradictory meetings are an error. Known
// graphs participate in the search and donate names but are not members.
inline std::vector<ClassRecord> gamma_class(
    const Catalogue& cat,
    const std::vector<std::pair<std::string, std::string>>& known = {},
    const SearchBudget& budget = SearchBudget{}, int threads = 1) {
    detail::check_search_budget(budget);
    if (threads < 1) throw InvalidParams("thread count must be positive");

    struct Node {
        ColouredGraph g;
        std::string code;
        bool in_catalogue;
        std::string name;  // empty unless supplied via `known`
    };
    std::vector<Node> nodes;
    std::map<std::string, int> index_of;
    for (const CatalogueEntry& e : cat.entries) {
        if (!index_of.emplace(e.code.text, static_cast<int>(nodes.size())).second)
            throw InvalidParams("duplicate catalogue code " + e.code.text);
        nodes.push_back({from_code(e.code.text), e.code.text, true, ""});
    }
    for (const auto& [code, name] : known) {
        const auto it = index_of.find(code);
        if (it != index_of.end()) {
            if (nodes[it->second].name.empty()) nodes[it->second].name = name;
            continue;
        }
        index_of.emplace(code, static_cast<int>(nodes.size()));
        nodes.push_back({from_code(code), code, false, name});
    }

    const int count = static_cast<int>(nodes.size());
    detail::HandleUnion uf(count);
    // code -> (first node whose search reached it, handles removed on the way)
    std::map<std::string, std::pair<int, int>> owner;
    for (int i = 0; i < count; ++i) owner.emplace(nodes[i].code, std::make_pair(i, 0));
    std::vector<char> pruned(count, 0);
    std::mutex meet_mutex;

    const auto meet = [&](int node, const std::string& code, int h) {
        const std::lock_guard<std::mutex> lock(meet_mutex);
        const auto [it, fresh] = owner.emplace(code, std::make_pair(node, h));
        if (fresh) return;
        if (it->second.first != node) {
            uf.unite(node, it->second.first, h - it->second.second);
        } else if (it->second.second != h) {
            throw Error("handle count mismatch revisiting " + code);
        }
    };

    const auto explore = [&](int i) {
        const int max_order = nodes[i].g.order() + budget.max_order_inflation;
        struct State {
            ColouredGraph g;
            std::string code;
            int h;
            int len;
        };
        // Deterministic best-first order: small graphs first, then by code.
        // Classes meet fastest at their most reduced forms.
        const auto later = [](const State& a, const State& b) {
            if (a.g.order() != b.g.order()) return a.g.order() > b.g.order();
            return a.code > b.code;
        };
        std::priority_queue<State, std::vector<State>, decltype(later)> open(later);
        std::set<std::string> seen;
        // reduced graph -> (canonical code, handles removed by its reduction);
        // many candidates re-derive the same reduced graph, and computing its
        // canonical code again is the expensive part
        std::map<std::string, std::pair<std::string, int>> reduced_cache;
        bool cut = false;

        const auto admit = [&](ColouredGraph g, int h, int len) {
            std::optional<std::pair<ColouredGraph, MoveLog>> red;
            try {
                red = reduce_to_rigid(g);
            } catch (const BudgetExhausted&) {
                cut = true;
                return;
            }
            const int total = h + red->second.rho3_count;
            const std::string raw = detail::raw_graph_key(red->first);
            if (const auto hit = reduced_cache.find(raw); hit != reduced_cache.end()) {
                if (hit->second.second != total)
                    throw Error("handle count mismatch revisiting " + hit->second.first);
                return;  // same graph, same handle level: nothing new
            }
            std::string code = canonical_code(red->first).text;
            reduced_cache.emplace(raw, std::make_pair(code, total));
            meet(i, code, total);
            if (seen.insert(code).second && len < budget.max_sequence_length)
                open.push({std::move(red->first), std::move(code), total, len});
        };

        // Candidate graphs also repeat verbatim across sites; drop those
        // before paying for a reduction.
        std::set<std::string> candidate_seen;
        const auto try_candidate = [&](ColouredGraph g, int h, int len) {
            if (!candidate_seen.insert(detail::raw_graph_key(g)).second) return;
            admit(std::move(g), h, len);
        };

        admit(nodes[i].g, 0, 0);
        int expanded = 0;
        while (!open.empty()) {
            if (expanded == detail::kMaxStatesPerNode) {
                cut = true;
                break;
            }
            const State s = open.top();
            open.pop();
            ++expanded;
            int children = 0;
            const auto spend_child = [&] {
                if (children == detail::kMaxChildrenPerState) {
                    cut = true;
                    return false;
                }
                ++children;
                return true;
            };

            const auto cancel_family = [&] {
                for (const GeneralizedDipole& gd : find_generalized_dipoles(
                         s.g, budget.max_gd_size.first, budget.max_gd_size.second)) {
                    if (!spend_child()) return;
                    std::optional<ColouredGraph> r;
                    try {
                        r = cancel_generalized_dipole(s.g, gd);
                    } catch (const NotAGeneralizedDipole&) {
                    } catch (const Disconnects&) {
                    } catch (const Disconnected&) {
                    } catch (const WouldAnnihilate&) {
                    }
                    if (!r || r->order() > max_order) continue;
                    try_candidate(std::move(*r), s.h, s.len + 1);
                }
            };

            const auto insert_family = [&] {
                if (s.g.order() + 2 > max_order) return;  // budget boundary, not a prune
                const std::pair<int, int> inserted{s.g.order(), s.g.order() + 1};
                for (int c = 0; c < 4; ++c) {
                    std::vector<int> colours;
                    for (int k = 0; k < 4; ++k)
                        if (k != c) colours.push_back(k);
                    for (const std::pair<int, int>& e : edges_of_colour(s.g, c)) {
                        const ColouredGraph bigger = add_dipole(s.g, {e}, colours);
                        for (const Dipole& d : find_dipoles(bigger)) {
                            if (d.vertices == inserted) continue;  // must cancel a different one
                            if (!spend_child()) return;
                            std::optional<ColouredGraph> r;
                            try {
                                r = delete_dipole(bigger, d);
                            } catch (const Disconnected&) {
                            } catch (const WouldAnnihilate&) {
                            }
                            if (!r) continue;
                            try_candidate(std::move(*r), s.h, s.len + 1);
                        }
                    }
                }
            };

            cancel_family();
            insert_family();
        }
        if (cut) pruned[i] = 1;
    };

    parallel_for(count, threads, explore);

    std::map<int, std::vector<std::pair<int, int>>> buckets;  // root -> [(node, phi)]
    for (int i = 0; i < count; ++i) {
        const auto [root, phi] = uf.find(i);
        buckets[root].push_back({i, phi});
    }

    struct Built {
        int rep_order;
        std::string rep_code;
        ClassRecord rec;
    };
    std::vector<Built> built;
    for (const auto& [root, bucket] : buckets) {
        std::vector<std::pair<int, int>> members;  // (node, phi), catalogue only
        bool any_pruned = false;
        for (const auto& [i, phi] : bucket) {
            if (nodes[i].in_catalogue) members.push_back({i, phi});
            if (pruned[i]) any_pruned = true;
        }
        if (members.empty()) continue;  // a known matched nothing in the catalogue

        int phi_min = std::numeric_limits<int>::max();
        for (const auto& [i, phi] : members) phi_min = std::min(phi_min, phi);

        ClassRecord rec;
        rec.unresolved = any_pruned;

        // Name the class after a known sitting at or below the members' handle
        // level; a known above it would only name a sum, not the base.
        int name_phi = std::numeric_limits<int>::min();
        std::string name_code;
        for (const auto& [i, phi] : bucket) {
            if (nodes[i].name.empty() || phi > phi_min) continue;
            if (phi > name_phi || (phi == name_phi && nodes[i].code < name_code)) {
                name_phi = phi;
                name_code = nodes[i].code;
                rec.name = handle_sum_name(nodes[i].name, phi_min - phi);
            }
        }

        std::sort(members.begin(), members.end(), [&](const auto& a, const auto& b) {
            return std::tuple(a.second, nodes[a.first].g.order(), nodes[a.first].code) <
                   std::tuple(b.second, nodes[b.first].g.order(), nodes[b.first].code);
        });
        for (const auto& [i, phi] : members) rec.members.emplace_back(nodes[i].code, phi - phi_min);
        rec.rep = rec.members.front().first;
        built.push_back({nodes[members.front().first].g.order(), rec.rep, std::move(rec)});
    }

    std::sort(built.begin(), built.end(), [](const Built& a, const Built& b) {
        return std::tuple(a.rep_order, a.rep_code) < std::tuple(b.rep_order, b.rep_code);
    });
    std::vector<ClassRecord> out;
    out.reserve(built.size());
    for (Built& b : built) out.push_back(std::move(b.rec));
    return out;
}

// A catalogue entry that satisfies the splitting condition, together with the
// canonical codes of its prime-candidate summands. Summands are contracted by
// plain dipole cancellation only, so handle summands survive.
struct SumSplit {
    std::string code;
    std::vector<std::string> summands;

    bool operator==(const SumSplit&) const = default;
};

namespace detail {

inline void split_leaves(const ColouredGraph& g, std::vector<std::string>& out) {
    const auto parts = split_condition_sharp(g);
    if (!parts) {
        out.push_back(canonical_code(contract_dipoles(g)).text);
        return;
    }
    split_leaves(parts->first, out);
    split_leaves(parts->second, out);
}

}  // namespace detail

inline std::vector<SumSplit> detect_connected_sums(const Catalogue& cat) {
    std::vector<SumSplit> out;
    for (const CatalogueEntry& e : cat.entries) {
        const ColouredGraph g = from_code(e.code.text);
        if (!split_condition_sharp(g)) continue;
        SumSplit s;
        s.code = e.code.text;
        detail::split_leaves(g, s.summands);
        std::sort(s.summands.begin(), s.summands.end());
        out.push_back(std::move(s));
    }
    return out;
}

// Reads `code name` lines: a canonical code, whitespace, then the manifold
// name, which may itself contain spaces. Blank lines and lines starting with
// '#' are skipped.
inline std::vector<std::pair<std::string, std::string>> ingest_known(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const std::size_t gap = line.find_first_of(" \t");
        const std::size_t name_at =
            gap == std::string::npos ? std::string::npos : line.find_first_not_of(" \t", gap);
        if (gap == 0 || name_at == std::string::npos)
            throw MalformedFile("known line " + std::to_string(lineno) +
                                " is not `code name`");
        const std::string code = line.substr(0, gap);
        try {
            if (canonical_code(from_code(code)).text != code)
                throw MalformedCode("code is not in canonical form");
        } catch (const MalformedCode& err) {
            throw MalformedFile("bad code on known line " + std::to_string(lineno) + ": " +
                                err.what());
        }
        out.emplace_back(code, line.substr(name_at));
    }
    return out;
}

inline std::vector<std::pair<std::string, std::string>> ingest_known(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedFile("cannot open " + path);
    return ingest_known(in);
}

inline std::vector<std::pair<std::string, std::string>> ingest_known(
    const std::vector<std::string>& paths) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const std::string& path : paths) {
        std::vector<std::pair<std::string, std::string>> one = ingest_known(path);
        out.insert(out.end(), std::make_move_iterator(one.begin()),
                   std::make_move_iterator(one.end()));
    }
    return out;
}

}  // namespace gemcensus
