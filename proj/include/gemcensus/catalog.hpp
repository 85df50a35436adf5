#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gemcensus/code.hpp"
#include "gemcensus/errors.hpp"

namespace gemcensus {

struct CatalogueEntry {
    Code code;
    int order = 0;
    bool bipartite = true;
    int genus = 2;

    bool operator==(const CatalogueEntry&) const = default;
};

inline bool catalogue_entry_less(const CatalogueEntry& a, const CatalogueEntry& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.code.text < b.code.text;
}

// A generated census with its provenance. Entries are kept sorted by
// (order, code) and hold no duplicate codes.
struct Catalogue {
    int max_order = 0;
    int genus = 2;
    std::string filter = "all";  // all | bipartite | nonbipartite
    std::vector<CatalogueEntry> entries;

    bool operator==(const Catalogue&) const = default;
};

namespace detail {

inline void check_catalogue_order(const std::vector<CatalogueEntry>& entries) {
    for (std::size_t k = 1; k < entries.size(); ++k) {
        if (catalogue_entry_less(entries[k], entries[k - 1]))
            throw MalformedFile("catalogue entries out of order at line " +
                                std::to_string(k + 1));
        if (entries[k].code == entries[k - 1].code)
            throw MalformedFile("duplicate code " + entries[k].code.text);
    }
}

}  // namespace detail

inline void save_catalogue(const Catalogue& cat, std::ostream& out) {
    detail::check_catalogue_order(cat.entries);
    out << "# gem-census catalogue v1\n";
    out << "# max-order " << cat.max_order << "\n";
    out << "# genus " << cat.genus << "\n";
    out << "# filter " << cat.filter << "\n";
    for (const CatalogueEntry& e : cat.entries)
        out << e.order << ";" << e.code.text << ";" << (e.bipartite ? 'B' : 'N') << ";"
            << e.genus << "\n";
}

inline void save_catalogue(const Catalogue& cat, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MalformedFile("cannot open " + path + " for writing");
    save_catalogue(cat, out);
}

inline Catalogue load_catalogue(std::istream& in) {
    Catalogue cat;
    std::string line;
    if (!std::getline(in, line)) throw MalformedFile("empty catalogue file");
    const std::string magic = "# gem-census catalogue v";
    if (line.rfind(magic, 0) != 0)
        throw MalformedFile("missing catalogue header, got: " + line);
    const std::string version = line.substr(magic.size());
    if (version.empty() || version.substr(0, 1) != "1")
        throw VersionMismatch("unsupported catalogue version " + version);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "max-order") hs >> cat.max_order;
            else if (key == "genus") hs >> cat.genus;
            else if (key == "filter") hs >> cat.filter;
            continue;
        }
        // The code text may itself contain ';', so take the order from the
        // left, the flag and genus from the right, and the code in between.
        const std::size_t a = line.find(';');
        const std::size_t d = line.rfind(';');
        const std::size_t c = d == std::string::npos || d == 0
                                  ? std::string::npos
                                  : line.rfind(';', d - 1);
        if (a == std::string::npos || c == std::string::npos || c <= a)
            throw MalformedFile("bad catalogue line " + std::to_string(lineno));
        const std::string order_s = line.substr(0, a);
        const std::string code_s = line.substr(a + 1, c - a - 1);
        const std::string side_s = line.substr(c + 1, d - c - 1);
        const std::string genus_s = line.substr(d + 1);
        CatalogueEntry e;
        try {
            e.order = std::stoi(order_s);
            e.genus = std::stoi(genus_s);
        } catch (const std::exception&) {
            throw MalformedFile("bad number on line " + std::to_string(lineno));
        }
        if (side_s != "B" && side_s != "N")
            throw MalformedFile("bad bipartiteness flag on line " + std::to_string(lineno));
        e.bipartite = side_s == "B";
        e.code = Code{code_s, e.order};
        try {
            const ColouredGraph g = from_code(e.code.text);
            if (g.order() != e.order)
                throw MalformedFile("code order mismatch on line " + std::to_string(lineno));
        } catch (const MalformedCode& err) {
            throw MalformedFile("bad code on line " + std::to_string(lineno) + ": " +
                                err.what());
        }
        cat.entries.push_back(std::move(e));
    }
    detail::check_catalogue_order(cat.entries);
    return cat;
}

inline Catalogue load_catalogue(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedFile("cannot open " + path);
    return load_catalogue(in);
}

// Codes present in exactly one catalogue, grouped by order on each side.
struct CatalogueDiff {
    std::vector<CatalogueEntry> only_first;
    std::vector<CatalogueEntry> only_second;

    bool empty() const { return only_first.empty() && only_second.empty(); }
    bool operator==(const CatalogueDiff&) const = default;
};

inline CatalogueDiff diff_catalogues(const Catalogue& a, const Catalogue& b) {
    detail::check_catalogue_order(a.entries);
    detail::check_catalogue_order(b.entries);
    CatalogueDiff d;
    std::set_difference(a.entries.begin(), a.entries.end(), b.entries.begin(),
                        b.entries.end(), std::back_inserter(d.only_first),
                        catalogue_entry_less);
    std::set_difference(b.entries.begin(), b.entries.end(), a.entries.begin(),
                        a.entries.end(), std::back_inserter(d.only_second),
                        catalogue_entry_less);
    return d;
}

// One gamma-class as persisted: a representative, an optional manifold name
// ("?" when unknown), and the member codes with their handle counts. A class
// is marked unresolved when the move search ran out of budget before it could
// rule out further merges, so the class may be a fragment of a larger one.
struct ClassRecord {
    std::string rep;
    std::string name = "?";
    std::vector<std::pair<std::string, int>> members;
    bool unresolved = false;

    bool operator==(const ClassRecord&) const = default;
};

inline void save_classes(const std::vector<ClassRecord>& classes, std::ostream& out) {
    out << "# gem-census classes v1\n";
    for (std::size_t k = 0; k < classes.size(); ++k) {
        const ClassRecord& c = classes[k];
        // name= comes last so manifold names may contain spaces.
        out << "class " << k << " rep=" << c.rep << (c.unresolved ? " unresolved" : "")
            << " name=" << c.name << "\n";
        for (const auto& [code, h] : c.members) out << code << " h=" << h << "\n";
    }
}

inline void save_classes(const std::vector<ClassRecord>& classes, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MalformedFile("cannot open " + path + " for writing");
    save_classes(classes, out);
}

inline std::vector<ClassRecord> load_classes(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedFile("empty classes file");
    const std::string magic = "# gem-census classes v";
    if (line.rfind(magic, 0) != 0)
        throw MalformedFile("missing classes header, got: " + line);
    const std::string version = line.substr(magic.size());
    if (version.empty() || version.substr(0, 1) != "1")
        throw VersionMismatch("unsupported classes version " + version);
    std::vector<ClassRecord> classes;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("class ", 0) == 0) {
            const std::size_t name_at = line.find(" name=");
            if (name_at == std::string::npos)
                throw MalformedFile("bad class line " + std::to_string(lineno));
            std::istringstream ls(line.substr(6, name_at - 6));
            std::size_t id = 0;
            std::string rep_kv, flag;
            if (!(ls >> id >> rep_kv) || rep_kv.rfind("rep=", 0) != 0)
                throw MalformedFile("bad class line " + std::to_string(lineno));
            ClassRecord c;
            if (ls >> flag) {
                if (flag != "unresolved")
                    throw MalformedFile("bad class line " + std::to_string(lineno));
                c.unresolved = true;
            }
            if (id != classes.size())
                throw MalformedFile("class ids must be sequential at line " +
                                    std::to_string(lineno));
            c.rep = rep_kv.substr(4);
            c.name = line.substr(name_at + 6);
            classes.push_back(std::move(c));
            continue;
        }
        if (classes.empty())
            throw MalformedFile("member before any class at line " + std::to_string(lineno));
        std::istringstream ls(line);
        std::string code, h_kv;
        if (!(ls >> code >> h_kv) || h_kv.rfind("h=", 0) != 0)
            throw MalformedFile("bad member line " + std::to_string(lineno));
        int h = 0;
        try {
            h = std::stoi(h_kv.substr(2));
        } catch (const std::exception&) {
            throw MalformedFile("bad handle count at line " + std::to_string(lineno));
        }
        classes.back().members.emplace_back(code, h);
    }
    return classes;
}

inline std::vector<ClassRecord> load_classes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedFile("cannot open " + path);
    return load_classes(in);
}

}  // namespace gemcensus
