#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "gemcensus/catalog.hpp"
#include "gemcensus/generation.hpp"
#include "gemcensus/named_tables.hpp"
#include "support.hpp"

using gemcensus::canonical_code;
using gemcensus::Catalogue;
using gemcensus::CatalogueDiff;
using gemcensus::CatalogueEntry;
using gemcensus::ClassRecord;
using gemcensus::ColouredGraph;
using gemcensus::diff_catalogues;
using gemcensus::generate_catalogue;
using gemcensus::is_bipartite;
using gemcensus::load_catalogue;
using gemcensus::load_classes;
using gemcensus::MalformedFile;
using gemcensus::NamedTableRow;
using gemcensus::nonorientable_census_names;
using gemcensus::orientable_census_names;
using gemcensus::save_catalogue;
using gemcensus::save_classes;
using gemcensus::VersionMismatch;

namespace {

CatalogueEntry entry_for(const ColouredGraph& g, int genus) {
    CatalogueEntry e;
    e.code = canonical_code(g);
    e.order = g.order();
    e.bipartite = is_bipartite(g);
    e.genus = genus;
    return e;
}

Catalogue sample_catalogue() {
    Catalogue cat;
    cat.max_order = 8;
    cat.genus = 1;
    std::vector<CatalogueEntry> entries{
        entry_for(testsupport::minimal_sphere3(), 0),
        entry_for(testsupport::sphere3_order4(), 0),
        entry_for(testsupport::s1xs2_order8(), 1),
    };
    std::sort(entries.begin(), entries.end(), gemcensus::catalogue_entry_less);
    cat.entries = entries;
    return cat;
}

std::string saved_text(const Catalogue& cat) {
    std::ostringstream out;
    save_catalogue(cat, out);
    return out.str();
}

}  // namespace

TEST_CASE("catalogue survives a save and load round trip") {
    const Catalogue cat = sample_catalogue();
    std::istringstream in(saved_text(cat));
    REQUIRE(load_catalogue(in) == cat);

    const std::string path = "roundtrip_catalogue.txt";
    save_catalogue(cat, path);
    REQUIRE(load_catalogue(path) == cat);
}

TEST_CASE("catalogue files are byte deterministic") {
    const Catalogue cat = sample_catalogue();
    REQUIRE(saved_text(cat) == saved_text(cat));

    const std::string text = saved_text(cat);
    std::istringstream in(text);
    REQUIRE(saved_text(load_catalogue(in)) == text);
}

TEST_CASE("catalogue text is line oriented with hash headers") {
    const std::string text = saved_text(sample_catalogue());
    std::istringstream in(text);
    std::string line;
    REQUIRE(std::getline(in, line));
    REQUIRE(line == "# gem-census catalogue v1");
    REQUIRE(std::getline(in, line));
    REQUIRE(line == "# max-order 8");
    REQUIRE(std::getline(in, line));
    REQUIRE(line == "# genus 1");
    REQUIRE(std::getline(in, line));
    REQUIRE(line == "# filter all");
    int rows = 0;
    while (std::getline(in, line)) {
        // order;code;B|N;genus, where the code itself carries one ';'.
        const std::size_t a = line.find(';');
        const std::size_t d = line.rfind(';');
        const std::size_t c = line.rfind(';', d - 1);
        REQUIRE(a < c);
        REQUIRE(c < d);
        const std::string side = line.substr(c + 1, d - c - 1);
        REQUIRE((side == "B" || side == "N"));
        REQUIRE(c - a > 1);
        ++rows;
    }
    REQUIRE(rows == 3);
}

TEST_CASE("loading rejects malformed catalogues") {
    const auto load_text = [](const std::string& text) {
        std::istringstream in(text);
        return load_catalogue(in);
    };
    const std::string header = "# gem-census catalogue v1\n";
    const std::string good_row = saved_text(sample_catalogue());

    REQUIRE_THROWS_AS(load_text(""), MalformedFile);
    REQUIRE_THROWS_AS(load_text("order;code\n"), MalformedFile);
    REQUIRE_THROWS_AS(load_text("# gem-census catalogue v2\n"), VersionMismatch);
    REQUIRE_THROWS_AS(load_text("# gem-census catalogue v2.3\n"), VersionMismatch);
    REQUIRE_THROWS_AS(load_text(header + "2;not a code;B;0\n"), MalformedFile);
    REQUIRE_THROWS_AS(load_text(header + "junk without separators\n"), MalformedFile);
    const std::string code2 = canonical_code(testsupport::minimal_sphere3()).text;
    REQUIRE_THROWS_AS(load_text(header + "x;" + code2 + ";B;0\n"), MalformedFile);
    REQUIRE_THROWS_AS(load_text(header + "2;" + code2 + ";Q;0\n"), MalformedFile);
    // The declared order must match the code.
    REQUIRE_THROWS_AS(load_text(header + "4;" + code2 + ";B;0\n"), MalformedFile);
    // Sortedness and uniqueness are part of the format.
    const std::string code6 = canonical_code(testsupport::sphere3_order4()).text;
    REQUIRE_THROWS_AS(
        load_text(header + "6;" + code6 + ";B;0\n2;" + code2 + ";B;0\n"),
        MalformedFile);
    REQUIRE_THROWS_AS(
        load_text(header + "2;" + code2 + ";B;0\n2;" + code2 + ";B;0\n"),
        MalformedFile);
}

TEST_CASE("saving rejects unsorted or duplicated entries") {
    Catalogue cat = sample_catalogue();
    std::swap(cat.entries.front(), cat.entries.back());
    std::ostringstream out;
    REQUIRE_THROWS_AS(save_catalogue(cat, out), MalformedFile);

    Catalogue dup = sample_catalogue();
    dup.entries.push_back(dup.entries.back());
    REQUIRE_THROWS_AS(save_catalogue(dup, out), MalformedFile);
}

TEST_CASE("catalogue diff reports codes on exactly one side") {
    const Catalogue cat = sample_catalogue();
    REQUIRE(diff_catalogues(cat, cat).empty());

    Catalogue shorter = cat;
    shorter.entries.pop_back();
    const CatalogueDiff d = diff_catalogues(cat, shorter);
    REQUIRE(d.only_second.empty());
    REQUIRE(d.only_first == std::vector<CatalogueEntry>{cat.entries.back()});
    const CatalogueDiff r = diff_catalogues(shorter, cat);
    REQUIRE(r.only_first.empty());
    REQUIRE(r.only_second == std::vector<CatalogueEntry>{cat.entries.back()});
}

TEST_CASE("census diff between order bounds lists the new entries") {
    const Catalogue small = generate_catalogue(16);
    const Catalogue large = generate_catalogue(18);
    const CatalogueDiff d = diff_catalogues(large, small);
    REQUIRE(d.only_second.empty());
    REQUIRE(d.only_first.size() == 5);
    for (const CatalogueEntry& e : d.only_first) REQUIRE(e.order == 18);
    int bipartite = 0;
    for (const CatalogueEntry& e : d.only_first) bipartite += e.bipartite ? 1 : 0;
    REQUIRE(bipartite == 4);
}

TEST_CASE("class records survive a save and load round trip") {
    std::vector<ClassRecord> classes;
    ClassRecord a;
    a.rep = canonical_code(testsupport::minimal_sphere3()).text;
    a.name = "S3/Q8 = (S2,(2,1),(2,1),(2,-1))";  // names keep their spaces
    a.members = {{a.rep, 0}, {canonical_code(testsupport::sphere3_order4()).text, 0}};
    ClassRecord b;
    b.rep = canonical_code(testsupport::s1xs2_order8()).text;
    b.members = {{b.rep, 1}};
    b.unresolved = true;
    classes = {a, b};

    std::ostringstream out;
    save_classes(classes, out);
    std::istringstream in(out.str());
    REQUIRE(load_classes(in) == classes);

    std::ostringstream again;
    save_classes(classes, again);
    REQUIRE(again.str() == out.str());

    const std::string path = "roundtrip_classes.txt";
    save_classes(classes, path);
    REQUIRE(load_classes(path) == classes);
}

TEST_CASE("loading rejects malformed class files") {
    const auto load_text = [](const std::string& text) {
        std::istringstream in(text);
        return load_classes(in);
    };
    const std::string header = "# gem-census classes v1\n";

    REQUIRE_THROWS_AS(load_text(""), MalformedFile);
    REQUIRE_THROWS_AS(load_text("# gem-census classes v2\n"), VersionMismatch);
    REQUIRE_THROWS_AS(load_text("# something else\n"), MalformedFile);
    REQUIRE_THROWS_AS(load_text(header + "somecode h=0\n"), MalformedFile);
    REQUIRE_THROWS_AS(load_text(header + "class 1 rep=x name=?\n"), MalformedFile);
    REQUIRE_THROWS_AS(load_text(header + "class 0 rep=x\n"), MalformedFile);
    REQUIRE_THROWS_AS(load_text(header + "class 0 rep=x name=?\nsomecode h=zero\n"),
                      MalformedFile);
    REQUIRE_THROWS_AS(load_text(header + "class 0 rep=x name=?\nsomecode\n"),
                      MalformedFile);
    REQUIRE_THROWS_AS(load_text(header + "class 0 rep=x resolved name=?\n"), MalformedFile);

    // A well-formed file with an unnamed class loads with the placeholder.
    const std::vector<ClassRecord> ok =
        load_text(header + "class 0 rep=x name=?\nx h=0\ny h=2\n");
    REQUIRE(ok.size() == 1);
    REQUIRE(ok[0].name == "?");
    REQUIRE_FALSE(ok[0].unresolved);
    REQUIRE(ok[0].members ==
            std::vector<std::pair<std::string, int>>{{"x", 0}, {"y", 2}});

    // The unresolved marker sits between the representative and the name.
    const std::vector<ClassRecord> open =
        load_text(header + "class 0 rep=x unresolved name=maybe a sum\nx h=0\n");
    REQUIRE(open.size() == 1);
    REQUIRE(open[0].unresolved);
    REQUIRE(open[0].name == "maybe a sum");
}

TEST_CASE("the orientable name table lists the census manifolds in order") {
    const std::vector<NamedTableRow>& rows = orientable_census_names();
    REQUIRE(rows.size() == 78);

    std::set<std::string> positions;
    int previous = 0;
    for (const NamedTableRow& r : rows) {
        CHECK(r.tetrahedra >= 18);
        CHECK(r.tetrahedra <= 42);
        CHECK(r.tetrahedra % 2 == 0);
        CHECK(r.tetrahedra >= previous);
        previous = r.tetrahedra;
        CHECK(!r.six_tuple.empty());
        CHECK(r.six_tuple.front() == '(');
        CHECK(r.six_tuple.back() == ')');
        CHECK(!r.name.empty());
        positions.insert(r.position);
    }
    // positions form a permutation of P.1 .. P.78
    REQUIRE(positions.size() == rows.size());
    for (std::size_t k = 1; k <= rows.size(); ++k)
        CHECK(positions.count("P." + std::to_string(k)) == 1);

    CHECK(rows.front() ==
          NamedTableRow{18, "(3,3,3,2,2,2)", "S3/Q8 = (S2,(2,1),(2,1),(2,-1))", "P.6"});
    CHECK(rows[1] ==
          NamedTableRow{22, "(3,3,5,2,2,4)", "S3/Q12 = (S2,(2,1),(2,1),(3,-2))", "P.14"});

    int spherical = 0, flat = 0, final_block = 0;
    for (const NamedTableRow& r : rows) {
        if (r.name.rfind("S3/", 0) == 0) ++spherical;
        if (r.name.rfind("E3/", 0) == 0) ++flat;
        if (r.tetrahedra == 42) ++final_block;
    }
    CHECK(spherical >= 30);  // spherical quotients dominate the small orders
    CHECK(flat == 4);        // the four orientable flat quotients in the census
    CHECK(final_block == 10);
}

TEST_CASE("the nonorientable name table lists the census manifolds in order") {
    const std::vector<NamedTableRow>& rows = nonorientable_census_names();
    REQUIRE(rows.size() == 7);
    int previous = 0;
    for (const NamedTableRow& r : rows) {
        CHECK(r.tetrahedra % 2 == 0);
        CHECK(r.tetrahedra >= previous);
        previous = r.tetrahedra;
        CHECK(r.six_tuple.empty());
        CHECK(r.position.empty());
        CHECK(!r.name.empty());
    }
    CHECK(rows.front().tetrahedra == 16);
    CHECK(rows.front().name == "RP2xS1");
    CHECK(rows.back().tetrahedra == 40);
}
