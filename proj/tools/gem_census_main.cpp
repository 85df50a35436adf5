#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "gemcensus/catalog.hpp"
#include "gemcensus/classify.hpp"
#include "gemcensus/code.hpp"
#include "gemcensus/coloured_graph.hpp"
#include "gemcensus/errors.hpp"
#include "gemcensus/generation.hpp"
#include "gemcensus/invariants.hpp"
#include "gemcensus/named_tables.hpp"
#include "gemcensus/seifert.hpp"

using gemcensus::canonical_code;
using gemcensus::Catalogue;
using gemcensus::CatalogueDiff;
using gemcensus::CatalogueEntry;
using gemcensus::ClassRecord;
using gemcensus::ColouredGraph;
using gemcensus::crystallize;
using gemcensus::diff_catalogues;
using gemcensus::face_vector;
using gemcensus::FaceVector;
using gemcensus::first_homology;
using gemcensus::from_code;
using gemcensus::fundamental_group;
using gemcensus::gamma_class;
using gemcensus::generate_catalogue;
using gemcensus::GroupPresentation;
using gemcensus::h1_to_string;
using gemcensus::ingest_known;
using gemcensus::InvalidParams;
using gemcensus::load_catalogue;
using gemcensus::MalformedFile;
using gemcensus::MoveLog;
using gemcensus::NamedTableRow;
using gemcensus::save_catalogue;
using gemcensus::save_classes;
using gemcensus::SearchBudget;
using gemcensus::SeifertSpec;
using gemcensus::SeifertTriple;
using gemcensus::Triangulation;

namespace {

// Runs `body` against --out when given, standard output otherwise.
template <typename Body>
void with_output(const std::string& path, Body body) {
    if (path.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw MalformedFile("cannot open " + path + " for writing");
    body(out);
}

void print_table1(const Catalogue& cat, std::ostream& out) {
    std::map<int, std::pair<int, int>> counts;
    int max_order = cat.max_order;
    for (const CatalogueEntry& e : cat.entries) {
        auto& row = counts[e.order];
        (e.bipartite ? row.first : row.second) += 1;
        max_order = std::max(max_order, e.order);
    }
    std::vector<int> orders;
    for (int n = 14; n <= max_order; n += 2) orders.push_back(n);

    const auto row = [&](const std::string& label, auto value) {
        out << label;
        for (std::size_t k = label.size(); k < 13; ++k) out << ' ';
        for (int n : orders) {
            char cell[8];
            std::snprintf(cell, sizeof cell, "%5d", value(n));
            out << cell;
        }
        out << "\n";
    };
    row("2p", [](int n) { return n; });
    row("bipartite", [&](int n) { return counts[n].first; });
    row("nonbipartite", [&](int n) { return counts[n].second; });
}

int run_generate(int max_order, int genus, bool bip_only, bool nonbip_only,
                 const std::string& out_path, bool table1, bool progress, int threads) {
    if (progress)
        std::cerr << "generate: max order " << max_order << ", genus " << genus
                  << ", threads " << threads << "\n";
    Catalogue cat = generate_catalogue(max_order, genus, threads);
    if (bip_only || nonbip_only) {
        cat.filter = bip_only ? "bipartite" : "nonbipartite";
        std::erase_if(cat.entries,
                      [&](const CatalogueEntry& e) { return e.bipartite != bip_only; });
    }
    if (progress) std::cerr << "generate: " << cat.entries.size() << " entries\n";
    if (table1) print_table1(cat, std::cout);
    if (!out_path.empty())
        save_catalogue(cat, out_path);
    else if (!table1)
        save_catalogue(cat, std::cout);
    return 0;
}

SearchBudget parse_budget(const std::string& text) {
    std::istringstream in(text);
    int m = 0, n = 0, inflate = 0, len = 0;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(in >> m >> c1 >> n >> c2 >> inflate >> c3 >> len) || c1 != ',' || c2 != ',' ||
        c3 != ',' || !(in >> std::ws).eof())
        throw InvalidParams("budget must be m,n,inflate,len");
    SearchBudget b;
    b.max_gd_size = {m, n};
    b.max_order_inflation = inflate;
    b.max_sequence_length = len;
    return b;
}

int run_classify(const std::string& in_path, const std::vector<std::string>& known_paths,
                 const std::string& budget_text, const std::string& out_path, bool strict,
                 int threads) {
    const Catalogue cat = load_catalogue(in_path);
    const auto known = ingest_known(known_paths);
    const SearchBudget budget =
        budget_text.empty() ? SearchBudget{} : parse_budget(budget_text);
    const std::vector<ClassRecord> classes = gamma_class(cat, known, budget, threads);
    with_output(out_path, [&](std::ostream& out) { save_classes(classes, out); });
    const long open =
        std::count_if(classes.begin(), classes.end(),
                      [](const ClassRecord& c) { return c.unresolved; });
    std::cerr << "classify: " << classes.size() << " classes, " << open
              << " unresolved\n";
    return strict && open > 0 ? 2 : 0;
}

int run_invariants(const std::string& in_path, const std::string& what) {
    bool want_h1 = false, want_pi1 = false, want_face = false;
    std::istringstream in(what);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "h1") want_h1 = true;
        else if (item == "pi1") want_pi1 = true;
        else if (item == "face") want_face = true;
        else throw InvalidParams("unknown invariant '" + item + "', expected h1,pi1,face");
    }
    if (!want_h1 && !want_pi1 && !want_face)
        throw InvalidParams("--what selects none of h1,pi1,face");

    const Catalogue cat = load_catalogue(in_path);
    for (const CatalogueEntry& e : cat.entries) {
        const ColouredGraph g = from_code(e.code.text);
        std::cout << e.code.text;
        if (want_h1) std::cout << " h1=" << h1_to_string(first_homology(g));
        if (want_pi1) {
            const GroupPresentation p = fundamental_group(g);
            std::cout << " pi1=" << p.generators << ":" << p.relators.size();
        }
        if (want_face) {
            const FaceVector f = face_vector(g);
            std::cout << " face=" << f.vertices << "," << f.edges << "," << f.triangles
                      << "," << f.tetrahedra;
        }
        std::cout << "\n";
    }
    return 0;
}

SeifertSpec parse_triples(std::string text) {
    std::erase(text, ' ');
    std::vector<std::array<int, 3>> triples;
    std::size_t at = 0;
    while (at < text.size()) {
        if (text[at] != '(') throw InvalidParams("expected '(' in --triples");
        const std::size_t close = text.find(')', at);
        if (close == std::string::npos) throw InvalidParams("unclosed '(' in --triples");
        std::istringstream in(text.substr(at + 1, close - at - 1));
        std::array<int, 3> t{};
        char c1 = 0, c2 = 0;
        if (!(in >> t[0] >> c1 >> t[1] >> c2 >> t[2]) || c1 != ',' || c2 != ',' ||
            !(in >> std::ws).eof())
            throw InvalidParams("each triple must be (a,t,s)");
        triples.push_back(t);
        at = close + 1;
        if (at < text.size()) {
            if (text[at] != ',') throw InvalidParams("triples must be comma separated");
            ++at;
        }
    }
    if (triples.size() != 3)
        throw InvalidParams("--triples needs exactly three fibre triples");
    SeifertSpec spec;
    for (int i = 0; i < 3; ++i)
        spec.triples[i] = SeifertTriple{triples[i][0], triples[i][1], triples[i][2]};
    return spec;
}

int run_seifert(const std::string& triples_text, bool do_crystallize, bool trace,
                const std::string& out_path) {
    const SeifertSpec spec = parse_triples(triples_text);
    const Triangulation t = gemcensus::assemble(spec);
    const ColouredGraph gem = gemcensus::barycentric_coloured_graph(t);
    with_output(out_path, [&](std::ostream& out) {
        out << "tetrahedra " << t.tets << "\n";
        out << "closed " << (gemcensus::is_closed(t) ? "yes" : "no") << "\n";
        out << "euler " << gemcensus::euler_characteristic(t) << "\n";
        out << "h1 " << h1_to_string(gemcensus::first_homology(t)) << "\n";
        out << "gem-order " << gem.order() << "\n";
        if (!do_crystallize) {
            out << "code " << canonical_code(gem).text << "\n";
            return;
        }
        const auto [reduced, log] = crystallize(gem);
        out << "code " << canonical_code(reduced).text << "\n";
        out << "gem-h1 " << h1_to_string(first_homology(reduced)) << "\n";
        out << "moves " << log.moves.size() << " rho3 " << log.rho3_count << "\n";
        if (trace)
            for (const std::string& token : log.moves) out << "move " << token << "\n";
    });
    return 0;
}

int run_diff(const std::string& a_path, const std::string& b_path) {
    const Catalogue a = load_catalogue(a_path);
    const Catalogue b = load_catalogue(b_path);
    const CatalogueDiff d = diff_catalogues(a, b);
    const auto print = [](char side, const CatalogueEntry& e) {
        std::cout << side << " " << e.order << ";" << e.code.text << ";"
                  << (e.bipartite ? 'B' : 'N') << ";" << e.genus << "\n";
    };
    for (const CatalogueEntry& e : d.only_first) print('<', e);
    for (const CatalogueEntry& e : d.only_second) print('>', e);
    std::cerr << "diff: " << d.only_first.size() << " only in first, "
              << d.only_second.size() << " only in second\n";
    return 0;
}

int run_names(bool table2, bool table3) {
    const std::vector<NamedTableRow>& rows =
        table2 ? gemcensus::orientable_census_names()
               : gemcensus::nonorientable_census_names();
    (void)table3;
    for (const NamedTableRow& r : rows)
        std::cout << r.tetrahedra << ";" << (r.six_tuple.empty() ? "-" : r.six_tuple)
                  << ";" << r.name << ";" << (r.position.empty() ? "-" : r.position)
                  << "\n";
    return 0;
}

int run_code(const std::string& in_path, bool roundtrip) {
    const Catalogue cat = load_catalogue(in_path);
    if (!roundtrip) {
        std::cerr << "code: " << cat.entries.size() << " codes parse\n";
        return 0;
    }
    std::size_t bad = 0;
    for (const CatalogueEntry& e : cat.entries) {
        const std::string again = canonical_code(from_code(e.code.text)).text;
        if (again != e.code.text) {
            ++bad;
            std::cerr << "code: not canonical: " << e.code.text << "\n";
        }
    }
    std::cerr << "code: " << cat.entries.size() - bad << " of " << cat.entries.size()
              << " round-trip\n";
    return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "gem-census: generate, classify, and analyse rigid genus-two "
        "crystallization catalogues"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "",
                   "key=value file; subcommand keys go under a [subcommand] section; "
                   "command-line flags win");

    int threads = 1;
    app.add_option("--threads", threads, "worker threads")
        ->envname("GEMCENSUS_THREADS")
        ->check(CLI::PositiveNumber);

    // generate
    auto* generate = app.add_subcommand("generate", "build a census catalogue");
    int max_order = 0;
    int genus = 2;
    bool bip_only = false, nonbip_only = false, table1_flag = false, progress = false;
    std::string gen_out;
    generate->add_option("--max-order", max_order, "largest graph order (even, >= 2)")
        ->required();
    generate->add_option("--genus", genus, "regular genus of the census");
    auto* opt_bip = generate->add_flag("--bipartite-only", bip_only, "keep bipartite only");
    auto* opt_non =
        generate->add_flag("--nonbipartite-only", nonbip_only, "keep non-bipartite only");
    opt_bip->excludes(opt_non);
    opt_non->excludes(opt_bip);
    generate->add_option("--out", gen_out, "catalogue file (default: stdout)");
    generate->add_flag("--table1", table1_flag, "print the per-order count table");
    generate->add_flag("--progress", progress, "progress lines on the diagnostic stream");

    // classify
    auto* classify = app.add_subcommand("classify", "group a catalogue into move classes");
    std::string cls_in, cls_budget, cls_out;
    std::vector<std::string> cls_known;
    bool strict = false;
    classify->add_option("--in", cls_in, "catalogue file")->required();
    classify->add_option("--known", cls_known, "known `code name` file (repeatable)");
    classify->add_option("--budget", cls_budget, "search budget m,n,inflate,len");
    classify->add_option("--out", cls_out, "classes file (default: stdout)");
    classify->add_flag("--strict", strict, "exit 2 when any class is unresolved");

    // invariants
    auto* invariants = app.add_subcommand("invariants", "per-code algebraic invariants");
    std::string inv_in, inv_what = "h1";
    invariants->add_option("--in", inv_in, "catalogue file")->required();
    invariants->add_option("--what", inv_what, "comma list of h1,pi1,face");

    // seifert
    auto* seifert =
        app.add_subcommand("seifert", "triangulate a three-fibre Seifert space");
    std::string sft_triples, sft_out;
    bool do_cryst = false, trace = false;
    seifert->add_option("--triples", sft_triples, "three (alpha,theta,sigma) triples")
        ->required();
    seifert->add_flag("--crystallize", do_cryst, "reduce the dual gem to a rigid form");
    seifert->add_flag("--trace", trace, "list the reduction moves");
    seifert->add_option("--out", sft_out, "report file (default: stdout)");

    // cat
    auto* cat_cmd = app.add_subcommand("cat", "validate and reprint a catalogue");
    std::string cat_in;
    cat_cmd->add_option("--in", cat_in, "catalogue file")->required();

    // diff
    auto* diff = app.add_subcommand("diff", "codes present in exactly one catalogue");
    std::string diff_a, diff_b;
    diff->add_option("first", diff_a, "catalogue file")->required();
    diff->add_option("second", diff_b, "catalogue file")->required();

    // table1
    auto* table1 = app.add_subcommand("table1", "per-order count table of a catalogue");
    std::string tbl_in;
    table1->add_option("--in", tbl_in, "catalogue file")->required();

    // names
    auto* names = app.add_subcommand("names", "bundled census name tables");
    bool table2 = false, table3 = false;
    auto* opt_t2 = names->add_flag("--table2", table2, "orientable manifold names");
    auto* opt_t3 = names->add_flag("--table3", table3, "non-orientable manifold names");
    opt_t2->excludes(opt_t3);
    opt_t3->excludes(opt_t2);

    // code
    auto* code = app.add_subcommand("code", "validate catalogue codes");
    std::string code_in;
    bool roundtrip = false;
    code->add_option("--in", code_in, "catalogue file")->required();
    code->add_flag("--roundtrip", roundtrip, "re-derive each canonical code");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (generate->parsed())
            return run_generate(max_order, genus, bip_only, nonbip_only, gen_out,
                                table1_flag, progress, threads);
        if (classify->parsed())
            return run_classify(cls_in, cls_known, cls_budget, cls_out, strict, threads);
        if (invariants->parsed()) return run_invariants(inv_in, inv_what);
        if (seifert->parsed()) return run_seifert(sft_triples, do_cryst, trace, sft_out);
        if (cat_cmd->parsed()) {
            const Catalogue c = load_catalogue(cat_in);
            save_catalogue(c, std::cout);
            return 0;
        }
        if (diff->parsed()) return run_diff(diff_a, diff_b);
        if (table1->parsed()) {
            print_table1(load_catalogue(tbl_in), std::cout);
            return 0;
        }
        if (names->parsed()) {
            if (!table2 && !table3)
                throw InvalidParams("names needs --table2 or --table3");
            return run_names(table2, table3);
        }
        if (code->parsed()) return run_code(code_in, roundtrip);
    } catch (const gemcensus::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
