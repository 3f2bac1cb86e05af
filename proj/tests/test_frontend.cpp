#include <filesystem>
#include <regex>

#include "doctest.h"
#include "oracles.hpp"
#include "symdyn/frontend.hpp"
#include "symdyn/subst.hpp"

using namespace symdyn;
using namespace symdyn::frontend;
namespace fs = std::filesystem;

namespace {

std::vector<fs::path> fixture_files(const char* sub) {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(fs::path(SYMDYN_FIXTURES) / sub))
        if (e.path().extension() == ".sym") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::string dump(const ParseResult& r) {
    std::string s;
    for (const auto& d : r.diagnostics) s += format_diagnostic(d) + "\n";
    return s;
}

}  // namespace

TEST_CASE("round trip on the fixture corpus") {
    auto files = fixture_files("corpus");
    const auto more = fixture_files("experiments");
    files.insert(files.end(), more.begin(), more.end());
    REQUIRE(files.size() >= 10);
    for (const auto& f : files) {
        INFO(f.string());
        const auto first = parse_spec(oracle::read_file(f.string()));
        INFO(dump(first));
        REQUIRE(first.ok());
        const auto text = print_spec(*first.document);
        const auto second = parse_spec(text);
        INFO(text);
        REQUIRE(second.ok());
        CHECK(*second.document == *first.document);
        CHECK(print_spec(*second.document) == text);
    }
}

TEST_CASE("malformed inputs report the expected position") {
    const std::regex header(R"(^# expect (\d+):(\d+)(?: (.*))?)");
    const auto files = fixture_files("malformed");
    REQUIRE(files.size() >= 10);
    for (const auto& f : files) {
        const auto text = oracle::read_file(f.string());
        std::smatch m;
        const std::string first_line = text.substr(0, text.find('\n'));
        REQUIRE(std::regex_search(first_line, m, header));
        const Position want{std::stoul(m[1]), std::stoul(m[2])};
        const std::string needle = m[3];
        const auto r = parse_spec(text);
        INFO(f.filename().string(), "\n", dump(r));
        CHECK_FALSE(r.ok());
        bool found = false;
        for (const auto& d : r.diagnostics)
            found = found || (d.severity == Diagnostic::Severity::error && d.position == want &&
                              d.message.find(needle) != std::string::npos);
        CHECK(found);
    }
}

TEST_CASE("diagnostics") {
    const auto r = parse_spec("substitution t on {0,1} {\n  0 -> \"01\";\n  1 -> \"1x\";\n}\n");
    REQUIRE_FALSE(r.ok());
    const auto text = format_diagnostic(r.diagnostics.front(), "f.sym");
    CHECK(text.rfind("f.sym:3:10: error: ", 0) == 0);
    CHECK(text.find("\n    1 -> \"1x\";\n") != std::string::npos);
    CHECK(text.find("\n           ^") != std::string::npos);

    const auto dup = parse_spec("observable a = walsh {0}\nobservable a = walsh {1}\n");
    REQUIRE_FALSE(dup.ok());
    CHECK(dup.diagnostics.size() == 2);

    // weight is ignored in KBSZ mode, with a warning
    const auto w = parse_spec(
        "substitution t on {0,1} { 0 -> \"01\"; 1 -> \"10\"; }\nobservable s = walsh {0}\n"
        "experiment e { system: t; observable: s; weight: moebius; N: 64; kbsz: (3,5); }\n");
    REQUIRE(w.ok());
    REQUIRE(w.diagnostics.size() == 1);
    CHECK(w.diagnostics[0].severity == Diagnostic::Severity::warning);

    // several independent errors are all reported
    const auto many = parse_spec("rs a pattern \"0\"\nrs b pattern \"2\"\n");
    CHECK(many.diagnostics.size() == 2);

    const auto big = parse_spec(
        "substitution t on {0,1} { 0 -> \"01\"; 1 -> \"10\"; }\nobservable s = walsh {0}\n"
        "experiment e { system: t; observable: s; weight: moebius; N: 100000000; }\n");
    CHECK_FALSE(big.ok());
}

TEST_CASE("observable expressions") {
    const auto r = parse_observable_expr("walsh {1, 0}");
    REQUIRE(r.ok());
    const auto& obs = std::get<ObservableDecl>(r.document->declarations.front().body);
    CHECK(obs.kind == ObservableDecl::Kind::walsh);
    CHECK(obs.offsets == std::vector<std::uint32_t>{0, 1});
    const auto built = build_observable(obs, 2);
    CHECK(built.window() == std::vector<std::uint32_t>{0, 1});

    const auto t = parse_observable_expr("table {0: 1, 1: -1+2i}");
    REQUIRE(t.ok());
    const auto& tab = std::get<ObservableDecl>(t.document->declarations.front().body);
    CHECK(tab.table[1].second == std::complex<double>(-1.0, 2.0));
    CHECK_THROWS_AS(build_observable(tab, 3), std::invalid_argument);
    CHECK_FALSE(parse_observable_expr("walsh {0,0}").ok());
    CHECK_FALSE(parse_observable_expr("fourier 3").ok());
}

TEST_CASE("building systems") {
    const auto& lib = builtin_library();
    const auto tm = build_system(lib, "thue-morse");
    CHECK(spell(tm, tm.source->prefix(16)) == "0110100110010110");
    CHECK(spell(build_hat(tm, "pd"), build_hat(tm, "pd").source->prefix(8)) == "10111010");
    const auto herning = build_system(lib, "herning");
    CHECK(spell(herning, herning.source->prefix(10)) == "aabaaaabaa");
    CHECK(build_system(lib, "tm-morse").source->prefix(64) == tm.source->prefix(64));
    const auto veech = build_system(lib, "period-doubling-veech");
    CHECK(veech.source->prefix(4096) == build_hat(tm, "pd").source->prefix(4096));
    CHECK_THROWS_AS(build_system(lib, "nothing"), std::invalid_argument);

    // the cover fixture's Morse system is the group cover of Herning
    const auto doc = parse_spec(oracle::read_file(SYMDYN_FIXTURES "/experiments/herning_cover.sym"));
    REQUIRE(doc.ok());
    const auto cover = build_system(*doc.document, "cover");
    const auto ref = subst::group_cover(*herning.substitution);
    CHECK(cover.group->order() == 6);
    CHECK(cover.source->prefix(3125) == morse::morse_source(ref.morse)->prefix(3125));

    // the dual Rudin-Shapiro code agrees with the pattern system
    const auto rs = build_system(lib, "rudin-shapiro");
    const auto pattern = build_system(lib, "rs-pattern");
    const auto a = rs.source->prefix(4096), b = pattern.source->prefix(4096);
    for (std::size_t n = 0; n < a.size(); ++n) REQUIRE((a[n] >= 2 ? 1u : 0u) == b[n]);

    const auto unicode = parse_spec(oracle::read_file(SYMDYN_FIXTURES "/corpus/unicode_letters.sym"));
    REQUIRE(unicode.ok());
    const auto greek = build_system(*unicode.document, "greek");
    CHECK(spell(greek, greek.source->prefix(4)) == "βγαγ");
}

TEST_CASE("building experiments") {
    const auto doc = parse_spec(oracle::read_file(SYMDYN_FIXTURES "/corpus/compact.sym"));
    REQUIRE(doc.ok());
    const auto e1 = build_experiment(*doc.document, "e1");
    CHECK(e1.sample_size == 100);
    CHECK(e1.checkpoints == std::vector<std::uint64_t>{1, 10, 50});
    CHECK_FALSE(e1.weight.has_value());
    const auto e2 = build_experiment(*doc.document, "e2", 3);
    CHECK(e2.kbsz == std::pair<std::uint32_t, std::uint32_t>{5, 7});
    CHECK(e2.threads == 3u);
    CHECK(e2.system->prefix(8) == Word{1, 0, 1, 1, 1, 0, 1, 0});
    CHECK_THROWS_AS(build_experiment(*doc.document, "s"), std::invalid_argument);
}
