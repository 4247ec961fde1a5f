#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "sixv/commands.hpp"

using namespace sixv;

namespace {

std::string read_file(const std::string& name) {
    std::ifstream in(std::string(SIXV_CONFIG_DIR) + "/" + name);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ConfigFile load(const std::string& name) { return parse_config(read_file(name)); }

ParseError parse_error(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error for: " << text);
    throw std::logic_error("unreachable");
}

std::string drawing(const std::string& ascii) { return ascii.substr(0, ascii.find("legend:")); }

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t k = 0;
    for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++k;
    return k;
}

}  // namespace

TEST_CASE("parse the worked example files") {
    CHECK(load("two_paths_52.cfg").configuration() == fixtures::two_paths_52());
    CHECK(load("three_paths_52.cfg").configuration() == fixtures::three_paths_52());
    CHECK(load("two_paths_73.cfg").configuration() == fixtures::two_paths_73());
    CHECK(load("band_d4.cfg").configuration() == fixtures::loop_band(4));
    auto dag = load("band_d4_dagger.cfg");
    CHECK(dag.involution == Involution::Dagger);
    auto xi = load("three_paths_52_xi.cfg");
    REQUIRE(xi.xi);
    CHECK(std::abs(*xi.xi - std::complex<double>(0.6, 0.8)) < 1e-15);
    CHECK(load("empty_52.cfg").configuration().empty());
}

TEST_CASE("parse inline texts") {
    auto f = parse_config("period 5 2\npath 0 0 1121112\npath 0 0 1212111");
    CHECK(f.configuration() == fixtures::two_paths_52());
    auto e = parse_config("period 1 1\n");
    CHECK(e.configuration().empty());
    CHECK(e.involution == Involution::Star);
    auto c = parse_config("  # leading comment\nperiod 1 1   # trailing\n\nedge H 1 0 2\nedge V 1 1 2 # more\n");
    CHECK(c.edges.size() == 2);
    CHECK(c.configuration().check_conservation().empty());
}

TEST_CASE("syntax errors carry positions") {
    auto e = parse_error("period 5 2\npath 0 0 112111");
    CHECK(e.kind == ParseError::Kind::Semantic);
    CHECK(e.line == 2);
    CHECK(e.column == 10);
    CHECK(e.message.find("5 ones and 2 twos") != std::string::npos);

    e = parse_error("period 5 2\npath 0 0 1121x12");
    CHECK(e.kind == ParseError::Kind::Syntax);
    CHECK(e.line == 2);
    CHECK(e.column == 14);

    e = parse_error("period 5 x");
    CHECK(e.line == 1);
    CHECK(e.column == 10);

    e = parse_error("period 5");
    CHECK(e.column == 9);
    CHECK(e.message == "expected n");

    e = parse_error("period 4 2");
    CHECK(e.kind == ParseError::Kind::Semantic);
    CHECK(e.message.find("coprime") != std::string::npos);

    e = parse_error("\n\n  bogus 1");
    CHECK(e.line == 3);
    CHECK(e.column == 3);

    e = parse_error("edge V 0 0 1\nperiod 1 1");
    CHECK(e.line == 1);
    CHECK(e.message.find("before") != std::string::npos);

    e = parse_error("period 1 1\nperiod 1 1");
    CHECK(e.line == 2);

    e = parse_error("period 1 1\nedge X 0 0 1");
    CHECK(e.column == 6);

    e = parse_error("period 1 1\nedge V 0 0 0");
    CHECK(e.column == 12);

    e = parse_error("period 1 1\ninvolution chevalley");
    CHECK(e.column == 12);

    e = parse_error("period 1 1 7");
    CHECK(e.column == 12);

    e = parse_error("period 1 1\nxi 1 i");
    CHECK(e.column == 6);

    e = parse_error("# nothing\n");
    CHECK(e.message == "missing period declaration");

    CHECK(std::string(parse_error("period 5 2\npath 0 0 112111").what()).rfind("2:10: ", 0) == 0);
}

TEST_CASE("config text round trips") {
    for (auto cfg : {fixtures::two_paths_52(), fixtures::three_paths_52(), fixtures::two_paths_73(),
                     fixtures::loop_band(3), Configuration(Lattice(3, 2))}) {
        auto back = parse_config(to_config_text(cfg));
        CHECK(back.configuration() == cfg);
    }
    auto withx = parse_config(to_config_text(fixtures::loop_band(2), Involution::Dagger, std::complex<double>(0.6, -0.8)));
    CHECK(withx.involution == Involution::Dagger);
    CHECK(std::abs(*withx.xi - std::complex<double>(0.6, -0.8)) < 1e-15);
    for (auto [m, n] : std::vector<std::pair<Int, Int>>{{1, 1}, {2, 1}, {3, 2}, {5, 2}, {7, 3}}) {
        Lattice lat(m, n);
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            auto cfg = random_config(lat, 1 + static_cast<Int>(seed % 4), seed);
            CHECK(parse_config(to_config_text(cfg)).configuration() == cfg);
        }
    }
}

TEST_CASE("check command") {
    auto r = cmd_check(load("two_paths_52.cfg"));
    CHECK(r.exit_code == 0);
    CHECK(r.report["ok"] == true);
    auto bad = cmd_check(parse_config("period 1 1\nedge V 0 1 1\n"));
    CHECK(bad.exit_code == 1);
    CHECK(bad.report["conservation"]["ok"] == false);
    CHECK(bad.report["conservation"]["violations"].size() == 2);
}

TEST_CASE("components command") {
    auto e = cmd_components(load("empty_52.cfg"));
    REQUIRE(e.report["components"].size() == 1);
    CHECK(e.report["components"][0]["finite"] == false);
    CHECK(e.report["components"][0]["contractible"] == false);
    CHECK(e.report["components"][0]["dim"].is_null());

    auto r = cmd_components(load("two_paths_52.cfg"));
    const auto& cs = r.report["components"];
    REQUIRE(cs.size() == 4);
    CHECK(cs[0]["dim"] == 3);
    CHECK(cs[1]["dim"] == 1);
    CHECK(cs[0]["weights"] == json::array({0, 2, 4}));
    CHECK_THROWS_AS(cmd_components(parse_config("period 1 1\nedge V 0 1 1\n")), UsageError);
}

TEST_CASE("module command") {
    auto r = cmd_module(load("two_paths_52.cfg"), 0, std::nullopt);
    CHECK(r.exit_code == 0);
    CHECK(r.report["dim"] == 3);
    CHECK(r.report["relations"]["failures"].empty());
    CHECK(r.text.find("2 1 i^1 * 2*sqrt(6)") != std::string::npos);
    CHECK_THROWS_AS(cmd_module(load("two_paths_52.cfg"), 2, std::nullopt), UsageError);
    CHECK_THROWS_AS(cmd_module(load("two_paths_52.cfg"), 9, std::nullopt), UsageError);
    auto w = cmd_module(load("two_paths_52.cfg"), 2, WeightWindow{-12, 0});
    CHECK(w.exit_code == 0);
    CHECK(w.report["windowed"] == true);
}

TEST_CASE("signature command") {
    auto r = cmd_signature(load("two_paths_52.cfg"), 0, std::nullopt);
    CHECK(r.text.rfind("direct={1,2} coloring={1,2} unitarizable=false\n", 0) == 0);
    CHECK(r.exit_code == 0);
    CHECK(r.report["direct"] == json::array({1, 2}));
    CHECK(r.report["conditions"]["agree"] == true);
    auto d1 = cmd_signature(load("two_paths_52.cfg"), 1, std::nullopt);
    CHECK(d1.report["unitarizable"] == true);

    auto x = cmd_signature(load("three_paths_52_xi.cfg"), 1, std::nullopt);
    CHECK(x.exit_code == 0);
    CHECK(x.report["numeric"]["signature"] == json::array({7, 7}));
    CHECK(x.report["pseudo_unitarizable"] == true);

    auto dag = cmd_signature(load("band_d4_dagger.cfg"), 0, std::nullopt);
    CHECK(dag.report["direct"] == json::array({0, 4}));
    CHECK(dag.report["unitarizable"] == true);

    auto nonunit = parse_config(read_file("band_d4.cfg") + "xi 2 0\n");
    auto nu = cmd_signature(nonunit, 0, std::nullopt);
    CHECK(nu.report["pseudo_unitarizable"] == false);
    CHECK_FALSE(nu.report.contains("numeric"));

    CHECK_THROWS_AS(cmd_signature(load("empty_52.cfg"), 0, std::nullopt), UsageError);
    auto win = cmd_signature(load("empty_52.cfg"), 0, WeightWindow{-5, 5});
    CHECK(win.report["direct"] == json::array({0, 11}));
}

TEST_CASE("casimir command") {
    auto r = cmd_casimir(load("band_d4.cfg"), 0, std::nullopt, false);
    CHECK(r.text.find("xi^1 for 2/2 words; independent=yes") != std::string::npos);
    CHECK(r.exit_code == 0);
    auto c = cmd_casimir(load("two_paths_52.cfg"), 0, std::nullopt, true);
    CHECK(c.report["scalar"] == "0");
    CHECK(c.report["words"].size() == 21);
    auto e = cmd_casimir(load("empty_52.cfg"), 0, WeightWindow{-20, 20}, true);
    CHECK(e.text.find("xi^1 for 21/21 words; independent=yes") != std::string::npos);
}

TEST_CASE("render") {
    auto cfg = fixtures::two_paths_52();
    auto plain = drawing(render_ascii(cfg));
    CHECK(count(plain, ":") == 1);
    auto hatched = drawing(render_ascii(cfg, {0, Involution::Star}));
    CHECK(count(hatched, "///") == 2);
    CHECK(count(hatched, "\\\\\\") == 1);
    CHECK_THROWS(render_ascii(cfg, {9, Involution::Star}));

    auto svg = render_svg(cfg, {0, Involution::Star});
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    CHECK(count(svg, "stroke-dasharray") == 1);
    CHECK(count(svg, "url(#hatch-plus)") == 2);
    CHECK(count(svg, "url(#hatch-minus)") == 1);
    CHECK(svg.find("</svg>") != std::string::npos);

    auto band = render_svg(fixtures::loop_band(4), {0, Involution::Star});
    CHECK(count(band, "url(#hatch-plus)") == 2);
    CHECK(count(band, "url(#hatch-minus)") == 2);
    auto dagger = render_svg(fixtures::loop_band(4), {0, Involution::Dagger});
    CHECK(count(dagger, "stroke-dasharray") == 0);
    CHECK(count(dagger, "url(#hatch-plus)") == 4);
}

TEST_CASE("catalog records are deterministic") {
    auto run = [](std::uint64_t seed) {
        std::vector<std::string> lines;
        auto sum = catalog(5, 2, 2, 20, seed, [&](const json& rec) { lines.push_back(rec.dump()); });
        CHECK(sum.failures == 0);
        CHECK(sum.records == lines.size());
        return lines;
    };
    auto a = run(3), b = run(3), c = run(4);
    CHECK(a == b);
    CHECK(a != c);
    auto rec = json::parse(a.front());
    for (const char* key : {"m", "n", "paths", "dim", "signature", "unitarizable", "component"})
        CHECK(rec.contains(key));
}
