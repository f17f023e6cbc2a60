#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "opforge/verbs.hpp"

using namespace opforge;

namespace {

std::string fixture(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& body) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream out(p);
    out << body;
    return p.string();
}

int run_binary(const std::string& args) {
    std::string cmd = std::string(OPFORGE_BIN) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("workspace parsing") {
    SUBCASE("empty file set gives an empty workspace") {
        Workspace ws = parse_workspace({});
        CHECK(ws.complexes.empty());
        CHECK(ws.operads.empty());
        CHECK(ws.ring == CoeffRing::rationals());
    }

    SUBCASE("the Com fixture loads and is axiom-checked") {
        Workspace ws = parse_workspace({fixture("com_q.opf")});
        REQUIRE(ws.operads.count("Com"));
        CHECK(ws.ring == CoeffRing::rationals());
        CHECK(ws.operads.at("Com").arity_bound == 3);
        CHECK(check_operad_axioms(ws.operads.at("Com")).ok);
    }

    SUBCASE("the square-zero fixture builds the presented algebra") {
        Workspace ws = parse_workspace({fixture("squarezero_q.opf")});
        REQUIRE(ws.algebras.count("A"));
        CHECK(ws.algebras.at("A").component(0).total_rank() == 1);
        REQUIRE(ws.modules.count("M"));
        CHECK(check_module_axioms(ws.modules.at("M")).ok);
    }

    SUBCASE("d^2 != 0 raises a ValidationError naming the degree") {
        std::string f = write_temp("opforge_bad_d2.opf", R"({
  "schema": "opforge/1",
  "objects": [
    { "kind": "complex", "name": "bad",
      "ranks": { "0": 1, "1": 1, "2": 1 },
      "diffs": { "0": [[0,0,"1"]], "1": [[0,0,"1"]] } }
  ]
})");
        CHECK_THROWS_WITH_AS(parse_workspace({f}),
                             doctest::Contains("d^2 != 0 at degree 0"),
                             ValidationError);
    }

    SUBCASE("duplicate names are rejected") {
        std::string f = write_temp("opforge_dup.opf", R"({
  "schema": "opforge/1",
  "objects": [
    { "kind": "complex", "name": "x", "ranks": { "0": 1 } },
    { "kind": "complex", "name": "x", "ranks": { "0": 2 } }
  ]
})");
        CHECK_THROWS_AS(parse_workspace({f}), ValidationError);
    }

    SUBCASE("malformed JSON raises ParseError with a location") {
        std::string f = write_temp("opforge_broken.opf", "{ not json");
        CHECK_THROWS_WITH_AS(parse_workspace({f}), doctest::Contains(":1:"),
                             ParseError);
    }

    SUBCASE("a missing schema marker is rejected") {
        std::string f = write_temp("opforge_noschema.opf", R"({"objects": []})");
        CHECK_THROWS_AS(parse_workspace({f}), ParseError);
    }
}

TEST_CASE("homology verb on the cone is the all-zero table") {
    Workspace ws = parse_workspace({fixture("cone_q.opf")});
    VerbOptions opt;
    opt.complex = "C1";
    VerbReport r = run_verb("homology", opt, ws);
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("H⁰: rank 0") != std::string::npos);
    CHECK(r.text.find("H⁻¹: rank 0") != std::string::npos);
    CHECK(r.machine.at("data").at("0").at("free_rank") == 0);
}

TEST_CASE("quasi-iso verb") {
    Workspace ws = parse_workspace({fixture("cone_q.opf")});
    VerbOptions opt;
    opt.map = "collapse";
    CHECK(run_verb("quasi-iso", opt, ws).exit_code == 0);
    opt.map = "vertex";  // k -> acyclic cone
    VerbReport r = run_verb("quasi-iso", opt, ws);
    CHECK(r.exit_code == 1);
    CHECK(r.machine.at("witness") == "homology differs at degree 0");
    opt.map = "nope";
    CHECK_THROWS_AS(run_verb("quasi-iso", opt, ws), UsageError);
}

TEST_CASE("probe-admissibility trichotomy through the CLI layer") {
    Workspace ws;
    VerbOptions opt;
    opt.operad = "Com";
    opt.max_arity = 2;

    opt.ring = "Q";
    CHECK(run_verb("probe-admissibility", opt, ws).exit_code == 0);

    opt.operad = "Ass";
    opt.ring = "Fp:2";
    CHECK(run_verb("probe-admissibility", opt, ws).exit_code == 0);

    opt.operad = "Com";
    VerbReport r = run_verb("probe-admissibility", opt, ws);
    CHECK(r.exit_code == 1);
    CHECK(r.machine.at("witness") ==
          "nonzero H⁰ class x² in the arity-2 component");
    CHECK(r.text.find("H⁰ class x² in arity 2") != std::string::npos);
}

TEST_CASE("em-aw and dold-kan verbs") {
    Workspace ws;
    VerbOptions opt;
    opt.ring = "Q";
    opt.level = 3;
    VerbReport r = run_verb("em-aw", opt, ws);
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("AW∘EM = id verified") != std::string::npos);

    opt.seed = 11;
    opt.count = 4;
    for (const char* ring : {"Q", "Fp:5"}) {
        opt.ring = ring;
        VerbReport a = run_verb("dold-kan", opt, ws);
        VerbReport b = run_verb("dold-kan", opt, ws);
        CHECK(a.exit_code == 0);
        // deterministic given --seed: byte-identical machine reports
        CHECK(a.machine.dump() == b.machine.dump());
    }
}

TEST_CASE("splitting and ring usage errors") {
    Workspace ws;
    VerbOptions opt;
    opt.operad = "Com";
    opt.splitting = "rational";
    opt.ring = "Fp:2";
    CHECK_THROWS_AS(run_verb("check-splitting", opt, ws), UsageError);
    opt.ring = "Q";
    CHECK(run_verb("check-splitting", opt, ws).exit_code == 0);
    opt.operad = "wat";
    CHECK_THROWS_AS(run_verb("check-operad", opt, ws), UsageError);
    CHECK_THROWS_AS(run_verb("frobnicate", opt, ws), UsageError);
}

TEST_CASE("envelope and pushout-filtration verbs on the fixture algebra") {
    Workspace ws = parse_workspace({fixture("squarezero_q.opf")});
    VerbOptions opt;
    opt.operad = "Com3";
    opt.algebra = "A";
    VerbReport r = run_verb("envelope", opt, ws);
    CHECK(r.exit_code == 0);
    CHECK(r.machine.at("data").at("components").at("(0|0)").at("0") == 2);

    VerbReport p = run_verb("pushout-filtration", opt, ws);
    CHECK(p.exit_code == 0);
    CHECK(p.machine.at("data").at("stages").size() == 4);
    CHECK(p.machine.at("data").at("direct").at("0").at("0") == 6);
}

TEST_CASE("the installed binary honors the exit code contract") {
    CHECK(run_binary("probe-admissibility --operad Com --ring Fp:2 --max-arity 2") == 1);
    CHECK(run_binary("em-aw --level 3 --ring Q") == 0);
    CHECK(run_binary("no-such-verb") == 2);
    CHECK(run_binary("homology --complex nope") == 2);
    std::string ws = fixture("cone_q.opf");
    CHECK(run_binary("homology -w " + ws + " --complex C1") == 0);

    // machine-readable reports round-trip byte-for-byte for a fixed seed
    std::filesystem::path dir = std::filesystem::temp_directory_path();
    std::string out1 = (dir / "opforge_rep1.json").string();
    std::string out2 = (dir / "opforge_rep2.json").string();
    std::string args = "dold-kan --seed 3 --count 3 --ring Q --format json --out ";
    REQUIRE(run_binary(args + out1) == 0);
    REQUIRE(run_binary(args + out2) == 0);
    std::string rep1 = slurp(out1);
    CHECK(rep1 == slurp(out2));
    nlohmann::json parsed = nlohmann::json::parse(rep1);
    CHECK(parsed.at("schema") == "opforge/1");
    CHECK(parsed.at("verdict") == "pass");
    CHECK(parsed.at("invariant") == "C∘N = id");
}
