#include <doctest.h>

#include <sstream>

#include "../common/words.hpp"
#include "bbcrystal/cli.hpp"
#include "bbcrystal/verify.hpp"

using namespace bbcrystal;

namespace {

const std::string corpus_dir = std::string(BBCRYSTAL_DATA_DIR) + "/corpus/";

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("datum files: JSON and TOML") {
    BCDatum a = parse_datum(R"({"A": [[2, -1], [-1, -2]], "D": [1, 1], "names": ["re", "im"]})");
    BCDatum b = parse_datum("# comment\nA = [\n  [2, -1],  # row\n  [-1, -2],\n]\nD = [1, 1]\nnames = ['re', 'im']\n");
    CHECK(a == b);
    CHECK(b.names() == std::vector<std::string>{"re", "im"});
    CHECK(load_datum(corpus_dir + "reim.toml") == oracle::corpus("reim"));
    for (const auto& [file, name] : std::vector<std::pair<std::string, std::string>>{
             {"sl2", "re1"}, {"iso1", "iso1"}, {"im1", "im1"}, {"sl3", "sl3"}, {"reiso", "reiso"}, {"reim", "reim"}})
      CHECK(load_datum(corpus_dir + file + ".json") == oracle::corpus(name));
  }

  TEST_CASE("datum rejections name the violated condition") {
    CHECK_THROWS_WITH_AS(load_datum(corpus_dir + "broken.json"), "(ii) off-diagonal: a_10 = 1 > 0", InvalidDatum);
    CHECK_THROWS_AS(parse_datum(R"({"A": [[2]]})"), InvalidDatum);
    CHECK_THROWS_AS(parse_datum(R"({"A": [[2.5]], "D": [1]})"), InvalidDatum);
    CHECK_THROWS_AS(parse_datum(R"({"A": [[2]], "D": [1]")"), InvalidInput);
    CHECK_THROWS_AS(parse_datum("A = [[2]\nD = [1]"), InvalidInput);
    CHECK_THROWS_AS(parse_datum("A [[2]]"), InvalidInput);
  }

  TEST_CASE("lambda parsing") {
    CHECK(parse_dom("2,0,1", 3) == std::vector<int>{2, 0, 1});
    CHECK(parse_dom(" 4 ", 1) == std::vector<int>{4});
    CHECK_THROWS_AS(parse_dom("2,0", 3), InvalidInput);
    CHECK_THROWS_AS(parse_dom("2,x", 2), InvalidInput);
    CHECK_THROWS_AS(parse_dom("-1", 1), InvalidInput);
  }

  TEST_CASE("crystal formats") {
    CrystalData c = build_crystal(make_ambient(oracle::corpus("re1"), {2}), 4);
    json j = crystal_json(c.graph);
    CHECK(j["vertices"].size() == 3);
    CHECK(j["edges"].size() == 2);
    CHECK(j["vertices"][0]["wt"] == json::array({2}));
    CHECK(j["vertices"][2]["wt"] == json::array({-2}));
    CHECK(j["vertices"][2]["eps"]["0"] == 2);
    CHECK(j["edges"][0] == json{{"from", 0}, {"to", 1}, {"i", "0"}, {"l", 1}});
    const std::string dot = crystal_dot(c.graph);
    CHECK(dot.find("v0 -> v1 [label=\"0,1\"]") != std::string::npos);
    CHECK(dot.find("v1 -> v2 [label=\"0,1\"]") != std::string::npos);
  }

  TEST_CASE("basis files round-trip through words") {
    for (const std::vector<int>& dom : {std::vector<int>{}, std::vector<int>{1, 1}}) {
      Pipeline p(make_ambient(oracle::corpus("reiso"), dom), 4);
      LabeledBasis back = basis_from_json(*p.amb, json::parse(basis_json(*p.amb, p.basis).dump()));
      REQUIRE(back.size() == p.basis.size());
      for (int id = 0; id < static_cast<int>(back.size()); ++id) {
        CHECK(back.offset(id) == p.basis.offset(id));
        CHECK(back.vec(id) == p.basis.vec(id));
        CHECK(back.labels[id] == p.basis.labels[id]);
      }
      LabeledBasis g = basis_from_json(*p.amb, global_json(p.global));
      for (int id = 0; id < static_cast<int>(g.size()); ++id) CHECK(g.vec(id) == p.basis.vec(id));
    }
  }

  TEST_CASE("basis files over other spanning words") {
    // b_{i1} b_{i1} and b_{i2} at offset 2 of the isotropic rank-1 U^-.
    auto amb = make_ambient(oracle::corpus("iso1"), {});
    json j = {{"weights", {{{"weight", {2}}, {"words", {{{0, 2}}, {{0, 1}, {0, 1}}}}}}},
              {"elements", {{{"id", 0}, {"weight", {2}}, {"coordinates", {"1", "q"}}}}}};
    LabeledBasis b = basis_from_json(*amb, j);
    CHECK(b.vec(0) == amb->coords({{0, 2}}) + scale(RatFunc::q_pow(1), amb->coords({{0, 1}, {0, 1}})));
    j["elements"][0]["id"] = 1;
    CHECK_THROWS_AS(basis_from_json(*amb, j), InvalidInput);
    j["elements"][0]["id"] = 0;
    j["elements"][0]["coordinates"] = {"1"};
    CHECK_THROWS_AS(basis_from_json(*amb, j), InvalidInput);
    j["weights"][0]["words"] = {{{0, 1}}};
    CHECK_THROWS_AS(basis_from_json(*amb, j), InvalidInput);
  }

  TEST_CASE("exit codes") {
    const std::string sl2 = corpus_dir + "sl2.json", iso1 = corpus_dir + "iso1.json";
    CliRun r = cli({"crystal", "blambda", "--datum", sl2, "--lambda", "2", "--height", "4", "--format", "dot"});
    CHECK(r.code == ExitOk);
    CHECK(r.out == "digraph blambda {\n  v0 [label=\"(0)\"];\n  v1 [label=\"(1)\"];\n  v2 [label=\"(2)\"];\n"
                   "  v0 -> v1 [label=\"i,1\"];\n  v1 -> v2 [label=\"i,1\"];\n}\n");
    r = cli({"datum", "validate", corpus_dir + "broken.json"});
    CHECK(r.code == ExitInvalid);
    CHECK(r.err.find("(ii) off-diagonal") != std::string::npos);
    r = cli({"--json-errors", "datum", "validate", corpus_dir + "broken.json"});
    CHECK(r.code == ExitInvalid);
    CHECK(json::parse(r.out)["error"]["kind"] == "invalid datum");
    CHECK(cli({"datum", "validate", corpus_dir + "missing.json"}).code == ExitInvalid);
    CHECK(cli({"crystal", "binf", "--datum", sl2, "--lambda", "1"}).code == ExitInvalid);
    CHECK(cli({"crystal", "blambda", "--datum", sl2, "--lambda", "1,1"}).code == ExitInvalid);
    CHECK(cli({"crystal", "bogus", "--datum", sl2}).code == ExitInvalid);
    CHECK(cli({"crystal", "binf", "--datum", sl2, "--height", "0"}).code == ExitInvalid);
    CHECK(cli({"perfect", "check-lower", "--datum", iso1, "--height", "3"}).code == ExitOk);
    CHECK(cli({"perfect", "check-upper", "--datum", iso1, "--height", "3"}).code == ExitOk);
    CHECK(cli({"perfect", "compare", "--datum", iso1, "--height", "3"}).code == ExitOk);
    CHECK(cli({"verify", "all", "--datum", iso1, "--height", "5"}).code == ExitOk);
    // The exact identity E_il G(b) = G(e~ b) fails for a_ii = -2.
    CHECK(cli({"verify", "all", "--datum", corpus_dir + "im1.json", "--height", "3"}).code == ExitFailed);
  }

  TEST_CASE("refuted basis files exit 1") {
    auto amb = make_ambient(oracle::corpus("iso1"), {});
    Pipeline p(amb, 3);
    json j = basis_json(*amb, p.basis);
    // G(b_{i1}^2) + G(b_{i2}) in place of G(b_{i2}) keeps a basis but breaks (ii).
    for (auto& e : j["elements"])
      if (e["weight"] == json::array({2}) && e["coordinates"] == json::array({"0", "1"})) e["coordinates"] = {"1", "1"};
    const std::string path = "test_io_basis.json";
    write_file(path, j.dump());
    CliRun r = cli({"perfect", "check-lower", "--datum", corpus_dir + "iso1.json", "--height", "3", "--basis", path});
    CHECK(r.code == ExitFailed);
    CHECK_FALSE(json::parse(r.out)["certificate"]["ok"].get<bool>());
    std::remove(path.c_str());
  }

  TEST_CASE("outputs are deterministic") {
    const std::vector<std::string> args = {"perfect", "compare", "--datum", corpus_dir + "reim.json", "--height", "3",
                                           "--lambda", "1,1", "--seed", "9"};
    CliRun a = cli(args), b = cli(args);
    CHECK(a.code == ExitOk);
    CHECK(a.out == b.out);
    CHECK(cli({"verify", "all", "--datum", corpus_dir + "sl3.json", "--height", "3"}).out ==
          cli({"verify", "all", "--datum", corpus_dir + "sl3.json", "--height", "3"}).out);
  }

  TEST_CASE("corpus fixtures") {
    const json fx = json::parse(read_file(corpus_dir + "fixtures.json"));
    for (const auto& [name, entry] : fx.items()) {
      const BCDatum d = load_datum(corpus_dir + name + ".json");
      const std::vector<int> lambda = entry["lambda"].get<std::vector<int>>();
      for (const auto& [kind, dom] : {std::pair<std::string, std::vector<int>>{"binf", {}}, {"blambda", lambda}}) {
        INFO(name << " " << kind);
        CrystalData c = build_crystal(make_ambient(d, dom), entry["count_height"].get<int>());
        CHECK(weight_counts(c.graph) == entry[kind]["counts"]);
        Pipeline p(make_ambient(d, dom), entry["cert_height"].get<int>());
        CHECK(certificate_json(certify_lower(p.filt, p.basis), p.basis)["digest"] == entry[kind]["check-lower"]);
        UpperSide up(p);
        CHECK(certificate_json(certify_upper(up.filt, up.dual), up.dual)["digest"] == entry[kind]["check-upper"]);
      }
    }
  }
}
