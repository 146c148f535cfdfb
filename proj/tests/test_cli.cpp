#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ndmu/cli.hpp"
#include "testutil.hpp"

using namespace ndmu;
using namespace ndmu::testutil;
using nlohmann::json;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parse echoes the normal form") {
  CliResult r = run({"parse", "p&q|r"});
  CHECK(r.code == 0);
  CHECK(r.out == "p & q | r\n");

  CliResult bad = run({"parse", "p &"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("parse error") != std::string::npos);

  CliResult js = run({"parse", "nu x. box x & q", "--format", "json"});
  CHECK(js.code == 0);
  json doc = json::parse(js.out);
  CHECK(doc["formula"] == "nu x. box x & q");
  CHECK(doc["hygienic"] == true);
  CHECK(doc["atoms"][0] == "q");
}

TEST_CASE("lattice prints concepts and compatibility") {
  CliResult r = run({"lattice", model_path("small.ctx")});
  CHECK(r.code == 0);
  CHECK(r.out.find("4 concepts") != std::string::npos);
  CHECK(r.out.find("({g1}, {m1 m2})") != std::string::npos);
  CHECK(r.out.find("relations compatible") != std::string::npos);

  CliResult bad = run({"lattice", model_path("incompatible.ctx")});
  CHECK(bad.code == 0);  // inspection still works
  CHECK(bad.out.find("NOT compatible") != std::string::npos);

  CliResult js = run({"lattice", model_path("small.ctx"), "--format", "json"});
  json doc = json::parse(js.out);
  CHECK(doc["size"] == 4);
  CHECK(doc["compatible"] == true);
}

TEST_CASE("eval prints the denotation") {
  CliResult r = run({"eval", model_path("small.ctx"), "nu x. box x & q"});
  CHECK(r.code == 0);
  CHECK(r.out.find("({g1}, {m1 m2})") != std::string::npos);

  CliResult js = run({"eval", model_path("small.ctx"), "nu x. box x & q", "--format", "json"});
  json doc = json::parse(js.out);
  CHECK(doc["value"]["extent"] == json::array({"g1"}));
  CHECK(doc["forcing_objects"] == json::array({"g1"}));

  CliResult refused = run({"eval", model_path("incompatible.ctx"), "q"});
  CHECK(refused.code == 2);
}

TEST_CASE("check compares the two routes and agrees") {
  CliResult r = run({"check", model_path("small.ctx"), "nu x. box x & q"});
  CHECK(r.code == 0);
  CHECK(r.out.find("result: AGREE") != std::string::npos);
  CHECK(r.out.find("DISAGREE") == std::string::npos);

  CliResult js =
      run({"check", model_path("small.ctx"), "nu x. box x & q", "--format", "json"});
  json doc = json::parse(js.out);
  CHECK(doc["agree"] == true);
  CHECK(doc["elements"].size() == 5);  // two objects + three attributes
  for (const auto& item : doc["elements"]) CHECK(item["agree"] == true);
}

TEST_CASE("check --random reports the seed and passes") {
  CliResult r = run({"check", "--random", "25", "--seed", "20240815"});
  CHECK(r.code == 0);
  CHECK(r.out.find("seed 20240815") != std::string::npos);
  CHECK(r.out.find("0 mismatches") != std::string::npos);

  CliResult js = run({"check", "--random", "5", "--seed", "1", "--format", "json"});
  json doc = json::parse(js.out);
  CHECK(doc["runs"] == 5);
  CHECK(doc["mismatches"].empty());
}

TEST_CASE("game reports winners and emits the arena") {
  CliResult win = run({"game", model_path("small.ctx"), "nu x. box x & q", "--start", "g1"});
  CHECK(win.code == 0);
  CHECK(win.out.find("winner: exists") != std::string::npos);
  CHECK(win.out.find("(g1, nu x. box x & q)") != std::string::npos);

  CliResult lose = run({"game", model_path("small.ctx"), "nu x. box x & q", "--start", "m2"});
  CHECK(lose.code == 0);
  CHECK(lose.out.find("winner: forall") != std::string::npos);

  std::string arena = std::string(NDMU_MODELS_DIR) + "/../build/test_arena.json";
  CliResult emitted = run({"game", model_path("small.ctx"), "nu x. box x & q", "--start", "g1",
                           "--emit-game", arena, "--format", "json"});
  CHECK(emitted.code == 0);
  std::ifstream in(arena);
  REQUIRE(in.good());
  json doc = json::parse(in);
  CHECK(doc.contains("positions"));
  CHECK(doc.contains("start"));
  CHECK_FALSE(doc["positions"].empty());
  CHECK(doc["positions"][0].contains("winner"));
  in.close();
  std::remove(arena.c_str());

  CliResult missing = run({"game", model_path("small.ctx"), "q", "--start", "zz"});
  CHECK(missing.code == 2);
}

TEST_CASE("unfold solves fixed points three ways") {
  for (const char* extra : {"", "--explicit", "--variant=gprime"}) {
    std::vector<std::string> args = {"unfold", model_path("coalition.ctx"), "--map",
                                     "c0 | box c", "--format", "json"};
    if (*extra) args.push_back(extra);
    CliResult r = run(args);
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["fixpoint"]["extent"] == json::array({"b", "c"}));
  }
  CliResult gfp = run({"unfold", model_path("coalition.ctx"), "--map", "c0 | box c",
                       "--infinite-winner", "exists"});
  CHECK(gfp.code == 0);
  CHECK(gfp.out.find("greatest fixed point") != std::string::npos);
}

TEST_CASE("bisim checks pairs and computes the largest simulation") {
  CliResult yes = run({"bisim", model_path("oneway_b.ctx"), model_path("oneway_a.ctx"),
                       "--pair", model_path("oneway.pairs"), "--check"});
  CHECK(yes.code == 0);
  CHECK(yes.out.find("simulation: yes") != std::string::npos);

  CliResult no = run({"bisim", model_path("oneway_a.ctx"), model_path("oneway_b.ctx"),
                      "--bisimilar", "u", "u"});
  CHECK(no.code == 1);
  CHECK(no.out.find("not bisimilar") != std::string::npos);

  CliResult largest = run({"bisim", model_path("oneway_b.ctx"), model_path("oneway_a.ctx"),
                           "--format", "json"});
  CHECK(largest.code == 0);
  json doc = json::parse(largest.out);
  CHECK(doc["s"].size() == 1);  // u -> u survives

  CliResult inv = run({"bisim", model_path("oneway_b.ctx"), model_path("oneway_a.ctx"),
                       "--pair", model_path("oneway.pairs"), "--invariance", "box p | p"});
  CHECK(inv.code == 0);
  CHECK(inv.out.find("invariance: holds") != std::string::npos);
}

TEST_CASE("scenarios command mirrors the library reports") {
  CliResult r = run({"scenarios", model_path("rough.ctx"), "--which", "rough"});
  CHECK(r.code == 0);
  CHECK(r.out.find("ok") != std::string::npos);
  CHECK(r.out.find("({a}, {x y})") != std::string::npos);

  CliResult js = run({"scenarios", model_path("community.ctx"), "--which", "community",
                      "--format", "json"});
  CHECK(js.code == 0);
  json doc = json::parse(js.out);
  CHECK(doc["ok"] == true);
  CHECK(doc["entries"].size() == 2);

  CliResult missing = run({"scenarios", model_path("small.ctx"), "--which", "rough"});
  CHECK(missing.code == 2);  // no c0 atom

  CliResult unknown = run({"scenarios", model_path("rough.ctx"), "--which", "nope"});
  CHECK(unknown.code == 2);
}

TEST_CASE("usage errors exit with 2 and help with 0") {
  CliResult nothing = run({});
  CHECK(nothing.code == 2);
  CliResult unknown = run({"frobnicate"});
  CHECK(unknown.code == 2);
  CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("parse") != std::string::npos);
  CliResult missing_file = run({"eval", model_path("nosuch.ctx"), "top"});
  CHECK(missing_file.code == 2);
}

TEST_CASE("text and json verdicts agree") {
  CliResult text = run({"check", model_path("small.ctx"), "mu x. q | dia x"});
  CliResult js =
      run({"check", model_path("small.ctx"), "mu x. q | dia x", "--format", "json"});
  CHECK(text.code == js.code);
  json doc = json::parse(js.out);
  bool text_agrees = text.out.find("result: AGREE") != std::string::npos;
  CHECK(doc["agree"] == text_agrees);
}

}  // TEST_SUITE
