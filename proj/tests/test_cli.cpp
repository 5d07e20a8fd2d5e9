#include <catch_amalgamated.hpp>

#include <sstream>

#include "support.hpp"
#include "weightcell_cli.hpp"

using namespace wct;

namespace {

struct Run {
  int code;
  std::string out, err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
  nlohmann::json error() const { return nlohmann::json::parse(err); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "weightcell");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cli: automaton commands") {
  const auto m = run({"automaton", "min", data_path("delta333_lex.json")});
  REQUIRE(m.code == 0);
  CHECK(automaton_from_json_text(m.out).num_states() == 13);
  CHECK(run({"automaton", "min", data_path("delta333_lex.json")}).out == m.out);

  const auto e = run({"automaton", "enum", data_path("dihedral_cell.json"), "--maxlen", "5"});
  REQUIRE(e.code == 0);
  CHECK(e.json() == nlohmann::json({"s", "sts", "ststs"}));

  const auto info = run({"automaton", "info", data_path("empty.json")});
  REQUIRE(info.code == 0);
  CHECK(info.json().at("empty") == true);

  const auto rev = run({"automaton", "reverse", data_path("dihedral_lex.json"), "--minimize", "--format", "dot"});
  REQUIRE(rev.code == 0);
  CHECK(rev.out.find("digraph") != std::string::npos);
}

TEST_CASE("cli: cones") {
  const auto c = run({"cone", data_path("delta246_lex.json")});
  REQUIRE(c.code == 0);
  CHECK(c.json().at("normals").size() == 4);
  CHECK(c.json().at("rays").size() == 4);
  CHECK(c.json().at("redundant") == nlohmann::json::parse("[[2,3,3]]"));

  const auto c333 = run({"cone", data_path("delta333_lex.json")});
  CHECK(c333.json().at("normals").size() == 2);
  CHECK(c333.json().at("lineality").size() == 1);

  CHECK(run({"cone", data_path("one_loop.json")}).json().at("normals") == nlohmann::json::parse("[[1]]"));
  CHECK(run({"cone", data_path("one_loop.json"), "--format", "text"}).out.find("rays:") != std::string::npos);
}

TEST_CASE("cli: bound and cell") {
  const auto b = run({"bound", data_path("delta246_lex.json"), "--phi", "s=1,t=2,u=-5"});
  REQUIRE(b.code == 0);
  CHECK(b.json().at("bound") == "6");

  const auto c = run({"cell", data_path("dihedral_lex.json"), "--phi", "s=1,t=-1"});
  REQUIRE(c.code == 0);
  const auto cell = automaton_from_json(c.json().at("cell"));
  CHECK(cell.num_states() == 2);
  CHECK(static_cast<bool>(equivalent(cell, data_automaton("dihedral_cell.json"))));
  CHECK(run({"cell", data_path("dihedral_lex.json"), "--phi", "s=1,t=-1", "--format", "dot"}).out.find("doublecircle") !=
        std::string::npos);

  const auto u = run({"bound", data_path("one_loop.json"), "--phi", "s=1"});
  CHECK(u.code == 4);
  CHECK(u.error().at("error") == "precondition");
  CHECK(u.error().at("circuit") == "s");
}

TEST_CASE("cli: coxeter commands") {
  const auto build = run({"coxeter", "build", data_path("delta246.json"), "--order", "s,t,u", "--lang", "lex"});
  REQUIRE(build.code == 0);
  CHECK(isomorphic(automaton_from_json_text(build.out), data_automaton("delta246_lex.json")));

  const auto cell = run({"coxeter", "cell", data_path("delta246.json"), "--phi", "s=-1,t=1,u=-1"});
  REQUIRE(cell.code == 0);
  CHECK(cell.json().at("bound") == "1");

  const auto f4 = run({"coxeter", "closed-form", "f4", "--phi", "a=1,b=-1"});
  REQUIRE(f4.code == 0);
  CHECK(f4.json().at("bound") == "4");
  const auto di = run({"coxeter", "closed-form", "dihedral", "--rank", "3", "--phi", "a=-1,b=1"});
  CHECK(di.json().at("cell") == nlohmann::json({"t", "tst", "tstst"}));
  const auto ft4 = run({"coxeter", "closed-form", "ft4", "--phi", "a=-3,b=5"});
  CHECK(ft4.json().at("bounded") == false);

  const auto hecke = run({"coxeter", "hecke", data_path("delta246.json"), "--psi", "s=1,t=1,u=1", "--signs", "s=-,t=+,u=-"});
  REQUIRE(hecke.code == 0);
  CHECK(hecke.json().at("bound") == "1");

  const auto probe = run({"coxeter", "probe-spherical", data_path("delta238.json"), "--samples", "3", "--seed", "2"});
  REQUIRE(probe.code == 0);
  CHECK(probe.json().at("samples") == 3);

  const auto cone = run({"coxeter", "cone", data_path("delta333.json"), "--format", "text"});
  CHECK(cone.code == 0);
}

TEST_CASE("cli: error contract") {
  CHECK(run({"automaton", "min", data_path("does_not_exist.json")}).code == 2);
  CHECK(run({"bound", data_path("dihedral_lex.json"), "--phi", "s=1"}).code == 2);
  CHECK(run({"bound", data_path("dihedral_lex.json")}).code == 2);
  CHECK(run({"coxeter", "build", data_path("delta246.json"), "--order", "s,t"}).code == 2);
  CHECK(run({"coxeter", "cell", data_path("delta333.json"), "--phi", "s=0,t=1,u=-1"}).code == 2);
  const auto cap = run({"coxeter", "build", data_path("delta246.json"), "--max-states", "3"});
  CHECK(cap.code == 3);
  CHECK(cap.error().at("error") == "resource");
  CHECK(run({"coxeter", "hecke", data_path("delta333.json"), "--psi", "s=1,t=1,u=1", "--signs", "s=+,t=-,u=+"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  // caps can come from the environment
  ::setenv("WEIGHTCELL_CAPS", "states=3", 1);
  const auto env_cap = run({"coxeter", "build", data_path("delta246.json")});
  ::unsetenv("WEIGHTCELL_CAPS");
  CHECK(env_cap.code == 3);
}
