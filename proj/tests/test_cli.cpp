#include <doctest.h>

#include <sstream>

#include "sortal/cli.hpp"
#include "support/fixtures.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = sortal::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return std::string(SORTAL_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("check-transformation") {
  Run r = run({"check-transformation", "--file", fixture("stone.spec"), "--xi", "L", "--from", "dcomp", "--to", "idB",
               "--models", "z2,z2xz2"});
  CHECK(r.code == 0);
  CHECK(r.out == "VerifiedOnModels(2)\n");

  r = run({"check-transformation", "--file", fixture("higman_neumann.spec"), "--xi", "HN"});
  CHECK(r.code == 0);
  CHECK(r.out == "VerifiedOnModels(8)\n");

  r = run({"check-transformation", "--xi", "swap"});
  CHECK(r.code == 0);
  CHECK(r.out == "Proved\n");

  r = run({"check-transformation", "--xi", "L", "--from", "ecomp"});
  CHECK(r.code == 2);
  CHECK(r.err.find("EndpointMismatch") != std::string::npos);
}

TEST_CASE("satisfy") {
  Run r = run({"satisfy", "--algebra", "z2", "--equation", "comm_add"});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");

  r = run({"satisfy", "--file", fixture("higman_neumann.spec"), "--algebra", "c3", "--equation", "div_comm"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("false: div_comm at ", 0) == 0);

  r = run({"satisfy", "--file", fixture("higman_neumann.spec"), "--algebra", "s3", "--spec", "DivGroups"});
  CHECK(r.code == 0);

  r = run({"satisfy", "--file", fixture("higman_neumann.spec"), "--algebra", "c3grp", "--spec", "DivGroups"});
  CHECK(r.code == 2);
  CHECK(r.err.find("SignatureMismatch") != std::string::npos);
}

TEST_CASE("evaluation and translation") {
  Run r = run({"eval", "--algebra", "z2", "--term", "add(v0, one)", "--context", "s", "--values", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "0\n");

  r = run({"translate", "--morphism", "to_groups", "--equation", "double_division"});
  CHECK(r.code == 0);
  CHECK(r.out == "(s s) : mul(v0, inv(mul(one, inv(mul(one, inv(v1)))))) = mul(v0, inv(v1))\n");
}

TEST_CASE("reduct and compose print declarations") {
  Run r = run({"reduct", "--morphism", "square", "--algebra", "z3", "--name", "z3sq"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("algebra z3sq : Mon {", 0) == 0);
  sortal::Workspace ws = sortal::parse("signature Mon { sort s; op unit : -> s; op mul : s s -> s; }\n" + r.out);
  CHECK(ws.algebras.get("z3sq")->carrier_size(sortal::Sort("s")) == 9);

  r = run({"compose", "square", "square", "--name", "sq2"});
  CHECK(r.code == 0);
  sortal::Workspace composed = sortal::parse("signature Mon { sort s; op unit : -> s; op mul : s s -> s; }\n" + r.out);
  sortal::Workspace prelude = sortal::parse(sortal::kPrelude);
  CHECK(composed.morphisms.get("sq2") == prelude.morphisms.get("fourth"));
}

TEST_CASE("hall-benabou") {
  Run r = run({"hall-benabou", "--sorts", "s", "--bound", "1", "verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("ok   hall model round trip: equal") != std::string::npos);

  r = run({"hall-benabou", "--sorts", "s", "--bound", "1", "print"});
  CHECK(r.code == 0);
  CHECK(r.out == "spec Hall_s_1 over hall (s) 1 {\n}\n\nspec Benabou_s_1 over benabou (s) 1 {\n}\n");
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  CHECK(run({"hall-benabou", "--sorts", "s", "--bound", "1", "sideways"}).code == 2);
  Run r = run({"check", "--file", fixture("missing.spec")});
  CHECK(r.code == 2);
  CHECK(r.err.find("cannot read") != std::string::npos);
  CHECK(run({"satisfy", "--algebra", "nothing", "--equation", "comm_add"}).code == 2);
  CHECK(run({"check", "--file", fixture("stone.spec")}).code == 0);
  CHECK(run({"--help"}).code == 0);
}
