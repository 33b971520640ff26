#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "leq/cli.hpp"

using namespace leq;

namespace {

struct Run {
  int rc;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int rc = cli_main(args, out, err);
  return {rc, out.str(), err.str()};
}

std::string corpus(const std::string& name) {
  return std::string(LEQ_CORPUS_DIR) + "/" + name;
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string write_tmp(const std::string& name, const std::string& body) {
  std::string path = "/tmp/" + name;
  std::ofstream f(path);
  f << body;
  return path;
}

}  // namespace

TEST_CASE("help and usage errors") {
  Run top = cli({"--help"});
  CHECK(top.rc == 0);
  CHECK(has(top.out, "Usage"));
  CHECK(has(top.out, "check"));
  CHECK(has(top.out, "normalize"));

  Run sub = cli({"normalize", "--help"});
  CHECK(sub.rc == 0);
  CHECK(has(sub.out, "--trace"));

  CHECK(cli({}).rc == 2);
  CHECK(cli({"frobnicate"}).rc == 2);
  CHECK(cli({"check"}).rc == 2);  // missing required file

  Run miss = cli({"check", "/nonexistent/nope.leq"});
  CHECK(miss.rc == 2);
  CHECK(has(miss.err, "cannot read"));
}

TEST_CASE("check runs a file and reports per declaration") {
  Run r = cli({"check", corpus("rules.leq")});
  CHECK(r.rc == 0);
  CHECK(has(r.out, "OK r_axiom"));
  CHECK(has(r.out, "(normal form)"));
  CHECK(has(r.out, " ok, 0 failed"));

  Run j = cli({"check", corpus("rules.leq"), "--json"});
  CHECK(j.rc == 0);
  nlohmann::json parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["summary"]["failed"] == 0);
  CHECK(parsed["declarations"].size() == parsed["summary"]["total"]);

  Run strat = cli({"check", corpus("universes.leq"), "--stratified"});
  CHECK(strat.rc == 0);

  Run bad = cli({"check", corpus("universes_bad.leq"), "--stratified"});
  CHECK(bad.rc == 1);
  CHECK(has(bad.out, "FAIL"));
  CHECK(has(bad.out, "type mismatch"));
}

TEST_CASE("normalize prints the normal form and step count") {
  Run r = cli({"normalize", "(fun (x : *). x) *"});
  CHECK(r.rc == 0);
  CHECK(r.out == "*\n1 step(s)\n");

  Run t = cli({"normalize", "(fun (x : *). x) *", "--trace"});
  CHECK(t.rc == 0);
  CHECK(has(t.out, "step 1 [Beta]: *"));

  Run j = cli({"normalize", "(fun (x : *). x) *", "--json"});
  CHECK(j.rc == 0);
  nlohmann::json parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["normal_form"] == "*");
  CHECK(parsed["steps"] == 1);

  Run ill = cli({"normalize", "* *"});
  CHECK(ill.rc == 1);
  CHECK(has(ill.err, "error [NotAFunction]"));

  Run syn = cli({"normalize", "(("});
  CHECK(syn.rc == 2);
  CHECK(has(syn.err, "parse error (line"));
}

TEST_CASE("fuel bounds reduction, flag over environment over default") {
  const std::string tower =
      "(fun (x : *). x) ((fun (y : *). y) ((fun (z : *). z) *))";
  Run ok = cli({"normalize", tower});
  CHECK(ok.rc == 0);
  CHECK(has(ok.out, "3 step(s)"));

  Run starved = cli({"normalize", tower, "--fuel", "2"});
  CHECK(starved.rc == 1);
  CHECK(has(starved.err, "error [FuelExhausted]"));

  setenv("LAMBDA_EQ_FUEL", "2", 1);
  CHECK(cli({"normalize", tower}).rc == 1);
  // an explicit flag wins over the environment
  CHECK(cli({"normalize", tower, "--fuel", "50"}).rc == 0);
  unsetenv("LAMBDA_EQ_FUEL");
  CHECK(cli({"normalize", tower}).rc == 0);
}

TEST_CASE("--def brings a file's declarations into scope") {
  std::string defs = write_tmp("leq_cli_defs.leq",
                               "assume A : *\n"
                               "assume a : A\n"
                               "def idA : A -> A := fun (x : A). x\n");
  Run r = cli({"normalize", "idA a", "--def", defs});
  CHECK(r.rc == 0);
  CHECK(r.out == "a\n1 step(s)\n");

  Run s = cli({"star", "idA", "--def", defs});
  CHECK(s.rc == 0);
  CHECK(has(s.out, "OK"));

  std::string broken = write_tmp("leq_cli_broken.leq", "def bad : * := * *\n");
  Run b = cli({"normalize", "*", "--def", broken});
  CHECK(b.rc == 1);
  CHECK(has(b.err, "did not check"));
}

TEST_CASE("star relates a term to its primed copy") {
  Run r = cli({"star", "*"});
  CHECK(r.rc == 0);
  CHECK(has(r.out, "statement : * ~[*^*] *"));
  CHECK(has(r.out, "OK"));

  Run j = cli({"star", "fun (X : *). fun (x : X). x", "--json"});
  CHECK(j.rc == 0);
  nlohmann::json parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["verdict"] == "ok");
  CHECK(has(parsed["statement"].get<std::string>(), "~["));
}

TEST_CASE("model-eval interprets closed terms") {
  Run r = cli({"model-eval", "Eq * *"});
  CHECK(r.rc == 0);
  CHECK(r.out == "{{}}\n");

  Run c = cli({"model-eval", "*", "--carriers", "0,1"});
  CHECK(c.rc == 0);
  CHECK(c.out == "{{}, {{}}}\n");

  Run j = cli({"model-eval", "Unit", "--json"});
  CHECK(j.rc == 0);
  nlohmann::json parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["value"] == "{{}}");

  Run open = cli({"model-eval", "x"});
  CHECK(open.rc == 1);
  CHECK(has(open.err, "error [OpenTerm]"));
}

TEST_CASE("the installed binary answers --help") {
  std::string cmd = std::string(LEQ_CLI_PATH) + " --help > /dev/null 2>&1";
  CHECK(std::system(cmd.c_str()) == 0);
}
