#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "leq/errors.hpp"
#include "leq/ops.hpp"
#include "leq/parse.hpp"
#include "leq/stratified.hpp"
#include "leq/term.hpp"

using namespace leq;

static Term P(const char* s) { return parse_term(s); }

TEST_CASE("each universe lives in the next and only there") {
  StratChecker chk;
  for (int n = 0; n < 3; ++n) {
    CAPTURE(n);
    Typing t = chk.infer({}, Term::star_n(n));
    REQUIRE(t.type.kind() == TermKind::StarN);
    CHECK(t.type.level() == n + 1);
    CHECK_THROWS_AS(chk.check({}, Term::star_n(n), Term::star_n(n)),
                    CheckError);
  }
  CHECK_THROWS_AS(chk.check({}, Term::star_n(2), Term::star_n(1)), CheckError);
}

TEST_CASE("a bare universe is refused with directions") {
  StratChecker chk;
  try {
    chk.infer({}, Term::star());
    FAIL("expected a universe error");
  } catch (const UniverseError& e) {
    CHECK(std::string(e.what()).find("*0") != std::string::npos);
  }
}

TEST_CASE("cumulativity lifts but never lowers") {
  StratChecker chk;
  CHECK_NOTHROW(chk.check({}, Term::star_n(0), Term::star_n(3)));
  Context ctx;
  ctx.push(VarName("G"), Term::star_n(0));
  CHECK_NOTHROW(chk.check(ctx, P("G"), Term::star_n(2)));
  CHECK_NOTHROW(chk.check(ctx, P("G -> G"), Term::star_n(1)));
  CHECK_THROWS_AS(chk.check({}, Term::star_n(2), Term::star_n(1)),
                  CheckError);
}

TEST_CASE("formation takes the larger premise level") {
  StratChecker chk;
  Context ctx;
  ctx.push(VarName("G"), Term::star_n(0));
  Typing t = chk.infer(ctx, P("Pi (X : *1). X -> G"));
  CHECK(t.type.level() == 2);
  CHECK(chk.infer(ctx, P("Sig (X : *1). X")).type.level() == 2);
  CHECK(chk.infer(ctx, P("Eq G G")).type.level() == 0);
  CHECK(chk.infer(ctx, P("Eq *1 *1")).type.level() == 2);
}

static Context eq_ctx(int n) {
  Context ctx;
  ctx.push(VarName("C"), Term::star_n(n));
  ctx.push(VarName("D"), Term::star_n(n));
  ctx.push(VarName("q"), P("Eq C D"));
  ctx.push(VarName("c"), P("C"));
  ctx.push(VarName("d"), P("D"));
  return ctx;
}

TEST_CASE("eliminating an equation lands one universe down") {
  StratChecker chk;
  for (int n : {1, 2}) {
    CAPTURE(n);
    Typing t = chk.infer(eq_ctx(n), P("c ~[q] d"));
    REQUIRE(t.type.kind() == TermKind::StarN);
    CHECK(t.type.level() == n - 1);
  }
  // at the bottom it lands in Unit
  Typing t0 = chk.infer(eq_ctx(0), P("c ~[q] d"));
  CHECK(t0.type.kind() == TermKind::Unit);
}

TEST_CASE("the universe witness is an equation at every level") {
  StratChecker chk;
  Typing t = chk.infer({}, Term::star_star());
  CHECK(alpha_eq(t.type, P("Eq *0 *0")));
  CHECK_NOTHROW(chk.check({}, Term::star_star(), P("Eq *1 *1")));
  CHECK_NOTHROW(chk.check({}, Term::star_star(), P("Eq *2 *2")));
  CHECK_THROWS_AS(chk.check({}, Term::star_star(), P("Eq *0 *1")),
                  CheckError);
}

TEST_CASE("the unit fragment") {
  StratChecker chk;
  CHECK(chk.infer({}, P("Unit")).type.level() == 0);
  CHECK(chk.infer({}, P("tt")).type.kind() == TermKind::Unit);
  CHECK(alpha_eq(chk.infer({}, P("Unit^*")).type, P("Eq Unit Unit")));

  Context ctx;
  ctx.push(VarName("p"), P("Unit"));
  // a proposition cannot classify
  CHECK_THROWS_AS(chk.infer(ctx, P("Pi (x : p). Unit")), LevelUnderflow);
}

TEST_CASE("constant families type and compute") {
  StratChecker chk;
  Context ctx;
  ctx.push(VarName("Q"), Term::star_n(0));
  ctx.push(VarName("q0"), P("Q"));
  Typing t = chk.infer(ctx, P("Const [x. Q] q0"));
  CHECK(alpha_eq(t.type, P("Pi (x : Unit). Q")));
  CHECK(alpha_eq(chk.infer(ctx, P("(Const [x. Q] q0) tt")).type, P("Q")));
  // the body must live in the family at tt
  CHECK_THROWS_AS(chk.infer(ctx, P("Const [x. Q] tt")), CheckError);
}

TEST_CASE("level search elaborates bare universes") {
  LevelElaboration le = elaborate_levels({}, P("fun (X : *). X"), 3, kDefaultFuel);
  REQUIRE(le.levels.size() == 1);
  CHECK(le.levels[0] == 0);  // the smallest solution wins
  CHECK(le.attempts >= 1);
  CHECK(alpha_eq(le.subject, P("fun (X : *0). X")));

  // forcing a later star to a higher level drags the search along
  LevelElaboration l2 = elaborate_levels({}, P("fun (X : *). *0"), 3, kDefaultFuel);
  REQUIRE(l2.levels.size() == 1);
  CHECK(alpha_eq(l2.subject, P("fun (X : *0). *0")));

  LevelElaboration l3 =
      elaborate_levels({}, P("(fun (X : *). X) (* -> *)"), 3, kDefaultFuel);
  REQUIRE(l3.levels.size() == 3);
  // the argument type must sit one level above its contents
  CHECK(l3.levels[0] > l3.levels[1]);
  CHECK(alpha_eq(l3.subject, P("(fun (X : *1). X) (*0 -> *0)")));
}

TEST_CASE("terms with no stratification are reported as such") {
  Term w = P("fun (i : Pi (A : *). A -> A). i (Pi (A : *). A -> A) i");
  try {
    elaborate_levels({}, w, 3, kDefaultFuel);
    FAIL("expected stratification to fail");
  } catch (const Unstratifiable& e) {
    CHECK(std::string(e.what()).find("assignments tried") != std::string::npos);
  }
}

TEST_CASE("explicit levels skip the search and report real errors") {
  CHECK_THROWS_AS(elaborate_levels({}, P("*0 *1"), 3, kDefaultFuel),
                  NotAFunction);
}
