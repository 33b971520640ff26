#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "leq/errors.hpp"
#include "leq/ops.hpp"
#include "leq/parse.hpp"
#include "leq/rewrite.hpp"
#include "leq/term.hpp"

using namespace leq;

static Term P(const char* s) { return parse_term(s); }

TEST_CASE("every contraction fires at the root") {
  struct Case {
    const char* redex;
    const char* result;
    RedexKind kind;
  };
  for (const Case& c : std::vector<Case>{
           {"(fun (x : A). x) a", "a", RedexKind::Beta},
           {"fst (a , b)", "a", RedexKind::BetaSigma1},
           {"snd (a , b)", "b", RedexKind::BetaSigma2},
           {"A ~[*^*] B", "Eq A B", RedexKind::RelStarStar},
           {"f ~[Pi* [x, y, h] : d . e {A ; A2 ; B ; B2}] g",
            "Pi (x : A). Pi (y : A2). Pi (h : x ~[d] y). f x ~[e] g y",
            RedexKind::RelPiStar},
           {"p ~[Sig* [x, y, h] : d . e] q",
            "Sig (h : fst p ~[d] fst q). snd p ~[e] snd q",
            RedexKind::RelSigmaStar},
           {"u ~[eq* d e {A ; A2 ; B ; B2}] w",
            "Pi (a : A). Pi (a' : A2). Pi (h : a ~[d] a'). Pi (b : B). "
            "Pi (b' : B2). Pi (k : b ~[e] b'). Eq (a ~[u] b) (a' ~[w] b')",
            RedexKind::RelEqStar},
           {"(Const [x. B] b) tt", "b", RedexKind::ConstTT},
           {"s ~[Unit^*] t", "Unit", RedexKind::RelUnitStar},
       }) {
    CAPTURE(c.redex);
    auto r = step_at_root(P(c.redex));
    REQUIRE(r.has_value());
    CHECK(r->kind == c.kind);
    CHECK(alpha_eq(r->result, P(c.result)));
  }
}

TEST_CASE("the substituting contractions substitute") {
  auto r = step_at_root(P("(fun (x : *). Eq x x) A"));
  REQUIRE(r);
  CHECK(alpha_eq(r->result, P("Eq A A")));

  // body equality of Sig* is instantiated at the projections and the witness
  Term t = P("p ~[Sig* [x, y, h] : d . x ~[e] y] q");
  auto s = step_at_root(t);
  REQUIRE(s);
  CHECK(alpha_eq(s->result,
                 P("Sig (h : fst p ~[d] fst q). snd p ~[fst p ~[e] fst q] snd q")));
}

TEST_CASE("function-space and equation contractions need their annotations") {
  CHECK_FALSE(step_at_root(P("f ~[Pi* [x, y, h] : d . e] g")).has_value());
  CHECK_FALSE(step_at_root(P("u ~[eq* d e] w")).has_value());
  // the pair-space one does not
  CHECK(step_at_root(P("p ~[Sig* [x, y, h] : d . e] q")).has_value());
}

TEST_CASE("both spellings of an applied eliminator contract") {
  Term sugar = P("A ~[*^*] B");
  Term apps = Term::app(Term::app(Term::rel_op(Term::star_star()),
                                  P("A")), P("B"));
  auto r1 = step_at_root(sugar);
  auto r2 = step_at_root(apps);
  REQUIRE(r1);
  REQUIRE(r2);
  CHECK(alpha_eq(r1->result, r2->result));
}

TEST_CASE("reduction is leftmost outermost") {
  // outer redex before the inner one
  Term t = P("(fun (x : A). (fun (y : A). y) x) a");
  auto r = step(t);
  REQUIRE(r);
  CHECK(alpha_eq(r->result, P("(fun (y : A). y) a")));

  // left component before the right one
  Term u = P("((fun (x : A). x) a , (fun (y : A). y) b)");
  auto s = step(u);
  REQUIRE(s);
  CHECK(alpha_eq(s->result, P("(a , (fun (y : A). y) b)")));

  CHECK_FALSE(step(P("Pi (x : A). x ~[e] x")).has_value());  // normal
}

TEST_CASE("normalize iterates to a normal form and counts steps") {
  NormalizeStats st;
  Term nf = normalize(P("(fun (x : A -> A). x) (fun (y : A). y) a"),
                      kDefaultFuel, &st);
  CHECK(alpha_eq(nf, P("a")));
  CHECK(st.steps == 2);
  CHECK_FALSE(step(nf).has_value());
}

TEST_CASE("the trace callback sees every contraction in order") {
  std::vector<RedexKind> kinds;
  TraceFn tr = [&](const Term&, RedexKind k, const Term&) {
    kinds.push_back(k);
  };
  normalize(P("fst ((fun (x : A). x) a , b)"), kDefaultFuel, nullptr, &tr);
  REQUIRE(kinds.size() == 2);
  CHECK(kinds[0] == RedexKind::BetaSigma1);  // outermost first
  CHECK(kinds[1] == RedexKind::Beta);
}

TEST_CASE("fuel exhaustion reports the steps taken and the partial term") {
  Term omega = P("(fun (x : *). x x) (fun (x : *). x x)");
  try {
    normalize(omega, 25);
    FAIL("expected fuel exhaustion");
  } catch (const FuelExhausted& e) {
    CHECK(e.steps >= 25);
    CHECK(alpha_eq(e.partial, omega));  // omega reduces to itself
  }
}

TEST_CASE("weak head normalization stops at constructors") {
  // a pair is already weak head normal, even with redexes inside
  Term t = P("((fun (x : A). x) a , b)");
  CHECK(alpha_eq(whnf(t), t));
  // but a redex chain at the head is unwound
  CHECK(whnf(P("(fun (x : * -> *). x) (fun (y : *). y) A")).kind() ==
        TermKind::Var);
  CHECK(whnf(P("A ~[*^*] B")).kind() == TermKind::TypeEq);
}

TEST_CASE("convertibility is equality of normal forms") {
  CHECK(convertible(P("(fun (x : A). x) a"), P("a")));
  CHECK(convertible(P("A ~[*^*] B"), P("Eq A B")));
  CHECK_FALSE(convertible(P("a"), P("b")));
  CHECK(convertible(P("fun (x : A). x"), P("fun (y : A). y")));
}
