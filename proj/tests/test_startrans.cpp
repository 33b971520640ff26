#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <set>

#include "leq/checker.hpp"
#include "leq/errors.hpp"
#include "leq/ops.hpp"
#include "leq/parse.hpp"
#include "leq/print.hpp"
#include "leq/rewrite.hpp"
#include "leq/startrans.hpp"
#include "leq/term.hpp"

using namespace leq;

static Term P(const char* s) { return parse_term(s); }

TEST_CASE("prime apostrophizes free occurrences and nothing else survives") {
  CHECK(prime(P("x")).var_name() == VarName("x").primed());
  CHECK(alpha_eq(prime(P("Eq x y")), P("Eq x' y'")));
  CHECK(alpha_eq(prime(P("x'")), P("x''")));
  // closed terms only get their bound names renamed
  for (const char* s : {"*", "*^*", "fun (x : *). x",
                        "Pi (X : *). X -> X", "Eq * *",
                        "fun (q : Eq * *). fun (x : *). x ~[q] x"}) {
    CAPTURE(s);
    CHECK(alpha_eq(prime(P(s)), P(s)));
  }
  // open terms: the free names move, the binding structure stays
  Term t = P("fun (y : A). f y");
  Term pt = prime(t);
  CHECK(alpha_eq(pt, Term::lam(VarName("y"), P("A'"),
                               Term::app(P("f'"), Term::var(VarName("y"))))));
}

static void collect_binders(const Term& t, std::multiset<VarName>& out) {
  switch (t.kind()) {
    case TermKind::Pi:
    case TermKind::Sigma:
    case TermKind::Lam:
    case TermKind::Const:
      out.insert(t.binder());
      break;
    case TermKind::PiStar:
    case TermKind::SigmaStar:
      out.insert(t.binder());
      out.insert(t.binder2());
      out.insert(t.binder3());
      break;
    default: break;
  }
  for (const Term& s : t.raw()->sub) collect_binders(s, out);
}

TEST_CASE("freshen_binders makes every binder unique") {
  Term t = P("fun (x : *). fun (x : x). (fun (x : x). x) x");
  Term f = freshen_binders(t);
  CHECK(alpha_eq(t, f));
  std::multiset<VarName> binders;
  collect_binders(f, binders);
  CHECK(binders.size() == 3);
  std::set<VarName> uniq(binders.begin(), binders.end());
  CHECK(uniq.size() == 3);
  // and none of them collides with a free name
  for (const VarName& v : free_vars(f)) CHECK(uniq.count(v) == 0);
}

TEST_CASE("the translation's leaf clauses") {
  CHECK(star(P("*")).kind() == TermKind::StarStar);
  CHECK(star(P("x")).var_name() == VarName("x").starred());
  // a higher universe also lands on the universe witness
  CHECK(star(Term::star_n(2)).kind() == TermKind::StarStar);
}

TEST_CASE("the translation of a function is the three-binder transform") {
  Term s = star(P("fun (x : A). x"));
  REQUIRE(s.kind() == TermKind::Lam);
  REQUIRE(s.body().kind() == TermKind::Lam);
  REQUIRE(s.body().body().kind() == TermKind::Lam);
  CHECK(alpha_eq(s.domain(), P("A")));
  CHECK(alpha_eq(s.body().domain(), P("A'")));
  // the third binder carries the relatedness witness type
  Term wt = s.body().body().domain();
  REQUIRE(wt.kind() == TermKind::Rel);
  CHECK(alpha_eq(wt.rel_e(), P("A^*")));

  // an application feeds all three components through
  Term ap = star(P("f a"));
  CHECK(alpha_eq(ap, P("f^* a a' a^*")));
}

TEST_CASE("types translate to equation proofs, pairs go componentwise") {
  CHECK(star(P("Eq A B")).kind() == TermKind::EqStar);
  CHECK(star(P("Pi (x : A). B")).kind() == TermKind::PiStar);
  CHECK(star(P("Sig (x : A). B")).kind() == TermKind::SigmaStar);
  CHECK(alpha_eq(star(P("(a , b)")), P("(a^* , b^*)")));
  CHECK(alpha_eq(star(P("fst p")), P("fst p^*")));
  CHECK(alpha_eq(star(P("snd p")), P("snd p^*")));
  // the annotations on the produced node record the original endpoints
  Term ps = star(P("Pi (x : A). B"));
  REQUIRE(ps.annots().has_value());
  CHECK(alpha_eq(ps.annots()->a, P("A")));
  CHECK(alpha_eq(ps.annots()->a2, P("A'")));
}

TEST_CASE("an eliminated equation becomes a six-fold application") {
  Term s = star(P("a ~[e] b"));
  CHECK(alpha_eq(s, P("e^* a a' a^* b b' b^*")));
}

TEST_CASE("clauses without a translation refuse loudly") {
  CHECK_THROWS_AS(star(P("Const [x. *] *")), UnsupportedStarClause);
  // congruence constructors need their endpoint annotations
  CHECK_THROWS_AS(star(P("Pi* [x, y, h] : e . e")), UnsupportedStarClause);
  CHECK_NOTHROW(star(P("Pi* [x, y, h] : e . e {A ; A2 ; B ; B2}")));
}

TEST_CASE("context tripling keeps order and decorates types") {
  Context ctx;
  ctx.push(VarName("A"), Term::star());
  ctx.push(VarName("a"), P("A"));
  Context out = star_context(ctx);
  REQUIRE(out.size() == 6);
  CHECK(out[0].first == VarName("A"));
  CHECK(out[1].first == VarName("A").primed());
  CHECK(out[2].first == VarName("A").starred());
  CHECK(alpha_eq(out[1].second, Term::star()));
  CHECK(alpha_eq(out[2].second, P("A ~[*^*] A'")));
  CHECK(alpha_eq(out[4].second, P("A'")));
  CHECK(alpha_eq(out[5].second, P("a ~[A^*] a'")));
}

TEST_CASE("context tripling rejects colliding decorated names") {
  Context ctx;
  ctx.push(VarName("A"), Term::star());
  ctx.push(VarName("A").primed(), Term::star());
  CHECK_THROWS_AS(star_context(ctx), IllFormedContext);
}

TEST_CASE("the pointwise relatedness predicate") {
  Term w = ext_eq(P("A"));
  CHECK(alpha_eq(w, P("fun (x : A). fun (y : A). x ~[A^*] y")));
}

TEST_CASE("run_star_instance proves the relatedness statement") {
  Checker chk;
  Context ctx;
  ctx.push(VarName("A"), Term::star());
  ctx.push(VarName("a"), P("A"));

  StarInstance inst = run_star_instance(chk, ctx, P("a"));
  CHECK(alpha_eq(inst.subject_type, P("A")));
  CHECK(alpha_eq(inst.statement, P("a ~[A^*] a'")));
  CHECK(alpha_eq(inst.image.subject, P("a^*")));
  CHECK_NOTHROW(validate_derivation(inst.image.deriv));

  StarInstance id = run_star_instance(chk, {}, P("fun (X : *). fun (x : X). x"));
  CHECK(alpha_eq(id.image.subject,
                 P("fun (X : *). fun (X' : *). fun (Xs : X ~[*^*] X')."
                   " fun (x : X). fun (x' : X'). fun (xs : x ~[Xs] x'). xs")));
}

TEST_CASE("closed subjects yield reflexivity statements") {
  Checker chk;
  StarInstance r = refl_proof(chk, P("fun (X : *). fun (x : X). x"));
  REQUIRE(r.statement.kind() == TermKind::Rel);
  CHECK(alpha_eq(r.statement.rel_lhs(), r.statement.rel_rhs()));

  StarInstance u = refl_proof(chk, P("*"));
  CHECK(alpha_eq(u.statement, P("* ~[*^*] *")));
  CHECK(u.image.subject.kind() == TermKind::StarStar);
}

TEST_CASE("ill-typed subjects fail before any translation happens") {
  Checker chk;
  Context ctx;
  ctx.push(VarName("A"), Term::star());
  ctx.push(VarName("a"), P("A"));
  CHECK_THROWS_AS(run_star_instance(chk, ctx, P("a a")), NotAFunction);
  CHECK_THROWS_AS(run_star_instance(chk, ctx, P("missing")), UnboundVariable);
}

TEST_CASE("translations of congruence subjects check too") {
  // the image of an annotated congruence node is itself checkable
  Checker chk;
  Context ctx;
  ctx.push(VarName("A"), Term::star());
  ctx.push(VarName("B"), Term::star());
  ctx.push(VarName("e"), P("Eq A B"));
  for (const char* s : {"Pi* [x, y, h] : e . e", "Sig* [x, y, h] : e . e",
                        "eq* e e", "*^*"}) {
    CAPTURE(s);
    CHECK_NOTHROW(run_star_instance(chk, ctx, parse_term(s)));
  }
}
