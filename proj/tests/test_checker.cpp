#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "leq/checker.hpp"
#include "leq/errors.hpp"
#include "leq/ops.hpp"
#include "leq/parse.hpp"
#include "leq/rewrite.hpp"
#include "leq/term.hpp"

using namespace leq;

static Term P(const char* s) { return parse_term(s); }

static Context base_ctx() {
  Context ctx;
  ctx.push(VarName("A"), Term::star());
  ctx.push(VarName("B"), Term::star());
  ctx.push(VarName("a"), P("A"));
  ctx.push(VarName("b"), P("B"));
  ctx.push(VarName("e"), P("Eq A B"));
  ctx.push(VarName("f"), P("A -> B"));
  return ctx;
}

TEST_CASE("the universe types itself and variables look up") {
  Checker chk;
  CHECK(chk.infer({}, Term::star()).type.kind() == TermKind::Star);
  Context ctx = base_ctx();
  CHECK(alpha_eq(chk.infer(ctx, P("a")).type, P("A")));
  CHECK_THROWS_AS(chk.infer(ctx, P("nope")), UnboundVariable);
  CHECK_THROWS_AS(chk.infer({}, P("a")), UnboundVariable);
}

TEST_CASE("introduction and elimination forms") {
  Checker chk;
  Context ctx = base_ctx();
  CHECK(alpha_eq(chk.infer(ctx, P("fun (x : A). f x")).type, P("A -> B")));
  CHECK(alpha_eq(chk.infer(ctx, P("f a")).type, P("B")));
  CHECK(alpha_eq(chk.infer(ctx, P("Pi (x : A). B")).type, P("*")));
  CHECK(alpha_eq(chk.infer(ctx, P("Sig (x : A). B")).type, P("*")));
  CHECK(alpha_eq(chk.infer(ctx, P("Eq A B")).type, P("*")));
  CHECK(alpha_eq(chk.infer(ctx, P("a ~[e] b")).type, P("*")));
  CHECK(alpha_eq(chk.infer(ctx, P("(a , b)")).type, P("Sig (x : A). B")));
  CHECK(alpha_eq(chk.infer(ctx, P("fst (a , b)")).type, P("A")));
  CHECK(alpha_eq(chk.infer(ctx, P("snd (a , b)")).type, P("B")));
  CHECK(alpha_eq(chk.infer(ctx, P("*^*")).type, P("Eq * *")));
}

TEST_CASE("dependent application instantiates the codomain") {
  Checker chk;
  Context ctx;
  ctx.push(VarName("A"), Term::star());
  ctx.push(VarName("P"), P("A -> *"));
  ctx.push(VarName("g"), P("Pi (x : A). P x"));
  ctx.push(VarName("a"), P("A"));
  CHECK(alpha_eq(chk.infer(ctx, P("g a")).type, P("P a")));
}

TEST_CASE("wrong shapes raise the matching error") {
  Checker chk;
  Context ctx = base_ctx();
  CHECK_THROWS_AS(chk.infer(ctx, P("a b")), NotAFunction);
  CHECK_THROWS_AS(chk.infer(ctx, P("fst a")), NotAPair);
  CHECK_THROWS_AS(chk.infer(ctx, P("a ~[b] a")), NotATypeEquality);
  CHECK_THROWS_AS(chk.infer(ctx, P("f b")), ConversionFailure);
  CHECK_THROWS_AS(chk.check(ctx, P("a"), P("B")), ConversionFailure);
  CHECK_THROWS_AS(chk.infer(ctx, P("fun (x : a). x")), CheckError);
}

TEST_CASE("conversion works up to reduction in both directions") {
  Checker chk;
  Context ctx = base_ctx();
  CHECK_NOTHROW(chk.check(ctx, P("a"), P("(fun (X : *). X) A")));
  CHECK_NOTHROW(chk.check(ctx, P("fun (x : A). f x"),
                          P("(fun (X : *). X -> B) A")));
  // an eliminated universe equation reduces to Eq
  CHECK_NOTHROW(chk.check(ctx, P("*^*"), P("* ~[*^*] *")));
}

TEST_CASE("congruence constructors type as equations between formers") {
  Checker chk;
  Context ctx = base_ctx();
  Typing t = chk.infer(ctx, P("Pi* [x, y, h] : e . e"));
  CHECK(alpha_eq(t.type, P("Eq (A -> A) (B -> B)")));
  // elaboration wrote the endpoint annotations back onto the node
  REQUIRE(t.subject.annots().has_value());
  CHECK(alpha_eq(t.subject.annots()->a, P("A")));
  CHECK(alpha_eq(t.subject.annots()->a2, P("B")));

  CHECK(alpha_eq(chk.infer(ctx, P("Sig* [x, y, h] : e . e")).type,
                 P("Eq (Sig (x : A). A) (Sig (y : B). B)")));
  CHECK(alpha_eq(chk.infer(ctx, P("eq* e e")).type,
                 P("Eq (Eq A A) (Eq B B)")));

  // the body equation may use the whole telescope, witness included
  Context ctx2 = ctx;
  ctx2.push(VarName("E3"), P("Pi (x : A). Pi (y : B). (x ~[e] y) -> Eq A B"));
  Typing d = chk.infer(ctx2, P("Pi* [x, y, h] : e . E3 x y h"));
  CHECK(alpha_eq(d.type, P("Eq (Pi (x : A). A) (Pi (y : B). B)")));
}

TEST_CASE("the stratified-only forms are refused with a pointer") {
  Checker chk;
  for (const char* s : {"*1", "Unit", "tt", "Unit^*", "Const [x. *] *"}) {
    CAPTURE(s);
    CHECK_THROWS_AS(chk.infer({}, parse_term(s)), UnsupportedTerm);
  }
  try {
    chk.infer({}, P("Unit"));
  } catch (const UnsupportedTerm& e) {
    CHECK(std::string(e.what()).find("--stratified") != std::string::npos);
  }
}

TEST_CASE("contexts are checked front to back") {
  Checker chk;
  auto [ctx, derivs] = chk.check_context(base_ctx());
  CHECK(ctx.size() == 6);
  CHECK(derivs.size() == 6);

  Context bad;
  bad.push(VarName("A"), Term::star());
  bad.push(VarName("a"), P("A"));
  bad.push(VarName("x"), P("a"));  // a is not a type
  CHECK_THROWS_AS(chk.check_context(bad), CheckError);
}

TEST_CASE("derivations replay under the validator") {
  Checker chk;
  Context ctx = base_ctx();
  for (const char* s :
       {"fun (x : A). f x", "f a", "(a , b)", "snd (a , b)",
        "Pi* [x, y, h] : e . e", "eq* e e", "a ~[e] b", "*^*"}) {
    CAPTURE(s);
    Typing t = chk.infer(ctx, parse_term(s));
    REQUIRE(t.deriv);
    CHECK_NOTHROW(validate_derivation(t.deriv));
    CHECK(deriv_size(t.deriv) >= 1);
  }
}

TEST_CASE("the validator rejects forged derivations") {
  Checker chk;
  Context ctx = base_ctx();

  // wrong conclusion out of thin air
  DerivPtr forged =
      make_deriv({ctx, P("a"), P("B"), SystemTag::LambdaEq}, Rule::Axiom, {});
  CHECK_THROWS_AS(validate_derivation(forged), CheckError);

  // correct rule, surgically wrong conclusion type
  Typing t = chk.infer(ctx, P("f a"));
  DerivPtr d = t.deriv;
  DerivPtr resealed = make_deriv({ctx, P("f a"), P("A"), SystemTag::LambdaEq},
                                 d->rule, d->premises);
  CHECK_THROWS_AS(validate_derivation(resealed), CheckError);

  // a stratified-only rule inside the unstratified system
  DerivPtr wrong_sys =
      make_deriv({ctx, P("Unit"), P("*"), SystemTag::LambdaEq},
                 Rule::UnitForm, {});
  CHECK_THROWS_AS(validate_derivation(wrong_sys), CheckError);
}

TEST_CASE("check accepts exactly the inferable type up to conversion") {
  Checker chk;
  Context ctx = base_ctx();
  Typing t = chk.check(ctx, P("fun (x : A). x"), P("A -> A"));
  CHECK(alpha_eq(t.type, P("A -> A")));
  CHECK_NOTHROW(validate_derivation(t.deriv));
  CHECK_THROWS_AS(chk.check(ctx, P("fun (x : A). x"), P("A -> B")),
                  ConversionFailure);
}
