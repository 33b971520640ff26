#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "leq/errors.hpp"
#include "leq/model.hpp"
#include "leq/parse.hpp"
#include "leq/term.hpp"

using namespace leq;

static Term P(const char* s) { return parse_term(s); }

TEST_CASE("set values are canonical") {
  SetValue zero = SetValue::empty();
  SetValue one = SetValue::ordinal(1);
  CHECK(zero.is_empty_set());
  CHECK(one.contains(zero));
  CHECK_FALSE(one.contains(one));
  CHECK(SetValue::ordinal(3).items().size() == 3);

  // duplicates collapse, order is irrelevant
  SetValue s1 = SetValue::set({one, zero, one});
  SetValue s2 = SetValue::set({zero, one});
  CHECK(s1 == s2);
  CHECK(s1.items().size() == 2);

  SetValue p = SetValue::pair(zero, one);
  CHECK(p.first() == zero);
  CHECK(p.second() == one);
  CHECK(p != SetValue::pair(one, zero));

  SetValue g = SetValue::graph({SetValue::pair(zero, one)});
  REQUIRE(g.apply(zero) != nullptr);
  CHECK(*g.apply(zero) == one);
  CHECK(g.apply(one) == nullptr);
  CHECK_THROWS(SetValue::graph({zero}));
  CHECK_THROWS(SetValue::graph(
      {SetValue::pair(zero, zero), SetValue::pair(zero, one)}));

  CHECK(zero.show() == "{}");
  CHECK(SetValue::ordinal(2).show() == "{{}, {{}}}");
}

static ModelConfig small() {
  ModelConfig cfg;
  cfg.carriers = {0, 1, 2};
  return cfg;
}

TEST_CASE("the universe denotes the configured carriers") {
  SetValue u = eval_term(small(), {}, Term::star());
  REQUIRE(u.items().size() == 3);
  CHECK(u.contains(SetValue::ordinal(0)));
  CHECK(u.contains(SetValue::ordinal(2)));
  // *0 is the same set; higher universes exceed the finite fragment
  CHECK(eval_term(small(), {}, Term::star_n(0)) == u);
  CHECK_THROWS_AS(eval_term(small(), {}, Term::star_n(1)), FragmentExceeded);
}

TEST_CASE("function spaces enumerate choice graphs") {
  ModelEnv env = {{VarName("A"), SetValue::ordinal(2)}};
  SetValue fs = eval_term(small(), env, P("A -> A"));
  CHECK(fs.items().size() == 4);  // 2^2
  for (const SetValue& f : fs.items())
    CHECK(f.apply(SetValue::ordinal(1)) != nullptr);

  // empty codomain kills the space unless the domain is empty too
  ModelEnv env0 = {{VarName("A"), SetValue::ordinal(2)},
                   {VarName("Z"), SetValue::ordinal(0)}};
  CHECK(eval_term(small(), env0, P("A -> Z")).items().empty());
  CHECK(eval_term(small(), env0, P("Z -> Z")).items().size() == 1);

  // dependent products follow the instantiated codomain
  SetValue dep = eval_term(small(), {}, P("Pi (X : *). Eq X X"));
  CHECK(dep.items().size() == 1);
}

TEST_CASE("pair spaces multiply out") {
  ModelEnv env = {{VarName("A"), SetValue::ordinal(2)},
                  {VarName("B"), SetValue::ordinal(3)}};
  CHECK(eval_term(small(), env, P("Sig (x : A). B")).items().size() == 6);
  // a dependent sum mixes fibers of different sizes
  ModelEnv env2 = {{VarName("A"), SetValue::set({SetValue::ordinal(0),
                                                 SetValue::ordinal(1)})}};
  SetValue dep = eval_term(small(), env2, P("Sig (x : A). x"));
  CHECK(dep.items().size() == 1);  // only the ordinal-1 fiber is inhabited
}

TEST_CASE("equations reflect equality of interpretations") {
  SetValue truth = SetValue::set({SetValue::empty()});
  CHECK(eval_term(small(), {}, P("Eq * *")) == truth);
  CHECK(eval_term(small(), {}, P("Eq (Eq * *) (Eq * *)")) == truth);
  CHECK(eval_term(small(), {}, P("Eq * (Eq * *)")) == SetValue::empty());

  ModelEnv env = {{VarName("A"), SetValue::ordinal(2)},
                  {VarName("B"), SetValue::ordinal(2)},
                  {VarName("C"), SetValue::ordinal(1)}};
  CHECK(eval_term(small(), env, P("Eq A B")) == truth);
  CHECK(eval_term(small(), env, P("Eq A C")) == SetValue::empty());

  // the eliminated form compares endpoint interpretations the same way
  ModelEnv env2 = {{VarName("q"), SetValue::empty()},
                   {VarName("a"), SetValue::empty()},
                   {VarName("b"), SetValue::empty()}};
  CHECK(eval_term(small(), env2, P("a ~[q] b")) == truth);
  ModelEnv env3 = {{VarName("q"), SetValue::empty()},
                   {VarName("a"), SetValue::empty()},
                   {VarName("b"), SetValue::ordinal(1)}};
  CHECK(eval_term(small(), env3, P("a ~[q] b")) == SetValue::empty());

  // equality witnesses denote the canonical element
  CHECK(eval_term(small(), {}, P("*^*")) == SetValue::empty());
  CHECK(eval_term(small(), {}, P("Unit^*")) == SetValue::empty());
  CHECK(eval_term(small(), {}, P("Unit")) == truth);
  CHECK(eval_term(small(), {}, P("tt")) == SetValue::empty());
}

TEST_CASE("lambdas denote graphs and application reads them") {
  ModelEnv env = {{VarName("A"), SetValue::ordinal(2)},
                  {VarName("a"), SetValue::ordinal(1)}};
  SetValue f = eval_term(small(), env, P("fun (x : A). x"));
  CHECK(f.tag() == SetValue::Tag::Graph);
  CHECK(f.items().size() == 2);
  CHECK(eval_term(small(), env, P("(fun (x : A). x) a")) ==
        SetValue::ordinal(1));
  CHECK(eval_term(small(), env, P("fst ((a , A))")) == SetValue::ordinal(1));
  CHECK(eval_term(small(), env, P("snd ((a , A))")) == SetValue::ordinal(2));

  // applying outside the stored domain is a fragment error
  ModelEnv bad = {{VarName("A"), SetValue::ordinal(1)},
                  {VarName("c"), SetValue::ordinal(2)}};
  CHECK_THROWS_AS(eval_term(small(), bad, P("(fun (x : A). x) c")),
                  UnsupportedTerm);

  ModelEnv cenv = {{VarName("Q"), SetValue::ordinal(2)},
                   {VarName("q0"), SetValue::ordinal(1)}};
  CHECK(eval_term(small(), cenv, P("(Const [x. Q] q0) tt")) ==
        SetValue::ordinal(1));
}

TEST_CASE("open terms and bare eliminators are refused") {
  CHECK_THROWS_AS(eval_term(small(), {}, P("missing")), OpenTerm);
  ModelEnv env = {{VarName("q"), SetValue::empty()}};
  CHECK_THROWS_AS(eval_term(small(), env, P("~[q]")), UnsupportedTerm);
}

TEST_CASE("the size budget aborts runaway interpretations") {
  ModelConfig tiny;
  tiny.carriers = {0, 1, 2, 3};
  tiny.size_bound = 5;
  CHECK_THROWS_AS(eval_term(tiny, {}, P("* -> *")), FragmentExceeded);
  CHECK_NOTHROW(eval_term(small(), {}, P("* -> *")));
}

TEST_CASE("soundness holds for real judgments") {
  Context ctx;
  ctx.push(VarName("A"), Term::star());
  ctx.push(VarName("a"), P("A"));
  SoundnessReport r =
      check_soundness(small(), ctx, P("a"), P("A"));
  CHECK(r.environments == 3);  // one per element of each carrier

  Context ctx2;
  ctx2.push(VarName("A"), Term::star());
  CHECK_NOTHROW(check_soundness(small(), ctx2, P("fun (x : A). x"),
                                P("A -> A")));
  CHECK_NOTHROW(check_soundness(small(), {}, P("*^*"), P("Eq * *")));
  CHECK_NOTHROW(check_soundness(small(), ctx, P("(a , a)"),
                                P("Sig (x : A). A")));

  // formation judgments classify by a universe; any denoting subject counts
  Context ctx3;
  ctx3.push(VarName("A"), Term::star());
  CHECK_NOTHROW(check_soundness(small(), ctx3, P("Pi (x : A). A"), P("*")));
  CHECK_NOTHROW(check_soundness(small(), {}, P("*0"), P("*1")));
}

TEST_CASE("soundness violations name the offending environment") {
  Context ctx;
  ctx.push(VarName("A"), Term::star());
  try {
    // the identity does not inhabit A -> Eq * * once |A| > 0
    check_soundness(small(), ctx, P("fun (x : A). x"), P("A -> Eq * *"));
    FAIL("expected a violation");
  } catch (const SoundnessViolation& e) {
    CHECK(std::string(e.what()).find("A") != std::string::npos);
  }
}
