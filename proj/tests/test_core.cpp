#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "leq/ops.hpp"
#include "leq/term.hpp"

using namespace leq;

TEST_CASE("variable names carry decorations") {
  VarName x("x");
  CHECK(x.display() == "x");
  CHECK(x.primed().display() == "x'");
  CHECK(x.starred().display() == "x^*");
  CHECK(x.primed().primed().display() == "x''");
  CHECK(x.primed() != x);
  CHECK(x.primed() == VarName("x").primed());

  VarName f = x.freshened();
  CHECK(f != x);
  CHECK(f.display().rfind("x_", 0) == 0);
  CHECK(f.primed().display() == f.display() + "'");
  CHECK(f != x.freshened());
}

TEST_CASE("factories build what the accessors read back") {
  VarName x("x");
  Term A = Term::var(VarName("A"));
  Term t = Term::lam(x, A, Term::var(x));
  CHECK(t.kind() == TermKind::Lam);
  CHECK(t.binder() == x);
  CHECK(t.domain().same_node(A));
  CHECK(t.body().var_name() == x);

  Term e = Term::type_eq(Term::star(), A);
  CHECK(e.eq_lhs().kind() == TermKind::Star);
  CHECK(e.eq_rhs().same_node(A));
  CHECK_THROWS(e.domain());

  Term r = Term::rel(e, Term::var(x), A);
  CHECK(r.rel_e().same_node(e));
  CHECK(r.rel_lhs().var_name() == x);

  CHECK(Term::star_n(2).level() == 2);
  CHECK(node_count(Term::app(A, A)) == 3);
}

TEST_CASE("alpha equivalence ignores binder names") {
  Term id_x = Term::lam(VarName("x"), Term::star(), Term::var(VarName("x")));
  Term id_y = Term::lam(VarName("y"), Term::star(), Term::var(VarName("y")));
  CHECK(alpha_eq(id_x, id_y));

  Term other = Term::lam(VarName("y"), Term::var(VarName("A")),
                         Term::var(VarName("y")));
  CHECK_FALSE(alpha_eq(id_x, other));  // domains differ

  // shadowing has to line up
  VarName x("x"), y("y");
  Term t1 = Term::lam(x, Term::star(), Term::lam(x, Term::star(), Term::var(x)));
  Term t2 = Term::lam(x, Term::star(), Term::lam(y, Term::star(), Term::var(y)));
  Term t3 = Term::lam(x, Term::star(), Term::lam(y, Term::star(), Term::var(x)));
  CHECK(alpha_eq(t1, t2));
  CHECK_FALSE(alpha_eq(t1, t3));
}

TEST_CASE("the sugared eliminator equals its application spelling") {
  Term e = Term::var(VarName("e"));
  Term a = Term::var(VarName("a"));
  Term b = Term::var(VarName("b"));
  Term sugar = Term::rel(e, a, b);
  Term apps = Term::app(Term::app(Term::rel_op(e), a), b);
  CHECK(alpha_eq(sugar, apps));
  CHECK(alpha_eq(apps, sugar));
  CHECK(as_rel_form(apps).has_value());
  CHECK(as_rel_form(apps)->e.same_node(e));
  CHECK(alpha_eq(rel_as_apps(sugar), apps));
  CHECK_FALSE(alpha_eq(sugar, Term::rel(e, b, a)));
}

TEST_CASE("free variables respect binding structure") {
  VarName x("x"), y("y");
  Term A = Term::var(VarName("A"));

  Term pi = Term::pi(x, A, Term::var(x));
  CHECK(free_vars(pi) == VarSet{VarName("A")});
  CHECK(free_in(VarName("A"), pi));
  CHECK_FALSE(free_in(x, pi));

  Term c = Term::const_fn(x, Term::var(x), Term::var(x));
  // the family binds x, the body does not
  CHECK(free_vars(c) == VarSet{x});
}

TEST_CASE("annotation endpoints scope like the telescope they elide") {
  VarName x("x"), y("y"), h("h");
  Term E = Term::var(VarName("E"));
  Term vx = Term::var(x);
  // b sits under the first binder, b2 under the second, a/a2 outside
  Term t1 = Term::pi_star(x, y, h, E, E, StarAnnots{vx, E, E, E});
  CHECK(free_vars(t1).count(x) == 1);
  Term t2 = Term::pi_star(x, y, h, E, E, StarAnnots{E, E, vx, E});
  CHECK(free_vars(t2).count(x) == 0);
  Term t3 = Term::pi_star(x, y, h, E, E, StarAnnots{E, E, E, vx});
  CHECK(free_vars(t3).count(x) == 1);  // b2 binds y, not x
  Term t4 = Term::pi_star(x, y, h, E, Term::rel(E, vx, Term::var(h)));
  CHECK(free_vars(t4).count(x) == 0);
  CHECK(free_vars(t4).count(h) == 0);
}

TEST_CASE("substitution avoids capture") {
  VarName x("x"), y("y");
  Term t = Term::lam(y, Term::star(), Term::var(x));
  Term r = subst(t, Term::var(y), x);
  // the binder must move out of the way of the free y
  CHECK(alpha_eq(r, Term::lam(VarName("w"), Term::star(), Term::var(y))));
  CHECK(free_in(y, r));

  // no-op under shadowing
  Term s = Term::lam(x, Term::star(), Term::var(x));
  CHECK(alpha_eq(subst(s, Term::var(y), x), s));
}

TEST_CASE("multi_subst applies its entries in parallel") {
  VarName x("x"), y("y");
  Term e = Term::var(VarName("e"));
  Term t = Term::rel(e, Term::var(x), Term::var(y));
  Term swapped =
      multi_subst(t, {{x, Term::var(y)}, {y, Term::var(x)}});
  CHECK(alpha_eq(swapped, Term::rel(e, Term::var(y), Term::var(x))));
}

TEST_CASE("substitution reaches annotation blocks") {
  VarName x("x"), y("y"), h("h"), z("z");
  Term E = Term::var(VarName("E"));
  Term t = Term::pi_star(x, y, h, E, E,
                         StarAnnots{Term::var(z), E, E, E});
  Term r = subst(t, Term::star(), z);
  CHECK(r.annots()->a.kind() == TermKind::Star);
}

TEST_CASE("context lookup sees the most recent binding") {
  Context ctx;
  VarName x("x");
  ctx.push(x, Term::star());
  ctx.push(x, Term::var(VarName("A")));
  REQUIRE(ctx.lookup(x).has_value());
  CHECK(ctx.lookup(x)->kind() == TermKind::Var);
  CHECK_FALSE(ctx.binds(VarName("q")));
  Context ext = ctx.extended(VarName("q"), Term::star());
  CHECK(ext.binds(VarName("q")));
  CHECK(ctx.size() == 2);
}
