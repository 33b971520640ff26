#include "leq/stratified.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "leq/ops.hpp"
#include "leq/print.hpp"
#include "leq/rewrite.hpp"

namespace leq {

namespace {

std::string show(const Term& t) { return print_term(t); }

constexpr SystemTag kSys = SystemTag::LambdaEqN;

}  // namespace

Typing StratChecker::coerce(const Context& ctx, Typing got,
                            const Term& expected) {
  if (alpha_eq(got.type, expected)) return got;
  if (convertible(got.type, expected, fuel_)) {
    TypeOf wf = derive_is_type(ctx, expected);
    DerivPtr d = make_deriv({ctx, got.subject, wf.elab, kSys}, Rule::Conv,
                            {got.deriv, wf.deriv});
    return {got.subject, wf.elab, d};
  }
  // Shallow cumulativity: a term of *n may be used where *m is expected for
  // n <= m.  Align both sides to literal universes, lift, convert back.
  Term a = whnf(got.type, fuel_);
  Term b = whnf(expected, fuel_);
  if (a.kind() == TermKind::StarN && b.kind() == TermKind::StarN &&
      a.level() <= b.level()) {
    Typing cur = std::move(got);
    if (!alpha_eq(cur.type, a)) {
      TypeOf wf = derive_is_type(ctx, a);
      cur = Typing{cur.subject, a,
                   make_deriv({ctx, cur.subject, a, kSys}, Rule::Conv,
                              {cur.deriv, wf.deriv})};
    }
    if (a.level() < b.level())
      cur = Typing{cur.subject, b,
                   make_deriv({ctx, cur.subject, b, kSys}, Rule::Cumul,
                              {cur.deriv})};
    if (!alpha_eq(cur.type, expected)) {
      TypeOf wf = derive_is_type(ctx, expected);
      cur = Typing{cur.subject, wf.elab,
                   make_deriv({ctx, cur.subject, wf.elab, kSys}, Rule::Conv,
                              {cur.deriv, wf.deriv})};
    }
    return cur;
  }
  throw ConversionFailure("type mismatch: expected " + show(expected) +
                          ", found " + show(got.type));
}

StratChecker::TypeOf StratChecker::derive_is_type(const Context& ctx,
                                                  const Term& a) {
  Typing r = infer(ctx, a);
  if (r.type.kind() == TermKind::StarN)
    return {r.subject, r.deriv, r.type.level()};
  Term w = whnf(r.type, fuel_);
  if (w.kind() == TermKind::StarN) {
    TypeOf uwf = derive_is_type(ctx, w);
    DerivPtr d = make_deriv({ctx, r.subject, w, kSys}, Rule::Conv,
                            {r.deriv, uwf.deriv});
    return {r.subject, d, w.level()};
  }
  if (w.kind() == TermKind::Unit)
    throw LevelUnderflow(
        "cannot use " + show(a) +
        " as a type: it is a level-0 relatedness proposition, a point of "
        "Unit rather than a member of any universe");
  throw TypeError("not a type: " + show(a) + " has type " + show(r.type));
}

Typing StratChecker::infer(const Context& ctx, const Term& t) {
  switch (t.kind()) {
    case TermKind::Star:
      throw UniverseError(
          "the bare universe * has no level here; write *0, *1, ... or check "
          "without --stratified");
    case TermKind::StarN: {
      Term ty = Term::star_n(t.level() + 1);
      return {t, ty, make_deriv({ctx, t, ty, kSys}, Rule::Axiom, {})};
    }
    case TermKind::Var: {
      auto ty = ctx.lookup(t.var_name());
      if (!ty)
        throw UnboundVariable("unbound variable '" + t.var_name().display() +
                              "'");
      return {t, *ty, make_deriv({ctx, t, *ty, kSys}, Rule::Var, {})};
    }
    case TermKind::Pi:
    case TermKind::Sigma: {
      TypeOf dom = derive_is_type(ctx, t.domain());
      Context inner = ctx.extended(t.binder(), dom.elab);
      TypeOf body = derive_is_type(inner, t.body());
      Term subject = t.kind() == TermKind::Pi
                         ? Term::pi(t.binder(), dom.elab, body.elab)
                         : Term::sigma(t.binder(), dom.elab, body.elab);
      Term ty = Term::star_n(std::max(dom.level, body.level));
      Rule r = t.kind() == TermKind::Pi ? Rule::PiForm : Rule::SigmaForm;
      return {subject, ty,
              make_deriv({ctx, subject, ty, kSys}, r,
                         {dom.deriv, body.deriv})};
    }
    case TermKind::TypeEq: {
      TypeOf l = derive_is_type(ctx, t.eq_lhs());
      TypeOf r = derive_is_type(ctx, t.eq_rhs());
      Term subject = Term::type_eq(l.elab, r.elab);
      Term ty = Term::star_n(std::max(l.level, r.level));
      return {subject, ty,
              make_deriv({ctx, subject, ty, kSys}, Rule::EqForm,
                         {l.deriv, r.deriv})};
    }
    case TermKind::RelOp: {
      Typing e = infer(ctx, t.rel_e());
      Term w = whnf(e.type, fuel_);
      if (w.kind() != TermKind::TypeEq)
        throw NotATypeEquality("eliminated term " + show(t.rel_e()) +
                               " has type " + show(e.type) +
                               ", which is not a type equality");
      TypeOf lhs_wf = derive_is_type(ctx, w.eq_lhs());
      TypeOf rhs_wf = derive_is_type(ctx, w.eq_rhs());
      Term eq = Term::type_eq(lhs_wf.elab, rhs_wf.elab);
      Typing e2 = coerce(ctx, std::move(e), eq);
      Term subject = Term::rel_op(e2.subject);
      // The one place a level goes down: relatedness of *n types lives a
      // level below, bottoming out in Unit.
      int top = std::max(lhs_wf.level, rhs_wf.level);
      Term cod = top == 0 ? Term::unit() : Term::star_n(top - 1);
      Term ty = Term::arrow(lhs_wf.elab, Term::arrow(rhs_wf.elab, cod));
      return {subject, ty,
              make_deriv({ctx, subject, ty, kSys}, Rule::RelElim,
                         {lhs_wf.deriv, rhs_wf.deriv, e2.deriv})};
    }
    case TermKind::Rel: {
      Typing op = infer(ctx, Term::rel_op(t.rel_e()));
      Term ty1 = op.type;
      Typing a = check(ctx, t.rel_lhs(), ty1.domain());
      Term ty2 = subst(ty1.body(), a.subject, ty1.binder());
      Term half = Term::app(op.subject, a.subject);
      DerivPtr d1 =
          make_deriv({ctx, half, ty2, kSys}, Rule::App, {op.deriv, a.deriv});
      Typing b = check(ctx, t.rel_rhs(), ty2.domain());
      Term ty3 = subst(ty2.body(), b.subject, ty2.binder());
      Term subject = Term::rel(op.subject.rel_e(), a.subject, b.subject);
      return {subject, ty3,
              make_deriv({ctx, subject, ty3, kSys}, Rule::App, {d1, b.deriv})};
    }
    case TermKind::Lam: {
      TypeOf dom = derive_is_type(ctx, t.domain());
      Context inner = ctx.extended(t.binder(), dom.elab);
      Typing body = infer(inner, t.body());
      Term subject = Term::lam(t.binder(), dom.elab, body.subject);
      Term ty = Term::pi(t.binder(), dom.elab, body.type);
      return {subject, ty,
              make_deriv({ctx, subject, ty, kSys}, Rule::Lam,
                         {dom.deriv, body.deriv})};
    }
    case TermKind::App: {
      Typing f = infer(ctx, t.fn());
      Term w = whnf(f.type, fuel_);
      if (w.kind() != TermKind::Pi)
        throw NotAFunction("applied term " + show(t.fn()) + " has type " +
                           show(f.type) + ", which is not a Pi type");
      if (!alpha_eq(f.type, w)) f = coerce(ctx, std::move(f), w);
      Typing a = check(ctx, t.arg(), w.domain());
      Term ty = subst(w.body(), a.subject, w.binder());
      Term subject = Term::app(f.subject, a.subject);
      return {subject, ty,
              make_deriv({ctx, subject, ty, kSys}, Rule::App,
                         {f.deriv, a.deriv})};
    }
    case TermKind::Pair: {
      Typing a = infer(ctx, t.first());
      Typing b = infer(ctx, t.second());
      Term sig = Term::sigma(VarName("_", {}, next_fresh_id()), a.type, b.type);
      TypeOf sig_wf = derive_is_type(ctx, sig);
      Term subject = Term::pair(a.subject, b.subject);
      return {subject, sig_wf.elab,
              make_deriv({ctx, subject, sig_wf.elab, kSys}, Rule::Pair,
                         {a.deriv, b.deriv, sig_wf.deriv})};
    }
    case TermKind::Proj1:
    case TermKind::Proj2: {
      Typing p = infer(ctx, t.pair_arg());
      Term w = whnf(p.type, fuel_);
      if (w.kind() != TermKind::Sigma)
        throw NotAPair("projected term " + show(t.pair_arg()) + " has type " +
                       show(p.type) + ", which is not a Sigma type");
      if (!alpha_eq(p.type, w)) p = coerce(ctx, std::move(p), w);
      if (t.kind() == TermKind::Proj1) {
        Term subject = Term::proj1(p.subject);
        return {subject, w.domain(),
                make_deriv({ctx, subject, w.domain(), kSys}, Rule::Proj1,
                           {p.deriv})};
      }
      Term subject = Term::proj2(p.subject);
      Term ty = subst(w.body(), Term::proj1(p.subject), w.binder());
      return {subject, ty,
              make_deriv({ctx, subject, ty, kSys}, Rule::Proj2, {p.deriv})};
    }
    case TermKind::StarStar: {
      // Inferred at the bottom universe; `check` accepts any Eq *n *n.
      Term ty = Term::type_eq(Term::star_n(0), Term::star_n(0));
      return {t, ty, make_deriv({ctx, t, ty, kSys}, Rule::StarStarIntro, {})};
    }
    case TermKind::PiStar:
    case TermKind::SigmaStar: {
      Typing as = infer(ctx, t.dom_eq());
      Term wa = whnf(as.type, fuel_);
      if (wa.kind() != TermKind::TypeEq)
        throw NotATypeEquality(
            "domain argument of " +
            std::string(t.kind() == TermKind::PiStar ? "Pi*" : "Sig*") +
            " has type " + show(as.type) + ", which is not a type equality");
      if (!alpha_eq(as.type, wa)) as = coerce(ctx, std::move(as), wa);
      Term a = wa.eq_lhs(), a2 = wa.eq_rhs();
      TypeOf a_wf = derive_is_type(ctx, a);
      TypeOf a2_wf = derive_is_type(ctx, a2);
      Context inner = ctx.extended(t.binder(), a_wf.elab)
                          .extended(t.binder2(), a2_wf.elab)
                          .extended(t.binder3(),
                                    Term::rel(as.subject, Term::var(t.binder()),
                                              Term::var(t.binder2())));
      Typing bs = infer(inner, t.body_eq());
      Term wb = whnf(bs.type, fuel_);
      if (wb.kind() != TermKind::TypeEq)
        throw NotATypeEquality(
            "body argument of " +
            std::string(t.kind() == TermKind::PiStar ? "Pi*" : "Sig*") +
            " has type " + show(bs.type) + ", which is not a type equality");
      if (!alpha_eq(bs.type, wb)) bs = coerce(inner, std::move(bs), wb);
      Term b = wb.eq_lhs(), b2 = wb.eq_rhs();
      TypeOf b_wf = derive_is_type(ctx.extended(t.binder(), a_wf.elab), b);
      TypeOf b2_wf = derive_is_type(ctx.extended(t.binder2(), a2_wf.elab), b2);
      StarAnnots ann{a_wf.elab, a2_wf.elab, b_wf.elab, b2_wf.elab};
      Term subject, ty;
      Rule r;
      if (t.kind() == TermKind::PiStar) {
        subject = Term::pi_star(t.binder(), t.binder2(), t.binder3(),
                                as.subject, bs.subject, ann);
        ty = Term::type_eq(Term::pi(t.binder(), a_wf.elab, b_wf.elab),
                           Term::pi(t.binder2(), a2_wf.elab, b2_wf.elab));
        r = Rule::PiStarIntro;
      } else {
        subject = Term::sigma_star(t.binder(), t.binder2(), t.binder3(),
                                   as.subject, bs.subject, ann);
        ty = Term::type_eq(Term::sigma(t.binder(), a_wf.elab, b_wf.elab),
                           Term::sigma(t.binder2(), a2_wf.elab, b2_wf.elab));
        r = Rule::SigmaStarIntro;
      }
      return {subject, ty,
              make_deriv({ctx, subject, ty, kSys}, r,
                         {as.deriv, bs.deriv, a_wf.deriv, a2_wf.deriv,
                          b_wf.deriv, b2_wf.deriv})};
    }
    case TermKind::EqStar: {
      Typing as = infer(ctx, t.dom_eq());
      Term wa = whnf(as.type, fuel_);
      if (wa.kind() != TermKind::TypeEq)
        throw NotATypeEquality("first argument of eq* has type " +
                               show(as.type) +
                               ", which is not a type equality");
      if (!alpha_eq(as.type, wa)) as = coerce(ctx, std::move(as), wa);
      Typing bs = infer(ctx, t.body_eq());
      Term wb = whnf(bs.type, fuel_);
      if (wb.kind() != TermKind::TypeEq)
        throw NotATypeEquality("second argument of eq* has type " +
                               show(bs.type) +
                               ", which is not a type equality");
      if (!alpha_eq(bs.type, wb)) bs = coerce(ctx, std::move(bs), wb);
      TypeOf a_wf = derive_is_type(ctx, wa.eq_lhs());
      TypeOf a2_wf = derive_is_type(ctx, wa.eq_rhs());
      TypeOf b_wf = derive_is_type(ctx, wb.eq_lhs());
      TypeOf b2_wf = derive_is_type(ctx, wb.eq_rhs());
      StarAnnots ann{a_wf.elab, a2_wf.elab, b_wf.elab, b2_wf.elab};
      Term subject = Term::eq_star(as.subject, bs.subject, ann);
      Term ty = Term::type_eq(Term::type_eq(a_wf.elab, b_wf.elab),
                              Term::type_eq(a2_wf.elab, b2_wf.elab));
      return {subject, ty,
              make_deriv({ctx, subject, ty, kSys}, Rule::EqStarIntro,
                         {as.deriv, bs.deriv, a_wf.deriv, a2_wf.deriv,
                          b_wf.deriv, b2_wf.deriv})};
    }
    case TermKind::Unit: {
      Term ty = Term::star_n(0);
      return {t, ty, make_deriv({ctx, t, ty, kSys}, Rule::UnitForm, {})};
    }
    case TermKind::TT: {
      Term ty = Term::unit();
      return {t, ty, make_deriv({ctx, t, ty, kSys}, Rule::TTIntro, {})};
    }
    case TermKind::UnitStar: {
      Term ty = Term::type_eq(Term::unit(), Term::unit());
      return {t, ty, make_deriv({ctx, t, ty, kSys}, Rule::UnitStarIntro, {})};
    }
    case TermKind::Const: {
      Context inner = ctx.extended(t.binder(), Term::unit());
      TypeOf fam = derive_is_type(inner, t.const_family());
      Term body_ty = subst(fam.elab, Term::tt(), t.binder());
      Typing body = check(ctx, t.const_body(), body_ty);
      Term subject = Term::const_fn(t.binder(), fam.elab, body.subject);
      Term ty = Term::pi(t.binder(), Term::unit(), fam.elab);
      return {subject, ty,
              make_deriv({ctx, subject, ty, kSys}, Rule::ConstIntro,
                         {fam.deriv, body.deriv})};
    }
  }
  throw std::logic_error("infer: unhandled kind");
}

Typing StratChecker::check(const Context& ctx, const Term& t,
                           const Term& expected) {
  if (t.kind() == TermKind::StarStar) {
    // *^* proves Eq *n *n at every level; pick the one being asked for.
    Term w = whnf(expected, fuel_);
    if (w.kind() == TermKind::TypeEq) {
      Term l = whnf(w.eq_lhs(), fuel_);
      Term r = whnf(w.eq_rhs(), fuel_);
      if (l.kind() == TermKind::StarN && r.kind() == TermKind::StarN &&
          l.level() == r.level()) {
        Term ty = Term::type_eq(l, r);
        Typing got{t, ty,
                   make_deriv({ctx, t, ty, kSys}, Rule::StarStarIntro, {})};
        return coerce(ctx, std::move(got), expected);
      }
    }
  }
  if (t.kind() == TermKind::Pair) {
    Term w = whnf(expected, fuel_);
    if (w.kind() == TermKind::Sigma) {
      Typing a = check(ctx, t.first(), w.domain());
      Term b_ty = subst(w.body(), a.subject, w.binder());
      Typing b = check(ctx, t.second(), b_ty);
      TypeOf sig_wf = derive_is_type(ctx, w);
      Term subject = Term::pair(a.subject, b.subject);
      Typing got{subject, sig_wf.elab,
                 make_deriv({ctx, subject, sig_wf.elab, kSys}, Rule::Pair,
                            {a.deriv, b.deriv, sig_wf.deriv})};
      return coerce(ctx, std::move(got), expected);
    }
  }
  if (t.kind() == TermKind::Lam) {
    Term w = whnf(expected, fuel_);
    if (w.kind() == TermKind::Pi) {
      TypeOf dom = derive_is_type(ctx, t.domain());
      if (!convertible(dom.elab, w.domain(), fuel_))
        throw ConversionFailure(
            "lambda domain " + show(t.domain()) +
            " does not match the expected domain " + show(w.domain()));
      Context inner = ctx.extended(t.binder(), dom.elab);
      Term body_expected = subst(w.body(), Term::var(t.binder()), w.binder());
      Typing body = check(inner, t.body(), body_expected);
      Term subject = Term::lam(t.binder(), dom.elab, body.subject);
      Term ty = Term::pi(t.binder(), dom.elab, body.type);
      Typing got{subject, ty,
                 make_deriv({ctx, subject, ty, kSys}, Rule::Lam,
                            {dom.deriv, body.deriv})};
      return coerce(ctx, std::move(got), expected);
    }
  }
  return coerce(ctx, infer(ctx, t), expected);
}

std::pair<Context, std::vector<DerivPtr>> StratChecker::check_context(
    const Context& ctx) {
  Context elab;
  std::vector<DerivPtr> derivs;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const auto& [name, ty] = ctx[i];
    if (elab.binds(name))
      throw IllFormedContext("context declares '" + name.display() +
                             "' twice");
    try {
      TypeOf wf = derive_is_type(elab, ty);
      derivs.push_back(wf.deriv);
      elab.push(name, wf.elab);
    } catch (const CheckError& e) {
      throw IllFormedContext("entry '" + name.display() +
                             "' is ill-formed: " + e.what());
    }
  }
  return {elab, derivs};
}

// ------------------------------------------------------------------ levels

namespace {

void count_stars(const Term& t, std::size_t& n) {
  switch (t.kind()) {
    case TermKind::Star:
      ++n;
      return;
    case TermKind::StarN:
    case TermKind::Var:
    case TermKind::StarStar:
    case TermKind::Unit:
    case TermKind::TT:
    case TermKind::UnitStar:
      return;
    case TermKind::Pi:
    case TermKind::Sigma:
    case TermKind::Lam:
      count_stars(t.domain(), n);
      count_stars(t.body(), n);
      return;
    case TermKind::TypeEq:
      count_stars(t.eq_lhs(), n);
      count_stars(t.eq_rhs(), n);
      return;
    case TermKind::RelOp:
      count_stars(t.rel_e(), n);
      return;
    case TermKind::Rel:
      count_stars(t.rel_e(), n);
      count_stars(t.rel_lhs(), n);
      count_stars(t.rel_rhs(), n);
      return;
    case TermKind::App:
      count_stars(t.fn(), n);
      count_stars(t.arg(), n);
      return;
    case TermKind::Pair:
      count_stars(t.first(), n);
      count_stars(t.second(), n);
      return;
    case TermKind::Proj1:
    case TermKind::Proj2:
      count_stars(t.pair_arg(), n);
      return;
    case TermKind::PiStar:
    case TermKind::SigmaStar:
    case TermKind::EqStar:
      count_stars(t.dom_eq(), n);
      count_stars(t.body_eq(), n);
      if (t.annots()) {
        count_stars(t.annots()->a, n);
        count_stars(t.annots()->a2, n);
        count_stars(t.annots()->b, n);
        count_stars(t.annots()->b2, n);
      }
      return;
    case TermKind::Const:
      count_stars(t.const_family(), n);
      count_stars(t.const_body(), n);
      return;
  }
}

Term assign_stars(const Term& t, const std::vector<int>& lv, std::size_t& i) {
  switch (t.kind()) {
    case TermKind::Star:
      return Term::star_n(lv[i++]);
    case TermKind::StarN:
    case TermKind::Var:
    case TermKind::StarStar:
    case TermKind::Unit:
    case TermKind::TT:
    case TermKind::UnitStar:
      return t;
    case TermKind::Pi:
    case TermKind::Sigma:
    case TermKind::Lam: {
      Term dom = assign_stars(t.domain(), lv, i);
      Term body = assign_stars(t.body(), lv, i);
      if (t.kind() == TermKind::Pi) return Term::pi(t.binder(), dom, body);
      if (t.kind() == TermKind::Sigma)
        return Term::sigma(t.binder(), dom, body);
      return Term::lam(t.binder(), dom, body);
    }
    case TermKind::TypeEq: {
      Term l = assign_stars(t.eq_lhs(), lv, i);
      Term r = assign_stars(t.eq_rhs(), lv, i);
      return Term::type_eq(l, r);
    }
    case TermKind::RelOp:
      return Term::rel_op(assign_stars(t.rel_e(), lv, i));
    case TermKind::Rel: {
      Term e = assign_stars(t.rel_e(), lv, i);
      Term a = assign_stars(t.rel_lhs(), lv, i);
      Term b = assign_stars(t.rel_rhs(), lv, i);
      return Term::rel(e, a, b);
    }
    case TermKind::App: {
      Term f = assign_stars(t.fn(), lv, i);
      Term a = assign_stars(t.arg(), lv, i);
      return Term::app(f, a);
    }
    case TermKind::Pair: {
      Term a = assign_stars(t.first(), lv, i);
      Term b = assign_stars(t.second(), lv, i);
      return Term::pair(a, b);
    }
    case TermKind::Proj1:
      return Term::proj1(assign_stars(t.pair_arg(), lv, i));
    case TermKind::Proj2:
      return Term::proj2(assign_stars(t.pair_arg(), lv, i));
    case TermKind::PiStar:
    case TermKind::SigmaStar:
    case TermKind::EqStar: {
      Term de = assign_stars(t.dom_eq(), lv, i);
      Term be = assign_stars(t.body_eq(), lv, i);
      std::optional<StarAnnots> ann;
      if (t.annots()) {
        Term a = assign_stars(t.annots()->a, lv, i);
        Term a2 = assign_stars(t.annots()->a2, lv, i);
        Term b = assign_stars(t.annots()->b, lv, i);
        Term b2 = assign_stars(t.annots()->b2, lv, i);
        ann = StarAnnots{a, a2, b, b2};
      }
      if (t.kind() == TermKind::PiStar)
        return Term::pi_star(t.binder(), t.binder2(), t.binder3(), de, be,
                             ann);
      if (t.kind() == TermKind::SigmaStar)
        return Term::sigma_star(t.binder(), t.binder2(), t.binder3(), de, be,
                                ann);
      return Term::eq_star(de, be, ann);
    }
    case TermKind::Const: {
      Term fam = assign_stars(t.const_family(), lv, i);
      Term body = assign_stars(t.const_body(), lv, i);
      return Term::const_fn(t.binder(), fam, body);
    }
  }
  throw std::logic_error("assign_stars: bad kind");
}

}  // namespace

LevelElaboration elaborate_levels(const Context& ctx, const Term& t,
                                  int max_level, std::uint64_t fuel) {
  std::size_t k = 0;
  count_stars(t, k);
  StratChecker chk(fuel);
  LevelElaboration out;
  std::vector<int> cur(k, 0);

  std::exception_ptr first_failure;
  auto attempt = [&]() -> bool {
    std::size_t pos = 0;
    Term candidate = assign_stars(t, cur, pos);
    ++out.attempts;
    try {
      Typing ty = chk.infer(ctx, candidate);
      out.subject = candidate;
      out.levels = cur;
      out.typing = std::move(ty);
      return true;
    } catch (const CheckError&) {
      if (!first_failure) first_failure = std::current_exception();
      return false;
    }
  };

  // All assignments with a given level sum, lexicographically.
  std::function<bool(std::size_t, int)> go = [&](std::size_t i,
                                                 int remaining) -> bool {
    if (i == k) return remaining == 0 && attempt();
    for (int v = 0; v <= std::min(max_level, remaining); ++v) {
      cur[i] = v;
      if (go(i + 1, remaining - v)) return true;
    }
    return false;
  };

  for (int sum = 0; sum <= static_cast<int>(k) * max_level; ++sum)
    if (go(0, sum)) return out;

  // With no bare stars there was nothing to search; report the real error.
  if (k == 0 && first_failure) std::rethrow_exception(first_failure);
  throw Unstratifiable("no universe-level assignment with levels up to *" +
                       std::to_string(max_level) + " stratifies " + show(t) +
                       " (" + std::to_string(out.attempts) +
                       " assignments tried)");
}

}  // namespace leq
