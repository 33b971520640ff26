#include "leq/checker.hpp"

#include "leq/ops.hpp"
#include "leq/print.hpp"

namespace leq {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Axiom: return "Axiom";
    case Rule::Var: return "Var";
    case Rule::Weaken: return "Weaken";
    case Rule::PiForm: return "PiForm";
    case Rule::SigmaForm: return "SigmaForm";
    case Rule::EqForm: return "EqForm";
    case Rule::RelElim: return "RelElim";
    case Rule::Lam: return "Lam";
    case Rule::App: return "App";
    case Rule::Pair: return "Pair";
    case Rule::Proj1: return "Proj1";
    case Rule::Proj2: return "Proj2";
    case Rule::Conv: return "Conv";
    case Rule::StarStarIntro: return "StarStarIntro";
    case Rule::PiStarIntro: return "PiStarIntro";
    case Rule::SigmaStarIntro: return "SigmaStarIntro";
    case Rule::EqStarIntro: return "EqStarIntro";
    case Rule::Cumul: return "Cumul";
    case Rule::UnitForm: return "UnitForm";
    case Rule::TTIntro: return "TTIntro";
    case Rule::UnitStarIntro: return "UnitStarIntro";
    case Rule::ConstIntro: return "ConstIntro";
  }
  return "?";
}

DerivPtr make_deriv(Judgment concl, Rule rule, std::vector<DerivPtr> premises) {
  auto d = std::make_shared<Derivation>();
  d->conclusion = std::move(concl);
  d->rule = rule;
  d->premises = std::move(premises);
  return d;
}

std::size_t deriv_size(const DerivPtr& d) {
  std::size_t n = 1;
  for (const auto& p : d->premises) n += deriv_size(p);
  return n;
}

namespace {

std::string show(const Term& t) { return print_term(t); }

}  // namespace

// Wrap `got` in a conversion step so its conclusion is literally `expected`.
Typing Checker::coerce(const Context& ctx, Typing got, const Term& expected) {
  if (alpha_eq(got.type, expected)) return got;
  if (!convertible(got.type, expected, fuel_))
    throw ConversionFailure("type mismatch: expected " + show(expected) +
                            ", found " + show(got.type));
  TypeOf wf = derive_is_type(ctx, expected);
  DerivPtr d = make_deriv({ctx, got.subject, wf.elab, SystemTag::LambdaEq},
                          Rule::Conv, {got.deriv, wf.deriv});
  return {got.subject, wf.elab, d};
}

Checker::TypeOf Checker::derive_is_type(const Context& ctx, const Term& a) {
  Typing r = infer(ctx, a);
  if (alpha_eq(r.type, Term::star())) return {r.subject, r.deriv};
  if (!convertible(r.type, Term::star(), fuel_))
    throw TypeError("not a type: " + show(a) + " has type " + show(r.type));
  DerivPtr star_wf = make_deriv(
      {ctx, Term::star(), Term::star(), SystemTag::LambdaEq}, Rule::Axiom, {});
  DerivPtr d = make_deriv({ctx, r.subject, Term::star(), SystemTag::LambdaEq},
                          Rule::Conv, {r.deriv, star_wf});
  return {r.subject, d};
}

Typing Checker::infer(const Context& ctx, const Term& t) {
  return infer_uncached(ctx, t);
}

Typing Checker::infer_uncached(const Context& ctx, const Term& t) {
  const SystemTag sys = SystemTag::LambdaEq;
  switch (t.kind()) {
    case TermKind::Star: {
      // Type-in-type axiom; the system is knowingly inconsistent.
      return {t, Term::star(), make_deriv({ctx, t, Term::star(), sys}, Rule::Axiom, {})};
    }
    case TermKind::StarN:
    case TermKind::Unit:
    case TermKind::TT:
    case TermKind::UnitStar:
    case TermKind::Const:
      throw UnsupportedTerm(
          "stratified-only construct " + show(t) +
          " is not part of the unstratified system (use --stratified)");
    case TermKind::Var: {
      auto ty = ctx.lookup(t.var_name());
      if (!ty)
        throw UnboundVariable("unbound variable '" + t.var_name().display() + "'");
      return {t, *ty, make_deriv({ctx, t, *ty, sys}, Rule::Var, {})};
    }
    case TermKind::Pi:
    case TermKind::Sigma: {
      TypeOf dom = derive_is_type(ctx, t.domain());
      Context inner = ctx.extended(t.binder(), dom.elab);
      TypeOf body = derive_is_type(inner, t.body());
      Term subject = t.kind() == TermKind::Pi
                         ? Term::pi(t.binder(), dom.elab, body.elab)
                         : Term::sigma(t.binder(), dom.elab, body.elab);
      Rule r = t.kind() == TermKind::Pi ? Rule::PiForm : Rule::SigmaForm;
      return {subject, Term::star(),
              make_deriv({ctx, subject, Term::star(), sys}, r,
                         {dom.deriv, body.deriv})};
    }
    case TermKind::TypeEq: {
      TypeOf l = derive_is_type(ctx, t.eq_lhs());
      TypeOf r = derive_is_type(ctx, t.eq_rhs());
      Term subject = Term::type_eq(l.elab, r.elab);
      return {subject, Term::star(),
              make_deriv({ctx, subject, Term::star(), sys}, Rule::EqForm,
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
      Term ty = Term::arrow(lhs_wf.elab, Term::arrow(rhs_wf.elab, Term::star()));
      return {subject, ty,
              make_deriv({ctx, subject, ty, sys}, Rule::RelElim,
                         {lhs_wf.deriv, rhs_wf.deriv, e2.deriv})};
    }
    case TermKind::Rel: {
      // a ~[e] b is ~[e] applied twice; the derivation says so.
      Typing op = infer(ctx, Term::rel_op(t.rel_e()));
      Term ty1 = op.type;  // Pi (_:A). Pi (_:B). *
      Term a_ty = ty1.domain();
      Typing a = check(ctx, t.rel_lhs(), a_ty);
      Term ty2 = subst(ty1.body(), a.subject, ty1.binder());
      Term half = Term::app(op.subject, a.subject);
      DerivPtr d1 = make_deriv({ctx, half, ty2, sys}, Rule::App,
                               {op.deriv, a.deriv});
      Typing b = check(ctx, t.rel_rhs(), ty2.domain());
      Term ty3 = subst(ty2.body(), b.subject, ty2.binder());
      Term subject = Term::rel(op.subject.rel_e(), a.subject, b.subject);
      return {subject, ty3,
              make_deriv({ctx, subject, ty3, sys}, Rule::App, {d1, b.deriv})};
    }
    case TermKind::Lam: {
      TypeOf dom = derive_is_type(ctx, t.domain());
      Context inner = ctx.extended(t.binder(), dom.elab);
      Typing body = infer(inner, t.body());
      Term subject = Term::lam(t.binder(), dom.elab, body.subject);
      Term ty = Term::pi(t.binder(), dom.elab, body.type);
      return {subject, ty,
              make_deriv({ctx, subject, ty, sys}, Rule::Lam,
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
              make_deriv({ctx, subject, ty, sys}, Rule::App,
                         {f.deriv, a.deriv})};
    }
    case TermKind::Pair: {
      // Without an expected type the pair is typed non-dependently.
      Typing a = infer(ctx, t.first());
      Typing b = infer(ctx, t.second());
      Term sig = Term::sigma(VarName("_", {}, next_fresh_id()), a.type, b.type);
      TypeOf sig_wf = derive_is_type(ctx, sig);
      Term subject = Term::pair(a.subject, b.subject);
      return {subject, sig_wf.elab,
              make_deriv({ctx, subject, sig_wf.elab, sys}, Rule::Pair,
                         {a.deriv, b.deriv, sig_wf.deriv})};
    }
    case TermKind::Proj1: {
      Typing p = infer(ctx, t.pair_arg());
      Term w = whnf(p.type, fuel_);
      if (w.kind() != TermKind::Sigma)
        throw NotAPair("projected term " + show(t.pair_arg()) + " has type " +
                       show(p.type) + ", which is not a Sigma type");
      if (!alpha_eq(p.type, w)) p = coerce(ctx, std::move(p), w);
      Term subject = Term::proj1(p.subject);
      Term ty = w.domain();
      return {subject, ty,
              make_deriv({ctx, subject, ty, sys}, Rule::Proj1, {p.deriv})};
    }
    case TermKind::Proj2: {
      Typing p = infer(ctx, t.pair_arg());
      Term w = whnf(p.type, fuel_);
      if (w.kind() != TermKind::Sigma)
        throw NotAPair("projected term " + show(t.pair_arg()) + " has type " +
                       show(p.type) + ", which is not a Sigma type");
      if (!alpha_eq(p.type, w)) p = coerce(ctx, std::move(p), w);
      Term subject = Term::proj2(p.subject);
      Term ty = subst(w.body(), Term::proj1(p.subject), w.binder());
      return {subject, ty,
              make_deriv({ctx, subject, ty, sys}, Rule::Proj2, {p.deriv})};
    }
    case TermKind::StarStar: {
      Term ty = Term::type_eq(Term::star(), Term::star());
      return {t, ty, make_deriv({ctx, t, ty, sys}, Rule::StarStarIntro, {})};
    }
    case TermKind::PiStar:
    case TermKind::SigmaStar: {
      Typing as = infer(ctx, t.dom_eq());
      Term wa = whnf(as.type, fuel_);
      if (wa.kind() != TermKind::TypeEq)
        throw NotATypeEquality("domain argument of " +
                               std::string(t.kind() == TermKind::PiStar
                                               ? "Pi*"
                                               : "Sig*") +
                               " has type " + show(as.type) +
                               ", which is not a type equality");
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
        throw NotATypeEquality("body argument of " +
                               std::string(t.kind() == TermKind::PiStar
                                               ? "Pi*"
                                               : "Sig*") +
                               " has type " + show(bs.type) +
                               ", which is not a type equality");
      if (!alpha_eq(bs.type, wb)) bs = coerce(inner, std::move(bs), wb);
      Term b = wb.eq_lhs(), b2 = wb.eq_rhs();
      // The elided endpoints must live where the rule says they do: the left
      // one under x : A, the right under x' : A'.
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
              make_deriv({ctx, subject, ty, sys}, r,
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
      Term a = wa.eq_lhs(), a2 = wa.eq_rhs();
      Term b = wb.eq_lhs(), b2 = wb.eq_rhs();
      TypeOf a_wf = derive_is_type(ctx, a);
      TypeOf a2_wf = derive_is_type(ctx, a2);
      TypeOf b_wf = derive_is_type(ctx, b);
      TypeOf b2_wf = derive_is_type(ctx, b2);
      StarAnnots ann{a_wf.elab, a2_wf.elab, b_wf.elab, b2_wf.elab};
      Term subject = Term::eq_star(as.subject, bs.subject, ann);
      Term ty = Term::type_eq(Term::type_eq(a_wf.elab, b_wf.elab),
                              Term::type_eq(a2_wf.elab, b2_wf.elab));
      return {subject, ty,
              make_deriv({ctx, subject, ty, sys}, Rule::EqStarIntro,
                         {as.deriv, bs.deriv, a_wf.deriv, a2_wf.deriv,
                          b_wf.deriv, b2_wf.deriv})};
    }
  }
  throw std::logic_error("infer: unhandled kind");
}

Typing Checker::check(const Context& ctx, const Term& t, const Term& expected) {
  const SystemTag sys = SystemTag::LambdaEq;
  // Push the expected type into introduction forms so that dependent pairs
  // and lambdas check against their stated types.
  if (t.kind() == TermKind::Pair) {
    Term w = whnf(expected, fuel_);
    if (w.kind() == TermKind::Sigma) {
      Typing a = check(ctx, t.first(), w.domain());
      Term b_ty = subst(w.body(), a.subject, w.binder());
      Typing b = check(ctx, t.second(), b_ty);
      TypeOf sig_wf = derive_is_type(ctx, w);
      Term subject = Term::pair(a.subject, b.subject);
      Typing got{subject, sig_wf.elab,
                 make_deriv({ctx, subject, sig_wf.elab, sys}, Rule::Pair,
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
                 make_deriv({ctx, subject, ty, sys}, Rule::Lam,
                            {dom.deriv, body.deriv})};
      return coerce(ctx, std::move(got), expected);
    }
  }
  return coerce(ctx, infer(ctx, t), expected);
}

std::pair<Context, std::vector<DerivPtr>> Checker::check_context(
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

}  // namespace leq
