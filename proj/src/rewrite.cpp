#include "leq/rewrite.hpp"

#include "leq/ops.hpp"
#include "leq/print.hpp"

namespace leq {

const char* redex_name(RedexKind k) {
  switch (k) {
    case RedexKind::Beta: return "Beta";
    case RedexKind::BetaSigma1: return "BetaSigma1";
    case RedexKind::BetaSigma2: return "BetaSigma2";
    case RedexKind::RelStarStar: return "RelStarStar";
    case RedexKind::RelPiStar: return "RelPiStar";
    case RedexKind::RelSigmaStar: return "RelSigmaStar";
    case RedexKind::RelEqStar: return "RelEqStar";
    case RedexKind::ConstTT: return "ConstTT";
    case RedexKind::RelUnitStar: return "RelUnitStar";
  }
  return "?";
}

namespace {

// Pick a binder name not free anywhere in `avoid`, preferring `wanted`.
VarName pick(const VarName& wanted, VarSet& avoid) {
  VarName v = avoid.count(wanted) ? wanted.freshened() : wanted;
  avoid.insert(v);
  return v;
}

// f ~[Pi* [x,x',x*] : As . Bs {A;A';B;B'}] f'
//   =>  Pi (x:A). Pi (x':A'). Pi (x* : x ~[As] x'). f x ~[Bs] f' x'
std::optional<Step> contract_pi_star(const Term& e, const Term& f,
                                     const Term& f2) {
  if (!e.annots()) return std::nullopt;  // endpoints unknown: stuck
  const StarAnnots& ann = *e.annots();
  VarSet avoid = free_vars(f);
  for (const VarName& v : free_vars(f2)) avoid.insert(v);
  for (const VarName& v : free_vars(e)) avoid.insert(v);
  VarName x = pick(e.binder(), avoid);
  VarName x2 = pick(e.binder2(), avoid);
  VarName x3 = pick(e.binder3(), avoid);
  Term bs = e.body_eq();
  std::vector<std::pair<VarName, Term>> ren;
  if (x != e.binder()) ren.emplace_back(e.binder(), Term::var(x));
  if (x2 != e.binder2()) ren.emplace_back(e.binder2(), Term::var(x2));
  if (x3 != e.binder3()) ren.emplace_back(e.binder3(), Term::var(x3));
  if (!ren.empty()) bs = multi_subst(bs, ren);
  Term body = Term::rel(bs, Term::app(f, Term::var(x)),
                        Term::app(f2, Term::var(x2)));
  Term t3 = Term::pi(x3, Term::rel(e.dom_eq(), Term::var(x), Term::var(x2)),
                     body);
  return Step{Term::pi(x, ann.a, Term::pi(x2, ann.a2, t3)),
              RedexKind::RelPiStar};
}

// p ~[Sig* [x,x',x*] : As . Bs] p'
//   =>  Sig (x* : fst p ~[As] fst p').
//         snd p ~[Bs[fst p / x, fst p' / x', x* / x*]] snd p'
std::optional<Step> contract_sigma_star(const Term& e, const Term& p,
                                        const Term& p2) {
  VarSet avoid = free_vars(p);
  for (const VarName& v : free_vars(p2)) avoid.insert(v);
  for (const VarName& v : free_vars(e)) avoid.insert(v);
  VarName xs = pick(e.binder3(), avoid);
  Term bs = multi_subst(e.body_eq(), {{e.binder(), Term::proj1(p)},
                                      {e.binder2(), Term::proj1(p2)},
                                      {e.binder3(), Term::var(xs)}});
  Term dom = Term::rel(e.dom_eq(), Term::proj1(p), Term::proj1(p2));
  Term body = Term::rel(bs, Term::proj2(p), Term::proj2(p2));
  return Step{Term::sigma(xs, dom, body), RedexKind::RelSigmaStar};
}

// q ~[eq* As Bs {A;A';B;B'}] q'
//   =>  Pi (a:A). Pi (a':A'). Pi (a* : a ~[As] a').
//       Pi (b:B). Pi (b':B'). Pi (b* : b ~[Bs] b').
//         Eq (a ~[q] b) (a' ~[q'] b')
std::optional<Step> contract_eq_star(const Term& e, const Term& q,
                                     const Term& q2) {
  if (!e.annots()) return std::nullopt;
  const StarAnnots& ann = *e.annots();
  VarSet avoid = free_vars(q);
  for (const VarName& v : free_vars(q2)) avoid.insert(v);
  for (const VarName& v : free_vars(e)) avoid.insert(v);
  VarName a = pick(VarName("a"), avoid);
  VarName a2 = pick(VarName("a", {Deco::Prime}), avoid);
  VarName a3 = pick(VarName("a", {Deco::Star}), avoid);
  VarName b = pick(VarName("b"), avoid);
  VarName b2 = pick(VarName("b", {Deco::Prime}), avoid);
  VarName b3 = pick(VarName("b", {Deco::Star}), avoid);
  Term concl = Term::type_eq(Term::rel(q, Term::var(a), Term::var(b)),
                             Term::rel(q2, Term::var(a2), Term::var(b2)));
  Term t = Term::pi(
      b3, Term::rel(e.body_eq(), Term::var(b), Term::var(b2)), concl);
  t = Term::pi(b2, ann.b2, t);
  t = Term::pi(b, ann.b, t);
  t = Term::pi(a3, Term::rel(e.dom_eq(), Term::var(a), Term::var(a2)), t);
  t = Term::pi(a2, ann.a2, t);
  t = Term::pi(a, ann.a, t);
  return Step{t, RedexKind::RelEqStar};
}

}  // namespace

std::optional<Step> step_at_root(const Term& t) {
  if (t.kind() == TermKind::App) {
    Term f = t.fn();
    if (f.kind() == TermKind::Lam)
      return Step{subst(f.body(), t.arg(), f.binder()), RedexKind::Beta};
    if (f.kind() == TermKind::Const && t.arg().kind() == TermKind::TT)
      return Step{f.const_body(), RedexKind::ConstTT};
  }
  if (t.kind() == TermKind::Proj1 && t.pair_arg().kind() == TermKind::Pair)
    return Step{t.pair_arg().first(), RedexKind::BetaSigma1};
  if (t.kind() == TermKind::Proj2 && t.pair_arg().kind() == TermKind::Pair)
    return Step{t.pair_arg().second(), RedexKind::BetaSigma2};
  if (auto rf = as_rel_form(t)) {
    switch (rf->e.kind()) {
      case TermKind::StarStar:
        return Step{Term::type_eq(rf->lhs, rf->rhs), RedexKind::RelStarStar};
      case TermKind::UnitStar:
        return Step{Term::unit(), RedexKind::RelUnitStar};
      case TermKind::PiStar:
        return contract_pi_star(rf->e, rf->lhs, rf->rhs);
      case TermKind::SigmaStar:
        return contract_sigma_star(rf->e, rf->lhs, rf->rhs);
      case TermKind::EqStar:
        return contract_eq_star(rf->e, rf->lhs, rf->rhs);
      default:
        break;
    }
  }
  return std::nullopt;
}

namespace {

// Rebuild `t` with subterm index `i` (in syntax-tree order) replaced.
Term with_sub(const Term& t, std::size_t i, const Term& s) {
  const TermNode* n = t.raw();
  switch (t.kind()) {
    case TermKind::Pi:
      return i == 0 ? Term::pi(n->v1, s, n->sub[1]) : Term::pi(n->v1, n->sub[0], s);
    case TermKind::Sigma:
      return i == 0 ? Term::sigma(n->v1, s, n->sub[1])
                    : Term::sigma(n->v1, n->sub[0], s);
    case TermKind::Lam:
      return i == 0 ? Term::lam(n->v1, s, n->sub[1]) : Term::lam(n->v1, n->sub[0], s);
    case TermKind::TypeEq:
      return i == 0 ? Term::type_eq(s, n->sub[1]) : Term::type_eq(n->sub[0], s);
    case TermKind::RelOp:
      return Term::rel_op(s);
    case TermKind::Rel:
      if (i == 0) return Term::rel(s, n->sub[1], n->sub[2]);
      return i == 1 ? Term::rel(n->sub[0], s, n->sub[2])
                    : Term::rel(n->sub[0], n->sub[1], s);
    case TermKind::App:
      return i == 0 ? Term::app(s, n->sub[1]) : Term::app(n->sub[0], s);
    case TermKind::Pair:
      return i == 0 ? Term::pair(s, n->sub[1]) : Term::pair(n->sub[0], s);
    case TermKind::Proj1:
      return Term::proj1(s);
    case TermKind::Proj2:
      return Term::proj2(s);
    case TermKind::PiStar:
      return i == 0 ? Term::pi_star(n->v1, n->v2, n->v3, s, n->sub[1], n->ann)
                    : Term::pi_star(n->v1, n->v2, n->v3, n->sub[0], s, n->ann);
    case TermKind::SigmaStar:
      return i == 0
                 ? Term::sigma_star(n->v1, n->v2, n->v3, s, n->sub[1], n->ann)
                 : Term::sigma_star(n->v1, n->v2, n->v3, n->sub[0], s, n->ann);
    case TermKind::EqStar:
      return i == 0 ? Term::eq_star(s, n->sub[1], n->ann)
                    : Term::eq_star(n->sub[0], s, n->ann);
    case TermKind::Const:
      return i == 0 ? Term::const_fn(n->v1, s, n->sub[1])
                    : Term::const_fn(n->v1, n->sub[0], s);
    default:
      throw std::logic_error("with_sub: leaf");
  }
}

}  // namespace

std::optional<Step> step(const Term& t) {
  if (auto r = step_at_root(t)) return r;
  const std::vector<Term>& sub = t.raw()->sub;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (auto r = step(sub[i]))
      return Step{with_sub(t, i, r->result), r->kind};
  }
  return std::nullopt;
}

Term normalize(const Term& t, std::uint64_t fuel, NormalizeStats* stats,
               const TraceFn* trace) {
  Term cur = t;
  std::uint64_t n = 0;
  for (;;) {
    auto s = step(cur);
    if (!s) break;
    ++n;
    if (n > fuel)
      throw FuelExhausted("no normal form within " + std::to_string(fuel) +
                              " steps",
                          n - 1, cur);
    if (trace && *trace) (*trace)(cur, s->kind, s->result);
    cur = s->result;
  }
  if (stats) stats->steps += n;
  return cur;
}

namespace {

Term whnf_budget(const Term& t, std::uint64_t& budget, std::uint64_t fuel) {
  Term cur = t;
  for (;;) {
    if (auto s = step_at_root(cur)) {
      if (++budget > fuel)
        throw FuelExhausted("no weak head normal form within " +
                                std::to_string(fuel) + " steps",
                            budget - 1, cur);
      cur = s->result;
      continue;
    }
    switch (cur.kind()) {
      case TermKind::App: {
        Term f = whnf_budget(cur.fn(), budget, fuel);
        if (f.raw() == cur.fn().raw()) return cur;
        cur = Term::app(f, cur.arg());
        if (!step_at_root(cur)) return cur;
        continue;
      }
      case TermKind::Proj1:
      case TermKind::Proj2: {
        Term p = whnf_budget(cur.pair_arg(), budget, fuel);
        if (p.raw() == cur.pair_arg().raw()) return cur;
        cur = cur.kind() == TermKind::Proj1 ? Term::proj1(p) : Term::proj2(p);
        if (!step_at_root(cur)) return cur;
        continue;
      }
      case TermKind::Rel: {
        Term e = whnf_budget(cur.rel_e(), budget, fuel);
        if (e.raw() == cur.rel_e().raw()) return cur;
        cur = Term::rel(e, cur.rel_lhs(), cur.rel_rhs());
        if (!step_at_root(cur)) return cur;
        continue;
      }
      case TermKind::RelOp: {
        Term e = whnf_budget(cur.rel_e(), budget, fuel);
        if (e.raw() == cur.rel_e().raw()) return cur;
        return Term::rel_op(e);
      }
      default:
        return cur;
    }
  }
}

}  // namespace

Term whnf(const Term& t, std::uint64_t fuel) {
  std::uint64_t budget = 0;
  return whnf_budget(t, budget, fuel);
}

bool convertible(const Term& a, const Term& b, std::uint64_t fuel) {
  if (alpha_eq(a, b)) return true;
  return alpha_eq(normalize(a, fuel), normalize(b, fuel));
}

}  // namespace leq
