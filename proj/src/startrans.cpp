#include "leq/startrans.hpp"

#include <set>
#include <utility>
#include <vector>

#include "leq/errors.hpp"
#include "leq/ops.hpp"
#include "leq/print.hpp"
#include "leq/rewrite.hpp"

namespace leq {

namespace {

std::optional<StarAnnots> prime_annots(const std::optional<StarAnnots>& a);

}  // namespace

Term prime(const Term& t) {
  switch (t.kind()) {
    case TermKind::Star:
    case TermKind::StarN:
    case TermKind::StarStar:
    case TermKind::Unit:
    case TermKind::TT:
    case TermKind::UnitStar:
      return t;
    case TermKind::Var:
      return Term::var(t.var_name().primed());
    case TermKind::Pi:
      return Term::pi(t.binder().primed(), prime(t.domain()), prime(t.body()));
    case TermKind::Sigma:
      return Term::sigma(t.binder().primed(), prime(t.domain()),
                         prime(t.body()));
    case TermKind::Lam:
      return Term::lam(t.binder().primed(), prime(t.domain()), prime(t.body()));
    case TermKind::TypeEq:
      return Term::type_eq(prime(t.eq_lhs()), prime(t.eq_rhs()));
    case TermKind::RelOp:
      return Term::rel_op(prime(t.rel_e()));
    case TermKind::Rel:
      return Term::rel(prime(t.rel_e()), prime(t.rel_lhs()),
                       prime(t.rel_rhs()));
    case TermKind::App:
      return Term::app(prime(t.fn()), prime(t.arg()));
    case TermKind::Pair:
      return Term::pair(prime(t.first()), prime(t.second()));
    case TermKind::Proj1:
      return Term::proj1(prime(t.pair_arg()));
    case TermKind::Proj2:
      return Term::proj2(prime(t.pair_arg()));
    case TermKind::PiStar:
      return Term::pi_star(t.binder().primed(), t.binder2().primed(),
                           t.binder3().primed(), prime(t.dom_eq()),
                           prime(t.body_eq()), prime_annots(t.annots()));
    case TermKind::SigmaStar:
      return Term::sigma_star(t.binder().primed(), t.binder2().primed(),
                              t.binder3().primed(), prime(t.dom_eq()),
                              prime(t.body_eq()), prime_annots(t.annots()));
    case TermKind::EqStar:
      return Term::eq_star(prime(t.dom_eq()), prime(t.body_eq()),
                           prime_annots(t.annots()));
    case TermKind::Const:
      return Term::const_fn(t.binder().primed(), prime(t.const_family()),
                            prime(t.const_body()));
  }
  throw std::logic_error("prime: bad kind");
}

namespace {

std::optional<StarAnnots> prime_annots(const std::optional<StarAnnots>& a) {
  if (!a) return std::nullopt;
  return StarAnnots{prime(a->a), prime(a->a2), prime(a->b), prime(a->b2)};
}

// Scoped binder-freshening traversal.
class Freshener {
 public:
  Term go(const Term& t) {
    switch (t.kind()) {
      case TermKind::Star:
      case TermKind::StarN:
      case TermKind::StarStar:
      case TermKind::Unit:
      case TermKind::TT:
      case TermKind::UnitStar:
        return t;
      case TermKind::Var:
        return Term::var(lookup(t.var_name()));
      case TermKind::Pi:
      case TermKind::Sigma:
      case TermKind::Lam: {
        Term dom = go(t.domain());
        VarName x = t.binder().freshened();
        push(t.binder(), x);
        Term body = go(t.body());
        pop();
        switch (t.kind()) {
          case TermKind::Pi: return Term::pi(x, dom, body);
          case TermKind::Sigma: return Term::sigma(x, dom, body);
          default: return Term::lam(x, dom, body);
        }
      }
      case TermKind::TypeEq:
        return Term::type_eq(go(t.eq_lhs()), go(t.eq_rhs()));
      case TermKind::RelOp:
        return Term::rel_op(go(t.rel_e()));
      case TermKind::Rel:
        return Term::rel(go(t.rel_e()), go(t.rel_lhs()), go(t.rel_rhs()));
      case TermKind::App:
        return Term::app(go(t.fn()), go(t.arg()));
      case TermKind::Pair:
        return Term::pair(go(t.first()), go(t.second()));
      case TermKind::Proj1:
        return Term::proj1(go(t.pair_arg()));
      case TermKind::Proj2:
        return Term::proj2(go(t.pair_arg()));
      case TermKind::PiStar:
      case TermKind::SigmaStar: {
        Term de = go(t.dom_eq());
        VarName c1 = t.binder().freshened();
        VarName c2 = t.binder2().freshened();
        VarName c3 = t.binder3().freshened();
        std::optional<StarAnnots> ann;
        if (t.annots()) {
          const StarAnnots& a = *t.annots();
          Term na = go(a.a);
          Term na2 = go(a.a2);
          push(t.binder(), c1);
          Term nb = go(a.b);
          pop();
          push(t.binder2(), c2);
          Term nb2 = go(a.b2);
          pop();
          ann = StarAnnots{na, na2, nb, nb2};
        }
        push(t.binder(), c1);
        push(t.binder2(), c2);
        push(t.binder3(), c3);
        Term be = go(t.body_eq());
        pop();
        pop();
        pop();
        return t.kind() == TermKind::PiStar
                   ? Term::pi_star(c1, c2, c3, de, be, ann)
                   : Term::sigma_star(c1, c2, c3, de, be, ann);
      }
      case TermKind::EqStar: {
        std::optional<StarAnnots> ann;
        if (t.annots()) {
          const StarAnnots& a = *t.annots();
          ann = StarAnnots{go(a.a), go(a.a2), go(a.b), go(a.b2)};
        }
        return Term::eq_star(go(t.dom_eq()), go(t.body_eq()), ann);
      }
      case TermKind::Const: {
        VarName x = t.binder().freshened();
        push(t.binder(), x);
        Term fam = go(t.const_family());
        pop();
        return Term::const_fn(x, fam, go(t.const_body()));
      }
    }
    throw std::logic_error("freshen: bad kind");
  }

 private:
  VarName lookup(const VarName& v) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == v) return it->second;
    return v;
  }
  void push(const VarName& from, const VarName& to) {
    env_.emplace_back(from, to);
  }
  void pop() { env_.pop_back(); }

  std::vector<std::pair<VarName, VarName>> env_;
};

const StarAnnots& require_annots(const Term& t) {
  if (!t.annots())
    throw UnsupportedStarClause(
        "cannot translate a congruence constructor without its endpoint "
        "annotations; elaborate the term first");
  return *t.annots();
}

Term apply6(Term e, const Term& a, const Term& a2, const Term& a3,
            const Term& b, const Term& b2, const Term& b3) {
  e = Term::app(e, a);
  e = Term::app(e, a2);
  e = Term::app(e, a3);
  e = Term::app(e, b);
  e = Term::app(e, b2);
  return Term::app(e, b3);
}

Term star_go(const Term& t);

// star(*^*): given two type equalities, their eq* is an equality between the
// corresponding Eq-types.  This is what *^* ~[star (Eq * *)] *^* unfolds to.
Term star_of_star_star() {
  VarName a("A", {}, next_fresh_id());
  VarName b("B", {}, next_fresh_id());
  Term va = Term::var(a), va2 = Term::var(a.primed());
  Term vb = Term::var(b), vb2 = Term::var(b.primed());
  Term body =
      Term::eq_star(Term::var(a.starred()), Term::var(b.starred()),
                    StarAnnots{va, va2, vb, vb2});
  Term s = Term::star();
  Term r = Term::lam(b.starred(), Term::type_eq(vb, vb2), body);
  r = Term::lam(b.primed(), s, r);
  r = Term::lam(b, s, r);
  r = Term::lam(a.starred(), Term::type_eq(va, va2), r);
  r = Term::lam(a.primed(), s, r);
  return Term::lam(a, s, r);
}

// star(Unit^*): both sides of the unfolded statement contract to Unit, so the
// equality is witnessed by Unit^* itself under six vacuous binders.
Term star_of_unit_star() {
  VarName a("a", {}, next_fresh_id());
  VarName b("b", {}, next_fresh_id());
  Term u = Term::unit();
  Term us = Term::unit_star();
  Term r = us;
  r = Term::lam(b.starred(),
                Term::rel(us, Term::var(b), Term::var(b.primed())), r);
  r = Term::lam(b.primed(), u, r);
  r = Term::lam(b, u, r);
  r = Term::lam(a.starred(),
                Term::rel(us, Term::var(a), Term::var(a.primed())), r);
  r = Term::lam(a.primed(), u, r);
  return Term::lam(a, u, r);
}

// Shared scaffolding for the three congruence-constructor clauses: wrap
// `body` in the six lambdas introducing both endpoints of the constructor's
// conclusion and their relatedness witnesses.
Term wrap_endpoints(const VarName& l, const Term& tl, const VarName& r,
                    const Term& tr, Term body) {
  Term stl = star_go(tl);
  Term str = star_go(tr);
  body = Term::lam(r.starred(),
                   Term::rel(str, Term::var(r), Term::var(r.primed())), body);
  body = Term::lam(r.primed(), prime(tr), body);
  body = Term::lam(r, tr, body);
  body = Term::lam(l.starred(),
                   Term::rel(stl, Term::var(l), Term::var(l.primed())), body);
  body = Term::lam(l.primed(), prime(tl), body);
  return Term::lam(l, tl, body);
}

// star(Pi* ...): the conclusion Eq (Pi x:A. B) (Pi x':A2. B2) unfolds, when
// applied to related functions, to an equality of two three-binder Pi
// telescopes; prove it with a tower of three Pi* layers whose innermost body
// is the translated result relation.
Term star_of_pi_star(const Term& t) {
  const StarAnnots& an = require_annots(t);
  Term tl = Term::pi(t.binder(), an.a, an.b);
  Term tr = Term::pi(t.binder2(), an.a2, an.b2);
  VarName f("f", {}, next_fresh_id());
  VarName g("g", {}, next_fresh_id());
  VarName c1 = t.binder().freshened();
  VarName c2 = t.binder2().freshened();
  VarName c3 = t.binder3().freshened();
  // Innermost binder first, so a name shared between binders resolves to the
  // innermost one, the way the node scopes it.
  Term bs = subst(t.body_eq(), Term::var(c3), t.binder3());
  bs = subst(bs, Term::var(c2), t.binder2());
  bs = subst(bs, Term::var(c1), t.binder());

  Term xl = Term::var(c1), xr = Term::var(c2);
  Term body_lhs = Term::rel(bs, Term::app(Term::var(f), xl),
                            Term::app(Term::var(g), xr));
  Term dom3 = Term::rel(t.dom_eq(), xl, xr);
  Term cur = Term::pi_star(c3, c3.primed(), c3.starred(), star_go(dom3),
                           star_go(body_lhs),
                           StarAnnots{dom3, prime(dom3), body_lhs,
                                      prime(body_lhs)});
  Term lhs = Term::pi(c3, dom3, body_lhs);
  cur = Term::pi_star(c2, c2.primed(), c2.starred(), star_go(an.a2), cur,
                      StarAnnots{an.a2, prime(an.a2), lhs, prime(lhs)});
  lhs = Term::pi(c2, an.a2, lhs);
  cur = Term::pi_star(c1, c1.primed(), c1.starred(), star_go(an.a), cur,
                      StarAnnots{an.a, prime(an.a), lhs, prime(lhs)});
  return wrap_endpoints(f, tl, g, tr, cur);
}

// star(Sig* ...): applied to related pairs, the conclusion unfolds to an
// equality of two one-binder Sigma telescopes over the firsts' relatedness;
// one Sig* layer suffices.
Term star_of_sigma_star(const Term& t) {
  const StarAnnots& an = require_annots(t);
  Term tl = Term::sigma(t.binder(), an.a, an.b);
  Term tr = Term::sigma(t.binder2(), an.a2, an.b2);
  VarName p("p", {}, next_fresh_id());
  VarName q("q", {}, next_fresh_id());
  VarName c3 = t.binder3().freshened();
  Term fp = Term::proj1(Term::var(p));
  Term fq = Term::proj1(Term::var(q));
  Term body_inst = subst(t.body_eq(), Term::var(c3), t.binder3());
  body_inst = subst(body_inst, fq, t.binder2());
  body_inst = subst(body_inst, fp, t.binder());

  Term fst_rel = Term::rel(t.dom_eq(), fp, fq);
  Term body_lhs =
      Term::rel(body_inst, Term::proj2(Term::var(p)), Term::proj2(Term::var(q)));
  Term layer = Term::sigma_star(c3, c3.primed(), c3.starred(),
                                star_go(fst_rel), star_go(body_lhs),
                                StarAnnots{fst_rel, prime(fst_rel), body_lhs,
                                           prime(body_lhs)});
  return wrap_endpoints(p, tl, q, tr, layer);
}

// star(eq* ...): the conclusion Eq (Eq A B) (Eq A2 B2) unfolds, when applied
// to proofs q and r, to an equality of two six-binder Pi telescopes; prove it
// with six Pi* layers around the translated body equality.
Term star_of_eq_star(const Term& t) {
  const StarAnnots& an = require_annots(t);
  Term tl = Term::type_eq(an.a, an.b);
  Term tr = Term::type_eq(an.a2, an.b2);
  VarName q("q", {}, next_fresh_id());
  VarName r("r", {}, next_fresh_id());
  VarName n1("a", {}, next_fresh_id());
  VarName n2("a2", {}, next_fresh_id());
  VarName n3("az", {}, next_fresh_id());
  VarName n4("b", {}, next_fresh_id());
  VarName n5("b2", {}, next_fresh_id());
  VarName n6("bz", {}, next_fresh_id());
  std::vector<VarName> ns = {n1, n2, n3, n4, n5, n6};
  std::vector<Term> tys = {
      an.a,
      an.a2,
      Term::rel(t.dom_eq(), Term::var(n1), Term::var(n2)),
      an.b,
      an.b2,
      Term::rel(t.body_eq(), Term::var(n4), Term::var(n5))};
  Term lhs = Term::type_eq(
      Term::rel(Term::var(q), Term::var(n1), Term::var(n4)),
      Term::rel(Term::var(r), Term::var(n2), Term::var(n5)));
  Term cur = star_go(lhs);
  for (int i = 5; i >= 0; --i) {
    cur = Term::pi_star(ns[i], ns[i].primed(), ns[i].starred(),
                        star_go(tys[i]), cur,
                        StarAnnots{tys[i], prime(tys[i]), lhs, prime(lhs)});
    lhs = Term::pi(ns[i], tys[i], lhs);
  }
  return wrap_endpoints(q, tl, r, tr, cur);
}

Term star_go(const Term& t) {
  switch (t.kind()) {
    case TermKind::Star:
    case TermKind::StarN:
      return Term::star_star();
    case TermKind::Var:
      return Term::var(t.var_name().starred());
    case TermKind::Pi:
      return Term::pi_star(
          t.binder(), t.binder().primed(), t.binder().starred(),
          star_go(t.domain()), star_go(t.body()),
          StarAnnots{t.domain(), prime(t.domain()), t.body(),
                     prime(t.body())});
    case TermKind::Sigma:
      return Term::sigma_star(
          t.binder(), t.binder().primed(), t.binder().starred(),
          star_go(t.domain()), star_go(t.body()),
          StarAnnots{t.domain(), prime(t.domain()), t.body(),
                     prime(t.body())});
    case TermKind::TypeEq:
      return Term::eq_star(star_go(t.eq_lhs()), star_go(t.eq_rhs()),
                           StarAnnots{t.eq_lhs(), prime(t.eq_lhs()),
                                      t.eq_rhs(), prime(t.eq_rhs())});
    case TermKind::RelOp:
      return star_go(t.rel_e());
    case TermKind::Rel:
      return apply6(star_go(t.rel_e()), t.rel_lhs(), prime(t.rel_lhs()),
                    star_go(t.rel_lhs()), t.rel_rhs(), prime(t.rel_rhs()),
                    star_go(t.rel_rhs()));
    case TermKind::Lam: {
      const VarName& x = t.binder();
      Term dom = t.domain();
      Term inner = Term::lam(
          x.starred(),
          Term::rel(star_go(dom), Term::var(x), Term::var(x.primed())),
          star_go(t.body()));
      inner = Term::lam(x.primed(), prime(dom), inner);
      return Term::lam(x, dom, inner);
    }
    case TermKind::App:
      return Term::app(
          Term::app(Term::app(star_go(t.fn()), t.arg()), prime(t.arg())),
          star_go(t.arg()));
    case TermKind::Pair:
      return Term::pair(star_go(t.first()), star_go(t.second()));
    case TermKind::Proj1:
      return Term::proj1(star_go(t.pair_arg()));
    case TermKind::Proj2:
      return Term::proj2(star_go(t.pair_arg()));
    case TermKind::StarStar:
      return star_of_star_star();
    case TermKind::PiStar:
      return star_of_pi_star(t);
    case TermKind::SigmaStar:
      return star_of_sigma_star(t);
    case TermKind::EqStar:
      return star_of_eq_star(t);
    case TermKind::Unit:
      return Term::unit_star();
    case TermKind::TT:
      return Term::tt();
    case TermKind::UnitStar:
      return star_of_unit_star();
    case TermKind::Const:
      throw UnsupportedStarClause("Const has no relational translation");
  }
  throw std::logic_error("star: bad kind");
}

}  // namespace

Term freshen_binders(const Term& t) { return Freshener{}.go(t); }

Term star(const Term& t) { return star_go(freshen_binders(t)); }

Context star_context(const Context& ctx) {
  Context out;
  std::set<VarName> seen;
  auto add = [&](const VarName& v, Term ty) {
    if (!seen.insert(v).second)
      throw IllFormedContext("tripling the context repeats the name `" +
                             v.display() + "`");
    out.push(v, std::move(ty));
  };
  for (const auto& [x, a] : ctx) {
    add(x, a);
    add(x.primed(), prime(a));
    add(x.starred(),
        Term::rel(star(a), Term::var(x), Term::var(x.primed())));
  }
  return out;
}

Term ext_eq(const Term& a_type) {
  VarName x("a", {}, next_fresh_id());
  return Term::lam(
      x, a_type,
      Term::lam(x.primed(), a_type,
                Term::rel(star(a_type), Term::var(x), Term::var(x.primed()))));
}

StarInstance run_star_instance(Checker& chk, const Context& ctx,
                               const Term& m) {
  auto [ectx, ctx_derivs] = chk.check_context(ctx);
  (void)ctx_derivs;
  Typing mt = chk.infer(ectx, m);
  Context sctx = star_context(ectx);
  Term image = star(mt.subject);
  Term statement =
      Term::rel(star(mt.type), mt.subject, prime(mt.subject));
  try {
    Typing res = chk.check(sctx, image, statement);
    return StarInstance{mt.subject, mt.type, statement, std::move(res)};
  } catch (const CheckError& e) {
    throw TheoremInstanceFailure("translation of `" + print_term(mt.subject) +
                                 "` does not check: " + e.what());
  }
}

StarInstance refl_proof(Checker& chk, const Term& m) {
  return run_star_instance(chk, Context{}, m);
}

}  // namespace leq
