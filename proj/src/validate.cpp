#include "leq/checker.hpp"
#include "leq/ops.hpp"
#include "leq/print.hpp"

// Node-local re-validation of derivations.  Deliberately independent of the
// checker: every rule schema is re-checked from the conclusion and the
// premises' conclusions using only alpha equality, substitution and
// conversion.

namespace leq {

namespace {

struct Validator {
  std::uint64_t fuel;

  [[noreturn]] void bad(const Derivation& d, const std::string& why) {
    throw TypeError("invalid derivation: " + why + " (at " +
                    rule_name(d.rule) + " node concluding " +
                    print_term(d.conclusion.subject) + " : " +
                    print_term(d.conclusion.type) + ")");
  }

  static bool ctx_eq(const Context& a, const Context& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i].first == b[i].first) || !alpha_eq(a[i].second, b[i].second))
        return false;
    return true;
  }

  // b == a plus exactly k entries on top.
  static bool ctx_extends(const Context& a, const Context& b, std::size_t k) {
    if (b.size() != a.size() + k) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i].first == b[i].first) || !alpha_eq(a[i].second, b[i].second))
        return false;
    return true;
  }

  bool stratified(const Derivation& d) const {
    return d.conclusion.system == SystemTag::LambdaEqN;
  }

  // A universe for the ambient system: Star in the unstratified system, any
  // StarN in the stratified one.  Returns the level (0 for Star).
  int universe_level(const Derivation& d, const Term& t) {
    if (stratified(d)) {
      if (t.kind() != TermKind::StarN) bad(d, "expected a universe *n");
      return t.level();
    }
    if (!alpha_eq(t, Term::star())) bad(d, "expected the universe *");
    return 0;
  }

  const Judgment& premise(const Derivation& d, std::size_t i) {
    if (i >= d.premises.size()) bad(d, "missing premise");
    return d.premises[i]->conclusion;
  }

  void need(const Derivation& d, bool ok, const char* why) {
    if (!ok) bad(d, why);
  }

  void check_node(const Derivation& d) {
    const Judgment& c = d.conclusion;
    for (const auto& p : d.premises)
      if (p->conclusion.system != c.system)
        bad(d, "premise from a different system");

    switch (d.rule) {
      case Rule::Axiom: {
        need(d, d.premises.empty(), "Axiom has no premises");
        if (stratified(d)) {
          need(d, c.subject.kind() == TermKind::StarN, "subject must be *n");
          need(d,
               c.type.kind() == TermKind::StarN &&
                   c.type.level() == c.subject.level() + 1,
               "type of *n must be *(n+1)");
        } else {
          need(d, alpha_eq(c.subject, Term::star()), "subject must be *");
          need(d, alpha_eq(c.type, Term::star()), "type of * must be *");
        }
        return;
      }
      case Rule::Var: {
        need(d, d.premises.empty(), "Var has no premises");
        need(d, c.subject.kind() == TermKind::Var, "subject must be a variable");
        auto ty = c.ctx.lookup(c.subject.var_name());
        need(d, ty.has_value(), "variable not bound in the context");
        need(d, alpha_eq(*ty, c.type), "type differs from the context entry");
        return;
      }
      case Rule::Weaken: {
        need(d, d.premises.size() == 1, "Weaken has one premise");
        const Judgment& p = premise(d, 0);
        need(d, alpha_eq(p.subject, c.subject), "subject changed");
        need(d, alpha_eq(p.type, c.type), "type changed");
        need(d, p.ctx.size() <= c.ctx.size() &&
                    ctx_extends(p.ctx, c.ctx, c.ctx.size() - p.ctx.size()),
             "context must extend the premise context");
        return;
      }
      case Rule::PiForm:
      case Rule::SigmaForm: {
        need(d, d.premises.size() == 2, "formation has two premises");
        const Judgment& pa = premise(d, 0);
        const Judgment& pb = premise(d, 1);
        need(d, ctx_eq(pa.ctx, c.ctx), "domain premise context mismatch");
        int n = universe_level(d, pa.type);
        need(d, ctx_extends(c.ctx, pb.ctx, 1), "body premise context");
        const auto& [x, xty] = pb.ctx[pb.ctx.size() - 1];
        need(d, alpha_eq(xty, pa.subject), "binder entry type mismatch");
        int m = universe_level(d, pb.type);
        TermKind k = d.rule == Rule::PiForm ? TermKind::Pi : TermKind::Sigma;
        need(d, c.subject.kind() == k, "subject constructor mismatch");
        Term expect = d.rule == Rule::PiForm
                          ? Term::pi(x, pa.subject, pb.subject)
                          : Term::sigma(x, pa.subject, pb.subject);
        need(d, alpha_eq(c.subject, expect), "subject parts mismatch");
        Term ty = stratified(d) ? Term::star_n(std::max(n, m)) : Term::star();
        need(d, alpha_eq(c.type, ty), "formation type mismatch");
        return;
      }
      case Rule::EqForm: {
        need(d, d.premises.size() == 2, "EqForm has two premises");
        const Judgment& pa = premise(d, 0);
        const Judgment& pb = premise(d, 1);
        need(d, ctx_eq(pa.ctx, c.ctx) && ctx_eq(pb.ctx, c.ctx),
             "premise context mismatch");
        int n = universe_level(d, pa.type);
        int m = universe_level(d, pb.type);
        need(d, alpha_eq(c.subject, Term::type_eq(pa.subject, pb.subject)),
             "subject parts mismatch");
        Term ty = stratified(d) ? Term::star_n(std::max(n, m)) : Term::star();
        need(d, alpha_eq(c.type, ty), "formation type mismatch");
        return;
      }
      case Rule::RelElim: {
        need(d, d.premises.size() == 3, "RelElim has three premises");
        const Judgment& pa = premise(d, 0);
        const Judgment& pb = premise(d, 1);
        const Judgment& pe = premise(d, 2);
        need(d,
             ctx_eq(pa.ctx, c.ctx) && ctx_eq(pb.ctx, c.ctx) &&
                 ctx_eq(pe.ctx, c.ctx),
             "premise context mismatch");
        int n = universe_level(d, pa.type);
        int m = universe_level(d, pb.type);
        need(d,
             alpha_eq(pe.type, Term::type_eq(pa.subject, pb.subject)),
             "eliminated proof must prove A == B");
        need(d, c.subject.kind() == TermKind::RelOp, "subject must be ~[e]");
        need(d, alpha_eq(c.subject.rel_e(), pe.subject), "eliminated proof mismatch");
        Term cod;
        if (!stratified(d)) {
          cod = Term::star();
        } else {
          int top = std::max(n, m);
          cod = top == 0 ? Term::unit() : Term::star_n(top - 1);
        }
        Term ty = Term::arrow(pa.subject, Term::arrow(pb.subject, cod));
        need(d, alpha_eq(c.type, ty), "eliminator type shape mismatch");
        return;
      }
      case Rule::Lam: {
        need(d, d.premises.size() == 2, "Lam has two premises");
        const Judgment& pa = premise(d, 0);
        const Judgment& pb = premise(d, 1);
        need(d, ctx_eq(pa.ctx, c.ctx), "domain premise context mismatch");
        universe_level(d, pa.type);
        need(d, ctx_extends(c.ctx, pb.ctx, 1), "body premise context");
        const auto& [x, xty] = pb.ctx[pb.ctx.size() - 1];
        need(d, alpha_eq(xty, pa.subject), "binder entry type mismatch");
        need(d, alpha_eq(c.subject, Term::lam(x, pa.subject, pb.subject)),
             "subject parts mismatch");
        need(d, alpha_eq(c.type, Term::pi(x, pa.subject, pb.type)),
             "lambda type mismatch");
        return;
      }
      case Rule::App: {
        need(d, d.premises.size() == 2, "App has two premises");
        const Judgment& pf = premise(d, 0);
        const Judgment& pa = premise(d, 1);
        need(d, ctx_eq(pf.ctx, c.ctx) && ctx_eq(pa.ctx, c.ctx),
             "premise context mismatch");
        need(d, pf.type.kind() == TermKind::Pi,
             "function premise must have a Pi type");
        need(d, alpha_eq(pa.type, pf.type.domain()),
             "argument type differs from the domain");
        need(d, alpha_eq(c.subject, Term::app(pf.subject, pa.subject)),
             "subject is not the application of the premises");
        Term ty = subst(pf.type.body(), pa.subject, pf.type.binder());
        need(d, alpha_eq(c.type, ty), "result type is not B[a/x]");
        return;
      }
      case Rule::Pair: {
        need(d, d.premises.size() == 3, "Pair has three premises");
        const Judgment& pa = premise(d, 0);
        const Judgment& pb = premise(d, 1);
        const Judgment& ps = premise(d, 2);
        need(d,
             ctx_eq(pa.ctx, c.ctx) && ctx_eq(pb.ctx, c.ctx) &&
                 ctx_eq(ps.ctx, c.ctx),
             "premise context mismatch");
        universe_level(d, ps.type);
        need(d, ps.subject.kind() == TermKind::Sigma,
             "third premise must form a Sigma type");
        need(d, alpha_eq(pa.type, ps.subject.domain()),
             "first component type mismatch");
        Term want_b =
            subst(ps.subject.body(), pa.subject, ps.subject.binder());
        need(d, alpha_eq(pb.type, want_b),
             "second component type is not B[a/x]");
        need(d, alpha_eq(c.subject, Term::pair(pa.subject, pb.subject)),
             "subject parts mismatch");
        need(d, alpha_eq(c.type, ps.subject), "pair type mismatch");
        return;
      }
      case Rule::Proj1:
      case Rule::Proj2: {
        need(d, d.premises.size() == 1, "projection has one premise");
        const Judgment& p = premise(d, 0);
        need(d, ctx_eq(p.ctx, c.ctx), "premise context mismatch");
        need(d, p.type.kind() == TermKind::Sigma,
             "projected premise must have a Sigma type");
        if (d.rule == Rule::Proj1) {
          need(d, alpha_eq(c.subject, Term::proj1(p.subject)),
               "subject mismatch");
          need(d, alpha_eq(c.type, p.type.domain()), "type is not A");
        } else {
          need(d, alpha_eq(c.subject, Term::proj2(p.subject)),
               "subject mismatch");
          Term ty = subst(p.type.body(), Term::proj1(p.subject),
                          p.type.binder());
          need(d, alpha_eq(c.type, ty), "type is not B[fst p/x]");
        }
        return;
      }
      case Rule::Conv: {
        need(d, d.premises.size() == 2, "Conv has two premises");
        const Judgment& pm = premise(d, 0);
        const Judgment& pb = premise(d, 1);
        need(d, ctx_eq(pm.ctx, c.ctx) && ctx_eq(pb.ctx, c.ctx),
             "premise context mismatch");
        universe_level(d, pb.type);
        need(d, alpha_eq(c.subject, pm.subject), "subject changed");
        need(d, alpha_eq(c.type, pb.subject),
             "type is not the converted-to type");
        need(d, convertible(pm.type, pb.subject, fuel),
             "types are not convertible");
        return;
      }
      case Rule::Cumul: {
        need(d, stratified(d), "Cumul only exists in the stratified system");
        need(d, d.premises.size() == 1, "Cumul has one premise");
        const Judgment& p = premise(d, 0);
        need(d, ctx_eq(p.ctx, c.ctx), "premise context mismatch");
        need(d, alpha_eq(c.subject, p.subject), "subject changed");
        need(d,
             p.type.kind() == TermKind::StarN &&
                 c.type.kind() == TermKind::StarN &&
                 p.type.level() <= c.type.level(),
             "cumulativity must not lower the level");
        return;
      }
      case Rule::StarStarIntro: {
        need(d, d.premises.empty(), "StarStarIntro has no premises");
        need(d, c.subject.kind() == TermKind::StarStar, "subject must be *^*");
        if (stratified(d)) {
          need(d,
               c.type.kind() == TermKind::TypeEq &&
                   c.type.eq_lhs().kind() == TermKind::StarN &&
                   c.type.eq_rhs().kind() == TermKind::StarN &&
                   c.type.eq_lhs().level() == c.type.eq_rhs().level(),
               "type must be *n == *n");
        } else {
          need(d, alpha_eq(c.type, Term::type_eq(Term::star(), Term::star())),
               "type must be * == *");
        }
        return;
      }
      case Rule::PiStarIntro:
      case Rule::SigmaStarIntro: {
        need(d, d.premises.size() == 6, "congruence intro has six premises");
        const Judgment& pas = premise(d, 0);
        const Judgment& pbs = premise(d, 1);
        const Judgment& pa = premise(d, 2);
        const Judgment& pa2 = premise(d, 3);
        const Judgment& pb = premise(d, 4);
        const Judgment& pb2 = premise(d, 5);
        need(d,
             ctx_eq(pas.ctx, c.ctx) && ctx_eq(pa.ctx, c.ctx) &&
                 ctx_eq(pa2.ctx, c.ctx),
             "premise context mismatch");
        universe_level(d, pa.type);
        universe_level(d, pa2.type);
        need(d,
             alpha_eq(pas.type, Term::type_eq(pa.subject, pa2.subject)),
             "domain proof must prove A == A'");
        // Body proof: ctx, x:A, x':A', x* : x ~[As] x'.
        need(d, ctx_extends(c.ctx, pbs.ctx, 3), "body premise context");
        const auto& [x, xty] = pbs.ctx[pbs.ctx.size() - 3];
        const auto& [x2, x2ty] = pbs.ctx[pbs.ctx.size() - 2];
        const auto& [x3, x3ty] = pbs.ctx[pbs.ctx.size() - 1];
        need(d, alpha_eq(xty, pa.subject), "first binder type mismatch");
        need(d, alpha_eq(x2ty, pa2.subject), "second binder type mismatch");
        need(d,
             alpha_eq(x3ty, Term::rel(pas.subject, Term::var(x), Term::var(x2))),
             "third binder must witness x ~[As] x'");
        need(d, pbs.type.kind() == TermKind::TypeEq,
             "body proof must prove a type equality");
        Term b = pbs.type.eq_lhs(), b2 = pbs.type.eq_rhs();
        need(d, ctx_extends(c.ctx, pb.ctx, 1), "left endpoint context");
        need(d,
             pb.ctx[pb.ctx.size() - 1].first == x &&
                 alpha_eq(pb.ctx[pb.ctx.size() - 1].second, pa.subject),
             "left endpoint binder mismatch");
        universe_level(d, pb.type);
        need(d, alpha_eq(pb.subject, b), "left endpoint mismatch");
        need(d, ctx_extends(c.ctx, pb2.ctx, 1), "right endpoint context");
        need(d,
             pb2.ctx[pb2.ctx.size() - 1].first == x2 &&
                 alpha_eq(pb2.ctx[pb2.ctx.size() - 1].second, pa2.subject),
             "right endpoint binder mismatch");
        universe_level(d, pb2.type);
        need(d, alpha_eq(pb2.subject, b2), "right endpoint mismatch");
        bool is_pi = d.rule == Rule::PiStarIntro;
        TermKind want = is_pi ? TermKind::PiStar : TermKind::SigmaStar;
        need(d, c.subject.kind() == want, "subject constructor mismatch");
        Term expect_subject =
            is_pi ? Term::pi_star(x, x2, x3, pas.subject, pbs.subject)
                  : Term::sigma_star(x, x2, x3, pas.subject, pbs.subject);
        need(d, alpha_eq(c.subject, expect_subject), "subject parts mismatch");
        if (c.subject.annots()) {
          const StarAnnots& ann = *c.subject.annots();
          // The stored endpoints are metadata; make them match the premises
          // so the reduction rules can rely on them.
          bool ok = alpha_eq(ann.a, pa.subject) &&
                    alpha_eq(ann.a2, pa2.subject);
          ok = ok &&
               alpha_eq(Term::pi(c.subject.binder(), ann.a, ann.b),
                        Term::pi(x, pa.subject, b)) &&
               alpha_eq(Term::pi(c.subject.binder2(), ann.a2, ann.b2),
                        Term::pi(x2, pa2.subject, b2));
          need(d, ok, "stored endpoint annotations disagree with premises");
        }
        Term lhs = is_pi ? Term::pi(x, pa.subject, b)
                         : Term::sigma(x, pa.subject, b);
        Term rhs = is_pi ? Term::pi(x2, pa2.subject, b2)
                         : Term::sigma(x2, pa2.subject, b2);
        need(d, alpha_eq(c.type, Term::type_eq(lhs, rhs)),
             "congruence type mismatch");
        return;
      }
      case Rule::EqStarIntro: {
        need(d, d.premises.size() == 6, "eq* intro has six premises");
        const Judgment& pas = premise(d, 0);
        const Judgment& pbs = premise(d, 1);
        const Judgment& pa = premise(d, 2);
        const Judgment& pa2 = premise(d, 3);
        const Judgment& pb = premise(d, 4);
        const Judgment& pb2 = premise(d, 5);
        for (const Judgment* p : {&pas, &pbs, &pa, &pa2, &pb, &pb2})
          need(d, ctx_eq(p->ctx, c.ctx), "premise context mismatch");
        universe_level(d, pa.type);
        universe_level(d, pa2.type);
        universe_level(d, pb.type);
        universe_level(d, pb2.type);
        need(d, alpha_eq(pas.type, Term::type_eq(pa.subject, pa2.subject)),
             "first proof must prove A == A'");
        need(d, alpha_eq(pbs.type, Term::type_eq(pb.subject, pb2.subject)),
             "second proof must prove B == B'");
        need(d, c.subject.kind() == TermKind::EqStar, "subject must be eq*");
        need(d,
             alpha_eq(c.subject,
                      Term::eq_star(pas.subject, pbs.subject)),
             "subject parts mismatch");
        if (c.subject.annots()) {
          const StarAnnots& ann = *c.subject.annots();
          need(d,
               alpha_eq(ann.a, pa.subject) && alpha_eq(ann.a2, pa2.subject) &&
                   alpha_eq(ann.b, pb.subject) &&
                   alpha_eq(ann.b2, pb2.subject),
               "stored endpoint annotations disagree with premises");
        }
        Term ty = Term::type_eq(Term::type_eq(pa.subject, pb.subject),
                                Term::type_eq(pa2.subject, pb2.subject));
        need(d, alpha_eq(c.type, ty), "eq* type mismatch");
        return;
      }
      case Rule::UnitForm: {
        need(d, stratified(d) && d.premises.empty(), "UnitForm schema");
        need(d, c.subject.kind() == TermKind::Unit, "subject must be Unit");
        need(d, alpha_eq(c.type, Term::star_n(0)), "Unit lives in *0");
        return;
      }
      case Rule::TTIntro: {
        need(d, stratified(d) && d.premises.empty(), "TTIntro schema");
        need(d, c.subject.kind() == TermKind::TT, "subject must be tt");
        need(d, alpha_eq(c.type, Term::unit()), "tt lives in Unit");
        return;
      }
      case Rule::UnitStarIntro: {
        need(d, stratified(d) && d.premises.empty(), "UnitStarIntro schema");
        need(d, c.subject.kind() == TermKind::UnitStar,
             "subject must be Unit^*");
        need(d, alpha_eq(c.type, Term::type_eq(Term::unit(), Term::unit())),
             "Unit^* proves Unit == Unit");
        return;
      }
      case Rule::ConstIntro: {
        need(d, stratified(d), "ConstIntro only exists when stratified");
        need(d, d.premises.size() == 2, "ConstIntro has two premises");
        const Judgment& pf = premise(d, 0);
        const Judgment& pb = premise(d, 1);
        need(d, ctx_extends(c.ctx, pf.ctx, 1), "family premise context");
        const auto& [x, xty] = pf.ctx[pf.ctx.size() - 1];
        need(d, alpha_eq(xty, Term::unit()), "family binder must have Unit");
        universe_level(d, pf.type);
        need(d, ctx_eq(pb.ctx, c.ctx), "body premise context mismatch");
        need(d, alpha_eq(pb.type, subst(pf.subject, Term::tt(), x)),
             "body must live in B[tt/x]");
        need(d,
             alpha_eq(c.subject, Term::const_fn(x, pf.subject, pb.subject)),
             "subject parts mismatch");
        need(d, alpha_eq(c.type, Term::pi(x, Term::unit(), pf.subject)),
             "Const type mismatch");
        return;
      }
    }
    bad(d, "unknown rule");
  }

  void run(const DerivPtr& d) {
    for (const auto& p : d->premises) run(p);
    check_node(*d);
  }
};

}  // namespace

void validate_derivation(const DerivPtr& d, std::uint64_t fuel) {
  Validator v{fuel};
  v.run(d);
}

}  // namespace leq
