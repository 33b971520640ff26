#include "leq/ops.hpp"

#include <algorithm>

namespace leq {

// --- free variables ------------------------------------------------------

static void collect_free(const Term& t, std::vector<VarName>& bound,
                         VarSet& out) {
  switch (t.kind()) {
    case TermKind::Star:
    case TermKind::StarN:
    case TermKind::StarStar:
    case TermKind::Unit:
    case TermKind::TT:
    case TermKind::UnitStar:
      return;
    case TermKind::Var: {
      const VarName& v = t.var_name();
      if (std::find(bound.rbegin(), bound.rend(), v) == bound.rend())
        out.insert(v);
      return;
    }
    case TermKind::Pi:
    case TermKind::Sigma:
    case TermKind::Lam:
      collect_free(t.domain(), bound, out);
      bound.push_back(t.binder());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    case TermKind::TypeEq:
      collect_free(t.eq_lhs(), bound, out);
      collect_free(t.eq_rhs(), bound, out);
      return;
    case TermKind::RelOp:
      collect_free(t.rel_e(), bound, out);
      return;
    case TermKind::Rel:
      collect_free(t.rel_e(), bound, out);
      collect_free(t.rel_lhs(), bound, out);
      collect_free(t.rel_rhs(), bound, out);
      return;
    case TermKind::App:
      collect_free(t.fn(), bound, out);
      collect_free(t.arg(), bound, out);
      return;
    case TermKind::Pair:
      collect_free(t.first(), bound, out);
      collect_free(t.second(), bound, out);
      return;
    case TermKind::Proj1:
    case TermKind::Proj2:
      collect_free(t.pair_arg(), bound, out);
      return;
    case TermKind::PiStar:
    case TermKind::SigmaStar: {
      collect_free(t.dom_eq(), bound, out);
      if (t.annots()) {
        collect_free(t.annots()->a, bound, out);
        collect_free(t.annots()->a2, bound, out);
        bound.push_back(t.binder());
        collect_free(t.annots()->b, bound, out);
        bound.pop_back();
        bound.push_back(t.binder2());
        collect_free(t.annots()->b2, bound, out);
        bound.pop_back();
      }
      bound.push_back(t.binder());
      bound.push_back(t.binder2());
      bound.push_back(t.binder3());
      collect_free(t.body_eq(), bound, out);
      bound.pop_back();
      bound.pop_back();
      bound.pop_back();
      return;
    }
    case TermKind::EqStar:
      collect_free(t.dom_eq(), bound, out);
      collect_free(t.body_eq(), bound, out);
      if (t.annots()) {
        collect_free(t.annots()->a, bound, out);
        collect_free(t.annots()->a2, bound, out);
        collect_free(t.annots()->b, bound, out);
        collect_free(t.annots()->b2, bound, out);
      }
      return;
    case TermKind::Const:
      bound.push_back(t.binder());
      collect_free(t.const_family(), bound, out);
      bound.pop_back();
      collect_free(t.const_body(), bound, out);
      return;
  }
  throw std::logic_error("collect_free: unhandled kind");
}

VarSet free_vars(const Term& t) {
  VarSet out;
  std::vector<VarName> bound;
  collect_free(t, bound, out);
  return out;
}

bool free_in(const VarName& v, const Term& t) {
  return free_vars(t).count(v) != 0;
}

// --- substitution --------------------------------------------------------

namespace {

struct SubstEntry {
  VarName from;
  Term to;
  VarSet to_frees;  // computed once per multi_subst call
};

using SubstMap = std::vector<SubstEntry>;

SubstMap without(const SubstMap& m, const VarName& v) {
  SubstMap out;
  for (const auto& e : m)
    if (!(e.from == v)) out.push_back(e);
  return out;
}

bool captures(const SubstMap& m, const VarName& binder) {
  for (const auto& e : m)
    if (e.to_frees.count(binder)) return true;
  return false;
}

Term apply_subst(const Term& t, const SubstMap& m);

// Substitute under one binder scoping over `parts` (each may be null).
// Returns the possibly freshened binder; rewrites each part in place.
VarName under_binder(const VarName& binder, std::vector<Term*> parts,
                     const SubstMap& m) {
  SubstMap inner = without(m, binder);
  VarName b = binder;
  if (!inner.empty() && captures(inner, b)) {
    b = binder.freshened();
    SubstMap ren;
    ren.push_back({binder, Term::var(b), {b}});
    for (Term* p : parts)
      if (p->valid()) *p = apply_subst(*p, ren);
  }
  if (!inner.empty()) {
    for (Term* p : parts)
      if (p->valid()) *p = apply_subst(*p, inner);
  }
  return b;
}

Term apply_subst(const Term& t, const SubstMap& m) {
  if (m.empty()) return t;
  switch (t.kind()) {
    case TermKind::Star:
    case TermKind::StarN:
    case TermKind::StarStar:
    case TermKind::Unit:
    case TermKind::TT:
    case TermKind::UnitStar:
      return t;
    case TermKind::Var: {
      for (const auto& e : m)
        if (e.from == t.var_name()) return e.to;
      return t;
    }
    case TermKind::Pi:
    case TermKind::Sigma:
    case TermKind::Lam: {
      Term dom = apply_subst(t.domain(), m);
      Term body = t.body();
      VarName b = under_binder(t.binder(), {&body}, m);
      switch (t.kind()) {
        case TermKind::Pi: return Term::pi(b, dom, body);
        case TermKind::Sigma: return Term::sigma(b, dom, body);
        default: return Term::lam(b, dom, body);
      }
    }
    case TermKind::TypeEq:
      return Term::type_eq(apply_subst(t.eq_lhs(), m), apply_subst(t.eq_rhs(), m));
    case TermKind::RelOp:
      return Term::rel_op(apply_subst(t.rel_e(), m));
    case TermKind::Rel:
      return Term::rel(apply_subst(t.rel_e(), m), apply_subst(t.rel_lhs(), m),
                       apply_subst(t.rel_rhs(), m));
    case TermKind::App:
      return Term::app(apply_subst(t.fn(), m), apply_subst(t.arg(), m));
    case TermKind::Pair:
      return Term::pair(apply_subst(t.first(), m), apply_subst(t.second(), m));
    case TermKind::Proj1:
      return Term::proj1(apply_subst(t.pair_arg(), m));
    case TermKind::Proj2:
      return Term::proj2(apply_subst(t.pair_arg(), m));
    case TermKind::PiStar:
    case TermKind::SigmaStar: {
      // v1 scopes over the body equality and the annotation's left endpoint;
      // v2 over the body equality and the right endpoint; v3 only the body.
      // Shadowed entries are dropped by the binder's *original* name;
      // freshening only protects other entries' replacements from capture.
      Term dom = apply_subst(t.dom_eq(), m);
      std::optional<StarAnnots> ann = t.annots();
      Term body = t.body_eq();
      if (ann) {
        ann->a = apply_subst(ann->a, m);
        ann->a2 = apply_subst(ann->a2, m);
      }
      VarName v1 = t.binder(), v2 = t.binder2(), v3 = t.binder3();
      SubstMap m1 = without(m, t.binder());
      SubstMap m2 = without(m, t.binder2());
      SubstMap m123 = without(without(m1, t.binder2()), t.binder3());
      auto rename_in = [](const VarName& from, const VarName& to,
                          std::initializer_list<Term*> parts) {
        SubstMap ren;
        ren.push_back({from, Term::var(to), {to}});
        for (Term* p : parts) *p = apply_subst(*p, ren);
      };
      if (!m1.empty() && captures(m1, v1)) {
        VarName f = v1.freshened();
        rename_in(v1, f, ann ? std::initializer_list<Term*>{&body, &ann->b}
                             : std::initializer_list<Term*>{&body});
        v1 = f;
      }
      if (!m2.empty() && captures(m2, v2)) {
        VarName f = v2.freshened();
        rename_in(v2, f, ann ? std::initializer_list<Term*>{&body, &ann->b2}
                             : std::initializer_list<Term*>{&body});
        v2 = f;
      }
      if (!m123.empty() && captures(m123, v3)) {
        VarName f = v3.freshened();
        rename_in(v3, f, {&body});
        v3 = f;
      }
      if (ann) {
        ann->b = apply_subst(ann->b, m1);
        ann->b2 = apply_subst(ann->b2, m2);
      }
      body = apply_subst(body, m123);
      return t.kind() == TermKind::PiStar
                 ? Term::pi_star(v1, v2, v3, dom, body, std::move(ann))
                 : Term::sigma_star(v1, v2, v3, dom, body, std::move(ann));
    }
    case TermKind::EqStar: {
      std::optional<StarAnnots> ann = t.annots();
      if (ann) {
        ann->a = apply_subst(ann->a, m);
        ann->a2 = apply_subst(ann->a2, m);
        ann->b = apply_subst(ann->b, m);
        ann->b2 = apply_subst(ann->b2, m);
      }
      return Term::eq_star(apply_subst(t.dom_eq(), m), apply_subst(t.body_eq(), m),
                           std::move(ann));
    }
    case TermKind::Const: {
      Term family = t.const_family();
      VarName b = under_binder(t.binder(), {&family}, m);
      return Term::const_fn(b, family, apply_subst(t.const_body(), m));
    }
  }
  throw std::logic_error("apply: unhandled kind");
}

}  // namespace

Term multi_subst(const Term& t,
                 const std::vector<std::pair<VarName, Term>>& map) {
  SubstMap m;
  m.reserve(map.size());
  for (const auto& [v, r] : map) m.push_back({v, r, free_vars(r)});
  return apply_subst(t, m);
}

Term subst(const Term& t, const Term& replacement, const VarName& x) {
  return multi_subst(t, {{x, replacement}});
}

Term rename_var(const Term& t, const VarName& from, const VarName& to) {
  return subst(t, Term::var(to), from);
}

// --- alpha equivalence ---------------------------------------------------

Term rel_as_apps(const Term& rel) {
  return Term::app(Term::app(Term::rel_op(rel.rel_e()), rel.rel_lhs()),
                   rel.rel_rhs());
}

std::optional<RelForm> as_rel_form(const Term& t) {
  if (t.kind() == TermKind::Rel)
    return RelForm{t.rel_e(), t.rel_lhs(), t.rel_rhs()};
  if (t.kind() == TermKind::App && t.fn().kind() == TermKind::App &&
      t.fn().fn().kind() == TermKind::RelOp)
    return RelForm{t.fn().fn().rel_e(), t.fn().arg(), t.arg()};
  return std::nullopt;
}

namespace {

// Pairs of binders in scope, innermost last.
using AlphaEnv = std::vector<std::pair<VarName, VarName>>;

bool aeq(const Term& s, const Term& t, AlphaEnv& env);

bool aeq_var(const VarName& x, const VarName& y, const AlphaEnv& env) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    bool mx = it->first == x, my = it->second == y;
    if (mx || my) return mx && my;
  }
  return x == y;
}

bool aeq(const Term& s, const Term& t, AlphaEnv& env) {
  if (s.raw() == t.raw() && env.empty()) return true;
  if (s.kind() != t.kind()) {
    // Identify the sugared ternary with its application spelling.
    if (s.kind() == TermKind::Rel && t.kind() == TermKind::App)
      return aeq(rel_as_apps(s), t, env);
    if (t.kind() == TermKind::Rel && s.kind() == TermKind::App)
      return aeq(s, rel_as_apps(t), env);
    return false;
  }
  switch (s.kind()) {
    case TermKind::Star:
    case TermKind::StarStar:
    case TermKind::Unit:
    case TermKind::TT:
    case TermKind::UnitStar:
      return true;
    case TermKind::StarN:
      return s.level() == t.level();
    case TermKind::Var:
      return aeq_var(s.var_name(), t.var_name(), env);
    case TermKind::Pi:
    case TermKind::Sigma:
    case TermKind::Lam: {
      if (!aeq(s.domain(), t.domain(), env)) return false;
      env.emplace_back(s.binder(), t.binder());
      bool ok = aeq(s.body(), t.body(), env);
      env.pop_back();
      return ok;
    }
    case TermKind::TypeEq:
      return aeq(s.eq_lhs(), t.eq_lhs(), env) &&
             aeq(s.eq_rhs(), t.eq_rhs(), env);
    case TermKind::RelOp:
      return aeq(s.rel_e(), t.rel_e(), env);
    case TermKind::Rel:
      return aeq(s.rel_e(), t.rel_e(), env) &&
             aeq(s.rel_lhs(), t.rel_lhs(), env) &&
             aeq(s.rel_rhs(), t.rel_rhs(), env);
    case TermKind::App:
      return aeq(s.fn(), t.fn(), env) && aeq(s.arg(), t.arg(), env);
    case TermKind::Pair:
      return aeq(s.first(), t.first(), env) &&
             aeq(s.second(), t.second(), env);
    case TermKind::Proj1:
    case TermKind::Proj2:
      return aeq(s.pair_arg(), t.pair_arg(), env);
    case TermKind::PiStar:
    case TermKind::SigmaStar: {
      if (!aeq(s.dom_eq(), t.dom_eq(), env)) return false;
      // Annotations are reconstructible metadata, not compared.
      env.emplace_back(s.binder(), t.binder());
      env.emplace_back(s.binder2(), t.binder2());
      env.emplace_back(s.binder3(), t.binder3());
      bool ok = aeq(s.body_eq(), t.body_eq(), env);
      env.pop_back();
      env.pop_back();
      env.pop_back();
      return ok;
    }
    case TermKind::EqStar:
      return aeq(s.dom_eq(), t.dom_eq(), env) &&
             aeq(s.body_eq(), t.body_eq(), env);
    case TermKind::Const: {
      env.emplace_back(s.binder(), t.binder());
      bool ok = aeq(s.const_family(), t.const_family(), env);
      env.pop_back();
      return ok && aeq(s.const_body(), t.const_body(), env);
    }
  }
  throw std::logic_error("aeq: unhandled kind");
}

}  // namespace

bool alpha_eq(const Term& s, const Term& t) {
  AlphaEnv env;
  return aeq(s, t, env);
}

}  // namespace leq
