#include "leq/term.hpp"

namespace leq {

static std::shared_ptr<const TermNode> share(TermNode n) {
  return std::make_shared<const TermNode>(std::move(n));
}

Term Term::star() { return Term(share(TermNode(TermKind::Star))); }

Term Term::star_n(int level) {
  if (level < 0) throw std::logic_error("negative universe level");
  TermNode n{TermKind::StarN};
  n.level = level;
  return Term(share(std::move(n)));
}

Term Term::var(VarName v) {
  TermNode n{TermKind::Var};
  n.v1 = std::move(v);
  return Term(share(std::move(n)));
}

static TermNode binder_node(TermKind k, VarName x, Term a, Term b) {
  TermNode n{k};
  n.v1 = std::move(x);
  n.sub = {std::move(a), std::move(b)};
  return n;
}

Term Term::pi(VarName x, Term dom, Term body) {
  return Term(share(binder_node(TermKind::Pi, std::move(x), std::move(dom),
                                std::move(body))));
}
Term Term::sigma(VarName x, Term dom, Term body) {
  return Term(share(binder_node(TermKind::Sigma, std::move(x), std::move(dom),
                                std::move(body))));
}
Term Term::lam(VarName x, Term dom, Term body) {
  return Term(share(binder_node(TermKind::Lam, std::move(x), std::move(dom),
                                std::move(body))));
}

Term Term::type_eq(Term lhs, Term rhs) {
  TermNode n{TermKind::TypeEq};
  n.sub = {std::move(lhs), std::move(rhs)};
  return Term(share(std::move(n)));
}

Term Term::rel_op(Term e) {
  TermNode n{TermKind::RelOp};
  n.sub = {std::move(e)};
  return Term(share(std::move(n)));
}

Term Term::rel(Term e, Term a, Term b) {
  TermNode n{TermKind::Rel};
  n.sub = {std::move(e), std::move(a), std::move(b)};
  return Term(share(std::move(n)));
}

Term Term::app(Term fn, Term arg) {
  TermNode n{TermKind::App};
  n.sub = {std::move(fn), std::move(arg)};
  return Term(share(std::move(n)));
}

Term Term::pair(Term first, Term second) {
  TermNode n{TermKind::Pair};
  n.sub = {std::move(first), std::move(second)};
  return Term(share(std::move(n)));
}

Term Term::proj1(Term p) {
  TermNode n{TermKind::Proj1};
  n.sub = {std::move(p)};
  return Term(share(std::move(n)));
}
Term Term::proj2(Term p) {
  TermNode n{TermKind::Proj2};
  n.sub = {std::move(p)};
  return Term(share(std::move(n)));
}

Term Term::star_star() { return Term(share(TermNode(TermKind::StarStar))); }

static TermNode star_binder_node(TermKind k, VarName x, VarName x2, VarName x3,
                                 Term a, Term b, std::optional<StarAnnots> ann) {
  TermNode n{k};
  n.v1 = std::move(x);
  n.v2 = std::move(x2);
  n.v3 = std::move(x3);
  n.sub = {std::move(a), std::move(b)};
  n.ann = std::move(ann);
  return n;
}

Term Term::pi_star(VarName x, VarName x2, VarName x3, Term dom_eq,
                   Term body_eq) {
  return pi_star(std::move(x), std::move(x2), std::move(x3), std::move(dom_eq),
                 std::move(body_eq), std::nullopt);
}
Term Term::sigma_star(VarName x, VarName x2, VarName x3, Term dom_eq,
                      Term body_eq) {
  return sigma_star(std::move(x), std::move(x2), std::move(x3),
                    std::move(dom_eq), std::move(body_eq), std::nullopt);
}
Term Term::eq_star(Term dom_eq, Term body_eq) {
  return eq_star(std::move(dom_eq), std::move(body_eq), std::nullopt);
}

Term Term::pi_star(VarName x, VarName x2, VarName x3, Term dom_eq, Term body_eq,
                   std::optional<StarAnnots> ann) {
  return Term(share(star_binder_node(TermKind::PiStar, std::move(x),
                                     std::move(x2), std::move(x3),
                                     std::move(dom_eq), std::move(body_eq),
                                     std::move(ann))));
}
Term Term::sigma_star(VarName x, VarName x2, VarName x3, Term dom_eq,
                      Term body_eq, std::optional<StarAnnots> ann) {
  return Term(share(star_binder_node(TermKind::SigmaStar, std::move(x),
                                     std::move(x2), std::move(x3),
                                     std::move(dom_eq), std::move(body_eq),
                                     std::move(ann))));
}

Term Term::eq_star(Term dom_eq, Term body_eq, std::optional<StarAnnots> ann) {
  TermNode n{TermKind::EqStar};
  n.sub = {std::move(dom_eq), std::move(body_eq)};
  n.ann = std::move(ann);
  return Term(share(std::move(n)));
}

Term Term::unit() { return Term(share(TermNode(TermKind::Unit))); }
Term Term::tt() { return Term(share(TermNode(TermKind::TT))); }
Term Term::unit_star() { return Term(share(TermNode(TermKind::UnitStar))); }

Term Term::const_fn(VarName x, Term family, Term body) {
  TermNode n{TermKind::Const};
  n.v1 = std::move(x);
  n.sub = {std::move(family), std::move(body)};
  return Term(share(std::move(n)));
}

Term Term::arrow(Term dom, Term cod) {
  // The binder is never free in the body, so any name that cannot collide
  // with a user identifier works; freshening keeps nesting unambiguous.
  return pi(VarName("_", {}, next_fresh_id()), std::move(dom), std::move(cod));
}

// --- accessors -----------------------------------------------------------

static void need(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("term accessor misuse: ") + what);
}

int Term::level() const {
  need(kind() == TermKind::StarN, "level");
  return raw()->level;
}

const VarName& Term::var_name() const {
  need(kind() == TermKind::Var, "var_name");
  return raw()->v1;
}

const VarName& Term::binder() const {
  switch (kind()) {
    case TermKind::Pi:
    case TermKind::Sigma:
    case TermKind::Lam:
    case TermKind::PiStar:
    case TermKind::SigmaStar:
    case TermKind::Const:
      return raw()->v1;
    default:
      throw std::logic_error("term accessor misuse: binder");
  }
}

const VarName& Term::binder2() const {
  need(kind() == TermKind::PiStar || kind() == TermKind::SigmaStar, "binder2");
  return raw()->v2;
}
const VarName& Term::binder3() const {
  need(kind() == TermKind::PiStar || kind() == TermKind::SigmaStar, "binder3");
  return raw()->v3;
}

Term Term::domain() const {
  switch (kind()) {
    case TermKind::Pi:
    case TermKind::Sigma:
    case TermKind::Lam:
      return raw()->sub[0];
    default:
      throw std::logic_error("term accessor misuse: domain");
  }
}
Term Term::body() const {
  switch (kind()) {
    case TermKind::Pi:
    case TermKind::Sigma:
    case TermKind::Lam:
      return raw()->sub[1];
    default:
      throw std::logic_error("term accessor misuse: body");
  }
}

Term Term::eq_lhs() const {
  need(kind() == TermKind::TypeEq, "eq_lhs");
  return raw()->sub[0];
}
Term Term::eq_rhs() const {
  need(kind() == TermKind::TypeEq, "eq_rhs");
  return raw()->sub[1];
}

Term Term::rel_e() const {
  if (kind() == TermKind::RelOp || kind() == TermKind::Rel) return raw()->sub[0];
  throw std::logic_error("term accessor misuse: rel_e");
}
Term Term::rel_lhs() const {
  need(kind() == TermKind::Rel, "rel_lhs");
  return raw()->sub[1];
}
Term Term::rel_rhs() const {
  need(kind() == TermKind::Rel, "rel_rhs");
  return raw()->sub[2];
}

Term Term::fn() const {
  need(kind() == TermKind::App, "fn");
  return raw()->sub[0];
}
Term Term::arg() const {
  need(kind() == TermKind::App, "arg");
  return raw()->sub[1];
}

Term Term::first() const {
  need(kind() == TermKind::Pair, "first");
  return raw()->sub[0];
}
Term Term::second() const {
  need(kind() == TermKind::Pair, "second");
  return raw()->sub[1];
}

Term Term::pair_arg() const {
  if (kind() == TermKind::Proj1 || kind() == TermKind::Proj2) return raw()->sub[0];
  throw std::logic_error("term accessor misuse: pair_arg");
}

Term Term::dom_eq() const {
  switch (kind()) {
    case TermKind::PiStar:
    case TermKind::SigmaStar:
    case TermKind::EqStar:
      return raw()->sub[0];
    default:
      throw std::logic_error("term accessor misuse: dom_eq");
  }
}
Term Term::body_eq() const {
  switch (kind()) {
    case TermKind::PiStar:
    case TermKind::SigmaStar:
    case TermKind::EqStar:
      return raw()->sub[1];
    default:
      throw std::logic_error("term accessor misuse: body_eq");
  }
}

const std::optional<StarAnnots>& Term::annots() const {
  switch (kind()) {
    case TermKind::PiStar:
    case TermKind::SigmaStar:
    case TermKind::EqStar:
      return raw()->ann;
    default:
      throw std::logic_error("term accessor misuse: annots");
  }
}

Term Term::const_family() const {
  need(kind() == TermKind::Const, "const_family");
  return raw()->sub[0];
}
Term Term::const_body() const {
  need(kind() == TermKind::Const, "const_body");
  return raw()->sub[1];
}

std::size_t node_count(const Term& t) {
  std::size_t n = 1;
  for (const Term& s : t.raw()->sub) n += node_count(s);
  return n;
}

std::optional<Term> Context::lookup(const VarName& v) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->first == v) return it->second;
  }
  return std::nullopt;
}

Context Context::extended(VarName v, Term type) const {
  Context c = *this;
  c.push(std::move(v), std::move(type));
  return c;
}

}  // namespace leq
