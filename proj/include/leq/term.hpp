#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "leq/varname.hpp"

namespace leq {

enum class TermKind : std::uint8_t {
  Star,       // * (the unstratified universe)
  StarN,      // *n (stratified universes, n >= 0)
  Var,        // x
  Pi,         // Pi (x:A). B
  Sigma,      // Sig (x:A). B
  TypeEq,     // Eq A B
  RelOp,      // ~[e]          (the eliminator, unapplied)
  Rel,        // a ~[e] b      (eliminator applied to both sides)
  Lam,        // fun (x:A). b
  App,        // f a
  Pair,       // (a , b)
  Proj1,      // fst p
  Proj2,      // snd p
  StarStar,   // *^*           (reflexivity of * / *n)
  PiStar,     // Pi* [x,x',x*] : A* . B*
  SigmaStar,  // Sig* [x,x',x*] : A* . B*
  EqStar,     // eq* A* B*
  Unit,       // Unit          (stratified only)
  TT,         // tt
  UnitStar,   // Unit^*
  Const,      // Const [x. B] b
};

class Term;

// Elided endpoint types of a congruence constructor.  A PiStar/SigmaStar node
// abbreviates a proof that Pi (x:a). b == Pi (x':a2). b2 (likewise Sigma); an
// EqStar node abbreviates a proof that Eq a b == Eq a2 b2.  The checker
// recomputes these from the constructor's visible arguments and stores them
// here so the ~-reduction rules can build their telescopes.  In a PiStar or
// SigmaStar node, `b` may mention the node's first binder and `b2` its second;
// for EqStar all four are scoped outside the node.
struct StarAnnots;

struct TermNode;

// Immutable, structurally shared term.  Copying a Term copies a pointer.
class Term {
public:
  Term() = default;  // null; only for container plumbing, never a valid term

  bool valid() const { return node_ != nullptr; }
  TermKind kind() const;  // defined after TermNode below

  // --- constructors ------------------------------------------------------
  static Term star();
  static Term star_n(int level);
  static Term var(VarName v);
  static Term pi(VarName x, Term dom, Term body);
  static Term sigma(VarName x, Term dom, Term body);
  static Term type_eq(Term lhs, Term rhs);
  static Term rel_op(Term e);
  static Term rel(Term e, Term a, Term b);
  static Term lam(VarName x, Term dom, Term body);
  static Term app(Term fn, Term arg);
  static Term pair(Term first, Term second);
  static Term proj1(Term p);
  static Term proj2(Term p);
  static Term star_star();
  // Overloads rather than default arguments: the annotation struct is only
  // complete after this class (it holds Terms by value).
  static Term pi_star(VarName x, VarName x2, VarName x3, Term dom_eq,
                      Term body_eq);
  static Term pi_star(VarName x, VarName x2, VarName x3, Term dom_eq,
                      Term body_eq, std::optional<StarAnnots> ann);
  static Term sigma_star(VarName x, VarName x2, VarName x3, Term dom_eq,
                         Term body_eq);
  static Term sigma_star(VarName x, VarName x2, VarName x3, Term dom_eq,
                         Term body_eq, std::optional<StarAnnots> ann);
  static Term eq_star(Term dom_eq, Term body_eq);
  static Term eq_star(Term dom_eq, Term body_eq,
                      std::optional<StarAnnots> ann);
  static Term unit();
  static Term tt();
  static Term unit_star();
  static Term const_fn(VarName x, Term family, Term body);

  // Non-dependent Pi with an invisibly named binder.
  static Term arrow(Term dom, Term cod);

  // --- accessors (each checked against the node kind) --------------------
  int level() const;                       // StarN
  const VarName& var_name() const;         // Var
  const VarName& binder() const;           // Pi/Sigma/Lam/PiStar/SigmaStar/Const
  const VarName& binder2() const;          // PiStar/SigmaStar
  const VarName& binder3() const;          // PiStar/SigmaStar
  Term domain() const;                     // Pi/Sigma/Lam
  Term body() const;                       // Pi/Sigma/Lam
  Term eq_lhs() const;                     // TypeEq
  Term eq_rhs() const;                     // TypeEq
  Term rel_e() const;                      // RelOp/Rel
  Term rel_lhs() const;                    // Rel
  Term rel_rhs() const;                    // Rel
  Term fn() const;                         // App
  Term arg() const;                        // App
  Term first() const;                      // Pair
  Term second() const;                     // Pair
  Term pair_arg() const;                   // Proj1/Proj2
  Term dom_eq() const;                     // PiStar/SigmaStar/EqStar
  Term body_eq() const;                    // PiStar/SigmaStar/EqStar
  const std::optional<StarAnnots>& annots() const;  // PiStar/SigmaStar/EqStar
  Term const_family() const;               // Const
  Term const_body() const;                 // Const

  // Same node object (not alpha-equality).
  bool same_node(const Term& o) const { return node_ == o.node_; }
  const TermNode* raw() const { return node_.get(); }

private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  const TermNode* node() const {
    if (!node_) throw std::logic_error("use of null Term");
    return node_.get();
  }
  std::shared_ptr<const TermNode> node_;
};

struct StarAnnots {
  Term a;   // left endpoint of the domain equality
  Term a2;  // right endpoint of the domain equality
  Term b;   // left endpoint of the body equality
  Term b2;  // right endpoint of the body equality
};

struct TermNode {
  explicit TermNode(TermKind k) : kind(k) {}
  TermKind kind;
  int level = 0;                      // StarN
  VarName v1, v2, v3;                 // binders (v2/v3 only for star binders)
  std::vector<Term> sub;              // subterms, fixed arity per kind
  std::optional<StarAnnots> ann;      // PiStar/SigmaStar/EqStar
};

inline TermKind Term::kind() const { return node()->kind; }

// Number of nodes in the term tree (annotations not counted).
std::size_t node_count(const Term& t);

// A typing context: ordered (name : type) entries, later entries may depend on
// earlier ones.  Names never repeat.
class Context {
public:
  Context() = default;

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::pair<VarName, Term>& operator[](std::size_t i) const {
    return entries_[i];
  }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // Type of `v`, or nullopt when unbound.
  std::optional<Term> lookup(const VarName& v) const;
  bool binds(const VarName& v) const { return lookup(v).has_value(); }

  Context extended(VarName v, Term type) const;
  void push(VarName v, Term type) { entries_.emplace_back(std::move(v), std::move(type)); }

private:
  std::vector<std::pair<VarName, Term>> entries_;
};

}  // namespace leq
