#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "leq/term.hpp"

namespace leq {

using VarSet = std::set<VarName>;

// Free variables.  Binding structure: Pi/Sigma/Lam bind v1 in the body;
// Const binds v1 in the family; PiStar/SigmaStar bind v1,v2,v3 in the body
// equality, and of their annotations v1 binds in `b`, v2 in `b2`.
VarSet free_vars(const Term& t);
bool free_in(const VarName& v, const Term& t);

// Capture-avoiding simultaneous substitution.  Entries apply in parallel:
// multi_subst(x ~[e] y, {x->y, y->x}) swaps the endpoints.
Term multi_subst(const Term& t,
                 const std::vector<std::pair<VarName, Term>>& map);
Term subst(const Term& t, const Term& replacement, const VarName& x);
Term rename_var(const Term& t, const VarName& from, const VarName& to);

// Alpha-equivalence.  Binder names are irrelevant; annotation blocks are
// ignored; the sugared node a ~[e] b is identified with ~[e] a b, i.e. with
// App(App(RelOp(e), a), b).
bool alpha_eq(const Term& s, const Term& t);

// View of a fully applied equality eliminator, whether stored as the sugared
// ternary node or as two nested applications of ~[e].
struct RelForm {
  Term e, lhs, rhs;
};
std::optional<RelForm> as_rel_form(const Term& t);

// The application spelling of a sugared Rel node.
Term rel_as_apps(const Term& rel);

}  // namespace leq
