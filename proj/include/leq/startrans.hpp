#pragma once

#include "leq/checker.hpp"
#include "leq/term.hpp"

namespace leq {

// The "second copy" of a term: every variable occurrence, binder and
// annotation endpoint gains a trailing prime.  prime(t) is alpha-equal to t
// when t is closed; in general its free names are the primed copies of t's.
Term prime(const Term& t);

// Rename every binder to a globally fresh copy of itself.  Afterwards no two
// binders share a name and no binder collides with a free name, so the
// translation below can decorate binder names without capture.
Term freshen_binders(const Term& t);

// The relational interpretation.  star(t) witnesses that t is related to its
// primed copy: for a type A it proves A ~[*^*] A' (one contraction away from
// Eq A A'), and for M : A it proves M ~[star A] M'.  Congruence constructors
// inside t must carry their endpoint annotations (the checker fills them in);
// a bare one raises UnsupportedStarClause, as does Const, which has no
// translation.
Term star(const Term& t);

// Triple every entry: x : A becomes x : A, x' : A', x* : x ~[star A] x'.
// Throws IllFormedContext when the decorated names collide with each other
// or with later entries.
Context star_context(const Context& ctx);

// The pointwise relatedness predicate on a (closed) type:
// fun (a:A). fun (a':A). a ~[star A] a'.
Term ext_eq(const Term& a_type);

struct StarInstance {
  Term subject;       // elaborated input
  Term subject_type;  // its inferred type
  Term statement;     // subject ~[star(type)] prime(subject)
  Typing image;       // star(subject) : statement, in the tripled context
};

// Elaborate `m` in `ctx`, translate it, and check the translation against the
// relatedness statement in the tripled context.  Throws
// TheoremInstanceFailure when the check does not go through.
StarInstance run_star_instance(Checker& chk, const Context& ctx,
                               const Term& m);

// For closed m the statement collapses to reflexivity: m ~[star A] m up to
// alpha, since prime(m) only renames bound variables.
StarInstance refl_proof(Checker& chk, const Term& m);

}  // namespace leq
