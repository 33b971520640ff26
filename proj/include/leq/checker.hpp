#pragma once

#include <memory>
#include <vector>

#include "leq/errors.hpp"
#include "leq/rewrite.hpp"
#include "leq/term.hpp"

namespace leq {

// Typing rules.  The first block is the unstratified system; the second is
// only emitted by the stratified checker.
enum class Rule {
  Axiom,
  Var,
  Weaken,
  PiForm,
  SigmaForm,
  EqForm,
  RelElim,
  Lam,
  App,
  Pair,
  Proj1,
  Proj2,
  Conv,
  StarStarIntro,
  PiStarIntro,
  SigmaStarIntro,
  EqStarIntro,
  // stratified-only
  Cumul,
  UnitForm,
  TTIntro,
  UnitStarIntro,
  ConstIntro,
};

const char* rule_name(Rule r);

enum class SystemTag { LambdaEq, LambdaEqN };

struct Judgment {
  Context ctx;
  Term subject;
  Term type;
  SystemTag system = SystemTag::LambdaEq;
};

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Judgment conclusion;
  Rule rule;
  std::vector<DerivPtr> premises;
};

DerivPtr make_deriv(Judgment concl, Rule rule, std::vector<DerivPtr> premises);
std::size_t deriv_size(const DerivPtr& d);

// Re-check a derivation node by node against the rule schemas, using only
// term-level operations (alpha equality, substitution, conversion) — not the
// type checker.  Throws CheckError on the first violation.
void validate_derivation(const DerivPtr& d, std::uint64_t fuel = kDefaultFuel);

// Result of elaborating a term: the subject with congruence-constructor
// annotations filled in, its type, and the derivation.
struct Typing {
  Term subject;
  Term type;
  DerivPtr deriv;
};

// Syntax-directed checker for the unstratified system.  Contexts passed to
// infer/check are assumed well-formed (use check_context first for inputs
// from the outside world).
class Checker {
public:
  explicit Checker(std::uint64_t fuel = kDefaultFuel) : fuel_(fuel) {}

  std::uint64_t fuel() const { return fuel_; }

  // Compute the type of `t`; `t` must be fully inferable.
  Typing infer(const Context& ctx, const Term& t);

  // Check `t` against `expected` (not necessarily in normal form); the
  // resulting derivation concludes with type `expected`.
  Typing check(const Context& ctx, const Term& t, const Term& expected);

  // Validate the context entry by entry; returns the elaborated context and
  // one "is a type" derivation per entry.
  std::pair<Context, std::vector<DerivPtr>> check_context(const Context& ctx);

  // Derive ctx |- a : * (through conversion if needed).
  struct TypeOf {
    Term elab;
    DerivPtr deriv;
  };
  TypeOf derive_is_type(const Context& ctx, const Term& a);

private:
  Typing infer_uncached(const Context& ctx, const Term& t);
  Typing coerce(const Context& ctx, Typing got, const Term& expected);
  std::uint64_t fuel_;
};

}  // namespace leq
