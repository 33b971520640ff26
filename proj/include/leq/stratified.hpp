#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "leq/checker.hpp"
#include "leq/term.hpp"

namespace leq {

inline constexpr int kDefaultMaxLevel = 3;

// Checker for the stratified system: *n : *(n+1), formation takes the larger
// premise level, and universes are cumulative — shallowly, applied only where
// a type is compared against an expected one.  The eliminator lowers:
// ~[e] : A -> B -> *(n-1) when A and B live in *n with n >= 1, and
// ~[e] : A -> B -> Unit at level 0, so level-0 relatedness propositions are
// points of Unit rather than types.  The bare universe * is rejected here;
// the unstratified checker owns it.
class StratChecker {
 public:
  explicit StratChecker(std::uint64_t fuel = kDefaultFuel) : fuel_(fuel) {}

  std::uint64_t fuel() const { return fuel_; }

  Typing infer(const Context& ctx, const Term& t);
  Typing check(const Context& ctx, const Term& t, const Term& expected);
  std::pair<Context, std::vector<DerivPtr>> check_context(const Context& ctx);

  // Derive ctx |- a : *level.  Throws LevelUnderflow when `a` is a level-0
  // relatedness proposition (its type is Unit, so it classifies nothing).
  struct TypeOf {
    Term elab;
    DerivPtr deriv;
    int level = 0;
  };
  TypeOf derive_is_type(const Context& ctx, const Term& a);

 private:
  Typing coerce(const Context& ctx, Typing got, const Term& expected);
  std::uint64_t fuel_;
};

struct LevelElaboration {
  Term subject;             // input with a level chosen for every bare *
  std::vector<int> levels;  // the chosen assignment, in syntax-tree order
  Typing typing;            // stratified typing of `subject`
  std::uint64_t attempts = 0;
};

// Replace each bare * in `t` with some *n, 0 <= n <= max_level, such that the
// result checks in the stratified system.  Assignments are tried exhaustively
// in ascending order of their level sum (then lexicographically), so the
// first success is a minimal one.  Throws Unstratifiable when no assignment
// works.
LevelElaboration elaborate_levels(const Context& ctx, const Term& t,
                                  int max_level = kDefaultMaxLevel,
                                  std::uint64_t fuel = kDefaultFuel);

}  // namespace leq
