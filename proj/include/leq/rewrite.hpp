#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "leq/errors.hpp"
#include "leq/term.hpp"

namespace leq {

inline constexpr std::uint64_t kDefaultFuel = 100000;

enum class RedexKind {
  Beta,          // (fun (x:A). s) t
  BetaSigma1,    // fst (a , b)
  BetaSigma2,    // snd (a , b)
  RelStarStar,   // A ~[*^*] B
  RelPiStar,     // f ~[Pi* ...] f'
  RelSigmaStar,  // p ~[Sig* ...] p'
  RelEqStar,     // e ~[eq* ...] e'
  ConstTT,       // (Const [x. B] b) tt
  RelUnitStar,   // x ~[Unit^*] y
};

const char* redex_name(RedexKind k);

struct Step {
  Term result;
  RedexKind kind;
};

// One contraction at the root, if the root is a redex.  The two spellings of
// an applied eliminator (the a ~[e] b node and ~[e] a b applications) are
// both recognized.  Pi*/eq* redexes additionally require their endpoint
// annotations; without them the term is stuck.
std::optional<Step> step_at_root(const Term& t);

// One leftmost-outermost contraction anywhere, in syntax-tree order.
// Annotation blocks are metadata and are not reduced under.
std::optional<Step> step(const Term& t);

struct NormalizeStats {
  std::uint64_t steps = 0;
};

using TraceFn = std::function<void(const Term& before, RedexKind, const Term& after)>;

// Reduce to normal form by iterated leftmost-outermost steps.  Throws
// FuelExhausted after `fuel` contractions.
Term normalize(const Term& t, std::uint64_t fuel = kDefaultFuel,
               NormalizeStats* stats = nullptr, const TraceFn* trace = nullptr);

// Weak head normal form: reduce only as much as needed to expose the
// outermost constructor.  Shares the same fuel accounting as normalize.
Term whnf(const Term& t, std::uint64_t fuel = kDefaultFuel);

// Definitional equality: alpha equality of normal forms.
bool convertible(const Term& a, const Term& b,
                 std::uint64_t fuel = kDefaultFuel);

}  // namespace leq
