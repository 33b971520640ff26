#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "leq/term.hpp"

namespace leq {

// A hereditarily finite value.  Sets keep their elements sorted and unique,
// so structural equality is extensional equality.  A Graph is a function as
// a set of argument/value pairs (stored as Pair values, sorted, arguments
// distinct); a Pair is an ordered pair.
class SetValue {
 public:
  enum class Tag : std::uint8_t { Set, Graph, Pair };

  SetValue() = default;  // the empty set

  static SetValue set(std::vector<SetValue> elems);
  static SetValue graph(std::vector<SetValue> pairs);
  static SetValue pair(SetValue a, SetValue b);
  static SetValue empty() { return SetValue(); }
  // The von Neumann ordinal k = {0, 1, ..., k-1}.
  static SetValue ordinal(int k);

  Tag tag() const { return tag_; }
  const std::vector<SetValue>& items() const { return xs_; }
  const SetValue& first() const;
  const SetValue& second() const;

  bool is_empty_set() const { return tag_ == Tag::Set && xs_.empty(); }
  // Set membership / graph entry count.
  bool contains(const SetValue& v) const;
  // Graph application; null when the argument is outside the domain.
  const SetValue* apply(const SetValue& arg) const;

  // Total number of nodes; the cheap proxy for the model's size budget.
  std::size_t weight() const;

  std::string show() const;

  bool operator==(const SetValue& o) const {
    return tag_ == o.tag_ && xs_ == o.xs_;
  }
  bool operator!=(const SetValue& o) const { return !(*this == o); }
  bool operator<(const SetValue& o) const;

 private:
  Tag tag_ = Tag::Set;
  std::vector<SetValue> xs_;  // Set/Graph: members; Pair: {first, second}
};

struct ModelConfig {
  // Ordinal sizes available as interpretations of the bottom universe.
  std::vector<int> carriers = {0, 1, 2, 3};
  // Abort (FragmentExceeded) when an interpretation would grow past this
  // many value nodes.
  std::size_t size_bound = 10000;
};

using ModelEnv = std::vector<std::pair<VarName, SetValue>>;

// Interpret a term.  * and *0 both denote the set of configured carriers;
// higher universes and constructs outside the finite fragment raise
// FragmentExceeded or UnsupportedTerm.  Type equalities reflect: the
// interpretation of Eq A B is {0} when the two sides denote the same set and
// 0 otherwise, and a ~[e] b likewise compares the interpretations of the
// endpoints.
SetValue eval_term(const ModelConfig& cfg, const ModelEnv& env, const Term& t);

struct SoundnessReport {
  std::uint64_t environments = 0;
};

// For every environment assigning each context variable an element of its
// type's interpretation, check that the subject's interpretation is a member
// of the type's.  A universe in type position asks only that the subject
// denote at all (every representable value is hereditarily finite, so it
// belongs to every cumulative-hierarchy stage); the carrier list configures
// quantification over the universe, not membership in it.  Throws
// SoundnessViolation (with the offending environment in the message) on
// failure.
SoundnessReport check_soundness(const ModelConfig& cfg, const Context& ctx,
                                const Term& subject, const Term& type);

}  // namespace leq
