#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "leq/term.hpp"

namespace leq {

// Base of every failure the kernel can report.  `code` is the stable
// machine-readable tag used in reports and JSON output.
class CheckError : public std::runtime_error {
public:
  CheckError(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

#define LEQ_ERROR_CLASS(Name)                            \
  class Name : public CheckError {                       \
  public:                                                \
    explicit Name(const std::string& msg)                \
        : CheckError(#Name, msg) {}                      \
  }

LEQ_ERROR_CLASS(TypeError);
LEQ_ERROR_CLASS(UnboundVariable);
LEQ_ERROR_CLASS(NotAFunction);
LEQ_ERROR_CLASS(NotAPair);
LEQ_ERROR_CLASS(NotATypeEquality);
LEQ_ERROR_CLASS(IllFormedContext);
LEQ_ERROR_CLASS(ConversionFailure);
LEQ_ERROR_CLASS(TheoremInstanceFailure);
LEQ_ERROR_CLASS(OpenTerm);
LEQ_ERROR_CLASS(PathTypeError);
LEQ_ERROR_CLASS(UnsupportedStarClause);
LEQ_ERROR_CLASS(UniverseError);
LEQ_ERROR_CLASS(LevelUnderflow);
LEQ_ERROR_CLASS(Unstratifiable);
LEQ_ERROR_CLASS(FragmentExceeded);
LEQ_ERROR_CLASS(UnsupportedTerm);
LEQ_ERROR_CLASS(SoundnessViolation);

#undef LEQ_ERROR_CLASS

// Reduction ran out of fuel.  Carries the number of steps taken and the
// partially reduced term reached when the budget hit zero.
class FuelExhausted : public CheckError {
public:
  FuelExhausted(const std::string& msg, std::uint64_t steps, Term partial)
      : CheckError("FuelExhausted", msg), steps(steps),
        partial(std::move(partial)) {}
  std::uint64_t steps;
  Term partial;
};

}  // namespace leq
