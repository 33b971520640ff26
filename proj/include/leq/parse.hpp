#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "leq/term.hpp"

namespace leq {

struct ParseError : std::runtime_error {
  ParseError(std::string msg, int line, int col)
      : std::runtime_error(std::move(msg)), line(line), col(col) {}
  int line, col;
};

// Parse a single surface-syntax term; the whole string must be consumed.
Term parse_term(const std::string& text);

enum class DeclKind {
  Def,        // def name : type := body
  Assume,     // assume name : type
  CheckStar,  // #checkstar name
  Normalize,  // #normalize name
};

struct Decl {
  DeclKind kind;
  VarName name;
  Term type;  // Def/Assume
  Term body;  // Def
  int line = 0, col = 0;
};

struct ParseIssue {
  std::string message;
  int line = 0, col = 0;
};

// A parsed file: declarations in order plus recoverable errors.  A bad
// declaration is reported and skipped; parsing resumes at the next
// declaration keyword.
struct SourceFile {
  std::vector<Decl> decls;
  std::vector<ParseIssue> issues;
};

SourceFile parse_file(const std::string& text);

}  // namespace leq
