#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "leq/ops.hpp"
#include "leq/parse.hpp"
#include "leq/rewrite.hpp"
#include "leq/stratified.hpp"
#include "leq/term.hpp"

namespace leq {

struct RunOptions {
  bool stratified = false;
  std::uint64_t fuel = kDefaultFuel;
  int max_level = kDefaultMaxLevel;  // level-search bound, stratified only
  bool validate = true;              // re-validate every produced derivation
};

enum class Verdict { Ok, Fail };

struct ReportEntry {
  std::string name;
  // "def" | "assume" | "translation" | "normalize"
  std::string kind;
  Verdict verdict = Verdict::Ok;
  std::string type;    // printed type; for normalize, the normal form
  std::string detail;  // failure message
  std::uint64_t steps = 0;
  std::size_t derivation_size = 0;
};

struct Report {
  std::vector<ReportEntry> entries;
  std::vector<ParseIssue> issues;

  bool all_ok() const {
    if (!issues.empty()) return false;
    for (const auto& e : entries)
      if (e.verdict != Verdict::Ok) return false;
    return true;
  }
};

// What a checked file leaves behind: the assumption context and the fully
// inlined, elaborated definition bodies.  Lets callers check further terms
// "inside" the file.
struct FileEnv {
  Context ctx;
  std::vector<std::pair<VarName, Term>> defs;
  std::vector<std::pair<VarName, Term>> def_types;  // declared, elaborated

  Term inline_defs(const Term& t) const { return multi_subst(t, defs); }
};

// Check a parsed file declaration by declaration.  Definitions are inlined
// into everything that follows (the kernel has no definitional constants);
// assumptions extend the ambient context; #checkstar runs the relational
// translation on a named definition or assumption; #normalize reduces one to
// normal form.  A failing declaration is reported and skipped, and checking
// continues.
Report check_file(const SourceFile& file, const RunOptions& opts);
std::pair<Report, FileEnv> check_file_env(const SourceFile& file,
                                          const RunOptions& opts);

std::string render_text(const Report& r);
std::string render_json(const Report& r);

// 0: everything checked.  1: some declaration failed.  2: parse issues.
int report_exit_code(const Report& r);

}  // namespace leq
