#include "leq/report.hpp"

#include <utility>

#include "leq/checker.hpp"
#include "leq/errors.hpp"
#include "leq/ops.hpp"
#include "leq/print.hpp"
#include "leq/startrans.hpp"

#include "json.hpp"

namespace leq {

namespace {

struct FileChecker {
  const RunOptions& opts;
  Report report;
  Context ctx;  // elaborated assumptions
  // Fully inlined, elaborated definition bodies, in declaration order.
  std::vector<std::pair<VarName, Term>> defs;
  std::vector<std::pair<VarName, Term>> def_types;

  Term inline_defs(const Term& t) const { return multi_subst(t, defs); }

  const Term* find_def(const VarName& n) const {
    for (const auto& [v, b] : defs)
      if (v == n) return &b;
    return nullptr;
  }

  const Term* find_def_type(const VarName& n) const {
    for (const auto& [v, b] : def_types)
      if (v == n) return &b;
    return nullptr;
  }

  bool known(const VarName& n) const {
    return find_def(n) != nullptr || ctx.binds(n);
  }

  void maybe_validate(const DerivPtr& d) const {
    if (opts.validate) validate_derivation(d, opts.fuel);
  }

  // def name : A := b  — check b against A, remember the elaborated body.
  void do_def(const Decl& d, ReportEntry& e) {
    Term ty = inline_defs(d.type);
    Term body = inline_defs(d.body);
    Term elab_ty, elab_body;
    if (opts.stratified) {
      // One joint level assignment for the type and the body: level-elaborate
      // (fun (x : A). x) b, whose inference checks b against A.
      VarName probe("def_probe", {}, next_fresh_id());
      Term comb = Term::app(
          Term::lam(probe, ty, Term::var(probe)), body);
      LevelElaboration le =
          elaborate_levels(ctx, comb, opts.max_level, opts.fuel);
      maybe_validate(le.typing.deriv);
      elab_ty = le.typing.subject.fn().domain();
      elab_body = le.typing.subject.arg();
      e.derivation_size = deriv_size(le.typing.deriv);
    } else {
      Checker chk(opts.fuel);
      Checker::TypeOf wf = chk.derive_is_type(ctx, ty);
      Typing bt = chk.check(ctx, body, wf.elab);
      maybe_validate(wf.deriv);
      maybe_validate(bt.deriv);
      elab_ty = bt.type;
      elab_body = bt.subject;
      e.derivation_size = deriv_size(bt.deriv);
    }
    defs.emplace_back(d.name, elab_body);
    def_types.emplace_back(d.name, elab_ty);
    e.type = print_term(elab_ty);
  }

  void do_assume(const Decl& d, ReportEntry& e) {
    Term ty = inline_defs(d.type);
    Term elab;
    if (opts.stratified) {
      LevelElaboration le =
          elaborate_levels(ctx, ty, opts.max_level, opts.fuel);
      StratChecker chk(opts.fuel);
      StratChecker::TypeOf wf = chk.derive_is_type(ctx, le.subject);
      maybe_validate(wf.deriv);
      elab = wf.elab;
      e.derivation_size = deriv_size(wf.deriv);
    } else {
      Checker chk(opts.fuel);
      Checker::TypeOf wf = chk.derive_is_type(ctx, ty);
      maybe_validate(wf.deriv);
      elab = wf.elab;
      e.derivation_size = deriv_size(wf.deriv);
    }
    ctx.push(d.name, elab);
    e.type = print_term(elab);
  }

  // #checkstar name — run the relational translation on a definition or an
  // assumption and check the result against its relatedness statement.
  void do_checkstar(const Decl& d, ReportEntry& e) {
    if (opts.stratified)
      throw UnsupportedTerm(
          "the relational translation is defined for the unstratified "
          "system; run without --stratified");
    Term subject;
    if (const Term* b = find_def(d.name))
      subject = *b;
    else if (ctx.binds(d.name))
      subject = Term::var(d.name);
    else
      throw UnboundVariable("#checkstar names unknown declaration '" +
                            d.name.display() + "'");
    Checker chk(opts.fuel);
    StarInstance inst = run_star_instance(chk, ctx, subject);
    maybe_validate(inst.image.deriv);
    e.type = print_term(inst.statement);
    e.derivation_size = deriv_size(inst.image.deriv);
  }

  void do_normalize(const Decl& d, ReportEntry& e) {
    Term subject;
    if (const Term* b = find_def(d.name))
      subject = *b;
    else if (ctx.binds(d.name))
      subject = Term::var(d.name);
    else
      throw UnboundVariable("#normalize names unknown declaration '" +
                            d.name.display() + "'");
    NormalizeStats stats;
    Term nf = normalize(subject, opts.fuel, &stats);
    e.type = print_term(nf);
    e.steps = stats.steps;
  }

  void run(const SourceFile& file) {
    report.issues = file.issues;
    for (const Decl& d : file.decls) {
      ReportEntry e;
      e.name = d.name.display();
      switch (d.kind) {
        case DeclKind::Def: e.kind = "def"; break;
        case DeclKind::Assume: e.kind = "assume"; break;
        case DeclKind::CheckStar: e.kind = "translation"; break;
        case DeclKind::Normalize: e.kind = "normalize"; break;
      }
      try {
        if (d.kind == DeclKind::Def || d.kind == DeclKind::Assume) {
          if (known(d.name))
            throw IllFormedContext("'" + d.name.display() +
                                   "' is already declared");
        }
        switch (d.kind) {
          case DeclKind::Def: do_def(d, e); break;
          case DeclKind::Assume: do_assume(d, e); break;
          case DeclKind::CheckStar: do_checkstar(d, e); break;
          case DeclKind::Normalize: do_normalize(d, e); break;
        }
      } catch (const CheckError& err) {
        e.verdict = Verdict::Fail;
        e.detail = err.what();
      } catch (const ParseError& err) {
        e.verdict = Verdict::Fail;
        e.detail = err.what();
      }
      report.entries.push_back(std::move(e));
    }
  }
};

}  // namespace

Report check_file(const SourceFile& file, const RunOptions& opts) {
  return check_file_env(file, opts).first;
}

std::pair<Report, FileEnv> check_file_env(const SourceFile& file,
                                          const RunOptions& opts) {
  FileChecker fc{opts, {}, {}, {}, {}};
  fc.run(file);
  return {std::move(fc.report),
          FileEnv{std::move(fc.ctx), std::move(fc.defs),
                  std::move(fc.def_types)}};
}

std::string render_text(const Report& r) {
  std::string out;
  for (const auto& i : r.issues)
    out += "PARSE ERROR (line " + std::to_string(i.line) + ", col " +
           std::to_string(i.col) + "): " + i.message + "\n";
  for (const auto& e : r.entries) {
    std::string label = e.name;
    if (e.kind == "translation") label += " (translation)";
    if (e.kind == "normalize") label += " (normal form)";
    if (e.verdict == Verdict::Ok) {
      out += "OK " + label + " : " + e.type + "\n";
    } else {
      out += "FAIL " + label + " — " + e.detail + "\n";
    }
  }
  std::size_t ok = 0, fail = 0;
  for (const auto& e : r.entries)
    (e.verdict == Verdict::Ok ? ok : fail)++;
  out += std::to_string(r.entries.size()) + " declarations: " +
         std::to_string(ok) + " ok, " + std::to_string(fail) + " failed";
  if (!r.issues.empty())
    out += ", " + std::to_string(r.issues.size()) + " parse errors";
  out += "\n";
  return out;
}

std::string render_json(const Report& r) {
  nlohmann::json j;
  j["declarations"] = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json d;
    d["name"] = e.name;
    d["kind"] = e.kind;
    d["verdict"] = e.verdict == Verdict::Ok ? "ok" : "fail";
    if (e.verdict == Verdict::Ok)
      d["type"] = e.type;
    else
      d["error"] = e.detail;
    nlohmann::json stats;
    if (e.steps) stats["steps"] = e.steps;
    if (e.derivation_size) stats["derivation_size"] = e.derivation_size;
    if (!stats.empty()) d["stats"] = stats;
    j["declarations"].push_back(std::move(d));
  }
  j["issues"] = nlohmann::json::array();
  for (const auto& i : r.issues)
    j["issues"].push_back(
        {{"message", i.message}, {"line", i.line}, {"col", i.col}});
  std::size_t ok = 0, fail = 0;
  for (const auto& e : r.entries)
    (e.verdict == Verdict::Ok ? ok : fail)++;
  j["summary"] = {{"total", r.entries.size()},
                  {"ok", ok},
                  {"failed", fail},
                  {"parse_issues", r.issues.size()}};
  return j.dump(2) + "\n";
}

int report_exit_code(const Report& r) {
  if (!r.issues.empty()) return 2;
  for (const auto& e : r.entries)
    if (e.verdict != Verdict::Ok) return 1;
  return 0;
}

}  // namespace leq
