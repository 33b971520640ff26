#include "leq/cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "leq/checker.hpp"
#include "leq/errors.hpp"
#include "leq/model.hpp"
#include "leq/parse.hpp"
#include "leq/print.hpp"
#include "leq/report.hpp"
#include "leq/rewrite.hpp"
#include "leq/startrans.hpp"
#include "leq/stratified.hpp"

namespace leq {

namespace {

// Bad invocation or unreadable input; exits 2 like a parse failure.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t env_fuel() {
  if (const char* s = std::getenv("LAMBDA_EQ_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultFuel;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Opts {
  std::string path;       // check: input file
  std::string term_text;  // normalize/star/model-eval: the term
  std::string def_path;   // optional file of defs/assumes to work under
  bool stratified = false;
  bool json = false;
  bool trace = false;
  int max_level = kDefaultMaxLevel;
  std::uint64_t fuel = kDefaultFuel;
  std::vector<int> carriers = {0, 1, 2, 3};
};

RunOptions run_options(const Opts& o) {
  RunOptions ro;
  ro.stratified = o.stratified;
  ro.fuel = o.fuel;
  ro.max_level = o.max_level;
  return ro;
}

// Load --def FILE, failing the run the same way `check` would.
FileEnv load_env(const Opts& o, std::ostream& err, int& rc) {
  rc = 0;
  if (o.def_path.empty()) return {};
  SourceFile sf = parse_file(slurp(o.def_path));
  auto [report, env] = check_file_env(sf, run_options(o));
  if (!report.all_ok()) {
    err << render_text(report);
    err << "error: '" << o.def_path << "' did not check\n";
    rc = report_exit_code(report);
  }
  return std::move(env);
}

int run_check(const Opts& o, std::ostream& out, std::ostream&) {
  SourceFile sf = parse_file(slurp(o.path));
  Report r = check_file(sf, run_options(o));
  out << (o.json ? render_json(r) : render_text(r));
  return report_exit_code(r);
}

int run_normalize(const Opts& o, std::ostream& out, std::ostream& err) {
  int rc = 0;
  FileEnv env = load_env(o, err, rc);
  if (rc) return rc;
  Term t = env.inline_defs(parse_term(o.term_text));
  // Elaborate first: congruence eliminations only fire once the checker has
  // filled in their endpoint annotations.
  Term elab;
  if (o.stratified) {
    elab = elaborate_levels(env.ctx, t, o.max_level, o.fuel).typing.subject;
  } else {
    Checker chk(o.fuel);
    elab = chk.infer(env.ctx, t).subject;
  }
  NormalizeStats stats;
  nlohmann::json jtrace = nlohmann::json::array();
  std::uint64_t n = 0;
  TraceFn tracer = [&](const Term&, RedexKind k, const Term& after) {
    ++n;
    if (o.json) {
      jtrace.push_back({{"step", n},
                        {"rule", redex_name(k)},
                        {"result", print_term(after)}});
    } else {
      out << "step " << n << " [" << redex_name(k)
          << "]: " << print_term(after) << "\n";
    }
  };
  Term nf = normalize(elab, o.fuel, &stats, o.trace ? &tracer : nullptr);
  if (o.json) {
    nlohmann::json j;
    j["input"] = print_term(elab);
    j["normal_form"] = print_term(nf);
    j["steps"] = stats.steps;
    if (o.trace) j["trace"] = std::move(jtrace);
    out << j.dump(2) << "\n";
  } else {
    out << print_term(nf) << "\n";
    out << stats.steps << " step(s)\n";
  }
  return 0;
}

int run_star(const Opts& o, std::ostream& out, std::ostream& err) {
  int rc = 0;
  FileEnv env = load_env(o, err, rc);
  if (rc) return rc;
  Term t = env.inline_defs(parse_term(o.term_text));
  Checker chk(o.fuel);
  StarInstance inst = run_star_instance(chk, env.ctx, t);
  if (o.json) {
    nlohmann::json j;
    j["subject"] = print_term(inst.subject);
    j["type"] = print_term(inst.subject_type);
    j["statement"] = print_term(inst.statement);
    j["image"] = print_term(inst.image.subject);
    j["verdict"] = "ok";
    out << j.dump(2) << "\n";
  } else {
    out << "subject   : " << print_term(inst.subject) << "\n";
    out << "type      : " << print_term(inst.subject_type) << "\n";
    out << "statement : " << print_term(inst.statement) << "\n";
    out << "image     : " << print_term(inst.image.subject) << "\n";
    out << "OK\n";
  }
  return 0;
}

int run_model_eval(const Opts& o, std::ostream& out, std::ostream& err) {
  int rc = 0;
  FileEnv env = load_env(o, err, rc);
  if (rc) return rc;
  Term t = env.inline_defs(parse_term(o.term_text));
  ModelConfig cfg;
  cfg.carriers = o.carriers;
  SetValue v = eval_term(cfg, {}, t);
  if (o.json) {
    nlohmann::json j;
    j["value"] = v.show();
    j["weight"] = v.weight();
    out << j.dump(2) << "\n";
  } else {
    out << v.show() << "\n";
  }
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  reset_fresh_ids();
  Opts o;
  o.fuel = env_fuel();

  CLI::App app{
      "type checker for a dependent calculus with first-class type equality"};
  app.name("lambda-eq");
  app.require_subcommand(1);

  auto add_fuel = [&](CLI::App* c) {
    c->add_option("--fuel", o.fuel,
                  "reduction step budget (or env LAMBDA_EQ_FUEL)")
        ->capture_default_str();
  };
  auto add_json = [&](CLI::App* c) {
    c->add_flag("--json", o.json, "machine-readable output");
  };
  auto add_def = [&](CLI::App* c) {
    c->add_option("--def", o.def_path,
                  "check this file first and work under its declarations");
  };
  auto add_strat = [&](CLI::App* c) {
    c->add_flag("--stratified", o.stratified,
                "use the universe-stratified system (*0, *1, ..., Unit)");
    c->add_option("--max-level", o.max_level,
                  "bound for universe level search (stratified only)")
        ->capture_default_str();
  };

  CLI::App* check =
      app.add_subcommand("check", "type-check every declaration in a file");
  check->add_option("file", o.path, "input file")->required();
  add_strat(check);
  add_fuel(check);
  add_json(check);

  CLI::App* norm =
      app.add_subcommand("normalize", "reduce a term to normal form");
  norm->add_option("term", o.term_text, "term in surface syntax")->required();
  add_def(norm);
  add_strat(norm);
  add_fuel(norm);
  norm->add_flag("--trace", o.trace, "print every contraction");
  add_json(norm);

  CLI::App* star = app.add_subcommand(
      "star", "relate a term to its primed copy and check the witness");
  star->add_option("term", o.term_text, "term in surface syntax")->required();
  add_def(star);
  add_fuel(star);
  add_json(star);

  CLI::App* model = app.add_subcommand(
      "model-eval", "interpret a closed term in the finite set model");
  model->add_option("term", o.term_text, "term in surface syntax")->required();
  add_def(model);
  model->add_option("--carriers", o.carriers, "carrier set sizes")
      ->delimiter(',')
      ->capture_default_str();
  add_fuel(model);
  add_json(model);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* a = &app;
    while (!a->get_subcommands().empty()) a = a->get_subcommands().front();
    out << a->help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return run_check(o, out, err);
    if (norm->parsed()) return run_normalize(o, out, err);
    if (star->parsed()) return run_star(o, out, err);
    if (model->parsed()) return run_model_eval(o, out, err);
    err << "error: no command\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error (line " << e.line << ", col " << e.col
        << "): " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CheckError& e) {
    err << "error [" << e.code() << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace leq
