#include "leq/print.hpp"

#include <set>

#include "leq/ops.hpp"

namespace leq {

namespace {

int natural_level(const Term& t) {
  switch (t.kind()) {
    case TermKind::Pi:
    case TermKind::Sigma:
    case TermKind::Lam:
    case TermKind::PiStar:
    case TermKind::SigmaStar:
      return 0;
    case TermKind::Rel:
      return 1;
    case TermKind::App:
    case TermKind::Proj1:
    case TermKind::Proj2:
    case TermKind::TypeEq:
    case TermKind::EqStar:
    case TermKind::Const:
      return 2;
    default:
      return 3;
  }
}

struct Printer {
  const PrintOptions& opts;
  std::set<std::string> taken;                          // free-name spellings
  std::vector<std::pair<VarName, std::string>> scope;   // bound re-spellings
  std::string out;

  explicit Printer(const PrintOptions& o) : opts(o) {}

  bool spelling_in_scope(const std::string& s) const {
    for (const auto& [v, sp] : scope)
      if (sp == s) return true;
    return false;
  }

  static std::string deco_suffix(const VarName& v) {
    std::string s;
    for (Deco d : v.decos()) s += (d == Deco::Prime) ? "'" : "^*";
    return s;
  }

  std::string choose_spelling(const VarName& v) const {
    std::string desired = v.display();
    if (!taken.count(desired) && !spelling_in_scope(desired)) return desired;
    for (std::uint32_t k = 1;; ++k) {
      std::string cand = v.base() + "_" + std::to_string(k) + deco_suffix(v);
      if (!taken.count(cand) && !spelling_in_scope(cand)) return cand;
    }
  }

  std::string bind(const VarName& v) {
    std::string s = choose_spelling(v);
    scope.emplace_back(v, s);
    return s;
  }
  void bind_known(const VarName& v, std::string s) {
    scope.emplace_back(v, std::move(s));
  }
  void unbind(std::size_t n = 1) {
    while (n--) scope.pop_back();
  }

  std::string var_spelling(const VarName& v) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->first == v) return it->second;
    return v.display();
  }

  void emit(const Term& t, int min_level) {
    bool parens = natural_level(t) < min_level;
    if (parens) out += '(';
    raw_emit(t);
    if (parens) out += ')';
  }

  void annot_block(const Term& t) {
    if (!opts.show_annots || !t.annots()) return;
    const StarAnnots& a = *t.annots();
    bool star_binder = t.kind() != TermKind::EqStar;
    out += "{";
    emit(a.a, 0);
    out += " ; ";
    emit(a.a2, 0);
    out += " ; ";
    if (star_binder) bind_known(t.binder(), var_spelling_for_binder(t, 0));
    emit(a.b, 0);
    if (star_binder) unbind();
    out += " ; ";
    if (star_binder) bind_known(t.binder2(), var_spelling_for_binder(t, 1));
    emit(a.b2, 0);
    if (star_binder) unbind();
    out += "} ";
  }

  // Spellings for a star binder triple are decided once per node so the
  // annotation block, the bracket, and the body all agree.
  std::vector<std::string> star_spellings_;
  std::string var_spelling_for_binder(const Term& t, int which) {
    (void)t;
    return star_spellings_[star_spellings_.size() - 3 + which];
  }

  void raw_emit(const Term& t) {
    switch (t.kind()) {
      case TermKind::Star:
        out += '*';
        return;
      case TermKind::StarN:
        out += '*';
        out += std::to_string(t.level());
        return;
      case TermKind::StarStar:
        out += "*^*";
        return;
      case TermKind::Unit:
        out += "Unit";
        return;
      case TermKind::TT:
        out += "tt";
        return;
      case TermKind::UnitStar:
        out += "Unit^*";
        return;
      case TermKind::Var:
        out += var_spelling(t.var_name());
        return;
      case TermKind::Pi:
        if (!free_in(t.binder(), t.body())) {
          emit(t.domain(), 1);
          out += " -> ";
          emit(t.body(), 0);
          return;
        }
        binder_form("Pi", t);
        return;
      case TermKind::Sigma:
        binder_form("Sig", t);
        return;
      case TermKind::Lam:
        binder_form("fun", t);
        return;
      case TermKind::TypeEq:
        out += "Eq ";
        emit(t.eq_lhs(), 3);
        out += ' ';
        emit(t.eq_rhs(), 3);
        return;
      case TermKind::RelOp:
        out += "~[";
        emit(t.rel_e(), 0);
        out += ']';
        return;
      case TermKind::Rel:
        emit(t.rel_lhs(), 2);
        out += " ~[";
        emit(t.rel_e(), 0);
        out += "] ";
        emit(t.rel_rhs(), 2);
        return;
      case TermKind::App:
        emit(t.fn(), 2);
        out += ' ';
        emit(t.arg(), 3);
        return;
      case TermKind::Pair:
        out += '(';
        emit(t.first(), 0);
        out += " , ";
        emit(t.second(), 0);
        out += ')';
        return;
      case TermKind::Proj1:
        out += "fst ";
        emit(t.pair_arg(), 3);
        return;
      case TermKind::Proj2:
        out += "snd ";
        emit(t.pair_arg(), 3);
        return;
      case TermKind::PiStar:
        star_binder_form("Pi*", t);
        return;
      case TermKind::SigmaStar:
        star_binder_form("Sig*", t);
        return;
      case TermKind::EqStar:
        out += "eq* ";
        annot_block(t);
        emit(t.dom_eq(), 3);
        out += ' ';
        emit(t.body_eq(), 3);
        return;
      case TermKind::Const: {
        out += "Const [";
        std::string s = bind(t.binder());
        out += s;
        out += ". ";
        emit(t.const_family(), 0);
        unbind();
        out += "] ";
        emit(t.const_body(), 3);
        return;
      }
    }
    throw std::logic_error("print: unhandled kind");
  }

  void binder_form(const char* kw, const Term& t) {
    out += kw;
    out += " (";
    Term dom = t.domain();
    // Domain is outside the binder's scope; render it before binding.
    std::size_t at = out.size();
    emit(dom, 0);
    std::string dom_str = out.substr(at);
    out.resize(at);
    std::string s = bind(t.binder());
    out += s;
    out += " : ";
    out += dom_str;
    out += "). ";
    emit(t.body(), 0);
    unbind();
  }

  void star_binder_form(const char* kw, const Term& t) {
    // Choose the three spellings up front so the annotation block (which
    // scopes only one binder at a time) agrees with the bracket and body.
    std::string s1 = bind(t.binder());
    std::string s2 = bind(t.binder2());
    std::string s3 = bind(t.binder3());
    unbind(3);
    star_spellings_.push_back(s1);
    star_spellings_.push_back(s2);
    star_spellings_.push_back(s3);
    out += kw;
    out += ' ';
    annot_block(t);
    out += '[';
    out += s1;
    out += ", ";
    out += s2;
    out += ", ";
    out += s3;
    out += "] : ";
    emit(t.dom_eq(), 0);
    out += " . ";
    bind_known(t.binder(), s1);
    bind_known(t.binder2(), s2);
    bind_known(t.binder3(), s3);
    emit(t.body_eq(), 0);
    unbind(3);
    star_spellings_.resize(star_spellings_.size() - 3);
  }
};

}  // namespace

std::string print_term(const Term& t, const PrintOptions& opts) {
  Printer p(opts);
  for (const VarName& v : free_vars(t)) p.taken.insert(v.display());
  p.emit(t, 0);
  return p.out;
}

std::string print_context(const Context& ctx, const PrintOptions& opts) {
  std::string s;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) s += ", ";
    s += ctx[i].first.display();
    s += " : ";
    s += print_term(ctx[i].second, opts);
  }
  return s;
}

}  // namespace leq
