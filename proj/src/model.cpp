#include "leq/model.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "leq/errors.hpp"
#include "leq/ops.hpp"
#include "leq/print.hpp"
#include "leq/rewrite.hpp"

namespace leq {

// ----------------------------------------------------------------- values

SetValue SetValue::set(std::vector<SetValue> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  SetValue v;
  v.tag_ = Tag::Set;
  v.xs_ = std::move(elems);
  return v;
}

SetValue SetValue::graph(std::vector<SetValue> pairs) {
  for (const auto& p : pairs)
    if (p.tag() != Tag::Pair)
      throw std::logic_error("graph entries must be pairs");
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  for (std::size_t i = 1; i < pairs.size(); ++i)
    if (pairs[i - 1].first() == pairs[i].first())
      throw std::logic_error("graph with a repeated argument");
  SetValue v;
  v.tag_ = Tag::Graph;
  v.xs_ = std::move(pairs);
  return v;
}

SetValue SetValue::pair(SetValue a, SetValue b) {
  SetValue v;
  v.tag_ = Tag::Pair;
  v.xs_ = {std::move(a), std::move(b)};
  return v;
}

SetValue SetValue::ordinal(int k) {
  std::vector<SetValue> elems;
  for (int i = 0; i < k; ++i) elems.push_back(ordinal(i));
  return set(std::move(elems));
}

const SetValue& SetValue::first() const {
  if (tag_ != Tag::Pair) throw std::logic_error("first() on a non-pair");
  return xs_[0];
}

const SetValue& SetValue::second() const {
  if (tag_ != Tag::Pair) throw std::logic_error("second() on a non-pair");
  return xs_[1];
}

bool SetValue::contains(const SetValue& v) const {
  return std::binary_search(xs_.begin(), xs_.end(), v);
}

const SetValue* SetValue::apply(const SetValue& arg) const {
  for (const auto& p : xs_)
    if (p.first() == arg) return &p.second();
  return nullptr;
}

std::size_t SetValue::weight() const {
  std::size_t n = 1;
  for (const auto& x : xs_) n += x.weight();
  return n;
}

bool SetValue::operator<(const SetValue& o) const {
  if (tag_ != o.tag_) return tag_ < o.tag_;
  return std::lexicographical_compare(xs_.begin(), xs_.end(), o.xs_.begin(),
                                      o.xs_.end());
}

std::string SetValue::show() const {
  std::string s;
  switch (tag_) {
    case Tag::Set: {
      s = "{";
      for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (i) s += ", ";
        s += xs_[i].show();
      }
      return s + "}";
    }
    case Tag::Graph: {
      s = "{";
      for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (i) s += ", ";
        s += xs_[i].first().show() + " -> " + xs_[i].second().show();
      }
      return s + "}";
    }
    case Tag::Pair:
      return "<" + xs_[0].show() + ", " + xs_[1].show() + ">";
  }
  return "?";
}

// ------------------------------------------------------------------- eval

namespace {

struct Evaluator {
  const ModelConfig& cfg;

  void budget(std::size_t weight) const {
    if (weight > cfg.size_bound)
      throw FragmentExceeded("model value grew past the configured bound of " +
                             std::to_string(cfg.size_bound) + " nodes");
  }

  SetValue carriers() const {
    std::vector<SetValue> cs;
    cs.reserve(cfg.carriers.size());
    for (int k : cfg.carriers) cs.push_back(SetValue::ordinal(k));
    return SetValue::set(std::move(cs));
  }

  static const SetValue* lookup(const ModelEnv& env, const VarName& v) {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == v) return &it->second;
    return nullptr;
  }

  // Elements of a value used as a set; a Graph is a set of pairs.
  static const std::vector<SetValue>& elements(const SetValue& v,
                                               const Term& origin) {
    if (v.tag() == SetValue::Tag::Pair)
      throw UnsupportedTerm("interpretation of " + print_term(origin) +
                            " is an ordered pair, not a set");
    return v.items();
  }

  SetValue eval(const ModelEnv& env, const Term& t) const {
    switch (t.kind()) {
      case TermKind::Star:
        // Read as the bottom universe; the unstratified * has no other
        // finite reading.
        return carriers();
      case TermKind::StarN:
        if (t.level() == 0) return carriers();
        throw FragmentExceeded("the universe *" + std::to_string(t.level()) +
                               " has no finite interpretation");
      case TermKind::Var: {
        const SetValue* v = lookup(env, t.var_name());
        if (!v)
          throw OpenTerm("variable '" + t.var_name().display() +
                         "' has no value in the model environment");
        return *v;
      }
      case TermKind::Pi: {
        SetValue dom = eval(env, t.domain());
        const auto& as = elements(dom, t.domain());
        std::vector<std::vector<SetValue>> cods;
        std::size_t count = 1;
        for (const auto& a : as) {
          ModelEnv inner = env;
          inner.emplace_back(t.binder(), a);
          SetValue cod = eval(inner, t.body());
          cods.push_back(elements(cod, t.body()));
          count *= std::max<std::size_t>(cods.back().size(), 1);
          if (cods.back().empty()) count = 0;
          budget(count);
        }
        // Every choice function, as a graph.
        std::vector<SetValue> graphs;
        std::vector<std::size_t> pick(as.size(), 0);
        if (count > 0) {
          for (;;) {
            std::vector<SetValue> entries;
            entries.reserve(as.size());
            for (std::size_t i = 0; i < as.size(); ++i)
              entries.push_back(SetValue::pair(as[i], cods[i][pick[i]]));
            graphs.push_back(SetValue::graph(std::move(entries)));
            std::size_t i = 0;
            while (i < as.size() && ++pick[i] == cods[i].size())
              pick[i++] = 0;
            if (i == as.size()) break;
            if (as.empty()) break;
          }
        }
        if (as.empty()) graphs.push_back(SetValue::graph({}));
        SetValue out = SetValue::set(std::move(graphs));
        budget(out.weight());
        return out;
      }
      case TermKind::Sigma: {
        SetValue dom = eval(env, t.domain());
        const auto& as = elements(dom, t.domain());
        std::vector<SetValue> pairs;
        for (const auto& a : as) {
          ModelEnv inner = env;
          inner.emplace_back(t.binder(), a);
          SetValue cod = eval(inner, t.body());
          for (const auto& b : elements(cod, t.body())) {
            pairs.push_back(SetValue::pair(a, b));
            budget(pairs.size());
          }
        }
        SetValue out = SetValue::set(std::move(pairs));
        budget(out.weight());
        return out;
      }
      case TermKind::TypeEq: {
        SetValue l = eval(env, t.eq_lhs());
        SetValue r = eval(env, t.eq_rhs());
        return l == r ? SetValue::set({SetValue::empty()}) : SetValue::empty();
      }
      case TermKind::Rel: {
        SetValue l = eval(env, t.rel_lhs());
        SetValue r = eval(env, t.rel_rhs());
        return l == r ? SetValue::set({SetValue::empty()}) : SetValue::empty();
      }
      case TermKind::RelOp:
        throw UnsupportedTerm(
            "an unapplied eliminator ~[e] has no standalone interpretation; "
            "apply it to both endpoints");
      case TermKind::Lam: {
        SetValue dom = eval(env, t.domain());
        std::vector<SetValue> entries;
        for (const auto& a : elements(dom, t.domain())) {
          ModelEnv inner = env;
          inner.emplace_back(t.binder(), a);
          entries.push_back(SetValue::pair(a, eval(inner, t.body())));
          budget(entries.size());
        }
        SetValue out = SetValue::graph(std::move(entries));
        budget(out.weight());
        return out;
      }
      case TermKind::App: {
        // ~[e] a b compares endpoints, whichever way it was spelled.
        if (auto rf = as_rel_form(t)) {
          SetValue l = eval(env, rf->lhs);
          SetValue r = eval(env, rf->rhs);
          return l == r ? SetValue::set({SetValue::empty()})
                        : SetValue::empty();
        }
        SetValue f = eval(env, t.fn());
        if (f.tag() != SetValue::Tag::Graph)
          throw UnsupportedTerm("interpretation of " + print_term(t.fn()) +
                                " is not a function");
        SetValue a = eval(env, t.arg());
        if (const SetValue* v = f.apply(a)) return *v;
        throw UnsupportedTerm("argument value " + a.show() +
                              " lies outside the function's domain");
      }
      case TermKind::Pair:
        return SetValue::pair(eval(env, t.first()), eval(env, t.second()));
      case TermKind::Proj1:
      case TermKind::Proj2: {
        SetValue p = eval(env, t.pair_arg());
        if (p.tag() != SetValue::Tag::Pair)
          throw UnsupportedTerm("interpretation of " +
                                print_term(t.pair_arg()) +
                                " is not an ordered pair");
        return t.kind() == TermKind::Proj1 ? p.first() : p.second();
      }
      // Every equality former denotes the canonical witness: the sole
      // element of a true reflected equality.
      case TermKind::StarStar:
      case TermKind::PiStar:
      case TermKind::SigmaStar:
      case TermKind::EqStar:
      case TermKind::UnitStar:
        return SetValue::empty();
      case TermKind::Unit:
        return SetValue::set({SetValue::empty()});
      case TermKind::TT:
        return SetValue::empty();
      case TermKind::Const: {
        SetValue b = eval(env, t.const_body());
        return SetValue::graph({SetValue::pair(SetValue::empty(), b)});
      }
    }
    throw std::logic_error("eval: bad kind");
  }
};

}  // namespace

SetValue eval_term(const ModelConfig& cfg, const ModelEnv& env,
                   const Term& t) {
  return Evaluator{cfg}.eval(env, t);
}

SoundnessReport check_soundness(const ModelConfig& cfg, const Context& ctx,
                                const Term& subject, const Term& type) {
  Evaluator ev{cfg};
  SoundnessReport report;

  std::function<void(std::size_t, ModelEnv&)> walk =
      [&](std::size_t i, ModelEnv& env) {
        if (i == ctx.size()) {
          ++report.environments;
          SetValue vs = ev.eval(env, subject);
          // A universe in classifier position reads as "denotes a set":
          // every value this evaluator can build is hereditarily finite and
          // so lies in every cumulative-hierarchy stage.  The carrier list
          // bounds quantification over the universe, not membership in it.
          Term tyw = whnf(type);
          if (tyw.kind() == TermKind::Star || tyw.kind() == TermKind::StarN)
            return;
          SetValue vt = ev.eval(env, tyw);
          if (vt.tag() == SetValue::Tag::Pair)
            throw UnsupportedTerm("interpretation of " + print_term(type) +
                                  " is an ordered pair, not a set");
          bool ok = false;
          for (const auto& m : vt.items())
            if (m == vs) { ok = true; break; }
          if (!ok) {
            std::string where;
            for (const auto& [x, v] : env)
              where += "  " + x.display() + " := " + v.show() + "\n";
            if (where.empty()) where = "  (empty)\n";
            throw SoundnessViolation(
                "model refutes " + print_term(subject) + " : " +
                print_term(type) + "\nvalue " + vs.show() +
                " is not a member of " + vt.show() + "\nenvironment:\n" +
                where);
          }
          return;
        }
        const auto& [x, a] = ctx[i];
        SetValue dom = ev.eval(env, a);
        if (dom.tag() == SetValue::Tag::Pair)
          throw UnsupportedTerm("interpretation of " + print_term(a) +
                                " is an ordered pair, not a set");
        for (const auto& v : dom.items()) {
          env.emplace_back(x, v);
          walk(i + 1, env);
          env.pop_back();
        }
      };

  ModelEnv env;
  walk(0, env);
  return report;
}

}  // namespace leq
