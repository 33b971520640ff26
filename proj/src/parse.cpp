#include "leq/parse.hpp"

#include <cctype>
#include <optional>
#include <set>

namespace leq {

namespace {

enum class Tok {
  Ident, Star, StarN, StarStar, Unit, TT, UnitStar,
  KwPi, KwSig, KwFun, KwFst, KwSnd, KwEq, KwConst,
  KwPiStar, KwSigStar, KwEqStar,
  KwDef, KwAssume, KwCheckStar, KwNormalize,
  LParen, RParen, LBrack, RBrack, LBrace, RBrace,
  Comma, Dot, Colon, ColonEq, Semi, Arrow, TildeL,
  End,
};

struct Token {
  Tok kind = Tok::End;
  VarName name;   // Ident
  int level = 0;  // StarN
  int line = 1, col = 1;
};

const char* tok_name(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Star: return "'*'";
    case Tok::StarN: return "universe";
    case Tok::StarStar: return "'*^*'";
    case Tok::Unit: return "'Unit'";
    case Tok::TT: return "'tt'";
    case Tok::UnitStar: return "'Unit^*'";
    case Tok::KwPi: return "'Pi'";
    case Tok::KwSig: return "'Sig'";
    case Tok::KwFun: return "'fun'";
    case Tok::KwFst: return "'fst'";
    case Tok::KwSnd: return "'snd'";
    case Tok::KwEq: return "'Eq'";
    case Tok::KwConst: return "'Const'";
    case Tok::KwPiStar: return "'Pi*'";
    case Tok::KwSigStar: return "'Sig*'";
    case Tok::KwEqStar: return "'eq*'";
    case Tok::KwDef: return "'def'";
    case Tok::KwAssume: return "'assume'";
    case Tok::KwCheckStar: return "'#checkstar'";
    case Tok::KwNormalize: return "'#normalize'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Colon: return "':'";
    case Tok::ColonEq: return "':='";
    case Tok::Semi: return "';'";
    case Tok::Arrow: return "'->'";
    case Tok::TildeL: return "'~['";
    case Tok::End: return "end of input";
  }
  return "?";
}

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line, col);
  }

  char peek(std::size_t k = 0) const {
    return pos + k < src.size() ? src[pos + k] : '\0';
  }
  char take() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void skip_space() {
    for (;;) {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(peek())))
        take();
      if (peek() == '-' && peek(1) == '-') {
        while (pos < src.size() && peek() != '\n') take();
        continue;
      }
      return;
    }
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line;
      t.col = col;
      if (pos >= src.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = peek();
      if (std::isalpha(static_cast<unsigned char>(c))) {
        out.push_back(lex_word(t));
        continue;
      }
      switch (c) {
        case '*': {
          take();
          if (peek() == '^') {
            take();
            if (peek() != '*') fail("expected '*' after '^'");
            take();
            t.kind = Tok::StarStar;
          } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
            int lvl = 0;
            while (std::isdigit(static_cast<unsigned char>(peek())))
              lvl = lvl * 10 + (take() - '0');
            t.kind = Tok::StarN;
            t.level = lvl;
          } else {
            t.kind = Tok::Star;
          }
          break;
        }
        case '~':
          take();
          if (peek() != '[') fail("expected '[' after '~'");
          take();
          t.kind = Tok::TildeL;
          break;
        case '-':
          take();
          if (peek() != '>') fail("expected '>' after '-'");
          take();
          t.kind = Tok::Arrow;
          break;
        case ':':
          take();
          if (peek() == '=') {
            take();
            t.kind = Tok::ColonEq;
          } else {
            t.kind = Tok::Colon;
          }
          break;
        case '#': {
          take();
          std::string w;
          while (std::isalpha(static_cast<unsigned char>(peek()))) w += take();
          if (w == "checkstar")
            t.kind = Tok::KwCheckStar;
          else if (w == "normalize")
            t.kind = Tok::KwNormalize;
          else
            fail("unknown directive '#" + w + "'");
          break;
        }
        case '(': take(); t.kind = Tok::LParen; break;
        case ')': take(); t.kind = Tok::RParen; break;
        case '[': take(); t.kind = Tok::LBrack; break;
        case ']': take(); t.kind = Tok::RBrack; break;
        case '{': take(); t.kind = Tok::LBrace; break;
        case '}': take(); t.kind = Tok::RBrace; break;
        case ',': take(); t.kind = Tok::Comma; break;
        case '.': take(); t.kind = Tok::Dot; break;
        case ';': take(); t.kind = Tok::Semi; break;
        default:
          fail(std::string("unexpected character '") + c + "'");
      }
      out.push_back(t);
    }
  }

  Token lex_word(Token t) {
    std::string base;
    base += take();
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
      base += take();
    std::vector<Deco> decos;
    for (;;) {
      if (peek() == '\'') {
        take();
        decos.push_back(Deco::Prime);
      } else if (peek() == '^') {
        take();
        if (peek() != '*') fail("expected '*' after '^'");
        take();
        decos.push_back(Deco::Star);
      } else {
        break;
      }
    }
    if (decos.empty()) {
      // Keywords, including the fused spellings Pi* / Sig* / eq*.
      if (base == "Pi") {
        if (peek() == '*') {
          take();
          t.kind = Tok::KwPiStar;
          return t;
        }
        t.kind = Tok::KwPi;
        return t;
      }
      if (base == "Sig") {
        if (peek() == '*') {
          take();
          t.kind = Tok::KwSigStar;
          return t;
        }
        t.kind = Tok::KwSig;
        return t;
      }
      if (base == "eq" && peek() == '*') {
        take();
        t.kind = Tok::KwEqStar;
        return t;
      }
      if (base == "fun") { t.kind = Tok::KwFun; return t; }
      if (base == "fst") { t.kind = Tok::KwFst; return t; }
      if (base == "snd") { t.kind = Tok::KwSnd; return t; }
      if (base == "Eq") { t.kind = Tok::KwEq; return t; }
      if (base == "Const") { t.kind = Tok::KwConst; return t; }
      if (base == "Unit") { t.kind = Tok::Unit; return t; }
      if (base == "tt") { t.kind = Tok::TT; return t; }
      if (base == "def") { t.kind = Tok::KwDef; return t; }
      if (base == "assume") { t.kind = Tok::KwAssume; return t; }
    } else if (base == "Unit" && decos.size() == 1 && decos[0] == Deco::Star) {
      t.kind = Tok::UnitStar;
      return t;
    } else if (base == "Pi" || base == "Sig" || base == "fun" || base == "fst" ||
               base == "snd" || base == "Eq" || base == "Const" ||
               base == "Unit" || base == "tt" || base == "def" ||
               base == "assume") {
      fail("keyword '" + base + "' cannot be decorated");
    }
    t.kind = Tok::Ident;
    t.name = VarName(base, std::move(decos));
    return t;
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t at = 0;

  const Token& cur() const { return toks[at]; }
  const Token& next() { return toks[at++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " (found " + tok_name(cur().kind) + ")", cur().line,
                     cur().col);
  }

  Token expect(Tok k, const char* what) {
    if (cur().kind != k) fail(std::string("expected ") + what);
    return next();
  }

  VarName expect_name() {
    if (cur().kind != Tok::Ident) fail("expected identifier");
    return next().name;
  }

  bool starts_atom(Tok k) const {
    switch (k) {
      case Tok::Star:
      case Tok::StarN:
      case Tok::StarStar:
      case Tok::Unit:
      case Tok::TT:
      case Tok::UnitStar:
      case Tok::Ident:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  Term term() {
    switch (cur().kind) {
      case Tok::KwPi:
      case Tok::KwSig:
      case Tok::KwFun: {
        Tok k = next().kind;
        expect(Tok::LParen, "'('");
        VarName x = expect_name();
        expect(Tok::Colon, "':'");
        Term dom = term();
        expect(Tok::RParen, "')'");
        expect(Tok::Dot, "'.'");
        Term body = term();
        if (k == Tok::KwPi) return Term::pi(x, dom, body);
        if (k == Tok::KwSig) return Term::sigma(x, dom, body);
        return Term::lam(x, dom, body);
      }
      case Tok::KwPiStar:
      case Tok::KwSigStar: {
        Tok k = next().kind;
        std::optional<StarAnnots> ann = maybe_annots();
        expect(Tok::LBrack, "'['");
        VarName x = expect_name();
        expect(Tok::Comma, "','");
        VarName x2 = expect_name();
        expect(Tok::Comma, "','");
        VarName x3 = expect_name();
        expect(Tok::RBrack, "']'");
        expect(Tok::Colon, "':'");
        Term dom = term();
        expect(Tok::Dot, "'.'");
        Term body = term();
        if (!ann) ann = maybe_annots();  // block may trail the body instead
        return k == Tok::KwPiStar
                   ? Term::pi_star(x, x2, x3, dom, body, std::move(ann))
                   : Term::sigma_star(x, x2, x3, dom, body, std::move(ann));
      }
      default: {
        Term t = rel_level();
        if (cur().kind == Tok::Arrow) {
          next();
          return Term::arrow(t, term());
        }
        return t;
      }
    }
  }

  std::optional<StarAnnots> maybe_annots() {
    if (cur().kind != Tok::LBrace) return std::nullopt;
    next();
    StarAnnots a;
    a.a = term();
    expect(Tok::Semi, "';'");
    a.a2 = term();
    expect(Tok::Semi, "';'");
    a.b = term();
    expect(Tok::Semi, "';'");
    a.b2 = term();
    expect(Tok::RBrace, "'}'");
    return a;
  }

  Term rel_level() {
    Term a = app_level();
    if (cur().kind == Tok::TildeL) {
      next();
      Term e = term();
      expect(Tok::RBrack, "']'");
      Term b = app_level();
      return Term::rel(e, a, b);
    }
    return a;
  }

  Term app_level() {
    Term head = prefix_form();
    while (starts_atom(cur().kind)) head = Term::app(head, atom());
    return head;
  }

  Term prefix_form() {
    switch (cur().kind) {
      case Tok::KwFst:
        next();
        return Term::proj1(atom());
      case Tok::KwSnd:
        next();
        return Term::proj2(atom());
      case Tok::KwEq: {
        next();
        Term l = atom();
        Term r = atom();
        return Term::type_eq(l, r);
      }
      case Tok::KwEqStar: {
        next();
        std::optional<StarAnnots> ann = maybe_annots();
        Term l = atom();
        Term r = atom();
        if (!ann) ann = maybe_annots();
        return Term::eq_star(l, r, std::move(ann));
      }
      case Tok::KwConst: {
        next();
        expect(Tok::LBrack, "'['");
        VarName x = expect_name();
        expect(Tok::Dot, "'.'");
        Term fam = term();
        expect(Tok::RBrack, "']'");
        Term b = atom();
        return Term::const_fn(x, fam, b);
      }
      case Tok::TildeL: {
        next();
        Term e = term();
        expect(Tok::RBrack, "']'");
        return Term::rel_op(e);
      }
      default:
        return atom();
    }
  }

  Term atom() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Star: next(); return Term::star();
      case Tok::StarN: { int l = next().level; return Term::star_n(l); }
      case Tok::StarStar: next(); return Term::star_star();
      case Tok::Unit: next(); return Term::unit();
      case Tok::TT: next(); return Term::tt();
      case Tok::UnitStar: next(); return Term::unit_star();
      case Tok::Ident: return Term::var(next().name);
      case Tok::LParen: {
        next();
        Term a = term();
        if (cur().kind == Tok::Comma) {
          next();
          Term b = term();
          expect(Tok::RParen, "')'");
          return Term::pair(a, b);
        }
        expect(Tok::RParen, "')'");
        return a;
      }
      default:
        fail("expected a term");
    }
  }

  bool at_decl_start() const {
    switch (cur().kind) {
      case Tok::KwDef:
      case Tok::KwAssume:
      case Tok::KwCheckStar:
      case Tok::KwNormalize:
      case Tok::End:
        return true;
      default:
        return false;
    }
  }

  SourceFile file() {
    SourceFile out;
    std::set<VarName> declared;
    while (cur().kind != Tok::End) {
      Token start = cur();
      try {
        switch (cur().kind) {
          case Tok::KwDef: {
            next();
            Decl d;
            d.kind = DeclKind::Def;
            d.line = start.line;
            d.col = start.col;
            d.name = expect_name();
            expect(Tok::Colon, "':' (definitions need a type annotation)");
            d.type = term();
            expect(Tok::ColonEq, "':='");
            d.body = term();
            if (!declared.insert(d.name).second)
              throw ParseError("duplicate name '" + d.name.display() + "'",
                               start.line, start.col);
            out.decls.push_back(std::move(d));
            break;
          }
          case Tok::KwAssume: {
            next();
            Decl d;
            d.kind = DeclKind::Assume;
            d.line = start.line;
            d.col = start.col;
            d.name = expect_name();
            expect(Tok::Colon, "':'");
            d.type = term();
            if (!declared.insert(d.name).second)
              throw ParseError("duplicate name '" + d.name.display() + "'",
                               start.line, start.col);
            out.decls.push_back(std::move(d));
            break;
          }
          case Tok::KwCheckStar:
          case Tok::KwNormalize: {
            Decl d;
            d.kind = next().kind == Tok::KwCheckStar ? DeclKind::CheckStar
                                                     : DeclKind::Normalize;
            d.line = start.line;
            d.col = start.col;
            d.name = expect_name();
            out.decls.push_back(std::move(d));
            break;
          }
          default:
            fail("expected a declaration");
        }
      } catch (const ParseError& e) {
        out.issues.push_back({e.what(), e.line, e.col});
        // Resynchronize at the next declaration keyword.
        if (at < toks.size() - 1 && toks[at].line == start.line &&
            toks[at].col == start.col)
          next();  // guarantee progress
        while (!at_decl_start()) next();
      }
    }
    return out;
  }
};

}  // namespace

Term parse_term(const std::string& text) {
  Parser p{Lexer(text).run()};
  Term t = p.term();
  if (p.cur().kind != Tok::End) p.fail("trailing input after term");
  return t;
}

SourceFile parse_file(const std::string& text) {
  Parser p{Lexer(text).run()};
  return p.file();
}

}  // namespace leq
