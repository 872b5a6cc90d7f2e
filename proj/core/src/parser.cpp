#include "fragmc/parser.hpp"

#include <cctype>
#include <memory>
#include <string>
#include <vector>

namespace fragmc {
namespace {

enum class Tok { Ident, Quoted, True, False, Quant, Temporal, Until, Release, Not, And, Or, LParen, RParen, LBrack, RBrack, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t line;
  std::size_t col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      const std::size_t l = line_, c = col_;
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string word;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          word += advance();
        classify_word(word, l, c, out);
      } else if (ch == '"') {
        advance();
        std::string name;
        for (;;) {
          if (pos_ >= src_.size()) throw ParseError("unterminated quoted atom", l, c);
          char d = advance();
          if (d == '"') break;
          if (d == '\\') {
            if (pos_ >= src_.size()) throw ParseError("unterminated quoted atom", l, c);
            d = advance();
          }
          name += d;
        }
        if (name.empty()) throw ParseError("empty atom name", l, c);
        out.push_back({Tok::Quoted, name, l, c});
      } else {
        Tok t;
        switch (ch) {
          case '~': t = Tok::Not; break;
          case '&': t = Tok::And; break;
          case '|': t = Tok::Or; break;
          case '(': t = Tok::LParen; break;
          case ')': t = Tok::RParen; break;
          case '[': t = Tok::LBrack; break;
          case ']': t = Tok::RBrack; break;
          default:
            throw ParseError(std::string("unknown token '") + ch + "'", l, c);
        }
        advance();
        out.push_back({t, std::string(1, ch), l, c});
      }
    }
  }

 private:
  char advance() {
    char ch = src_[pos_++];
    if (ch == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return ch;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  static bool is_temporal_word(const std::string& w) {
    return w == "X" || w == "F" || w == "G" || w == "Fi" || w == "Gi";
  }

  static void classify_word(const std::string& w, std::size_t l, std::size_t c, std::vector<Token>& out) {
    if (w == "true") {
      out.push_back({Tok::True, w, l, c});
    } else if (w == "false") {
      out.push_back({Tok::False, w, l, c});
    } else if (w == "A" || w == "E") {
      out.push_back({Tok::Quant, w, l, c});
    } else if (is_temporal_word(w)) {
      out.push_back({Tok::Temporal, w, l, c});
    } else if (w == "U") {
      out.push_back({Tok::Until, w, l, c});
    } else if (w == "R") {
      out.push_back({Tok::Release, w, l, c});
    } else if ((w[0] == 'A' || w[0] == 'E') && is_temporal_word(w.substr(1))) {
      out.push_back({Tok::Quant, w.substr(0, 1), l, c});
      out.push_back({Tok::Temporal, w.substr(1), l, c + 1});
    } else {
      out.push_back({Tok::Ident, w, l, c});
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

// Untyped syntax tree; sorts are assigned afterwards.
struct Expr {
  enum Type { Const, Atom, Not, And, Or, Quant, Temporal, Binary } type;
  std::string text;  // atom name, constant, quantifier, operator word
  std::unique_ptr<Expr> a, b;
  std::size_t line = 0, col = 0;
  bool is_state = true;  // no temporal operator outside a quantifier
};
using ExprPtr = std::unique_ptr<Expr>;

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr run() {
    ExprPtr e = parse_or();
    if (peek().type != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& take() { return toks_[i_++]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().col); }

  static ExprPtr node(Expr::Type t, const Token& at, std::string text = {}) {
    auto e = std::make_unique<Expr>();
    e->type = t;
    e->text = std::move(text);
    e->line = at.line;
    e->col = at.col;
    return e;
  }

  void expect(Tok t, const char* what) {
    if (peek().type != t) {
      if (peek().type == Tok::End) fail(std::string("expected ") + what + " before end of input");
      fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    }
    take();
  }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (peek().type == Tok::Or) {
      const Token& op = take();
      auto e = node(Expr::Or, op);
      e->a = std::move(lhs);
      e->b = parse_and();
      e->is_state = e->a->is_state && e->b->is_state;
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_unary();
    while (peek().type == Tok::And) {
      const Token& op = take();
      auto e = node(Expr::And, op);
      e->a = std::move(lhs);
      e->b = parse_unary();
      e->is_state = e->a->is_state && e->b->is_state;
      lhs = std::move(e);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::Not: {
        take();
        auto e = node(Expr::Not, t);
        e->a = parse_unary();
        e->is_state = e->a->is_state;
        return e;
      }
      case Tok::Quant: {
        take();
        auto e = node(Expr::Quant, t, t.text);
        e->a = parse_unary();
        return e;
      }
      case Tok::Temporal: {
        take();
        auto e = node(Expr::Temporal, t, t.text);
        e->a = parse_unary();
        e->is_state = false;
        return e;
      }
      default:
        return parse_primary();
    }
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    switch (t.type) {
      case Tok::True:
      case Tok::False:
        take();
        return node(Expr::Const, t, t.text);
      case Tok::Ident:
      case Tok::Quoted:
        take();
        return node(Expr::Atom, t, t.text);
      case Tok::LParen: {
        take();
        ExprPtr e = parse_or();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::LBrack: {
        take();
        auto e = node(Expr::Binary, t);
        e->a = parse_or();
        if (peek().type != Tok::Until && peek().type != Tok::Release) fail("expected 'U' or 'R'");
        e->text = take().text;
        e->b = parse_or();
        expect(Tok::RBrack, "']'");
        e->is_state = false;
        return e;
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

PathFormula to_path(const Expr& e);

[[noreturn]] void outside_quantifier(const Expr& e) {
  // Report the first temporal operator that is not under a quantifier.
  const Expr* cur = &e;
  for (;;) {
    if (cur->type == Expr::Temporal || cur->type == Expr::Binary) break;
    if (cur->a && !cur->a->is_state) {
      cur = cur->a.get();
    } else if (cur->b && !cur->b->is_state) {
      cur = cur->b.get();
    } else {
      break;
    }
  }
  throw ParseError("temporal operator '" + cur->text + "' outside a path quantifier", cur->line, cur->col);
}

StateFormula to_state(const Expr& e) {
  if (!e.is_state) outside_quantifier(e);
  switch (e.type) {
    case Expr::Const:
      return e.text == "true" ? top() : bottom();
    case Expr::Atom:
      return atom(e.text);
    case Expr::Not:
      return negate(to_state(*e.a));
    case Expr::And:
      return conj(to_state(*e.a), to_state(*e.b));
    case Expr::Or:
      return disj(to_state(*e.a), to_state(*e.b));
    case Expr::Quant:
      return e.text == "E" ? exists(to_path(*e.a)) : forall(to_path(*e.a));
    default:
      outside_quantifier(e);
  }
}

PathFormula to_path(const Expr& e) {
  if (e.is_state) return embed(to_state(e));
  switch (e.type) {
    case Expr::Not:
      return negate(to_path(*e.a));
    case Expr::And:
      return conj(to_path(*e.a), to_path(*e.b));
    case Expr::Or:
      return disj(to_path(*e.a), to_path(*e.b));
    case Expr::Temporal: {
      PathFormula body = to_path(*e.a);
      if (e.text == "X") return next(body);
      if (e.text == "F") return eventually(body);
      if (e.text == "G") return always(body);
      if (e.text == "Fi") return inf_often(body);
      return almost_always(body);
    }
    case Expr::Binary:
      return e.text == "U" ? until(to_path(*e.a), to_path(*e.b)) : release(to_path(*e.a), to_path(*e.b));
    default:
      return embed(to_state(e));
  }
}

}  // namespace

StateFormula parse_formula(std::string_view text) {
  Parser parser(Lexer(text).run());
  ExprPtr e = parser.run();
  return to_state(*e);
}

}  // namespace fragmc
