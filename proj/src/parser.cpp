#include "endoalg/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "endoalg/errors.hpp"

namespace endoalg {

namespace {

struct Token {
  enum class Kind { End, Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen,
                    LBrack, RBrack, LBrace, RBrace, Comma, Semi, At };
  Kind kind = Kind::End;
  std::string text;
  std::size_t pos = 0;
  bool glued = false;  // no whitespace between this token and the previous one
};

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t prev_end = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    Token t;
    t.pos = i;
    t.glued = (i == prev_end) && !out.empty();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::Number;
      t.text = src.substr(i, j - i);
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isalpha(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::Ident;
      t.text = src.substr(i, j - i);
      i = j;
    } else {
      switch (c) {
        case '+': t.kind = Token::Kind::Plus; break;
        case '-': t.kind = Token::Kind::Minus; break;
        case '*': t.kind = Token::Kind::Star; break;
        case '/': t.kind = Token::Kind::Slash; break;
        case '^': t.kind = Token::Kind::Caret; break;
        case '(': t.kind = Token::Kind::LParen; break;
        case ')': t.kind = Token::Kind::RParen; break;
        case '[': t.kind = Token::Kind::LBrack; break;
        case ']': t.kind = Token::Kind::RBrack; break;
        case '{': t.kind = Token::Kind::LBrace; break;
        case '}': t.kind = Token::Kind::RBrace; break;
        case ',': t.kind = Token::Kind::Comma; break;
        case ';': t.kind = Token::Kind::Semi; break;
        case '@': t.kind = Token::Kind::At; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", i);
      }
      t.text = c;
      ++i;
    }
    prev_end = i;
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = src.size();
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(const Context& ctx, const std::string& src) : ctx_(ctx), toks_(tokenize(src)) {}

  AlgebraElement element() {
    AlgebraElement x = expr();
    expect_end();
    return x;
  }

  std::vector<QTerm> qterm_sum() {
    std::vector<QTerm> out;
    GaussRat sign(Rat(1));
    if (accept(Token::Kind::Minus))
      sign = GaussRat(Rat(-1));
    else
      accept(Token::Kind::Plus);
    out.push_back(signed_qterm(sign));
    while (!at(Token::Kind::End)) {
      if (accept(Token::Kind::Minus))
        sign = GaussRat(Rat(-1));
      else if (accept(Token::Kind::Plus))
        sign = GaussRat(Rat(1));
      else
        throw ParseError("expected '+' or '-' between family terms", peek().pos);
      out.push_back(signed_qterm(sign));
    }
    return out;
  }

  SemidirectElement sd() {
    expect_ident("t");
    expect(Token::Kind::LParen, "'('");
    GroupElement g = group_arg();
    expect(Token::Kind::Semi, "';'");
    long depth = signed_long();
    expect(Token::Kind::Semi, "';'");
    long n = signed_long();
    expect(Token::Kind::RParen, "')'");
    expect_end();
    if (depth < 0) throw ParseError("depth must be nonnegative", peek().pos);
    return sd_make(ctx_, g, static_cast<int>(depth), static_cast<int>(n));
  }

  ProfinitePoint point() {
    GroupElement g = group_arg();
    expect(Token::Kind::At, "'@'");
    long depth = signed_long();
    expect_end();
    if (depth < 0 || depth > ctx_.max_depth())
      throw ParseError("point depth out of range", peek().pos);
    return make_point(ctx_, g, static_cast<int>(depth));
  }

  Cylinder cylinder() {
    expect_ident("V");
    expect(Token::Kind::LBrack, "'['");
    long m = signed_long();
    expect(Token::Kind::RBrack, "']'");
    expect(Token::Kind::LBrace, "'{'");
    std::vector<std::size_t> classes;
    classes.push_back(class_index());
    while (accept(Token::Kind::Comma)) classes.push_back(class_index());
    expect(Token::Kind::RBrace, "'}'");
    expect_end();
    if (m < 0 || m > ctx_.max_depth())
      throw ParseError("cylinder level out of range", peek().pos);
    try {
      return make_cylinder(ctx_, static_cast<int>(m), std::move(classes));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), 0);
    }
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool at(Token::Kind k) const { return peek().kind == k; }

  bool accept(Token::Kind k) {
    if (!at(k)) return false;
    ++i_;
    return true;
  }

  const Token& expect(Token::Kind k, const char* what) {
    if (!at(k)) throw ParseError(std::string("expected ") + what, peek().pos);
    return toks_[i_++];
  }

  void expect_ident(const std::string& name) {
    if (!at(Token::Kind::Ident) || peek().text != name)
      throw ParseError("expected '" + name + "'", peek().pos);
    ++i_;
  }

  void expect_end() {
    if (!at(Token::Kind::End)) throw ParseError("trailing input", peek().pos);
  }

  Int number() {
    const Token& t = expect(Token::Kind::Number, "a number");
    return Int(t.text);
  }

  long signed_long() {
    bool neg = accept(Token::Kind::Minus);
    Int v = number();
    if (v > 1000000000) throw ParseError("integer argument too large", peek().pos);
    long out = v.convert_to<long>();
    return neg ? -out : out;
  }

  std::size_t class_index() {
    Int v = number();
    if (v > 1000000000) throw ParseError("class index too large", peek().pos);
    return v.convert_to<std::size_t>();
  }

  Vec int_list() {
    Vec v;
    bool neg = accept(Token::Kind::Minus);
    Int first = number();
    v.push_back(neg ? Int(-first) : first);
    while (accept(Token::Kind::Comma)) {
      neg = accept(Token::Kind::Minus);
      Int nx = number();
      v.push_back(neg ? Int(-nx) : nx);
    }
    return v;
  }

  GroupElement checked_make(Vec v, std::size_t pos) {
    if (v.size() != ctx_.rank())
      throw ParseError("expected " + std::to_string(ctx_.rank()) + " coordinates", pos);
    return ctx_.make(std::move(v));
  }

  // Bare integer (rank one) or bracketed coordinate list.
  GroupElement group_arg() {
    std::size_t pos = peek().pos;
    if (accept(Token::Kind::LBrack)) {
      Vec v = int_list();
      expect(Token::Kind::RBrack, "']'");
      return checked_make(std::move(v), pos);
    }
    bool neg = accept(Token::Kind::Minus);
    Int v = number();
    Vec one;
    one.push_back(neg ? Int(-v) : v);
    return checked_make(std::move(one), pos);
  }

  AlgebraElement expr() {
    bool neg = false;
    if (accept(Token::Kind::Minus))
      neg = true;
    else
      accept(Token::Kind::Plus);
    AlgebraElement x = term();
    if (neg) x = scale(x, GaussRat(Rat(-1)));
    for (;;) {
      if (accept(Token::Kind::Plus)) {
        x = add(x, term());
      } else if (accept(Token::Kind::Minus)) {
        x = sub(x, term());
      } else {
        return x;
      }
    }
  }

  bool starts_factor() const {
    switch (peek().kind) {
      case Token::Kind::Number:
      case Token::Kind::Ident:
      case Token::Kind::LParen:
        return true;
      case Token::Kind::Star:
        return !peek().glued;  // explicit multiplication sign
      default:
        return false;
    }
  }

  AlgebraElement term() {
    AlgebraElement x = factor();
    while (starts_factor()) {
      if (at(Token::Kind::Star)) ++i_;  // spaced '*': multiply
      x = mul(ctx_, x, factor());
    }
    return x;
  }

  AlgebraElement factor() {
    AlgebraElement x = atom();
    for (;;) {
      if (at(Token::Kind::Star) && peek().glued) {
        ++i_;
        x = adjoint(ctx_, x);
      } else if (accept(Token::Kind::Caret)) {
        Int e = number();
        if (e > 4096) throw ParseError("exponent too large", peek().pos);
        long n = e.convert_to<long>();
        AlgebraElement p = el_unit(ctx_);
        for (long k = 0; k < n; ++k) p = mul(ctx_, p, x);
        x = p;
      } else {
        return x;
      }
    }
  }

  AlgebraElement atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Token::Kind::Number: {
        Int num = number();
        if (accept(Token::Kind::Slash)) {
          Int den = number();
          if (den == 0) throw ParseError("zero denominator", t.pos);
          return scale(el_unit(ctx_), GaussRat(Rat(num, den)));
        }
        return scale(el_unit(ctx_), GaussRat(Rat(num)));
      }
      case Token::Kind::LParen: {
        ++i_;
        AlgebraElement x = expr();
        expect(Token::Kind::RParen, "')'");
        return x;
      }
      case Token::Kind::Ident: {
        if (t.text == "i") {
          ++i_;
          return scale(el_unit(ctx_), GaussRat(Rat(0), Rat(1)));
        }
        if (t.text == "s") {
          ++i_;
          return el_s(ctx_);
        }
        if (t.text == "u") {
          ++i_;
          std::size_t pos = peek().pos;
          expect(Token::Kind::LBrack, "'['");
          Vec v = int_list();
          expect(Token::Kind::RBrack, "']'");
          return el_u(ctx_, checked_make(std::move(v), pos));
        }
        if (t.text == "qterm") return from_qterm(ctx_, qterm_atom());
        throw ParseError("unknown symbol '" + t.text + "'", t.pos);
      }
      default:
        throw ParseError("expected a factor", t.pos);
    }
  }

  QTerm qterm_atom() {
    expect_ident("qterm");
    expect(Token::Kind::LParen, "'('");
    QTerm q;
    q.coeff = GaussRat(Rat(1));
    long n = signed_long();
    expect(Token::Kind::Comma, "','");
    q.h = group_arg();
    expect(Token::Kind::Comma, "','");
    q.fg = group_arg();
    expect(Token::Kind::Comma, "','");
    long k = signed_long();
    expect(Token::Kind::Comma, "','");
    q.hp = group_arg();
    expect(Token::Kind::Comma, "','");
    long m = signed_long();
    expect(Token::Kind::RParen, "')'");
    if (n < 0 || k < 0 || m < 0)
      throw ParseError("qterm star counts and level must be nonnegative", peek().pos);
    q.n = static_cast<int>(n);
    q.fk = static_cast<int>(k);
    q.m = static_cast<int>(m);
    return q;
  }

  QTerm signed_qterm(const GaussRat& sign) {
    GaussRat coeff = sign;
    if (at(Token::Kind::Number)) {
      Int num = number();
      Rat mag(num);
      if (accept(Token::Kind::Slash)) {
        Int den = number();
        if (den == 0) throw ParseError("zero denominator", peek().pos);
        mag = Rat(num, den);
      }
      if (at(Token::Kind::Ident) && peek().text == "i") {
        ++i_;
        coeff *= GaussRat(Rat(0), mag);
      } else {
        coeff *= GaussRat(mag);
      }
      if (at(Token::Kind::Star) && !peek().glued) ++i_;
    } else if (at(Token::Kind::Ident) && peek().text == "i") {
      ++i_;
      coeff *= GaussRat(Rat(0), Rat(1));
      if (at(Token::Kind::Star) && !peek().glued) ++i_;
    }
    QTerm q = qterm_atom();
    q.coeff = coeff;
    return q;
  }

  const Context& ctx_;
  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

std::string read_file_arg(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file '" + path + "'", 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

AlgebraElement parse_element(const Context& ctx, const std::string& src) {
  return Parser(ctx, src).element();
}

AlgebraElement parse_element_arg(const Context& ctx, const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return parse_element(ctx, read_file_arg(arg.substr(1)));
  return parse_element(ctx, arg);
}

std::vector<QTerm> parse_qterm_sum(const Context& ctx, const std::string& src) {
  return Parser(ctx, src).qterm_sum();
}

std::vector<QTerm> parse_qterm_sum_arg(const Context& ctx, const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return parse_qterm_sum(ctx, read_file_arg(arg.substr(1)));
  return parse_qterm_sum(ctx, arg);
}

SemidirectElement parse_sd(const Context& ctx, const std::string& src) {
  return Parser(ctx, src).sd();
}

ProfinitePoint parse_point(const Context& ctx, const std::string& src) {
  return Parser(ctx, src).point();
}

Cylinder parse_cylinder(const Context& ctx, const std::string& src) {
  return Parser(ctx, src).cylinder();
}

}  // namespace endoalg
