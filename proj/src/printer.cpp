#include "endoalg/printer.hpp"

namespace endoalg {

namespace {

bool vec_is_zero(const Vec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

std::string group_body(const GroupElement& g) {
  if (g.coords.size() == 1) return int_to_string(g.coords[0]);
  return "[" + vec_to_string(g.coords) + "]";
}

}  // namespace

std::string print_monomial(const Monomial& m) {
  std::string out;
  auto append = [&out](const std::string& piece) {
    if (!out.empty()) out += " ";
    out += piece;
  };
  if (!vec_is_zero(m.a.coords)) append("u[" + vec_to_string(m.a.coords) + "]");
  if (m.p == 1) append("s");
  if (m.p > 1) append("s^" + std::to_string(m.p));
  if (m.q == 1) append("s*");
  if (m.q > 1) append("s*^" + std::to_string(m.q));
  if (!vec_is_zero(m.b.coords)) append("u[" + vec_to_string(m.b.coords) + "]");
  return out.empty() ? "1" : out;
}

std::string print_element(const AlgebraElement& x) {
  if (x.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [mono, coeff] : x.terms()) {
    bool negative = false;
    std::string mag;
    if (coeff.im == 0) {
      negative = coeff.re < 0;
      mag = rat_to_string(negative ? Rat(-coeff.re) : coeff.re);
    } else if (coeff.re == 0) {
      negative = coeff.im < 0;
      Rat m = negative ? Rat(-coeff.im) : coeff.im;
      mag = (m == 1) ? "i" : rat_to_string(m) + "i";
    } else {
      mag = gauss_to_string(coeff);  // parenthesized, sign kept inside
    }
    std::string body = print_monomial(mono);
    std::string text;
    if (body == "1")
      text = mag;
    else if (mag == "1")
      text = body;
    else
      text = mag + " " + body;
    if (first) {
      out = (negative ? "-" : "") + text;
      first = false;
    } else {
      out += (negative ? " - " : " + ") + text;
    }
  }
  return out;
}

std::string print_group(const GroupElement& g) { return group_body(g); }

std::string print_qterm(const QTerm& t) {
  std::string body = "qterm(" + std::to_string(t.n) + "," + group_body(t.h) + "," +
                     group_body(t.fg) + "," + std::to_string(t.fk) + "," + group_body(t.hp) +
                     "," + std::to_string(t.m) + ")";
  if (t.coeff == GaussRat(Rat(1))) return body;
  if (t.coeff == GaussRat(Rat(-1))) return "-" + body;
  return gauss_to_string(t.coeff) + " " + body;
}

std::string print_point(const ProfinitePoint& x) {
  return group_body(x.rep) + "@" + std::to_string(x.depth);
}

std::string print_sd(const SemidirectElement& t) {
  return "t(" + group_body(t.a.g) + ";" + std::to_string(t.a.depth) + ";" +
         std::to_string(t.n) + ")";
}

std::string print_cylinder(const Cylinder& c) {
  std::string out = "V[" + std::to_string(c.m) + "]{";
  for (std::size_t i = 0; i < c.classes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c.classes[i]);
  }
  return out + "}";
}

}  // namespace endoalg
