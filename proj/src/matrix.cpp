#include "endoalg/matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace endoalg {

std::string int_to_string(const Int& x) { return x.str(); }

std::string rat_to_string(const Rat& x) {
  std::ostringstream os;
  os << numerator(x);
  if (denominator(x) != 1) os << "/" << denominator(x);
  return os.str();
}

std::string gauss_to_string(const GaussRat& c) {
  if (c.im == 0) return rat_to_string(c.re);
  if (c.re == 0) {
    if (c.im == 1) return "i";
    if (c.im == -1) return "-i";
    return rat_to_string(c.im) + "i";
  }
  std::string im_part;
  if (c.im == 1)
    im_part = "+i";
  else if (c.im == -1)
    im_part = "-i";
  else if (c.im > 0)
    im_part = "+" + rat_to_string(c.im) + "i";
  else
    im_part = rat_to_string(c.im) + "i";
  return "(" + rat_to_string(c.re) + im_part + ")";
}

std::string vec_to_string(const Vec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s;
}

Matrix::Matrix(std::size_t n, std::vector<Int> entries) : n_(n), a_(std::move(entries)) {
  if (a_.size() != n * n) throw std::invalid_argument("matrix entry count mismatch");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  Matrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n_; ++j) r.at(i, j) += aik * o.at(k, j);
    }
  return r;
}

Vec Matrix::apply(const Vec& v) const {
  Vec r(n_, Int(0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r[i] += at(i, j) * v[j];
  return r;
}

Matrix Matrix::pow(unsigned e) const {
  Matrix result = identity(n_);
  Matrix base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    base = base * base;
    e >>= 1u;
  }
  return result;
}

// Bareiss fraction-free elimination; exact over Int.
Int Matrix::det() const {
  if (n_ == 0) return 1;
  Matrix m = *this;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t piv = k;
      while (piv < n_ && m.at(piv, k) == 0) ++piv;
      if (piv == n_) return 0;
      for (std::size_t j = 0; j < n_; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n_; ++i)
      for (std::size_t j = k + 1; j < n_; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  Int d = m.at(n_ - 1, n_ - 1);
  return sign < 0 ? Int(-d) : d;
}

namespace {

struct SmithWork {
  std::size_t n;
  Matrix m, u, v, uinv;

  // Row ops act on m and u; uinv gets the inverse op on columns
  // so that u * uinv stays the identity.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m.at(a, j), m.at(b, j));
      std::swap(u.at(a, j), u.at(b, j));
      std::swap(uinv.at(j, a), uinv.at(j, b));
    }
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(m.at(i, a), m.at(i, b));
      std::swap(v.at(i, a), v.at(i, b));
    }
  }
  // row a += c * row b
  void add_row(std::size_t a, std::size_t b, const Int& c) {
    for (std::size_t j = 0; j < n; ++j) {
      m.at(a, j) += c * m.at(b, j);
      u.at(a, j) += c * u.at(b, j);
      uinv.at(j, b) -= c * uinv.at(j, a);
    }
  }
  // col a += c * col b
  void add_col(std::size_t a, std::size_t b, const Int& c) {
    for (std::size_t i = 0; i < n; ++i) {
      m.at(i, a) += c * m.at(i, b);
      v.at(i, a) += c * v.at(i, b);
    }
  }
  void negate_row(std::size_t a) {
    for (std::size_t j = 0; j < n; ++j) {
      m.at(a, j) = -m.at(a, j);
      u.at(a, j) = -u.at(a, j);
      uinv.at(j, a) = -uinv.at(j, a);
    }
  }
};

}  // namespace

SmithForm smith_form(const Matrix& a) {
  const std::size_t n = a.dim();
  SmithWork w{n, a, Matrix::identity(n), Matrix::identity(n), Matrix::identity(n)};

  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero pivot in the trailing block, first in row-major order.
      std::size_t pi = n, pj = n;
      Int best;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int& x = w.m.at(i, j);
          if (x == 0) continue;
          Int ax = int_abs(x);
          if (pi == n || ax < best) {
            best = ax;
            pi = i;
            pj = j;
          }
        }
      if (pi == n) throw std::invalid_argument("smith_form: singular matrix");
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (w.m.at(i, t) == 0) continue;
        Int q = w.m.at(i, t) / w.m.at(t, t);
        w.add_row(i, t, -q);
        if (w.m.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.m.at(t, j) == 0) continue;
        Int q = w.m.at(t, j) / w.m.at(t, t);
        w.add_col(j, t, -q);
        if (w.m.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the remaining block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < n && divisible; ++i)
        for (std::size_t j = t + 1; j < n && divisible; ++j)
          if (w.m.at(i, j) % w.m.at(t, t) != 0) {
            w.add_row(t, i, Int(1));
            divisible = false;
          }
      if (divisible) break;
    }
    if (w.m.at(t, t) < 0) w.negate_row(t);
  }

  SmithForm out;
  out.diag.resize(n);
  for (std::size_t t = 0; t < n; ++t) out.diag[t] = w.m.at(t, t);
  out.u = std::move(w.u);
  out.v = std::move(w.v);
  out.uinv = std::move(w.uinv);
  return out;
}

}  // namespace endoalg
