#pragma once

#include <cstddef>
#include <vector>

#include "endoalg/numeric.hpp"

namespace endoalg {

// Dense square integer matrix, row-major.
class Matrix {
 public:
  Matrix() : n_(0) {}
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, Int(0)) {}
  Matrix(std::size_t n, std::vector<Int> entries);

  static Matrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  Int& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Vec apply(const Vec& v) const;
  Matrix pow(unsigned e) const;
  Int det() const;

  bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }

 private:
  std::size_t n_;
  std::vector<Int> a_;
};

// Smith decomposition of a nonsingular integer matrix A:
//   U * A * V = diag(d_1, ..., d_n), U and V unimodular,
//   d_i > 0 and d_1 | d_2 | ... | d_n.
// uinv is the exact integer inverse of U.
struct SmithForm {
  std::vector<Int> diag;
  Matrix u;
  Matrix v;
  Matrix uinv;
};

SmithForm smith_form(const Matrix& a);

}  // namespace endoalg
