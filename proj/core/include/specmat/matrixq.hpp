#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "specmat/rational.hpp"

namespace specmat {

/// Dense matrix over the Gaussian rationals, row-major, exact arithmetic.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  CQ& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const CQ& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix scaled(const CQ& f) const;
  CMatrix conj_transpose() const;
  CQ trace() const;
  bool operator==(const CMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<CQ> a_;
};

/// In-place reduced row echelon form; returns the pivot column indices.
std::vector<std::size_t> rref(CMatrix& a);

std::size_t exact_rank(CMatrix a);

/// Basis of the right nullspace (column vectors of length cols()).
std::vector<std::vector<CQ>> nullspace(const CMatrix& a);

/// One solution of A x = b when consistent, choosing zero for free variables.
std::optional<std::vector<CQ>> solve_linear(const CMatrix& a, const std::vector<CQ>& b);

std::vector<CQ> mat_vec(const CMatrix& a, const std::vector<CQ>& x);

/// Coefficients c[0..n] of det(xI - A), low degree first, c[n] = 1.
std::vector<CQ> char_poly(const CMatrix& a);

CQ eval_poly(const std::vector<CQ>& coeffs, const CQ& x);

/// Divide by (x - root); the caller guarantees eval_poly(coeffs, root) == 0.
std::vector<CQ> deflate(const std::vector<CQ>& coeffs, const CQ& root);

}  // namespace specmat
