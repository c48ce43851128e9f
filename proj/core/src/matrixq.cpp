#include "specmat/matrixq.hpp"

#include <stdexcept>

namespace specmat {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = CQ{Rational(1), Rational(0)};
  return m;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  CMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const CQ& f = at(i, k);
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) = r.at(i, j) + f * o.at(k, j);
    }
  return r;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  CMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
  return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix diff shape mismatch");
  CMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
  return r;
}

CMatrix CMatrix::scaled(const CQ& f) const {
  CMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * f;
  return r;
}

CMatrix CMatrix::conj_transpose() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
  return r;
}

CQ CMatrix::trace() const {
  CQ t;
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t = t + at(i, i);
  return t;
}

std::vector<std::size_t> rref(CMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a.at(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(p, j), a.at(row, j));
    CQ inv = CQ{Rational(1), Rational(0)} / a.at(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) = a.at(row, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a.at(i, col).is_zero()) continue;
      CQ f = a.at(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        a.at(i, j) = a.at(i, j) - f * a.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t exact_rank(CMatrix a) { return rref(a).size(); }

std::vector<std::vector<CQ>> nullspace(const CMatrix& a) {
  CMatrix m = a;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<CQ>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<CQ> v(m.cols());
    v[free] = CQ{Rational(1), Rational(0)};
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = CQ{} - m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<CQ>> solve_linear(const CMatrix& a, const std::vector<CQ>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
  CMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // 0 = 1 row
  std::vector<CQ> x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols());
  return x;
}

std::vector<CQ> mat_vec(const CMatrix& a, const std::vector<CQ>& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("vector length mismatch");
  std::vector<CQ> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] = y[i] + a.at(i, j) * x[j];
  return y;
}

std::vector<CQ> char_poly(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("char_poly needs a square matrix");
  std::size_t n = a.rows();
  std::vector<CQ> c(n + 1);
  c[n] = CQ{Rational(1), Rational(0)};
  if (n == 0) return c;
  // Faddeev-LeVerrier: N_1 = I, c_{n-k} = -tr(A N_k)/k, N_{k+1} = A N_k + c_{n-k} I.
  CMatrix N = CMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    CMatrix AN = a * N;
    CQ ck = AN.trace() * CQ{Rational(-1) / Rational(static_cast<long>(k)), Rational(0)};
    c[n - k] = ck;
    if (k < n) N = AN + CMatrix::identity(n).scaled(ck);
  }
  return c;
}

CQ eval_poly(const std::vector<CQ>& coeffs, const CQ& x) {
  CQ acc;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

std::vector<CQ> deflate(const std::vector<CQ>& coeffs, const CQ& root) {
  if (coeffs.size() < 2) throw std::invalid_argument("cannot deflate a constant");
  std::size_t n = coeffs.size() - 1;
  std::vector<CQ> q(n);
  CQ carry = coeffs[n];
  for (std::size_t i = n; i-- > 0;) {
    q[i] = carry;
    carry = coeffs[i] + carry * root;
  }
  if (!carry.is_zero()) throw std::invalid_argument("deflation at a non-root");
  return q;
}

}  // namespace specmat
