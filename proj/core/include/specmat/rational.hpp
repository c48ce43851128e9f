#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace specmat {

/// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
/// denominator), so operator== is structural equality.
using Rational = mpq_class;

/// Parses "p", "-p", "p/q" (optional sign on p; q > 0 after normalization).
std::optional<Rational> parse_rational(const std::string& text);

/// Canonical text: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& q);

/// If q is the square of a rational, returns the nonnegative root.
std::optional<Rational> exact_sqrt(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

/// Exact complex number with rational real and imaginary parts.
struct CQ {
  Rational re;
  Rational im;

  CQ() : re(0), im(0) {}
  CQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  explicit CQ(long r) : re(r), im(0) {}
  CQ(long r, long i) : re(r), im(i) {}

  friend CQ operator+(const CQ& a, const CQ& b) { return {a.re + b.re, a.im + b.im}; }
  friend CQ operator-(const CQ& a, const CQ& b) { return {a.re - b.re, a.im - b.im}; }
  friend CQ operator-(const CQ& a) { return {-a.re, -a.im}; }
  friend CQ operator*(const CQ& a, const CQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const CQ& a, const CQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const CQ& a, const CQ& b) { return !(a == b); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  CQ conj() const { return {re, -im}; }
  /// |z|^2, exact.
  Rational norm2() const { return re * re + im * im; }
};

CQ operator/(const CQ& a, const CQ& b);  // b != 0
inline CQ operator*(const Rational& s, const CQ& a) { return {s * a.re, s * a.im}; }

/// Total order for canonical sorting (lexicographic on re, im).
int compare(const CQ& a, const CQ& b);

/// Parses "a", "bi", "a+bi", "a-bi" with rational a, b ("i" alone = 1i).
std::optional<CQ> parse_complex(const std::string& text);

/// Canonical text: "0", "a", "bi", "a+bi", "a-bi".
std::string complex_to_string(const CQ& z);

}  // namespace specmat
