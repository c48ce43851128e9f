#include "specmat/rational.hpp"

#include <stdexcept>

namespace specmat {

std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::string s = text;
  // mpq_class accepts "p/q" directly but tolerates junk poorly; validate first.
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  if (i >= s.size()) return std::nullopt;
  bool seen_slash = false;
  bool digits_before = false, digits_after = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (seen_slash || !digits_before) return std::nullopt;
      seen_slash = true;
      if (i + 1 < s.size() && (s[i + 1] == '+' || s[i + 1] == '-')) return std::nullopt;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    (seen_slash ? digits_after : digits_before) = true;
  }
  if (!digits_before || (seen_slash && !digits_after)) return std::nullopt;
  if (s[0] == '+') s = s.substr(1);
  try {
    Rational q(s);
    if (seen_slash && q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

CQ operator/(const CQ& a, const CQ& b) {
  Rational n2 = b.norm2();
  if (sgn(n2) == 0) throw std::domain_error("CQ: division by zero");
  CQ num = a * b.conj();
  return {num.re / n2, num.im / n2};
}

int compare(const CQ& a, const CQ& b) {
  int c = cmp(a.re, b.re);
  if (c != 0) return c;
  return cmp(a.im, b.im);
}

std::optional<CQ> parse_complex(const std::string& text) {
  std::string s = text;
  if (s.empty()) return std::nullopt;
  // Pure imaginary or pure real; otherwise split at the sign separating parts.
  if (s.back() == 'i') {
    // Find the sign that splits real and imaginary parts, scanning from the
    // right but skipping a leading sign and signs right after '/'.
    std::string body = s.substr(0, s.size() - 1);
    for (std::size_t i = body.size(); i-- > 1;) {
      if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/') {
        auto re = parse_rational(body.substr(0, i));
        std::string imtxt = body.substr(i);
        if (imtxt == "+") imtxt = "1";
        else if (imtxt == "-") imtxt = "-1";
        auto im = parse_rational(imtxt);
        if (re && im) return CQ(*re, *im);
        return std::nullopt;
      }
    }
    if (body.empty()) return CQ(Rational(0), Rational(1));
    if (body == "-") return CQ(Rational(0), Rational(-1));
    if (body == "+") return CQ(Rational(0), Rational(1));
    auto im = parse_rational(body);
    if (im) return CQ(Rational(0), *im);
    return std::nullopt;
  }
  auto re = parse_rational(s);
  if (re) return CQ(*re, Rational(0));
  return std::nullopt;
}

std::string complex_to_string(const CQ& z) {
  if (sgn(z.im) == 0) return rational_to_string(z.re);
  std::string im_part;
  if (z.im == 1) im_part = "i";
  else if (z.im == -1) im_part = "-i";
  else im_part = rational_to_string(z.im) + "i";
  if (sgn(z.re) == 0) return im_part;
  if (sgn(z.im) > 0) return rational_to_string(z.re) + "+" + im_part;
  return rational_to_string(z.re) + im_part;  // im_part carries the minus sign
}

}  // namespace specmat
