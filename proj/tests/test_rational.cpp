#include <doctest.h>

#include "specmat/extended.hpp"
#include "specmat/rational.hpp"

using namespace specmat;

TEST_CASE("rational parse and print round-trip") {
  for (const char* s : {"0", "1", "-1", "7/3", "-7/3", "12"}) {
    auto q = parse_rational(s);
    REQUIRE(q.has_value());
    CHECK(rational_to_string(*q) == s);
  }
  // canonicalization
  CHECK(rational_to_string(*parse_rational("4/2")) == "2");
  CHECK(rational_to_string(*parse_rational("-2/4")) == "-1/2");
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("").has_value());
  CHECK(!parse_rational("x").has_value());
  CHECK(!parse_rational("1.5").has_value());
}

TEST_CASE("complex parse and print round-trip") {
  for (const char* s : {"0", "1", "-1/2", "i", "-i", "2i", "-2/3i", "1+i",
                        "1-i", "1/2+3/4i", "-1/2-3i"}) {
    auto z = parse_complex(s);
    REQUIRE(z.has_value());
    CHECK(complex_to_string(*z) == s);
  }
  CHECK(*parse_complex("i") == CQ(0, 1));
  CHECK(*parse_complex("1+i") == CQ(1, 1));
  CHECK(!parse_complex("1+").has_value());
  CHECK(!parse_complex("i+1").has_value());
  CHECK(!parse_complex("1 + i").has_value());
}

TEST_CASE("complex field operations") {
  CQ a{Rational(1, 2), Rational(3)};
  CQ b{Rational(-2), Rational(1, 5)};
  CHECK((a * b) * a.conj() == a * (b * a.conj()));
  CHECK(a / a == CQ(1));
  CHECK((a / b) * b == a);
  CHECK(a.norm2() == a.re * a.re + a.im * a.im);
  CHECK(compare(a, b) != 0);
  CHECK(compare(a, a) == 0);
}

TEST_CASE("exact square roots") {
  CHECK(*exact_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK(*exact_sqrt(Rational(0)) == Rational(0));
  CHECK(!exact_sqrt(Rational(2)).has_value());
  CHECK(!exact_sqrt(Rational(-1)).has_value());
}

TEST_CASE("extended counts absorb infinity") {
  ExtendedCount two(2), inf = ExtendedCount::infinity();
  CHECK((two + inf).is_infinite());
  CHECK(two + ExtendedCount(3) == ExtendedCount(5));
  CHECK(two < inf);
  CHECK(!(inf < inf));
  CHECK(inf <= inf);
  CHECK(inf.to_string() == "inf");
  CHECK_THROWS_AS((void)inf.value(), std::logic_error);
}

TEST_CASE("fredholm index only defined with one finite side") {
  auto i1 = index_of(ExtendedCount(3), ExtendedCount(1));
  REQUIRE(i1.has_value());
  CHECK(*i1 == ExtendedInt::finite(2));
  CHECK(*index_of(ExtendedCount::infinity(), ExtendedCount(0)) == ExtendedInt::pos_inf());
  CHECK(*index_of(ExtendedCount(0), ExtendedCount::infinity()) == ExtendedInt::neg_inf());
  CHECK(!index_of(ExtendedCount::infinity(), ExtendedCount::infinity()).has_value());
}
