#include <doctest.h>

#include "specmat/symvec.hpp"

using namespace specmat;

TEST_CASE("cantor pairing") {
  CHECK(cantor_pair(0, 0) == 0);
  CHECK(cantor_pair(1, 0) == 1);
  CHECK(cantor_pair(0, 1) == 2);
  CHECK(cantor_pair(2, 0) == 3);
  for (std::uint64_t k = 0; k < 200; ++k) {
    auto [a, b] = cantor_unpair(k);
    CHECK(cantor_pair(a, b) == k);
  }
}

TEST_CASE("finite vectors") {
  SymbolicVector v = SymbolicVector::basis(3);
  CHECK(v.coeff_at(3) == CQ(1));
  CHECK(v.coeff_at(2).is_zero());
  v.add_finite(3, CQ(-1));
  CHECK(v.is_zero());

  SymbolicVector w;
  w.add_finite(0, CQ(1));
  w.add_finite(5, CQ{Rational(1, 2), Rational(1)});
  CHECK(w.is_finite_support());
  CHECK(w.finite_support_bound() == 6);
  CHECK((w + w) == w.scaled(CQ(2)));
  CHECK((w - w).is_zero());
}

TEST_CASE("geometric tails evaluate pointwise") {
  SymbolicVector g;
  g.add_geometric(CQ(1), CQ{Rational(1, 2), Rational(0)}, 0, 1);
  CHECK(!g.is_finite_support());
  CHECK(g.coeff_at(0) == CQ(1));
  CHECK(g.coeff_at(3) == CQ{Rational(1, 8), Rational(0)});

  // stride 2 leaves the odd coordinates empty
  SymbolicVector h;
  h.add_geometric(CQ(2), CQ{Rational(1, 3), Rational(0)}, 1, 2);
  CHECK(h.coeff_at(0).is_zero());
  CHECK(h.coeff_at(1) == CQ(2));
  CHECK(h.coeff_at(2).is_zero());
  CHECK(h.coeff_at(3) == CQ{Rational(2, 3), Rational(0)});

  // a tail minus its own pointwise copy cancels
  SymbolicVector g2;
  g2.add_geometric(CQ(1), CQ{Rational(1, 2), Rational(0)}, 0, 1);
  CHECK((g - g2).is_zero());
}

TEST_CASE("ratio zero collapses to finite support") {
  SymbolicVector g;
  g.add_geometric(CQ(3), CQ(0), 2, 1);
  CHECK(g.is_finite_support());
  CHECK(g.coeff_at(2) == CQ(3));
  CHECK(g.coeff_at(3).is_zero());
  CHECK(g.finite_support_bound() == 3);
}

TEST_CASE("reroute maps") {
  SymbolicVector v;
  v.add_finite(1, CQ(1));
  v.add_geometric(CQ(1), CQ{Rational(1, 2), Rational(0)}, 0, 1);

  SymbolicVector even = v.mapped_affine(2, 0);
  CHECK(even.coeff_at(2) == v.coeff_at(1));
  CHECK(even.coeff_at(6) == v.coeff_at(3));
  CHECK(even.coeff_at(3).is_zero());

  SymbolicVector copy1 = v.into_copy(1);
  CHECK(copy1.coeff_at(cantor_pair(0, 1)) == v.coeff_at(0));
  CHECK(copy1.coeff_at(cantor_pair(4, 1)) == v.coeff_at(4));
  CHECK(copy1.coeff_at(cantor_pair(2, 0)).is_zero());
}
