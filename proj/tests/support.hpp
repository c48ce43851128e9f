#pragma once

// Seeded random generators shared by the property tests and the acceptance
// suite. Everything is deterministic: same seed, same values, same order.

#include <cstdint>
#include <random>
#include <vector>

#include "specmat/model.hpp"
#include "specmat/region.hpp"
#include "specmat/tuples.hpp"

namespace testsupport {

using specmat::CQ;
using specmat::ExtendedCount;
using specmat::Model;
using specmat::Rational;

using Rng = std::mt19937_64;

inline Rational random_rational(Rng& rng, long num_bound = 8, long den_bound = 4) {
  std::uniform_int_distribution<long> num(-num_bound, num_bound);
  std::uniform_int_distribution<long> den(1, den_bound);
  // mpq_class(n, d) does not reduce; engine arithmetic assumes canonical form
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline CQ random_point(Rng& rng) { return {random_rational(rng), random_rational(rng)}; }

inline CQ random_nonzero_point(Rng& rng) {
  for (;;) {
    CQ z = random_point(rng);
    if (!z.is_zero()) return z;
  }
}

inline Rational random_radius(Rng& rng) {
  std::uniform_int_distribution<long> num(1, 6);
  std::uniform_int_distribution<long> den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline specmat::Primitive random_primitive(Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  switch (pick(rng)) {
    case 0: return specmat::Primitive::empty();
    case 1: return specmat::Primitive::full_plane();
    case 2: return specmat::Primitive::point(random_point(rng));
    case 3: return specmat::Primitive::circle(random_point(rng), random_radius(rng));
    case 4: return specmat::Primitive::open_disk(random_point(rng), random_radius(rng));
    default: return specmat::Primitive::closed_disk(random_point(rng), random_radius(rng));
  }
}

/// Random boolean expression over a small pool of primitives; depth-bounded.
inline specmat::RegionExpr random_region(Rng& rng,
                                         const std::vector<specmat::Primitive>& pool,
                                         int depth = 3) {
  using specmat::RegionExpr;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 3);
  switch (pick(rng)) {
    case 1: {
      std::uniform_int_distribution<int> arity(2, 3);
      std::vector<RegionExpr> args;
      for (int i = arity(rng); i > 0; --i) args.push_back(random_region(rng, pool, depth - 1));
      return RegionExpr::union_of(std::move(args));
    }
    case 2: {
      std::uniform_int_distribution<int> arity(2, 3);
      std::vector<RegionExpr> args;
      for (int i = arity(rng); i > 0; --i) args.push_back(random_region(rng, pool, depth - 1));
      return RegionExpr::intersection_of(std::move(args));
    }
    case 3:
      return RegionExpr::complement(random_region(rng, pool, depth - 1));
    default: {
      std::uniform_int_distribution<std::size_t> leaf(0, pool.size() - 1);
      return RegionExpr::leaf(pool[leaf(rng)]);
    }
  }
}

/// Scale factor with rational modulus: q, qi, or q(3/5 + 4/5 i).
inline CQ random_scale_factor(Rng& rng) {
  Rational q;
  do {
    q = random_rational(rng, 4, 2);
  } while (specmat::sign(q) == 0);
  std::uniform_int_distribution<int> pick(0, 2);
  switch (pick(rng)) {
    case 0: return {q, Rational(0)};
    case 1: return {Rational(0), q};
    default: return {q * Rational(3, 5), q * Rational(4, 5)};
  }
}

inline ExtendedCount random_dim(Rng& rng) {
  std::uniform_int_distribution<int> pick(0, 4);
  int v = pick(rng);
  return v == 4 ? ExtendedCount::infinity() : ExtendedCount(static_cast<std::uint64_t>(v));
}

/// Upper triangular matrices keep the spectrum inside the rationals.
inline specmat::CMatrix random_triangular(Rng& rng, std::size_t dim) {
  specmat::CMatrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j)
      m.at(i, j) = i == j ? CQ{random_rational(rng, 3, 2), Rational(0)} : random_point(rng);
  return m;
}

inline Model random_model(Rng& rng, int depth = 2) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 7 : 11);
  switch (pick(rng)) {
    case 0: return Model::shift();
    case 1: return Model::backshift();
    case 2: return Model::bishift();
    case 3: return Model::bishift_back();
    case 4: return Model::identity(random_dim(rng));
    case 5: return Model::zero(random_dim(rng));
    case 6: {
      std::uniform_int_distribution<int> count(1, 3);
      std::vector<std::pair<CQ, ExtendedCount>> vals;
      for (int i = count(rng); i > 0; --i) {
        std::uniform_int_distribution<int> mult(0, 3);
        int m = mult(rng);
        CQ v = random_point(rng);
        // diagonal() rejects one value with two multiplicities
        bool dup = false;
        for (const auto& e : vals) dup = dup || e.first == v;
        if (dup) continue;
        vals.emplace_back(v, m == 3 ? ExtendedCount::infinity() : ExtendedCount(m + 1));
      }
      if (vals.empty()) vals.emplace_back(random_point(rng), ExtendedCount(1));
      return Model::diagonal(std::move(vals));
    }
    case 7: {
      std::uniform_int_distribution<std::size_t> dim(1, 3);
      return Model::finite_matrix(random_triangular(rng, dim(rng)));
    }
    case 8: return Model::translate(random_model(rng, depth - 1), random_point(rng));
    case 9: return Model::scale(random_model(rng, depth - 1), random_scale_factor(rng));
    case 10:
      return Model::direct_sum(random_model(rng, depth - 1), random_model(rng, depth - 1));
    default: return Model::inflate(random_model(rng, depth - 1));
  }
}

inline specmat::DiagonalTuple random_tuple(Rng& rng, std::size_t min_n = 2,
                                           std::size_t max_n = 4) {
  std::uniform_int_distribution<std::size_t> size(min_n, max_n);
  std::vector<Model> entries;
  for (std::size_t i = size(rng); i > 0; --i) entries.push_back(random_model(rng));
  return specmat::DiagonalTuple(std::move(entries));
}

/// One representative per catalog constructor.
inline std::vector<Model> catalog_representatives() {
  return {
      Model::shift(),
      Model::backshift(),
      Model::bishift(),
      Model::bishift_back(),
      Model::identity(ExtendedCount::infinity()),
      Model::zero(ExtendedCount::infinity()),
      Model::diagonal({{CQ(0), ExtendedCount::infinity()},
                       {CQ{Rational(1, 2), Rational(1)}, ExtendedCount(2)}}),
      Model::finite_matrix([] {
        specmat::CMatrix m(3, 3);
        m.at(0, 0) = CQ(1);
        m.at(0, 2) = CQ{Rational(1, 2), Rational(0)};
        m.at(1, 2) = CQ(1);
        m.at(2, 2) = CQ(0, 1);
        return m;
      }()),
      Model::translate(Model::shift(), CQ{Rational(1, 2), Rational(-1)}),
      Model::scale(Model::backshift(), CQ{Rational(0), Rational(2)}),
      Model::direct_sum(Model::shift(), Model::zero(ExtendedCount(2))),
      Model::inflate(Model::shift()),
  };
}

}  // namespace testsupport
