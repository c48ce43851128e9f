#pragma once

#include <memory>
#include <string>
#include <vector>

#include "specmat/rational.hpp"

namespace specmat {

/// Primitive subsets of the complex plane with exact rational data.
enum class PrimKind { Empty, FullPlane, Point, Circle, OpenDisk, ClosedDisk };

struct Primitive {
  PrimKind kind = PrimKind::Empty;
  CQ center;    // the point itself for Point
  Rational radius;  // > 0 for Circle/OpenDisk/ClosedDisk

  static Primitive empty() { return {PrimKind::Empty, CQ(), Rational(0)}; }
  static Primitive full_plane() { return {PrimKind::FullPlane, CQ(), Rational(0)}; }
  static Primitive point(CQ p) { return {PrimKind::Point, std::move(p), Rational(0)}; }
  static Primitive circle(CQ c, Rational r);
  static Primitive open_disk(CQ c, Rational r);
  static Primitive closed_disk(CQ c, Rational r);

  friend bool operator==(const Primitive& a, const Primitive& b) {
    return a.kind == b.kind && a.center == b.center && a.radius == b.radius;
  }
};

/// Total order for canonical primitive sorting.
int compare(const Primitive& a, const Primitive& b);

/// Exact membership test.
bool contains(const Primitive& p, const CQ& q);

enum class RegionOp { Leaf, Union, Intersection, Complement, Difference };

/// Immutable boolean expression over primitives. Copies share structure.
class RegionExpr {
 public:
  RegionExpr() : RegionExpr(leaf(Primitive::empty())) {}

  static RegionExpr leaf(Primitive p);
  static RegionExpr point(CQ p) { return leaf(Primitive::point(std::move(p))); }
  static RegionExpr circle(CQ c, Rational r) { return leaf(Primitive::circle(std::move(c), std::move(r))); }
  static RegionExpr open_disk(CQ c, Rational r) { return leaf(Primitive::open_disk(std::move(c), std::move(r))); }
  static RegionExpr closed_disk(CQ c, Rational r) { return leaf(Primitive::closed_disk(std::move(c), std::move(r))); }
  static RegionExpr empty() { return leaf(Primitive::empty()); }
  static RegionExpr full_plane() { return leaf(Primitive::full_plane()); }

  static RegionExpr union_of(std::vector<RegionExpr> args);
  static RegionExpr intersection_of(std::vector<RegionExpr> args);
  static RegionExpr complement(RegionExpr a);
  static RegionExpr difference(RegionExpr a, RegionExpr b);
  /// Generic n-ary combine; Complement takes 1 argument, Difference takes 2,
  /// Union/Intersection take any number (empty union = ∅, empty intersection = ℂ).
  static RegionExpr combine(RegionOp op, std::vector<RegionExpr> args);

  RegionOp op() const;
  const Primitive& primitive() const;           // Leaf only
  const std::vector<RegionExpr>& args() const;  // non-Leaf

  friend bool contains(const RegionExpr& r, const CQ& q);

  /// All primitives of the expression, deduplicated, canonically sorted.
  std::vector<Primitive> primitives() const;

  /// Affine image {scale*z + offset : z in this}; |scale| must be rational
  /// (radii scale by it). scale must be nonzero.
  RegionExpr transformed(const CQ& scale, const Rational& scale_abs, const CQ& offset) const;

 private:
  struct Node;
  explicit RegionExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool contains(const RegionExpr& r, const CQ& q);

}  // namespace specmat
