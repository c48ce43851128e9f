#include "specmat/region.hpp"

#include <algorithm>
#include <stdexcept>

namespace specmat {

Primitive Primitive::circle(CQ c, Rational r) {
  if (sgn(r) <= 0) throw std::invalid_argument("Primitive: radius must be positive");
  return {PrimKind::Circle, std::move(c), std::move(r)};
}
Primitive Primitive::open_disk(CQ c, Rational r) {
  if (sgn(r) <= 0) throw std::invalid_argument("Primitive: radius must be positive");
  return {PrimKind::OpenDisk, std::move(c), std::move(r)};
}
Primitive Primitive::closed_disk(CQ c, Rational r) {
  if (sgn(r) <= 0) throw std::invalid_argument("Primitive: radius must be positive");
  return {PrimKind::ClosedDisk, std::move(c), std::move(r)};
}

int compare(const Primitive& a, const Primitive& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  int c = compare(a.center, b.center);
  if (c != 0) return c;
  return cmp(a.radius, b.radius);
}

bool contains(const Primitive& p, const CQ& q) {
  switch (p.kind) {
    case PrimKind::Empty: return false;
    case PrimKind::FullPlane: return true;
    case PrimKind::Point: return q == p.center;
    default: break;
  }
  Rational d2 = (q - p.center).norm2();
  Rational r2 = p.radius * p.radius;
  int c = cmp(d2, r2);
  switch (p.kind) {
    case PrimKind::Circle: return c == 0;
    case PrimKind::OpenDisk: return c < 0;
    case PrimKind::ClosedDisk: return c <= 0;
    default: return false;
  }
}

struct RegionExpr::Node {
  RegionOp op;
  Primitive prim;
  std::vector<RegionExpr> args;
};

RegionExpr RegionExpr::leaf(Primitive p) {
  auto n = std::make_shared<Node>();
  n->op = RegionOp::Leaf;
  n->prim = std::move(p);
  return RegionExpr(std::move(n));
}

RegionExpr RegionExpr::combine(RegionOp op, std::vector<RegionExpr> args) {
  switch (op) {
    case RegionOp::Leaf:
      throw std::invalid_argument("combine: Leaf is not a combinator");
    case RegionOp::Complement:
      if (args.size() != 1) throw std::invalid_argument("combine: Complement takes 1 argument");
      break;
    case RegionOp::Difference:
      if (args.size() != 2) throw std::invalid_argument("combine: Difference takes 2 arguments");
      break;
    default:
      break;
  }
  if (op == RegionOp::Union && args.empty()) return empty();
  if (op == RegionOp::Intersection && args.empty()) return full_plane();
  if ((op == RegionOp::Union || op == RegionOp::Intersection) && args.size() == 1)
    return args[0];
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return RegionExpr(std::move(n));
}

RegionExpr RegionExpr::union_of(std::vector<RegionExpr> args) {
  return combine(RegionOp::Union, std::move(args));
}
RegionExpr RegionExpr::intersection_of(std::vector<RegionExpr> args) {
  return combine(RegionOp::Intersection, std::move(args));
}
RegionExpr RegionExpr::complement(RegionExpr a) {
  return combine(RegionOp::Complement, {std::move(a)});
}
RegionExpr RegionExpr::difference(RegionExpr a, RegionExpr b) {
  return combine(RegionOp::Difference, {std::move(a), std::move(b)});
}

RegionOp RegionExpr::op() const { return node_->op; }
const Primitive& RegionExpr::primitive() const {
  if (node_->op != RegionOp::Leaf) throw std::logic_error("RegionExpr: not a leaf");
  return node_->prim;
}
const std::vector<RegionExpr>& RegionExpr::args() const { return node_->args; }

bool contains(const RegionExpr& r, const CQ& q) {
  switch (r.op()) {
    case RegionOp::Leaf: return contains(r.primitive(), q);
    case RegionOp::Union: {
      for (const auto& a : r.args())
        if (contains(a, q)) return true;
      return false;
    }
    case RegionOp::Intersection: {
      for (const auto& a : r.args())
        if (!contains(a, q)) return false;
      return true;
    }
    case RegionOp::Complement: return !contains(r.args()[0], q);
    case RegionOp::Difference: return contains(r.args()[0], q) && !contains(r.args()[1], q);
  }
  return false;
}

namespace {
void collect(const RegionExpr& r, std::vector<Primitive>& out) {
  if (r.op() == RegionOp::Leaf) {
    out.push_back(r.primitive());
    return;
  }
  for (const auto& a : r.args()) collect(a, out);
}
}  // namespace

std::vector<Primitive> RegionExpr::primitives() const {
  std::vector<Primitive> out;
  collect(*this, out);
  std::sort(out.begin(), out.end(), [](const Primitive& a, const Primitive& b) {
    return compare(a, b) < 0;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RegionExpr RegionExpr::transformed(const CQ& scale, const Rational& scale_abs,
                                   const CQ& offset) const {
  if (scale.is_zero()) throw std::invalid_argument("transformed: zero scale");
  if (scale_abs * scale_abs != scale.norm2())
    throw std::invalid_argument("transformed: scale_abs must be |scale|");
  if (op() == RegionOp::Leaf) {
    Primitive p = primitive();
    switch (p.kind) {
      case PrimKind::Empty:
      case PrimKind::FullPlane:
        return leaf(p);
      case PrimKind::Point:
        return point(scale * p.center + offset);
      case PrimKind::Circle:
        return circle(scale * p.center + offset, scale_abs * p.radius);
      case PrimKind::OpenDisk:
        return open_disk(scale * p.center + offset, scale_abs * p.radius);
      case PrimKind::ClosedDisk:
        return closed_disk(scale * p.center + offset, scale_abs * p.radius);
    }
  }
  std::vector<RegionExpr> mapped;
  mapped.reserve(args().size());
  for (const auto& a : args()) mapped.push_back(a.transformed(scale, scale_abs, offset));
  return combine(op(), std::move(mapped));
}

}  // namespace specmat
