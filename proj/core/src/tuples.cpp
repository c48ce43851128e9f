#include "specmat/tuples.hpp"

#include <algorithm>
#include <utility>

namespace specmat {

DiagonalTuple::DiagonalTuple(std::vector<Model> entries) : entries_(std::move(entries)) {
  if (entries_.size() < 2)
    throw EngineError("a diagonal tuple needs at least two entries");
}

DiagonalTuple DiagonalTuple::reversed_dual() const {
  std::vector<Model> rev;
  rev.reserve(entries_.size());
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    rev.push_back(it->dual());
  return DiagonalTuple(std::move(rev));
}

namespace {

// Exact region of one arrangement cell: the conjunction of its circle signs
// plus exclusions for arrangement points that would otherwise slip in.
RegionExpr cell_region(const Arrangement& arr, const Arrangement::Cell& cell) {
  for (std::size_t pi = 0; pi < arr.points.size(); ++pi)
    if (cell.at_point[pi]) return RegionExpr::point(arr.points[pi]);

  std::vector<RegionExpr> conj;
  for (std::size_t ci = 0; ci < arr.circles.size(); ++ci) {
    const auto& g = arr.circles[ci];
    int s = cell.circle_sign[ci];
    if (s < 0)
      conj.push_back(RegionExpr::open_disk(g.center, g.radius));
    else if (s == 0)
      conj.push_back(RegionExpr::circle(g.center, g.radius));
    else
      conj.push_back(RegionExpr::complement(RegionExpr::closed_disk(g.center, g.radius)));
  }
  RegionExpr base =
      conj.empty() ? RegionExpr::full_plane() : RegionExpr::intersection_of(conj);
  std::vector<RegionExpr> minus;
  for (const CQ& p : arr.points)
    if (contains(base, p)) minus.push_back(RegionExpr::point(p));
  if (minus.empty()) return base;
  return RegionExpr::difference(std::move(base), RegionExpr::union_of(std::move(minus)));
}

}  // namespace

TuplePartition refine_tuple(const DiagonalTuple& t) {
  std::vector<Primitive> prims;
  for (const Model& m : t.entries())
    for (const auto& [region, data] : m.profile().parts) {
      auto p = region.primitives();
      prims.insert(prims.end(), p.begin(), p.end());
    }

  TuplePartition out;
  out.arrangement = build_arrangement(prims);
  out.cells.reserve(out.arrangement.cells.size());
  for (const auto& cell : out.arrangement.cells) {
    TupleCell tc;
    tc.region = cell_region(out.arrangement, cell);
    tc.rep = cell.rep;
    tc.dim = cell.dim;
    tc.data.reserve(t.size());
    for (const Model& m : t.entries()) tc.data.push_back(m.data_at(cell.rep));
    out.cells.push_back(std::move(tc));
  }
  return out;
}

}  // namespace specmat
