#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specmat/region.hpp"

namespace specmat {

/// Sign-vector cell decomposition of the plane induced by a primitive set.
///
/// Cells are the realizable membership signatures: one entry in {-1,0,+1} per
/// distinct circle (inside / on / outside) and one in {0,1} per distinct point
/// (elsewhere / at). Every cell stores one exact rational representative, so
/// any boolean region expression over the primitives is constant on each cell
/// and decidable by evaluating it at the representatives. Irrational
/// circle-circle intersection points are never materialized; the arcs next to
/// them are found by exact bisection in the rational tangent-half-angle
/// parameter of each circle.
struct Arrangement {
  struct CircleGeom {
    CQ center;
    Rational radius;
  };
  struct Cell {
    CQ rep;
    std::vector<std::int8_t> circle_sign;  // -1 inside, 0 on, +1 outside
    std::vector<std::int8_t> at_point;     // 1 when rep equals the point
    int dim = 2;                           // 0 vertex/point, 1 arc, 2 face
  };

  std::vector<CircleGeom> circles;  // canonically sorted, distinct
  std::vector<CQ> points;           // canonically sorted, distinct
  std::vector<Cell> cells;          // sorted by (dim, signature)
};

Arrangement build_arrangement(const std::vector<Primitive>& prims);

/// Exact emptiness / equality / inclusion of region expressions, decided on
/// the joint arrangement of the expressions' primitives.
bool is_empty(const RegionExpr& r);
bool is_equal(const RegionExpr& a, const RegionExpr& b);
bool is_subset(const RegionExpr& a, const RegionExpr& b);

/// Canonical human-readable normal form: "∅", "ℂ", or a ∪-joined list of
/// terms covering exactly the member cells (greedy cover by closed disk, open
/// disk, circle, exteriors and points per circle, then pruned signature
/// conjunctions). Deterministic; equal regions print identically.
std::string describe(const RegionExpr& r);

/// The same cover as a region expression: a flat union of the describe()
/// terms. Equal to the input as a set, usually far smaller as a tree, so
/// grid sampling of unions of many arrangement cells stays cheap.
RegionExpr simplify(const RegionExpr& r);

/// Cover of an explicit cell subset of an existing arrangement (one flag per
/// arr.cells entry), skipping the membership scan simplify() would redo.
RegionExpr cover_region(const Arrangement& arr, const std::vector<bool>& members);

}  // namespace specmat
