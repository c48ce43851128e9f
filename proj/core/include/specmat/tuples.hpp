#pragma once

#include <cstddef>
#include <vector>

#include "specmat/arrangement.hpp"
#include "specmat/model.hpp"

namespace specmat {

/// An ordered tuple of catalog operators, the fixed diagonal of an upper
/// triangular operator matrix. At least two entries.
class DiagonalTuple {
 public:
  explicit DiagonalTuple(std::vector<Model> entries);

  std::size_t size() const { return entries_.size(); }
  const Model& entry(std::size_t i) const { return entries_.at(i); }
  const std::vector<Model>& entries() const { return entries_; }

  /// The tuple of duals in reverse order. Left-sided results for it are
  /// right-sided results for the original tuple.
  DiagonalTuple reversed_dual() const;

 private:
  std::vector<Model> entries_;
};

/// One cell of the joint plane decomposition: every entry's shifted-operator
/// data is constant on it.
struct TupleCell {
  RegionExpr region;               // exact cell as a region expression
  CQ rep;                          // rational representative
  std::vector<FredholmData> data;  // per tuple entry, at any cell point
  int dim = 2;
};

/// Joint refinement of all entries' piecewise-constant data. The cells
/// partition the plane, so any pointwise predicate over the data vector
/// turns into an exact region by unioning the cells where it holds.
struct TuplePartition {
  Arrangement arrangement;
  std::vector<TupleCell> cells;
};

TuplePartition refine_tuple(const DiagonalTuple& t);

/// Union of the cells selected by the predicate, compacted.
template <typename Pred>
RegionExpr cells_where(const TuplePartition& p, Pred&& pred) {
  std::vector<bool> members(p.cells.size(), false);
  for (std::size_t i = 0; i < p.cells.size(); ++i) members[i] = pred(p.cells[i]);
  return cover_region(p.arrangement, members);
}

}  // namespace specmat
