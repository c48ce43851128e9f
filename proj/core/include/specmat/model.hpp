#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "specmat/extended.hpp"
#include "specmat/matrixq.hpp"
#include "specmat/rational.hpp"
#include "specmat/region.hpp"
#include "specmat/symvec.hpp"

namespace specmat {

/// Raised when an exact computation cannot proceed (spectrum not expressible,
/// slot request on a non-closed range, malformed construction, ...).
struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact Fredholm data of one operator on one region: kernel dimension,
/// algebraic cokernel dimension, range topology, plus dim X / cl R(T)
/// (the closure defect, which drives duality).
struct FredholmData {
  ExtendedCount alpha;
  ExtendedCount beta;
  bool range_closed = true;
  bool range_dense = false;
  ExtendedCount closure_defect;

  /// Validates: beta finite => closed; closed => defect == beta;
  /// dense <=> defect == 0; closed & dense => beta == 0.
  static FredholmData make(ExtendedCount alpha, ExtendedCount beta, bool closed,
                           bool dense, ExtendedCount defect);
  static FredholmData invertible() { return make(0, 0, true, true, 0); }

  /// Banach-dual data at the same point: alpha' = closure defect,
  /// beta' = alpha if the range is closed else infinity, closedness kept,
  /// dense' iff alpha == 0. An exact involution.
  FredholmData dual() const;

  bool is_invertible() const {
    return alpha == ExtendedCount(0) && beta == ExtendedCount(0);
  }

  friend bool operator==(const FredholmData& a, const FredholmData& b) {
    return a.alpha == b.alpha && a.beta == b.beta &&
           a.range_closed == b.range_closed && a.range_dense == b.range_dense &&
           a.closure_defect == b.closure_defect;
  }
};

/// Piecewise-constant Fredholm data over a partition of the plane.
struct FredholmProfile {
  std::vector<std::pair<RegionExpr, FredholmData>> parts;
};

/// A sequence-space model; the dimension is the only datum the embedding
/// relations consume.
struct SpaceModel {
  ExtendedCount dim;
};

enum class ModelKind {
  FiniteMatrix,
  Identity,
  Zero,
  Shift,
  BackShift,
  BiShift,
  BiShiftBack,
  Diagonal,
  Translate,
  Scale,
  DirectSum,
  Inflate,
};

/// Finite kernel basis, or a truncated sample of an infinite one.
struct KernelBasis {
  std::vector<SymbolicVector> vectors;
  bool infinite = false;
};

/// Immutable catalog operator. Every instance carries an exact FredholmProfile
/// and exposes its kernel and cokernel coordinates symbolically, so that
/// structured completions can be assembled and verified without floating
/// point.
class Model {
 public:
  static Model shift();
  static Model backshift();
  static Model bishift();
  static Model bishift_back();
  static Model identity(ExtendedCount dim);
  static Model zero(ExtendedCount dim);
  /// Values with multiplicities; duplicated values must agree on multiplicity.
  static Model diagonal(std::vector<std::pair<CQ, ExtendedCount>> values);
  /// Square matrix whose spectrum must lie in Q(i); throws EngineError
  /// otherwise.
  static Model finite_matrix(CMatrix m);
  static Model translate(Model inner, CQ offset);
  /// factor nonzero with rational modulus (|factor|^2 a rational square).
  static Model scale(Model inner, CQ factor);
  static Model direct_sum(Model a, Model b);
  /// Countably many copies of inner, flattened by Cantor pairing.
  static Model inflate(Model inner);

  ModelKind kind() const;
  SpaceModel space() const;
  const FredholmProfile& profile() const;
  /// Data of (m - lambda) at the unique profile part containing lambda.
  FredholmData data_at(const CQ& lambda) const;
  /// Banach dual, pushed structurally to the leaves (no conjugation).
  Model dual() const;
  std::string to_string() const;
  friend bool operator==(const Model& a, const Model& b) {
    return a.to_string() == b.to_string();
  }
  friend bool operator!=(const Model& a, const Model& b) { return !(a == b); }

  // Payload accessors (valid for the matching kind only).
  const CMatrix& matrix() const;
  ExtendedCount dim_param() const;
  const std::vector<std::pair<CQ, ExtendedCount>>& diagonal_values() const;
  const Model& inner() const;  // Translate, Scale, Inflate
  const Model& left() const;   // DirectSum
  const Model& right() const;  // DirectSum
  const CQ& scalar() const;    // Translate offset, Scale factor

  // --- Kernel of (m - lambda) ---
  ExtendedCount kernel_dim(const CQ& lambda) const;
  /// t-th canonical kernel generator, t < kernel_dim. Generators are
  /// normalized to coefficient 1 at their anchor coordinate, and generator s
  /// vanishes at the anchor of generator t for s != t.
  SymbolicVector kernel_generator(const CQ& lambda, std::uint64_t t) const;
  std::uint64_t kernel_anchor(const CQ& lambda, std::uint64_t t) const;
  /// All (t, anchor) pairs with anchor < bound, ascending in t.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> kernel_anchors_below(
      const CQ& lambda, std::uint64_t bound) const;
  KernelBasis kernel_basis(const CQ& lambda,
                           std::uint64_t max_when_infinite = 4) const;

  // --- Cokernel of (m - lambda); defined only where the range is closed ---
  /// Coordinate of the s-th free cokernel slot, s < beta. Slots are standard
  /// basis vectors spanning a complement of the range.
  std::uint64_t coker_slot_position(const CQ& lambda, std::uint64_t s) const;
  SymbolicVector coker_slot(const CQ& lambda, std::uint64_t s) const;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> coker_positions_below(
      const CQ& lambda, std::uint64_t bound) const;

  /// Some x with (m - lambda) x = rhs, or nullopt when rhs is outside the
  /// range. rhs must have finite support.
  std::optional<SymbolicVector> solve_shifted(const CQ& lambda,
                                              const SymbolicVector& rhs) const;
  /// (m - lambda) v; v may carry the geometric tails this catalog produces.
  SymbolicVector apply_shifted(const CQ& lambda, const SymbolicVector& v) const;

  /// Matrix entry in the canonical basis (0 outside the space).
  CQ entry(std::uint64_t row, std::uint64_t col) const;
  /// Row count that captures every nonzero of the first `cols` columns.
  std::uint64_t rows_needed(std::uint64_t cols) const;
  /// Exact truncation of (m - lambda): column j is the full image of e_j
  /// chopped to `rows` coordinates; requires rows >= max(rows_needed(cols),
  /// cols) so no nonzero is lost.
  CMatrix rect_truncation(const CQ& lambda, std::uint64_t rows,
                          std::uint64_t cols) const;

  /// sigma(m) lies in the closed disk of this radius around 0.
  Rational spectral_radius_bound() const;

 private:
  struct Impl;
  explicit Model(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

inline SpaceModel kernel_space(const Model& m, const CQ& lambda) {
  return {m.data_at(lambda).alpha};
}
inline SpaceModel cokernel_space(const Model& m, const CQ& lambda) {
  return {m.data_at(lambda).beta};
}
inline std::pair<SpaceModel, SpaceModel> space_data(const Model& m,
                                                    const CQ& lambda) {
  auto d = m.data_at(lambda);
  return {SpaceModel{d.alpha}, SpaceModel{d.beta}};
}

}  // namespace specmat
