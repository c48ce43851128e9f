#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "specmat/rational.hpp"

namespace specmat {

/// Cantor pairing, used to flatten countably many sequence-space copies into
/// one index set: pair(k, h) = (k+h)(k+h+1)/2 + h.
std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k);

CQ cq_pow(const CQ& base, std::uint64_t e);

/// One injective index rewrite. Affine sends k to a*k + b; Pair sends k to
/// cantor_pair(k, b). Composite embeddings are programs of these, applied
/// innermost first.
struct IndexOp {
  enum class Kind { Affine, Pair } kind = Kind::Affine;
  std::uint64_t a = 1;
  std::uint64_t b = 0;
  bool operator==(const IndexOp& o) const { return kind == o.kind && a == o.a && b == o.b; }
  bool operator<(const IndexOp& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (a != o.a) return a < o.a;
    return b < o.b;
  }
};

/// One geometric tail: coeff * ratio^h at base index start + h*stride for
/// h = 0, 1, 2, ... with |ratio| < 1, rerouted through the program.
struct GeoTerm {
  CQ coeff;
  CQ ratio;
  std::uint64_t start = 0;
  std::uint64_t stride = 1;
  std::vector<IndexOp> program;
};

/// Exact vector in a sequence space: a finite-support part plus finitely many
/// geometric tails. Closed under addition, scaling and the embedding maps
/// used by direct sums and inflations; zero is decidable.
class SymbolicVector {
 public:
  SymbolicVector() = default;
  static SymbolicVector basis(std::uint64_t k);

  void add_finite(std::uint64_t k, const CQ& c);
  void add_geometric(const CQ& coeff, const CQ& ratio, std::uint64_t start,
                     std::uint64_t stride, std::vector<IndexOp> program = {});

  CQ coeff_at(std::uint64_t k) const;

  SymbolicVector scaled(const CQ& f) const;
  SymbolicVector operator+(const SymbolicVector& o) const;
  SymbolicVector operator-(const SymbolicVector& o) const;
  bool is_zero() const;
  bool operator==(const SymbolicVector& o) const { return (*this - o).is_zero(); }

  bool is_finite_support() const;
  /// Strict upper bound on the support when finite; throws otherwise.
  std::uint64_t finite_support_bound() const;

  /// Coordinates rerouted into copy h of an inflated space.
  SymbolicVector into_copy(std::uint64_t h) const;
  /// Coordinates rerouted through k -> a*k + b (a direct-sum embedding).
  SymbolicVector mapped_affine(std::uint64_t a, std::uint64_t b) const;

  const std::map<std::uint64_t, CQ>& finite_part() const { return fin_; }
  const std::vector<GeoTerm>& tails() const { return geo_; }

 private:
  std::map<std::uint64_t, CQ> fin_;
  std::vector<GeoTerm> geo_;
};

}  // namespace specmat
