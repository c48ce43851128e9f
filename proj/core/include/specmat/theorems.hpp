#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specmat/embedding.hpp"
#include "specmat/spectra.hpp"
#include "specmat/tuples.hpp"

namespace specmat {

/// Standing-hypothesis variants for the intersection formulas. Each target
/// admits the listed variants only:
///  - left-essential / right-essential: PlainEmbedding;
///  - essential: StrongEmbedding, or Ufds (classification only, no attached
///    construction);
///  - left-weyl: StrictEmbedding, or BetaNInfinite (plain embeddings plus an
///    infinite cokernel at the last diagonal entry);
///  - right-weyl: StrictEmbedding, or AlphaOneInfinite (plain embeddings
///    plus an infinite kernel at the first diagonal entry).
enum class VariantFlag {
  PlainEmbedding,
  StrictEmbedding,
  BetaNInfinite,
  AlphaOneInfinite,
  StrongEmbedding,
  Ufds,
};

const char* to_string(VariantFlag v);
std::optional<VariantFlag> variant_from_string(const std::string& s);
VariantFlag default_variant(SpectrumKind k);
bool variant_allowed(SpectrumKind k, VariantFlag v);

/// One named set from a formula's union, reported separately so a caller
/// can see which mechanism put a point into the result.
struct DeltaSet {
  std::string label;
  RegionExpr region;
};

/// Exact evaluation of one intersection formula over a diagonal tuple:
/// the set of points every upper triangular completion keeps in the target
/// spectrum, assuming the variant's hypotheses.
struct TheoremReport {
  SpectrumKind kind = SpectrumKind::LE;
  VariantFlag variant = VariantFlag::PlainEmbedding;
  RegionExpr result;
  std::vector<DeltaSet> delta_sets;
  RegionExpr hypothesis_region;
  std::vector<std::string> warnings;
};

/// Evaluates the intersection formula for the target spectrum. Supported
/// targets: LE, RE, E, LW, RW; other kinds have no formula and throw.
TheoremReport intersection_spectrum(const DiagonalTuple& t, SpectrumKind kind,
                                    VariantFlag variant);
TheoremReport intersection_spectrum(const DiagonalTuple& t, SpectrumKind kind);

/// Points where the variant's standing hypotheses hold: every shifted
/// diagonal entry has closed range and all entry pairs satisfy the
/// variant's space relation.
RegionExpr hypothesis_region(const DiagonalTuple& t, SpectrumKind kind,
                             VariantFlag variant);

struct CheckReport {
  bool holds = true;
  std::optional<CQ> witness;  // a point falsifying the check
  std::string detail;
};

/// Decides the exact criterion for the intersection to equal the plain
/// union of the diagonal spectra of the target kind.
CheckReport union_equality_check(const DiagonalTuple& t, SpectrumKind kind);

/// Property check: the formula result sits between the part of the spectrum
/// no completion can remove and the union of the diagonal spectra.
CheckReport inclusion_bounds_check(const DiagonalTuple& t, SpectrumKind kind);

/// Union of the diagonal entries' spectra of the given kind.
RegionExpr diagonal_union_spectrum(const DiagonalTuple& t, SpectrumKind kind);

/// Points where every shifted diagonal entry has dense range.
RegionExpr dense_range_region(const DiagonalTuple& t);

/// Point evaluation of the intersection formula: the membership value the
/// region result takes at lambda, computed without building a partition.
bool intersection_member(const DiagonalTuple& t, const CQ& lambda,
                         SpectrumKind kind);

/// Point evaluation of the variant's standing hypotheses (closed ranges
/// everywhere plus the pairwise embedding relations).
bool hypothesis_holds_at(const DiagonalTuple& t, const CQ& lambda,
                         SpectrumKind kind, VariantFlag variant);

}  // namespace specmat
