#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specmat/matrixq.hpp"
#include "specmat/model.hpp"
#include "specmat/theorems.hpp"
#include "specmat/tuples.hpp"

namespace specmat {

/// lambda sits in the intersection spectrum of the target kind, so no
/// completion can remove it.
struct NoCompletionExists : EngineError {
  using EngineError::EngineError;
};

/// The data at lambda does not support the construction: either the
/// variant's standing hypotheses fail there, or a requested case needs
/// cokernel room the diagonal does not have.
struct HypothesisUnsatisfied : EngineError {
  using EngineError::EngineError;
};

/// A symbolic verification layer contradicted the plan's predictions.
struct VerificationFailed : EngineError {
  explicit VerificationFailed(const std::string& msg) : EngineError(msg) {}
  VerificationFailed(const std::string& msg, SymbolicVector w)
      : EngineError(msg), witness(std::move(w)) {}
  std::optional<SymbolicVector> witness;
};

/// Identifies which constructive case a point falls into.
///
/// Targets are the five spectra with intersection formulas: left-essential
/// (left Fredholm completions), right-essential, essential, left-weyl and
/// right-weyl. Labels for left-sided and essential targets:
///   omega_1, omega_k, omega_n            (left-sided)
///   omega_1k, omega_1n, omega_lk, omega_ln, trivial   (essential)
///   classical-superdiagonal              (fallback pattern, see
///                                         build_completion)
/// Right-sided targets are classified on the reversed dual tuple and carry
/// the mirrored left label; indices l and k are always reported as 1-based
/// positions in the original tuple (for right-sided targets that is the
/// mirrored position n+1-k' of the index k' found on the reversed dual).
struct CaseTag {
  SpectrumKind target = SpectrumKind::LE;
  std::string label;
  std::uint64_t l = 0;  // 0 when the label carries no l index
  std::uint64_t k = 0;  // 0 when the label carries no k index
  bool via_reversed_dual = false;
  std::string to_string() const;
};

enum class BlockKind { Zero, SuperdiagJ, ColumnJ };

/// Which free cokernel slot the t-th source generator occupies.
enum class SlotRule {
  InitialSlice,  // slot t
  AfterOffset,   // slot offset + t
  Evens,         // slot 2t   (row shared with a column block on the odds)
  Odds,          // slot 2t+1
};

/// One structured off-diagonal entry. The block sends the t-th canonical
/// kernel generator of its source diagonal entry to the slot_index(t)-th
/// free cokernel slot of its row entry and vanishes on the complement of
/// the kernel; concretely it is the 0/1 partial permutation with a unit at
/// (slot position, generator anchor) for every t. Blocks of right-sided
/// plans are exact transposes of blocks built on the reversed dual tuple
/// and are marked transposed; their units are the swapped pairs.
struct StructuredBlock {
  BlockKind kind = BlockKind::Zero;
  SlotRule rule = SlotRule::InitialSlice;
  std::uint64_t offset = 0;  // AfterOffset only
  bool transposed = false;
  std::uint64_t slot_index(std::uint64_t t) const;
};

/// Explicit unit entry E_{row,col} of a materialized block.
struct UnitAssignment {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
};

/// A structured completion: zero blocks everywhere except the listed
/// superdiagonal/column J-blocks realizing one proof case.
///
/// codim_increments holds one entry per (1-based) row: the dimension of the
/// cokernel of that row left free after the row's blocks take their slots;
/// rows without blocks keep their full cokernel. Entries may be infinite
/// for one-sided targets (the construction only needs the total on the
/// controlled side to stay finite), so they are stored as ExtendedCount
/// rather than plain integers. Their sum is the predicted beta of the
/// completed matrix. For right-sided plans the entries are the kernel-side
/// residuals in original row order and their sum is the predicted alpha.
///
/// kernel_rows lists the 1-based rows whose diagonal kernels survive as the
/// kernel of the completed matrix (empty for right-sided plans, where the
/// kernel is certified through the reversed dual instead).
struct CompletionPlan {
  CaseTag tag;
  std::size_t n = 0;
  std::map<std::pair<std::uint64_t, std::uint64_t>, StructuredBlock> blocks;
  std::vector<ExtendedCount> codim_increments;
  std::vector<std::uint64_t> kernel_rows;
  std::vector<std::string> warnings;
};

/// Finds the proof case containing lambda.
///
/// Throws NoCompletionExists when lambda lies in the intersection spectrum
/// of the target, and HypothesisUnsatisfied when the variant's standing
/// hypotheses fail at lambda or the located case cannot host its embeddings
/// (a later kernel without matching cokernel room, or a non-closed range).
CaseTag classify_case(const DiagonalTuple& t, const CQ& lambda,
                      SpectrumKind target, VariantFlag variant);
CaseTag classify_case(const DiagonalTuple& t, const CQ& lambda,
                      SpectrumKind target);

/// Builds the structured completion for the case classify_case finds.
///
/// When the hypotheses fail at lambda but every entry is left Fredholm
/// there (right Fredholm for right-sided targets) with enough cokernel room
/// along the superdiagonal, the classical full-superdiagonal pattern is
/// emitted instead, tagged classical-superdiagonal and carrying a warning;
/// it reaches the target whenever its predicted invariants do.
///
/// The essential target builds only under the strong-embedding variant;
/// the finiteness-match variant classifies but has no attached
/// construction, so building under it throws EngineError.
CompletionPlan build_completion(const DiagonalTuple& t, const CQ& lambda,
                                SpectrumKind target, VariantFlag variant);
CompletionPlan build_completion(const DiagonalTuple& t, const CQ& lambda,
                                SpectrumKind target);

/// Builds the plan for an explicitly chosen case, skipping the membership
/// and hypothesis gates. Slot budgets are still enforced (the blocks must
/// be realizable). This is the hook for exercising individual proof cases
/// and verification error paths; plans built for the wrong case fail
/// verify_plan rather than construction.
CompletionPlan build_completion_for_case(const DiagonalTuple& t,
                                         const CQ& lambda, const CaseTag& tag);

/// The closed-form alpha and beta of the completed matrix the case
/// predicts: alpha sums the surviving diagonal kernels, beta sums the
/// per-row cokernel residuals (roles swap for right-sided plans).
std::pair<ExtendedCount, ExtendedCount> predicted_invariants(
    const DiagonalTuple& t, const CompletionPlan& plan, const CQ& lambda);

/// Explicit units of one block with row < row_bound and col < col_bound.
/// i, j are the 1-based block coordinates the plan uses.
std::vector<UnitAssignment> materialize_block(const DiagonalTuple& t,
                                              const CQ& lambda,
                                              std::uint64_t i, std::uint64_t j,
                                              const StructuredBlock& block,
                                              std::uint64_t row_bound,
                                              std::uint64_t col_bound);

/// Exact finite section of the completed matrix minus lambda: block column
/// j keeps its first min(size, dim_j) coordinates and every block row keeps
/// one shared height, large enough to absorb all nonzeros the kept columns
/// produce, so the truncation kernel equals the set of true kernel vectors
/// supported inside the window.
struct BlockTruncation {
  CMatrix matrix;
  std::vector<std::uint64_t> row_counts;  // per block row, all equal
  std::vector<std::uint64_t> col_counts;  // per block column
};
BlockTruncation assemble_block_truncation(const DiagonalTuple& t,
                                          const CompletionPlan& plan,
                                          const CQ& lambda, std::uint64_t size);

/// Outcome of the two verification layers. The symbolic layer certifies
/// every claimed kernel generator annihilates the assembled system and
/// hunts dual-kernel certificates for the unassigned cokernel slots; the
/// finite-section layer compares exact truncation ranks at sizes 8, 16, 32
/// against the claimed finite-support kernel counts. Geometric kernel
/// vectors are invisible to truncations; their presence is flagged and the
/// symbolic layer is the verdict. Right-sided plans run the symbolic and
/// section layers on the reversed dual (where the plan is a left plan) and
/// additionally report original-orientation ranks as bounds.
struct VerificationReport {
  ExtendedCount predicted_alpha;
  ExtendedCount predicted_beta;
  std::uint64_t kernel_generators_checked = 0;
  std::uint64_t coker_certificates = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ranks;  // (size, rank)
  std::vector<std::uint64_t> truncation_kernel_dims;  // aligned with ranks
  bool geometric_kernel = false;
  bool dense_range_checked = false;
  std::vector<std::string> notes;
};

/// Verifies a plan. Throws VerificationFailed (with a witness vector where
/// one exists) when a layer contradicts the predictions; returns the
/// evidence otherwise.
VerificationReport verify_plan(const DiagonalTuple& t,
                               const CompletionPlan& plan, const CQ& lambda);

}  // namespace specmat
