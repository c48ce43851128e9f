#include "specmat/completion.hpp"

#include <algorithm>
#include <initializer_list>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include "specmat/matrixq.hpp"
#include "specmat/spectra.hpp"

namespace specmat {

namespace {

bool is_right_kind(SpectrumKind k) {
  return k == SpectrumKind::RE || k == SpectrumKind::RW;
}

SpectrumKind mirror_kind(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::RE: return SpectrumKind::LE;
    case SpectrumKind::RW: return SpectrumKind::LW;
    default: return k;
  }
}

VariantFlag mirror_variant(VariantFlag v) {
  return v == VariantFlag::AlphaOneInfinite ? VariantFlag::BetaNInfinite : v;
}

std::vector<FredholmData> tuple_data(const DiagonalTuple& t, const CQ& lambda) {
  std::vector<FredholmData> d;
  d.reserve(t.size());
  for (std::size_t s = 0; s < t.size(); ++s)
    d.push_back(t.entry(s).data_at(lambda));
  return d;
}

// Entry is left Fredholm at the point: finite kernel, closed range.
bool left_regular(const FredholmData& d) {
  return d.alpha.is_finite() && d.range_closed;
}

// Cokernel room left in a row after a block takes `used` slots. Infinite
// rooms absorb any demand (a full initial slice leaves nothing, hence
// inf - inf = 0); a finite room must cover the demand exactly.
ExtendedCount residual_after(const ExtendedCount& have, const ExtendedCount& used) {
  if (have.is_infinite())
    return used.is_infinite() ? ExtendedCount(0) : ExtendedCount::infinity();
  if (used.is_infinite() || have.value() < used.value())
    throw HypothesisUnsatisfied(
        "a block claims more cokernel slots than its row provides");
  return ExtendedCount(have.value() - used.value());
}

// Index translation between a tuple and its reversed dual: position p
// becomes n + 1 - p. Labels are kept; only one-index and index-free labels
// ever cross this boundary (the essential target never routes through it).
CaseTag mirror_tag(const CaseTag& tag, SpectrumKind new_target, bool to_right,
                   std::size_t n) {
  CaseTag out = tag;
  out.target = new_target;
  out.via_reversed_dual = to_right;
  if (out.l != 0) out.l = n + 1 - out.l;
  if (out.k != 0) out.k = n + 1 - out.k;
  return out;
}

void validate_left_tag(const CaseTag& tag, std::size_t n) {
  const std::string& L = tag.label;
  auto fail = [&] {
    throw EngineError("case tag indices do not fit the label " + L);
  };
  bool essential_label = false;
  if (L == "omega_1") {
    if (tag.l != 0 || tag.k != 1 || n < 2) fail();
  } else if (L == "omega_k") {
    if (tag.l != 0 || tag.k < 2 || tag.k + 1 > n) fail();
  } else if (L == "omega_n") {
    if (tag.l != 0 || tag.k != n) fail();
  } else if (L == "trivial" || L == "classical-superdiagonal") {
    if (tag.l != 0 || tag.k != 0) fail();
    essential_label = (L == "trivial");
  } else if (L == "omega_1k") {
    if (tag.l != 1 || tag.k < 2 || tag.k + 1 > n) fail();
    essential_label = true;
  } else if (L == "omega_1n") {
    if (tag.l != 1 || tag.k != n || n < 2) fail();
    essential_label = true;
  } else if (L == "omega_lk") {
    if (tag.l < 2 || tag.l >= tag.k || tag.k + 1 > n) fail();
    essential_label = true;
  } else if (L == "omega_ln") {
    if (tag.l < 2 || tag.k != n || tag.l >= tag.k) fail();
    essential_label = true;
  } else {
    throw EngineError("unknown completion case label " + L);
  }
  if (L != "classical-superdiagonal") {
    bool want_essential = tag.target == SpectrumKind::E;
    if (want_essential != essential_label)
      throw EngineError("case label " + L + " does not belong to the target");
  }
}

StructuredBlock super_block(SlotRule rule, std::uint64_t offset = 0) {
  return StructuredBlock{BlockKind::SuperdiagJ, rule, offset, false};
}

StructuredBlock column_block(SlotRule rule, std::uint64_t offset = 0) {
  return StructuredBlock{BlockKind::ColumnJ, rule, offset, false};
}

// Builds the plan for a tag in left orientation. Assumes the tag has been
// validated; enforces realizability (closed ranges, slot budgets).
CompletionPlan left_plan_for(const DiagonalTuple& t, const CQ& lambda,
                             const CaseTag& tag) {
  const std::size_t n = t.size();
  const auto d = tuple_data(t, lambda);
  for (std::size_t s = 0; s < n; ++s)
    if (!d[s].range_closed)
      throw HypothesisUnsatisfied(
          "the construction needs every diagonal entry to have closed range");

  CompletionPlan plan;
  plan.tag = tag;
  plan.n = n;
  plan.codim_increments.assign(n, ExtendedCount(0));
  auto alpha_of = [&](std::size_t r) { return d[r - 1].alpha; };
  auto beta_of = [&](std::size_t r) { return d[r - 1].beta; };

  const std::string& L = tag.label;
  if (L == "omega_n" || L == "trivial") {
    // No blocks: the diagonal itself already meets the target.
    for (std::size_t r = 1; r <= n; ++r) {
      plan.kernel_rows.push_back(r);
      plan.codim_increments[r - 1] = beta_of(r);
    }
    return plan;
  }

  if (L == "omega_1" || L == "omega_k") {
    // Kernel-to-cokernel embeddings along the superdiagonal from row k on;
    // the infinite cokernel of row k hosts the kernel of row k+1, and so on.
    const std::size_t k = tag.k;
    for (std::size_t r = 1; r <= k; ++r) plan.kernel_rows.push_back(r);
    for (std::size_t i = k; i + 1 <= n; ++i)
      plan.blocks[{i, i + 1}] = super_block(SlotRule::InitialSlice);
    for (std::size_t r = 1; r <= n; ++r) {
      if (r < k || r == n)
        plan.codim_increments[r - 1] = beta_of(r);
      else
        plan.codim_increments[r - 1] =
            residual_after(beta_of(r), alpha_of(r + 1));
    }
    return plan;
  }

  if (L == "omega_1k" || L == "omega_1n" || L == "omega_lk" || L == "omega_ln") {
    // Rows l..k-1 absorb both their successor's kernel and a slice of the
    // infinite kernel of row k; every row of that span must offer infinite
    // cokernel room. Rows outside [l, k] keep their diagonal role.
    const std::size_t l = tag.l, k = tag.k;
    for (std::size_t r = 1; r <= l; ++r) plan.kernel_rows.push_back(r);
    for (std::size_t r = k + 1; r <= n; ++r) plan.kernel_rows.push_back(r);
    for (std::size_t i = l; i + 1 <= k; ++i) {
      if (i + 2 <= k) {
        ExtendedCount a = alpha_of(i + 1);
        if (a.is_finite()) {
          plan.blocks[{i, i + 1}] = super_block(SlotRule::InitialSlice);
          plan.blocks[{i, k}] = column_block(SlotRule::AfterOffset, a.value());
        } else {
          plan.blocks[{i, i + 1}] = super_block(SlotRule::Evens);
          plan.blocks[{i, k}] = column_block(SlotRule::Odds);
        }
      } else {
        plan.blocks[{i, k}] = column_block(SlotRule::InitialSlice);
      }
    }
    for (std::size_t r = 1; r <= n; ++r) {
      if (r < l || r > k - 1) {
        plan.codim_increments[r - 1] = beta_of(r);
      } else {
        ExtendedCount used = alpha_of(k);
        if (r + 2 <= k) used += alpha_of(r + 1);
        plan.codim_increments[r - 1] = residual_after(beta_of(r), used);
      }
    }
    return plan;
  }

  if (L == "classical-superdiagonal") {
    // Full superdiagonal of kernel embeddings; only the first kernel
    // survives. Outside the theorems' coverage, callers attach a warning.
    plan.kernel_rows.push_back(1);
    for (std::size_t i = 1; i + 1 <= n; ++i)
      plan.blocks[{i, i + 1}] = super_block(SlotRule::InitialSlice);
    for (std::size_t r = 1; r <= n; ++r)
      plan.codim_increments[r - 1] =
          (r == n) ? beta_of(n) : residual_after(beta_of(r), alpha_of(r + 1));
    return plan;
  }

  throw EngineError("unknown completion case label " + L);
}

// Transport of a left plan on the reversed dual back to the original
// orientation: block (i', j') reappears transposed at (n+1-j', n+1-i').
CompletionPlan to_right_plan(const CompletionPlan& lp, SpectrumKind target,
                             std::size_t n) {
  CompletionPlan plan;
  plan.tag = mirror_tag(lp.tag, target, true, n);
  plan.n = n;
  for (const auto& [pos, b] : lp.blocks) {
    StructuredBlock tb = b;
    tb.transposed = true;
    plan.blocks[{n + 1 - pos.second, n + 1 - pos.first}] = tb;
  }
  plan.codim_increments.assign(lp.codim_increments.rbegin(),
                               lp.codim_increments.rend());
  plan.warnings = lp.warnings;
  return plan;
}

// Left-sided classification. Valid once membership and hypotheses are
// settled; anything that falls outside the proved trichotomy means the
// gates upstream are broken.
CaseTag classify_left(SpectrumKind target, const std::vector<FredholmData>& d) {
  const std::size_t n = d.size();
  std::size_t k = 0;
  for (std::size_t s = 1; s < n && k == 0; ++s)
    if (d[s - 1].beta.is_infinite()) k = s;
  const std::size_t reach = (k == 0) ? n : k;
  for (std::size_t s = 1; s <= reach; ++s)
    if (!left_regular(d[s - 1]))
      throw EngineError(
          "left-sided classification fell through; the membership gate "
          "should have excluded this point");
  CaseTag tag;
  tag.target = target;
  if (k == 0) {
    tag.label = "omega_n";
    tag.k = n;
  } else {
    tag.label = (k == 1) ? "omega_1" : "omega_k";
    tag.k = k;
  }
  return tag;
}

CaseTag classify_essential(const std::vector<FredholmData>& d) {
  const std::size_t n = d.size();
  std::size_t l = 0, k = 0;
  for (std::size_t s = 1; s <= n && l == 0; ++s)
    if (d[s - 1].beta.is_infinite()) l = s;
  for (std::size_t s = n; s >= 1 && k == 0; --s)
    if (d[s - 1].alpha.is_infinite()) k = s;
  CaseTag tag;
  tag.target = SpectrumKind::E;
  if (l == 0 && k == 0) {
    tag.label = "trivial";
    return tag;
  }
  if (l == 0 || k == 0 || l >= k)
    throw EngineError(
        "essential classification fell through; the membership gate should "
        "have excluded this point");
  tag.l = l;
  tag.k = k;
  tag.label = (l == 1) ? (k == n ? "omega_1n" : "omega_1k")
                       : (k == n ? "omega_ln" : "omega_lk");
  return tag;
}

// Which source generator a slot index s belongs to under the rule, if any.
bool invert_rule(const StructuredBlock& b, std::uint64_t s, std::uint64_t& t) {
  switch (b.rule) {
    case SlotRule::InitialSlice:
      t = s;
      return true;
    case SlotRule::AfterOffset:
      if (s < b.offset) return false;
      t = s - b.offset;
      return true;
    case SlotRule::Evens:
      if (s % 2 != 0) return false;
      t = s / 2;
      return true;
    case SlotRule::Odds:
      if (s % 2 == 0) return false;
      t = (s - 1) / 2;
      return true;
  }
  return false;
}

// Applies one untransposed block to a vector in its source coordinate:
// the block reads the coefficients at the source kernel anchors and drops
// them on the corresponding sink cokernel slots.
SymbolicVector block_apply(const DiagonalTuple& t, const CQ& lambda,
                           std::uint64_t i, std::uint64_t j,
                           const StructuredBlock& b, const SymbolicVector& v) {
  SymbolicVector out;
  if (b.kind == BlockKind::Zero || v.is_zero()) return out;
  if (b.transposed)
    throw EngineError(
        "transposed blocks are applied on the reversed dual, not directly");
  const Model& src = t.entry(j - 1);
  const Model& sink = t.entry(i - 1);
  ExtendedCount gens = src.data_at(lambda).alpha;
  if (gens == ExtendedCount(0)) return out;
  if (gens.is_infinite()) {
    if (!v.is_finite_support())
      throw EngineError(
          "block application on a geometric vector is outside the verified "
          "fragment");
    for (const auto& [tt, anchor] :
         src.kernel_anchors_below(lambda, v.finite_support_bound())) {
      CQ c = v.coeff_at(anchor);
      if (!c.is_zero())
        out.add_finite(sink.coker_slot_position(lambda, b.slot_index(tt)), c);
    }
  } else {
    for (std::uint64_t tt = 0; tt < gens.value(); ++tt) {
      CQ c = v.coeff_at(src.kernel_anchor(lambda, tt));
      if (!c.is_zero())
        out.add_finite(sink.coker_slot_position(lambda, b.slot_index(tt)), c);
    }
  }
  return out;
}

}  // namespace

std::string CaseTag::to_string() const {
  std::ostringstream os;
  os << specmat::to_string(target) << ' ' << label;
  if (l != 0 && k != 0)
    os << " (l=" << l << ", k=" << k << ')';
  else if (k != 0)
    os << " (k=" << k << ')';
  if (via_reversed_dual) os << " via reversed dual";
  return os.str();
}

std::uint64_t StructuredBlock::slot_index(std::uint64_t t) const {
  switch (rule) {
    case SlotRule::InitialSlice:
      return t;
    case SlotRule::AfterOffset:
      return offset + t;
    case SlotRule::Evens:
      return 2 * t;
    case SlotRule::Odds:
      return 2 * t + 1;
  }
  throw EngineError("unknown slot rule");
}

CaseTag classify_case(const DiagonalTuple& t, const CQ& lambda,
                      SpectrumKind target, VariantFlag variant) {
  if (!variant_allowed(target, variant))
    throw EngineError("variant does not apply to this target");
  if (intersection_member(t, lambda, target))
    throw NoCompletionExists(
        "the point lies in the intersection spectrum; every completion "
        "keeps it");
  if (!hypothesis_holds_at(t, lambda, target, variant))
    throw HypothesisUnsatisfied(
        "the variant's standing hypotheses fail at this point");
  if (is_right_kind(target)) {
    DiagonalTuple rd = t.reversed_dual();
    CaseTag left = classify_left(mirror_kind(target), tuple_data(rd, lambda));
    return mirror_tag(left, target, true, t.size());
  }
  const auto d = tuple_data(t, lambda);
  if (target == SpectrumKind::E) return classify_essential(d);
  return classify_left(target, d);
}

CaseTag classify_case(const DiagonalTuple& t, const CQ& lambda,
                      SpectrumKind target) {
  return classify_case(t, lambda, target, default_variant(target));
}

CompletionPlan build_completion(const DiagonalTuple& t, const CQ& lambda,
                                SpectrumKind target, VariantFlag variant) {
  if (target == SpectrumKind::E && variant == VariantFlag::Ufds)
    throw EngineError(
        "the finiteness-match variant certifies classification only; no "
        "completion construction is available");
  if (is_right_kind(target)) {
    CompletionPlan lp = build_completion(t.reversed_dual(), lambda,
                                         mirror_kind(target),
                                         mirror_variant(variant));
    return to_right_plan(lp, target, t.size());
  }
  try {
    CaseTag tag = classify_case(t, lambda, target, variant);
    return left_plan_for(t, lambda, tag);
  } catch (const HypothesisUnsatisfied&) {
    // The theorems do not cover this point, but the classical pattern may
    // still reach the target: all entries left Fredholm and each kernel
    // small enough for its predecessor's cokernel.
    const std::size_t n = t.size();
    const auto d = tuple_data(t, lambda);
    bool feasible = true;
    for (std::size_t s = 0; s < n && feasible; ++s)
      feasible = d[s].range_closed && d[s].alpha.is_finite();
    for (std::size_t s = 1; s < n && feasible; ++s)
      feasible = d[s].alpha <= d[s - 1].beta;
    if (feasible) {
      ExtendedCount beta(0);
      for (std::size_t r = 1; r < n; ++r)
        beta += residual_after(d[r - 1].beta, d[r].alpha);
      beta += d[n - 1].beta;
      FredholmData fd = FredholmData::make(d[0].alpha, beta, true,
                                           beta == ExtendedCount(0), beta);
      if (!in_spectrum(target, fd)) {
        CaseTag tag;
        tag.target = target;
        tag.label = "classical-superdiagonal";
        CompletionPlan plan = left_plan_for(t, lambda, tag);
        plan.warnings.push_back(
            "the standing embedding hypotheses fail at this point; the "
            "classical superdiagonal pattern is emitted without theorem "
            "coverage");
        return plan;
      }
    }
    throw;
  }
}

CompletionPlan build_completion(const DiagonalTuple& t, const CQ& lambda,
                                SpectrumKind target) {
  return build_completion(t, lambda, target, default_variant(target));
}

CompletionPlan build_completion_for_case(const DiagonalTuple& t,
                                         const CQ& lambda, const CaseTag& tag) {
  const std::size_t n = t.size();
  if (is_right_kind(tag.target)) {
    CaseTag left = mirror_tag(tag, mirror_kind(tag.target), false, n);
    validate_left_tag(left, n);
    CompletionPlan lp = left_plan_for(t.reversed_dual(), lambda, left);
    return to_right_plan(lp, tag.target, n);
  }
  if (tag.via_reversed_dual)
    throw EngineError("left-sided tags do not route through the reversed dual");
  validate_left_tag(tag, n);
  return left_plan_for(t, lambda, tag);
}

std::pair<ExtendedCount, ExtendedCount> predicted_invariants(
    const DiagonalTuple& t, const CompletionPlan& plan, const CQ& lambda) {
  if (plan.n != t.size())
    throw EngineError("plan was built for a different tuple size");
  if (plan.tag.via_reversed_dual) {
    DiagonalTuple rd = t.reversed_dual();
    CaseTag left = mirror_tag(plan.tag, mirror_kind(plan.tag.target), false,
                              plan.n);
    CompletionPlan lp = left_plan_for(rd, lambda, left);
    auto p = predicted_invariants(rd, lp, lambda);
    return {p.second, p.first};
  }
  ExtendedCount alpha(0), beta(0);
  for (std::uint64_t r : plan.kernel_rows)
    alpha += t.entry(r - 1).data_at(lambda).alpha;
  for (const auto& c : plan.codim_increments) beta += c;
  return {alpha, beta};
}

std::vector<UnitAssignment> materialize_block(const DiagonalTuple& t,
                                              const CQ& lambda,
                                              std::uint64_t i, std::uint64_t j,
                                              const StructuredBlock& block,
                                              std::uint64_t row_bound,
                                              std::uint64_t col_bound) {
  std::vector<UnitAssignment> out;
  if (block.kind == BlockKind::Zero || row_bound == 0 || col_bound == 0)
    return out;
  if (i < 1 || j < 1 || i > t.size() || j > t.size() || i == j)
    throw EngineError("block coordinates fall outside the matrix");

  // The generator stream must fit the slot stream before any window is
  // applied; a finite cokernel must host the block's last claimed slot.
  auto check_budget = [&](const ExtendedCount& gens, const ExtendedCount& slots) {
    if (gens == ExtendedCount(0) || slots.is_infinite()) return;
    if (gens.is_infinite() || block.slot_index(gens.value() - 1) >= slots.value())
      throw EngineError(
          "cokernel slot stream exhausted while kernel generators remain");
  };

  if (!block.transposed) {
    const Model& src = t.entry(j - 1);
    const Model& sink = t.entry(i - 1);
    check_budget(src.data_at(lambda).alpha, sink.data_at(lambda).beta);
    for (const auto& [tt, anchor] : src.kernel_anchors_below(lambda, col_bound)) {
      std::uint64_t pos = sink.coker_slot_position(lambda, block.slot_index(tt));
      if (pos < row_bound) out.push_back({pos, anchor});
    }
  } else {
    // Transpose of a block built on the reversed dual: rows are kernel
    // anchors of the row entry's dual, columns are cokernel slots of the
    // column entry's dual.
    Model row_dual = t.entry(i - 1).dual();
    Model col_dual = t.entry(j - 1).dual();
    ExtendedCount gens = row_dual.data_at(lambda).alpha;
    check_budget(gens, col_dual.data_at(lambda).beta);
    for (const auto& [s, pos] : col_dual.coker_positions_below(lambda, col_bound)) {
      std::uint64_t tt = 0;
      if (!invert_rule(block, s, tt)) continue;
      if (gens.is_finite() && tt >= gens.value()) continue;
      std::uint64_t r = row_dual.kernel_anchor(lambda, tt);
      if (r < row_bound) out.push_back({r, pos});
    }
  }
  std::sort(out.begin(), out.end(), [](const UnitAssignment& a,
                                       const UnitAssignment& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return out;
}

BlockTruncation assemble_block_truncation(const DiagonalTuple& t,
                                          const CompletionPlan& plan,
                                          const CQ& lambda, std::uint64_t size) {
  const std::size_t n = t.size();
  if (plan.n != n)
    throw EngineError("plan was built for a different tuple size");
  if (size == 0) throw EngineError("a truncation needs at least one column");

  std::vector<std::uint64_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) {
    ExtendedCount dim = t.entry(j).space().dim;
    cols[j] = dim.is_finite()
                  ? std::min<std::uint64_t>(size, dim.value())
                  : size;
  }

  // One shared block-row height: tall enough for every kept column of every
  // diagonal entry and for every off-diagonal unit the windows produce, so
  // the section's kernel is exactly the window slice of the true kernel.
  std::uint64_t height = 1;
  for (std::size_t i = 0; i < n; ++i)
    height = std::max(height,
                      std::max(t.entry(i).rows_needed(cols[i]), cols[i]));
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<UnitAssignment>>
      units;
  for (const auto& [pos, b] : plan.blocks) {
    auto u = materialize_block(t, lambda, pos.first, pos.second, b,
                               std::numeric_limits<std::uint64_t>::max(),
                               cols[pos.second - 1]);
    for (const auto& a : u) height = std::max(height, a.row + 1);
    units[pos] = std::move(u);
  }

  std::vector<std::uint64_t> col_offset(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) col_offset[j + 1] = col_offset[j] + cols[j];

  CMatrix m(height * n, col_offset[n]);
  for (std::size_t i = 0; i < n; ++i) {
    CMatrix di = t.entry(i).rect_truncation(lambda, height, cols[i]);
    for (std::size_t r = 0; r < di.rows(); ++r)
      for (std::size_t c = 0; c < di.cols(); ++c)
        m.at(i * height + r, col_offset[i] + c) = di.at(r, c);
  }
  for (const auto& [pos, us] : units) {
    std::uint64_t roff = (pos.first - 1) * height;
    std::uint64_t coff = col_offset[pos.second - 1];
    for (const auto& u : us) m.at(roff + u.row, coff + u.col) = CQ(1);
  }

  BlockTruncation out;
  out.matrix = std::move(m);
  out.row_counts.assign(n, height);
  out.col_counts = std::move(cols);
  return out;
}

VerificationReport verify_plan(const DiagonalTuple& t,
                               const CompletionPlan& plan, const CQ& lambda) {
  const std::size_t n = t.size();
  if (plan.n != n)
    throw EngineError("plan was built for a different tuple size");

  VerificationReport rep;
  auto predicted = predicted_invariants(t, plan, lambda);
  rep.predicted_alpha = predicted.first;
  rep.predicted_beta = predicted.second;

  // First gate: the predicted data must leave the target spectrum at all.
  FredholmData fd = FredholmData::make(
      predicted.first, predicted.second, true,
      predicted.second == ExtendedCount(0), predicted.second);
  if (in_spectrum(plan.tag.target, fd))
    throw VerificationFailed(
        "the predicted invariants keep the point inside the target spectrum");

  if (plan.tag.via_reversed_dual) {
    // The plan is the transpose of a left plan on the reversed dual; the
    // symbolic and section layers run there, where the kernel claims live.
    DiagonalTuple rd = t.reversed_dual();
    CaseTag left = mirror_tag(plan.tag, mirror_kind(plan.tag.target), false, n);
    CompletionPlan lp = left_plan_for(rd, lambda, left);
    VerificationReport inner = verify_plan(rd, lp, lambda);
    rep.kernel_generators_checked = inner.kernel_generators_checked;
    rep.coker_certificates = inner.coker_certificates;
    rep.geometric_kernel = inner.geometric_kernel;
    rep.dense_range_checked = inner.dense_range_checked;
    rep.notes = inner.notes;
    rep.notes.push_back(
        "symbolic and section layers ran on the reversed dual tuple");
    for (std::uint64_t N : {std::uint64_t(8), std::uint64_t(16),
                            std::uint64_t(32)}) {
      BlockTruncation bt = assemble_block_truncation(t, plan, lambda, N);
      std::uint64_t rank = exact_rank(bt.matrix);
      std::uint64_t kdim = bt.matrix.cols() - rank;
      rep.ranks.push_back({N, rank});
      rep.truncation_kernel_dims.push_back(kdim);
      if (rep.predicted_alpha.is_finite() &&
          kdim > rep.predicted_alpha.value())
        throw VerificationFailed(
            "an original-orientation section shows more kernel than the "
            "prediction allows");
    }
    return rep;
  }

  const auto d = tuple_data(t, lambda);

  // Symbolic layer: every claimed kernel generator annihilates the
  // completed matrix row by row. The embedded generator only meets its own
  // diagonal entry and any block reading its column.
  std::vector<std::vector<std::pair<std::uint64_t, const StructuredBlock*>>>
      readers(n + 1);
  for (const auto& [pos, b] : plan.blocks)
    readers[pos.second].push_back({pos.first, &b});

  for (std::uint64_t r : plan.kernel_rows) {
    const Model& mr = t.entry(r - 1);
    ExtendedCount ar = d[r - 1].alpha;
    std::uint64_t count;
    if (ar.is_infinite()) {
      count = 4;
      rep.notes.push_back("row " + std::to_string(r) +
                          " carries an infinite kernel family; the first 4 "
                          "generators were checked");
    } else {
      count = ar.value();
    }
    for (std::uint64_t u = 0; u < count; ++u) {
      SymbolicVector g = mr.kernel_generator(lambda, u);
      if (!g.is_finite_support()) rep.geometric_kernel = true;
      if (!mr.apply_shifted(lambda, g).is_zero())
        throw VerificationFailed(
            "a claimed kernel generator fails to annihilate its diagonal "
            "entry",
            g);
      for (const auto& [row_i, blk] : readers[r])
        if (!block_apply(t, lambda, row_i, r, *blk, g).is_zero())
          throw VerificationFailed(
              "a block reads a claimed kernel generator; the kernel rows "
              "are not free",
              g);
      ++rep.kernel_generators_checked;
    }
  }
  if (rep.geometric_kernel)
    rep.notes.push_back(
        "geometric kernel generators are invisible to finite sections; the "
        "symbolic layer is the verdict for them");

  // Dual certificates: for sampled cokernel slots the plan leaves free, a
  // dual kernel vector vanishing on every assigned slot but not on the
  // sampled one witnesses that the slot stays outside the range.
  for (std::size_t i = 1; i <= n; ++i) {
    ExtendedCount inc = plan.codim_increments[i - 1];
    if (inc == ExtendedCount(0)) continue;
    ExtendedCount bi = d[i - 1].beta;
    if (!d[i - 1].range_closed || bi == ExtendedCount(0)) continue;

    struct RowBlock {
      const StructuredBlock* b;
      ExtendedCount count;
    };
    std::vector<RowBlock> rbs;
    for (const auto& [pos, b] : plan.blocks)
      if (pos.first == i)
        rbs.push_back({&b, d[pos.second - 1].alpha});

    auto assigned_index = [&](std::uint64_t s) {
      for (const auto& rb : rbs) {
        std::uint64_t tt = 0;
        if (!invert_rule(*rb.b, s, tt)) continue;
        if (rb.count.is_infinite() || tt < rb.count.value()) return true;
      }
      return false;
    };

    std::uint64_t want =
        inc.is_finite() ? std::min<std::uint64_t>(inc.value(), 3) : 3;
    std::vector<std::uint64_t> sampled;
    for (std::uint64_t s = 0; sampled.size() < want && s < 1u << 20; ++s) {
      if (bi.is_finite() && s >= bi.value()) break;
      if (!assigned_index(s)) sampled.push_back(s);
    }

    const Model& mi = t.entry(i - 1);
    Model dual_i = mi.dual();
    ExtendedCount dual_alpha = dual_i.data_at(lambda).alpha;
    std::uint64_t cand =
        dual_alpha.is_finite() ? std::min<std::uint64_t>(dual_alpha.value(), 6)
                               : 6;

    for (std::uint64_t s : sampled) {
      std::uint64_t p = mi.coker_slot_position(lambda, s);
      bool certified = false, undecidable = false;
      for (std::uint64_t u = 0; u < cand && !certified; ++u) {
        SymbolicVector w = dual_i.kernel_generator(lambda, u);
        if (w.coeff_at(p).is_zero()) continue;
        bool vanishes = true;
        for (const auto& rb : rbs) {
          if (rb.count == ExtendedCount(0)) continue;
          if (rb.count.is_finite()) {
            for (std::uint64_t tt = 0; tt < rb.count.value() && vanishes; ++tt)
              vanishes = w.coeff_at(mi.coker_slot_position(
                                        lambda, rb.b->slot_index(tt)))
                             .is_zero();
          } else if (w.is_finite_support()) {
            for (const auto& [q, c] : w.finite_part()) {
              if (c.is_zero()) continue;
              for (const auto& [sq, pq] :
                   mi.coker_positions_below(lambda, q + 1)) {
                if (pq != q) continue;
                std::uint64_t tt = 0;
                if (invert_rule(*rb.b, sq, tt) &&
                    (rb.count.is_infinite() || tt < rb.count.value()))
                  vanishes = false;
                break;
              }
              if (!vanishes) break;
            }
          } else {
            undecidable = true;
          }
          if (!vanishes || undecidable) break;
        }
        if (undecidable) break;
        if (vanishes) {
          certified = true;
          ++rep.coker_certificates;
        }
      }
      if (!certified)
        rep.notes.push_back(
            "no dual certificate found for a free cokernel slot in row " +
            std::to_string(i) + (undecidable ? " (undecidable overlap)" : ""));
    }
  }

  // Finite sections: the section kernel must consist exactly of the claimed
  // generators whose support fits the window.
  for (std::uint64_t N : {std::uint64_t(8), std::uint64_t(16),
                          std::uint64_t(32)}) {
    BlockTruncation bt = assemble_block_truncation(t, plan, lambda, N);
    std::uint64_t rank = exact_rank(bt.matrix);
    std::uint64_t kdim = bt.matrix.cols() - rank;
    rep.ranks.push_back({N, rank});
    rep.truncation_kernel_dims.push_back(kdim);
    std::uint64_t expected = 0;
    for (std::uint64_t r : plan.kernel_rows) {
      const Model& mr = t.entry(r - 1);
      std::uint64_t window = bt.col_counts[r - 1];
      for (const auto& [tt, anchor] :
           mr.kernel_anchors_below(lambda, window)) {
        SymbolicVector g = mr.kernel_generator(lambda, tt);
        if (g.is_finite_support() && g.finite_support_bound() <= window)
          ++expected;
      }
    }
    if (kdim != expected)
      throw VerificationFailed(
          "a finite section's kernel does not match the claimed generators "
          "inside the window");
  }

  bool all_dense = true;
  for (const auto& e : d) all_dense = all_dense && e.range_dense;
  if (all_dense) {
    for (std::size_t i = 0; i < n; ++i)
      if (t.entry(i).dual().data_at(lambda).alpha != ExtendedCount(0))
        throw EngineError(
            "a dense range left a nonzero dual kernel; the model data is "
            "inconsistent");
    rep.dense_range_checked = true;
  }
  return rep;
}

}  // namespace specmat
