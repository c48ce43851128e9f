#include "specmat/theorems.hpp"

#include <utility>

namespace specmat {

const char* to_string(VariantFlag v) {
  switch (v) {
    case VariantFlag::PlainEmbedding: return "plain-embedding";
    case VariantFlag::StrictEmbedding: return "strict-embedding";
    case VariantFlag::BetaNInfinite: return "beta-last-infinite";
    case VariantFlag::AlphaOneInfinite: return "alpha-first-infinite";
    case VariantFlag::StrongEmbedding: return "strong-embedding";
    default: return "finiteness-match";
  }
}

std::optional<VariantFlag> variant_from_string(const std::string& s) {
  for (VariantFlag v : {VariantFlag::PlainEmbedding, VariantFlag::StrictEmbedding,
                        VariantFlag::BetaNInfinite, VariantFlag::AlphaOneInfinite,
                        VariantFlag::StrongEmbedding, VariantFlag::Ufds})
    if (s == to_string(v)) return v;
  return std::nullopt;
}

VariantFlag default_variant(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::E: return VariantFlag::StrongEmbedding;
    case SpectrumKind::LW:
    case SpectrumKind::RW: return VariantFlag::StrictEmbedding;
    default: return VariantFlag::PlainEmbedding;
  }
}

bool variant_allowed(SpectrumKind k, VariantFlag v) {
  switch (k) {
    case SpectrumKind::LE:
    case SpectrumKind::RE: return v == VariantFlag::PlainEmbedding;
    case SpectrumKind::E:
      return v == VariantFlag::StrongEmbedding || v == VariantFlag::Ufds;
    case SpectrumKind::LW:
      return v == VariantFlag::StrictEmbedding || v == VariantFlag::BetaNInfinite;
    case SpectrumKind::RW:
      return v == VariantFlag::StrictEmbedding || v == VariantFlag::AlphaOneInfinite;
    default: return false;
  }
}

namespace {

bool formula_target(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::LE:
    case SpectrumKind::RE:
    case SpectrumKind::E:
    case SpectrumKind::LW:
    case SpectrumKind::RW: return true;
    default: return false;
  }
}

bool le_at(const FredholmData& d) { return in_spectrum(SpectrumKind::LE, d); }
bool re_at(const FredholmData& d) { return in_spectrum(SpectrumKind::RE, d); }

ExtendedCount beta_sum_before(const std::vector<FredholmData>& d, std::size_t k) {
  ExtendedCount s(0);
  for (std::size_t i = 0; i < k; ++i) s += d[i].beta;
  return s;
}

ExtendedCount alpha_sum_after(const std::vector<FredholmData>& d, std::size_t k) {
  ExtendedCount s(0);
  for (std::size_t i = k + 1; i < d.size(); ++i) s += d[i].alpha;
  return s;
}

ExtendedCount alpha_total(const std::vector<FredholmData>& d) {
  ExtendedCount s(0);
  for (const auto& x : d) s += x.alpha;
  return s;
}

ExtendedCount beta_total(const std::vector<FredholmData>& d) {
  ExtendedCount s(0);
  for (const auto& x : d) s += x.beta;
  return s;
}

// Labels use one-based entry positions, matching the report's reading of
// the tuple as D_1, ..., D_n.
std::vector<std::string> formula_labels(SpectrumKind kind, std::size_t n) {
  std::vector<std::string> out;
  switch (kind) {
    case SpectrumKind::LE:
    case SpectrumKind::LW:
      for (std::size_t j = 1; j < n; ++j) out.push_back("delta_" + std::to_string(j + 1));
      if (kind == SpectrumKind::LW) out.push_back("index_excess");
      break;
    case SpectrumKind::RE:
    case SpectrumKind::RW:
      for (std::size_t j = 0; j + 1 < n; ++j) out.push_back("delta_" + std::to_string(j + 1));
      if (kind == SpectrumKind::RW) out.push_back("index_excess");
      break;
    default:
      for (std::size_t j = 1; j + 1 < n; ++j) out.push_back("delta_le_" + std::to_string(j + 1));
      for (std::size_t j = 1; j + 1 < n; ++j) out.push_back("delta_re_" + std::to_string(j + 1));
      out.push_back("beta_first_infinite");
      out.push_back("alpha_last_infinite");
      break;
  }
  return out;
}

// Per-point formula memberships, aligned with formula_labels.
void eval_formula(SpectrumKind kind, const std::vector<FredholmData>& d,
                  std::vector<bool>& delta, bool& in_result) {
  const std::size_t n = d.size();
  delta.clear();
  bool base = false;
  switch (kind) {
    case SpectrumKind::LE:
    case SpectrumKind::LW:
      base = le_at(d[0]);
      for (std::size_t j = 1; j < n; ++j)
        delta.push_back(le_at(d[j]) && beta_sum_before(d, j).is_finite());
      if (kind == SpectrumKind::LW) delta.push_back(beta_total(d) < alpha_total(d));
      break;
    case SpectrumKind::RE:
    case SpectrumKind::RW:
      base = re_at(d[n - 1]);
      for (std::size_t j = 0; j + 1 < n; ++j)
        delta.push_back(re_at(d[j]) && alpha_sum_after(d, j).is_finite());
      if (kind == SpectrumKind::RW) delta.push_back(alpha_total(d) < beta_total(d));
      break;
    default:  // E
      base = le_at(d[0]) || re_at(d[n - 1]);
      for (std::size_t j = 1; j + 1 < n; ++j)
        delta.push_back(le_at(d[j]) && beta_sum_before(d, j).is_finite());
      for (std::size_t j = 1; j + 1 < n; ++j)
        delta.push_back(re_at(d[j]) && alpha_sum_after(d, j).is_finite());
      delta.push_back(d[0].beta.is_infinite() && alpha_sum_after(d, 0).is_finite());
      delta.push_back(d[n - 1].alpha.is_infinite() &&
                      beta_sum_before(d, n - 1).is_finite());
      break;
  }
  in_result = base;
  for (bool b : delta) in_result = in_result || b;
}

bool hypothesis_at(SpectrumKind kind, VariantFlag v, const std::vector<FredholmData>& d) {
  const std::size_t n = d.size();
  for (const auto& x : d)
    if (!x.range_closed) return false;
  auto rel = [](RelationMode mode, const ExtendedCount& from, const ExtendedCount& to) {
    return space_relation(mode, SpaceModel{from}, SpaceModel{to});
  };
  switch (kind) {
    case SpectrumKind::LE:
    case SpectrumKind::LW: {
      RelationMode mode = v == VariantFlag::StrictEmbedding
                              ? RelationMode::EssentiallyEmbeds
                              : RelationMode::Embeds;
      if (v == VariantFlag::BetaNInfinite && !d[n - 1].beta.is_infinite()) return false;
      // kernel of each later entry into the cokernel headroom of each earlier
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          if (!rel(mode, d[k].alpha, d[j].beta)) return false;
      return true;
    }
    case SpectrumKind::RE:
    case SpectrumKind::RW: {
      RelationMode mode = v == VariantFlag::StrictEmbedding
                              ? RelationMode::EssentiallyEmbeds
                              : RelationMode::Embeds;
      if (v == VariantFlag::AlphaOneInfinite && !d[0].alpha.is_infinite()) return false;
      // cokernel headroom of each earlier entry into the kernel of each later
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          if (!rel(mode, d[j].beta, d[k].alpha)) return false;
      return true;
    }
    default: {  // E
      RelationMode mode =
          v == VariantFlag::Ufds ? RelationMode::Ufds : RelationMode::StronglyEmbeds;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
          if (!rel(mode, d[k].alpha, d[j].beta)) return false;
      return true;
    }
  }
}

void require_formula(const DiagonalTuple& t, SpectrumKind kind, VariantFlag variant) {
  (void)t;
  if (!formula_target(kind))
    throw EngineError(std::string("no intersection formula for spectrum kind '") +
                      to_string(kind) + "'");
  if (!variant_allowed(kind, variant))
    throw EngineError(std::string("variant '") + to_string(variant) +
                      "' does not apply to target '" + to_string(kind) + "'");
}

}  // namespace

TheoremReport intersection_spectrum(const DiagonalTuple& t, SpectrumKind kind,
                                    VariantFlag variant) {
  require_formula(t, kind, variant);
  TuplePartition p = refine_tuple(t);
  const std::size_t cells = p.cells.size();
  auto labels = formula_labels(kind, t.size());

  std::vector<bool> in_result(cells, false);
  std::vector<bool> hyp(cells, false);
  std::vector<std::vector<bool>> delta(labels.size(), std::vector<bool>(cells, false));
  bool outside_hyp = false;
  for (std::size_t i = 0; i < cells; ++i) {
    std::vector<bool> dm;
    bool r = false;
    eval_formula(kind, p.cells[i].data, dm, r);
    in_result[i] = r;
    for (std::size_t j = 0; j < dm.size(); ++j) delta[j][i] = dm[j];
    hyp[i] = hypothesis_at(kind, variant, p.cells[i].data);
    if (r && !hyp[i]) outside_hyp = true;
  }

  TheoremReport rep;
  rep.kind = kind;
  rep.variant = variant;
  rep.result = cover_region(p.arrangement, in_result);
  rep.hypothesis_region = cover_region(p.arrangement, hyp);
  for (std::size_t j = 0; j < labels.size(); ++j)
    rep.delta_sets.push_back({labels[j], cover_region(p.arrangement, delta[j])});
  if (outside_hyp)
    rep.warnings.push_back(
        "result reaches points where the standing hypotheses fail; membership "
        "is certified only inside the hypothesis region");
  if (variant == VariantFlag::Ufds)
    rep.warnings.push_back(
        "finiteness-match hypotheses classify completions but do not support "
        "constructing one");
  return rep;
}

TheoremReport intersection_spectrum(const DiagonalTuple& t, SpectrumKind kind) {
  return intersection_spectrum(t, kind, default_variant(kind));
}

RegionExpr hypothesis_region(const DiagonalTuple& t, SpectrumKind kind,
                             VariantFlag variant) {
  require_formula(t, kind, variant);
  TuplePartition p = refine_tuple(t);
  return cells_where(p, [&](const TupleCell& c) {
    return hypothesis_at(kind, variant, c.data);
  });
}

CheckReport union_equality_check(const DiagonalTuple& t, SpectrumKind kind) {
  require_formula(t, kind, default_variant(kind));
  TuplePartition p = refine_tuple(t);
  const std::size_t n = t.size();
  CheckReport rep;
  for (const TupleCell& c : p.cells) {
    const auto& d = c.data;
    bool bad = false;
    switch (kind) {
      case SpectrumKind::LE: {
        bool lhs = false, rhs = le_at(d[0]);
        for (std::size_t j = 1; j < n; ++j)
          if (le_at(d[j]) && beta_sum_before(d, j).is_infinite()) lhs = true;
        for (std::size_t j = 1; j + 1 < n; ++j)
          if (le_at(d[j]) && beta_sum_before(d, j).is_finite()) rhs = true;
        bad = lhs && !rhs;
        break;
      }
      case SpectrumKind::RE: {
        bool lhs = false, rhs = re_at(d[n - 1]);
        for (std::size_t j = 0; j + 1 < n; ++j)
          if (re_at(d[j]) && alpha_sum_after(d, j).is_infinite()) lhs = true;
        for (std::size_t j = 1; j + 1 < n; ++j)
          if (re_at(d[j]) && alpha_sum_after(d, j).is_finite()) rhs = true;
        bad = lhs && !rhs;
        break;
      }
      case SpectrumKind::E: {
        bool lhs = false, rhs = le_at(d[0]) || re_at(d[n - 1]);
        for (std::size_t j = 0; j + 1 < n; ++j)
          if (d[j].beta.is_infinite() && alpha_sum_after(d, j).is_infinite()) lhs = true;
        for (std::size_t j = 1; j + 1 < n; ++j) {
          if (le_at(d[j]) && beta_sum_before(d, j).is_finite()) rhs = true;
          if (re_at(d[j]) && alpha_sum_after(d, j).is_finite()) rhs = true;
        }
        bad = lhs && !rhs;
        break;
      }
      case SpectrumKind::LW: {
        // Obstruction one: a finite left-essential resolvent prefix ending in
        // an infinite cokernel, with the target spectrum active elsewhere.
        for (std::size_t j = 0; j + 1 < n && !bad; ++j) {
          bool prefix_clear = true;
          for (std::size_t s = 0; s <= j; ++s) prefix_clear = prefix_clear && !le_at(d[s]);
          if (!prefix_clear || !d[j].beta.is_infinite()) continue;
          for (std::size_t u = 0; u < n; ++u)
            if (u != j && in_spectrum(SpectrumKind::LW, d[u])) bad = true;
        }
        // Obstruction two: pointwise index excess that the totals hide.
        if (!bad) {
          bool all_clear = true;
          for (std::size_t s = 0; s < n; ++s) all_clear = all_clear && !le_at(d[s]);
          if (all_clear && alpha_total(d) <= beta_total(d)) {
            for (std::size_t s = 0; s < n; ++s)
              if (d[s].beta < d[s].alpha) bad = true;
          }
        }
        break;
      }
      default: {  // RW
        for (std::size_t j = 1; j < n && !bad; ++j) {
          bool suffix_clear = true;
          for (std::size_t s = j; s < n; ++s) suffix_clear = suffix_clear && !re_at(d[s]);
          if (!suffix_clear || !d[j].alpha.is_infinite()) continue;
          for (std::size_t u = 0; u < n; ++u)
            if (u != j && in_spectrum(SpectrumKind::RW, d[u])) bad = true;
        }
        if (!bad) {
          bool all_clear = true;
          for (std::size_t s = 0; s < n; ++s) all_clear = all_clear && !re_at(d[s]);
          if (all_clear && beta_total(d) <= alpha_total(d)) {
            for (std::size_t s = 0; s < n; ++s)
              if (d[s].alpha < d[s].beta) bad = true;
          }
        }
        break;
      }
    }
    if (bad) {
      rep.holds = false;
      rep.witness = c.rep;
      rep.detail = "the union of the diagonal spectra exceeds the intersection";
      return rep;
    }
  }
  rep.detail = "the intersection equals the union of the diagonal spectra";
  return rep;
}

CheckReport inclusion_bounds_check(const DiagonalTuple& t, SpectrumKind kind) {
  require_formula(t, kind, default_variant(kind));
  TuplePartition p = refine_tuple(t);
  const std::size_t n = t.size();
  CheckReport rep;
  for (const TupleCell& c : p.cells) {
    const auto& d = c.data;
    std::vector<bool> dm;
    bool mid = false;
    eval_formula(kind, d, dm, mid);
    bool lower = false;
    switch (kind) {
      case SpectrumKind::LE:
      case SpectrumKind::LW: lower = le_at(d[0]); break;
      case SpectrumKind::RE:
      case SpectrumKind::RW: lower = re_at(d[n - 1]); break;
      default: lower = le_at(d[0]) || re_at(d[n - 1]); break;
    }
    bool upper = false;
    for (std::size_t s = 0; s < n; ++s) upper = upper || in_spectrum(kind, d[s]);
    if ((lower && !mid) || (mid && !upper)) {
      rep.holds = false;
      rep.witness = c.rep;
      rep.detail = lower && !mid
                       ? "the result misses a point no completion can remove"
                       : "the result leaves the union of the diagonal spectra";
      return rep;
    }
  }
  rep.detail = "the result sits between the fixed part and the diagonal union";
  return rep;
}

RegionExpr diagonal_union_spectrum(const DiagonalTuple& t, SpectrumKind kind) {
  TuplePartition p = refine_tuple(t);
  return cells_where(p, [&](const TupleCell& c) {
    for (const auto& d : c.data)
      if (in_spectrum(kind, d)) return true;
    return false;
  });
}

RegionExpr dense_range_region(const DiagonalTuple& t) {
  TuplePartition p = refine_tuple(t);
  return cells_where(p, [&](const TupleCell& c) {
    for (const auto& d : c.data)
      if (!d.range_dense) return false;
    return true;
  });
}

bool intersection_member(const DiagonalTuple& t, const CQ& lambda,
                         SpectrumKind kind) {
  require_formula(t, kind, default_variant(kind));
  std::vector<FredholmData> d;
  d.reserve(t.size());
  for (std::size_t s = 0; s < t.size(); ++s)
    d.push_back(t.entry(s).data_at(lambda));
  std::vector<bool> delta;
  bool in_result = false;
  eval_formula(kind, d, delta, in_result);
  return in_result;
}

bool hypothesis_holds_at(const DiagonalTuple& t, const CQ& lambda,
                         SpectrumKind kind, VariantFlag variant) {
  require_formula(t, kind, variant);
  std::vector<FredholmData> d;
  d.reserve(t.size());
  for (std::size_t s = 0; s < t.size(); ++s)
    d.push_back(t.entry(s).data_at(lambda));
  return hypothesis_at(kind, variant, d);
}

}  // namespace specmat
