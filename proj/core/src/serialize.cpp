#include "specmat/serialize.hpp"

#include <json.hpp>

#include "specmat/arrangement.hpp"
#include "specmat/spectra.hpp"

namespace specmat {

namespace {

using json = nlohmann::ordered_json;

json j_count(const ExtendedCount& c) {
  if (c.is_infinite()) return "inf";
  return c.value();
}

json j_prim(const Primitive& p) {
  json out;
  switch (p.kind) {
    case PrimKind::Empty: out["kind"] = "empty"; break;
    case PrimKind::FullPlane: out["kind"] = "plane"; break;
    case PrimKind::Point:
      out["kind"] = "point";
      out["center"] = complex_to_string(p.center);
      break;
    case PrimKind::Circle:
    case PrimKind::OpenDisk:
    case PrimKind::ClosedDisk:
      out["kind"] = p.kind == PrimKind::Circle      ? "circle"
                    : p.kind == PrimKind::OpenDisk ? "open-disk"
                                                   : "closed-disk";
      out["center"] = complex_to_string(p.center);
      out["radius"] = rational_to_string(p.radius);
      break;
  }
  return out;
}

json j_expr(const RegionExpr& r) {
  if (r.op() == RegionOp::Leaf) return json{{"prim", j_prim(r.primitive())}};
  const char* name = r.op() == RegionOp::Union          ? "union"
                     : r.op() == RegionOp::Intersection ? "intersection"
                     : r.op() == RegionOp::Complement   ? "complement"
                                                        : "difference";
  json args = json::array();
  for (const auto& a : r.args()) args.push_back(j_expr(a));
  return json{{"op", name}, {"args", std::move(args)}};
}

json j_region(const RegionExpr& r) {
  return json{{"describe", describe(r)}, {"expr", j_expr(simplify(r))}};
}

json j_fredholm(const FredholmData& d) {
  return json{{"alpha", j_count(d.alpha)},
              {"beta", j_count(d.beta)},
              {"range_closed", d.range_closed},
              {"range_dense", d.range_dense},
              {"closure_defect", j_count(d.closure_defect)}};
}

const char* block_kind_name(BlockKind k) {
  switch (k) {
    case BlockKind::Zero: return "zero";
    case BlockKind::SuperdiagJ: return "superdiag";
    default: return "column";
  }
}

const char* slot_rule_name(SlotRule r) {
  switch (r) {
    case SlotRule::InitialSlice: return "initial-slice";
    case SlotRule::AfterOffset: return "after-offset";
    case SlotRule::Evens: return "evens";
    default: return "odds";
  }
}

}  // namespace

std::string region_json(const RegionExpr& r) { return j_region(r).dump(); }

std::string fredholm_json(const FredholmData& d) { return j_fredholm(d).dump(); }

std::string theorem_report_json(const TheoremReport& r) {
  json deltas = json::array();
  for (const auto& d : r.delta_sets)
    deltas.push_back(json{{"label", d.label}, {"region", j_region(d.region)}});
  json out{{"kind", to_string(r.kind)},
           {"variant", to_string(r.variant)},
           {"result", j_region(r.result)},
           {"delta_sets", std::move(deltas)},
           {"hypothesis", j_region(r.hypothesis_region)},
           {"warnings", r.warnings}};
  return out.dump();
}

std::string check_report_json(const CheckReport& r) {
  json out{{"holds", r.holds},
           {"witness", r.witness ? json(complex_to_string(*r.witness)) : json(nullptr)},
           {"detail", r.detail}};
  return out.dump();
}

std::string plan_json(const DiagonalTuple& t, const CompletionPlan& p,
                      const CQ& lambda) {
  constexpr std::uint64_t kUnitWindow = 8;
  json blocks = json::array();
  for (const auto& [pos, block] : p.blocks) {
    json units = json::array();
    for (const auto& u :
         materialize_block(t, lambda, pos.first, pos.second, block, kUnitWindow, kUnitWindow))
      units.push_back(json::array({u.row, u.col}));
    blocks.push_back(json{{"row", pos.first},
                          {"col", pos.second},
                          {"kind", block_kind_name(block.kind)},
                          {"rule", slot_rule_name(block.rule)},
                          {"offset", block.offset},
                          {"transposed", block.transposed},
                          {"units_sample", std::move(units)}});
  }
  json increments = json::array();
  for (const auto& c : p.codim_increments) increments.push_back(j_count(c));
  auto [alpha, beta] = predicted_invariants(t, p, lambda);
  json out{{"case", p.tag.to_string()},
           {"target", to_string(p.tag.target)},
           {"label", p.tag.label},
           {"l", p.tag.l},
           {"k", p.tag.k},
           {"via_reversed_dual", p.tag.via_reversed_dual},
           {"n", p.n},
           {"lambda", complex_to_string(lambda)},
           {"kernel_rows", p.kernel_rows},
           {"codim_increments", std::move(increments)},
           {"blocks", std::move(blocks)},
           {"predicted", json{{"alpha", j_count(alpha)}, {"beta", j_count(beta)}}},
           {"warnings", p.warnings}};
  return out.dump();
}

std::string verification_json(const VerificationReport& r) {
  json sections = json::array();
  for (std::size_t i = 0; i < r.ranks.size(); ++i)
    sections.push_back(json{{"size", r.ranks[i].first},
                            {"rank", r.ranks[i].second},
                            {"kernel_dim", r.truncation_kernel_dims[i]}});
  json out{{"predicted", json{{"alpha", j_count(r.predicted_alpha)},
                              {"beta", j_count(r.predicted_beta)}}},
           {"kernel_generators_checked", r.kernel_generators_checked},
           {"coker_certificates", r.coker_certificates},
           {"sections", std::move(sections)},
           {"geometric_kernel", r.geometric_kernel},
           {"dense_range_checked", r.dense_range_checked},
           {"notes", r.notes}};
  return out.dump();
}

}  // namespace specmat
