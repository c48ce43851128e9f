#include "specmat/spectra.hpp"

namespace specmat {

const char* to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::L: return "left";
    case SpectrumKind::R: return "right";
    case SpectrumKind::Full: return "spectrum";
    case SpectrumKind::LE: return "left-essential";
    case SpectrumKind::RE: return "right-essential";
    case SpectrumKind::E: return "essential";
    case SpectrumKind::LW: return "left-weyl";
    case SpectrumKind::RW: return "right-weyl";
    default: return "weyl";
  }
}

std::optional<SpectrumKind> spectrum_kind_from_string(const std::string& s) {
  for (SpectrumKind k : all_spectrum_kinds)
    if (s == to_string(k)) return k;
  return std::nullopt;
}

bool in_spectrum(SpectrumKind k, const FredholmData& d) {
  const bool le = d.alpha.is_infinite() || !d.range_closed;
  const bool re = d.beta.is_infinite();
  switch (k) {
    case SpectrumKind::L:
      return ExtendedCount(0) < d.alpha || !d.range_closed;
    case SpectrumKind::R:
      return ExtendedCount(0) < d.beta;
    case SpectrumKind::Full:
      return in_spectrum(SpectrumKind::L, d) || in_spectrum(SpectrumKind::R, d);
    case SpectrumKind::LE:
      return le;
    case SpectrumKind::RE:
      return re;
    case SpectrumKind::E:
      return le || re;
    case SpectrumKind::LW:
      // left Fredholm with positive index is still left Weyl spectrum
      return le || d.beta < d.alpha;
    case SpectrumKind::RW:
      return re || d.alpha < d.beta;
    default:
      return in_spectrum(SpectrumKind::LW, d) || in_spectrum(SpectrumKind::RW, d);
  }
}

RegionExpr spectrum(const Model& m, SpectrumKind k) {
  std::vector<RegionExpr> parts;
  for (const auto& [region, data] : m.profile().parts)
    if (in_spectrum(k, data)) parts.push_back(region);
  return RegionExpr::union_of(std::move(parts));
}

RegionExpr dense_range_region(const Model& m) {
  std::vector<RegionExpr> parts;
  for (const auto& [region, data] : m.profile().parts)
    if (data.range_dense) parts.push_back(region);
  return RegionExpr::union_of(std::move(parts));
}

}  // namespace specmat
