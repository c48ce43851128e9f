#include "specmat/embedding.hpp"

namespace specmat {

const char* to_string(RelationMode m) {
  switch (m) {
    case RelationMode::Embeds: return "embeds";
    case RelationMode::EssentiallyEmbeds: return "essentially-embeds";
    case RelationMode::StronglyEmbeds: return "strongly-embeds";
    default: return "ufds";
  }
}

bool space_relation(RelationMode mode, const SpaceModel& from, const SpaceModel& to) {
  const ExtendedCount& a = from.dim;
  const ExtendedCount& b = to.dim;
  switch (mode) {
    case RelationMode::Embeds:
      return a <= b;
    case RelationMode::EssentiallyEmbeds:
      return b.is_infinite() && a < b;
    case RelationMode::StronglyEmbeds:
      // An embedding that misses no infinite dimensional headroom: the
      // target may exceed the source only while both stay finite.
      return a <= b && (!b.is_infinite() || a.is_infinite());
    default:
      return a.is_infinite() == b.is_infinite();
  }
}

bool complements_condition(const Model& m, const CQ& lambda) {
  return m.data_at(lambda).range_closed;
}

bool is_regular(const Model& m, const CQ& lambda) {
  return m.data_at(lambda).range_closed;
}

}  // namespace specmat
