#pragma once

#include "specmat/model.hpp"

namespace specmat {

/// How one sequence space is required to sit inside another when a
/// completion is being built. Embeds asks for an isometric copy,
/// EssentiallyEmbeds for a copy of strictly smaller infinite codomain,
/// StronglyEmbeds for a copy that is either finite dimensional on both
/// sides or infinite dimensional on the source, and Ufds for mere
/// agreement of finiteness (the unique-finite-dimensional-summand space
/// hypothesis, which classifies but carries no construction).
enum class RelationMode { Embeds, EssentiallyEmbeds, StronglyEmbeds, Ufds };

const char* to_string(RelationMode m);

/// Decides the relation on concrete sequence spaces by dimension count.
bool space_relation(RelationMode mode, const SpaceModel& from, const SpaceModel& to);

/// Whether the shifted operator has closed range, which is exactly the
/// condition for its kernel and range to be complemented in our catalog.
bool complements_condition(const Model& m, const CQ& lambda);

/// Closed-range test on its own; kept separate from the complement check
/// because callers cite them for different reasons.
bool is_regular(const Model& m, const CQ& lambda);

}  // namespace specmat
