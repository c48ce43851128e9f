#include <doctest.h>

#include "specmat/embedding.hpp"

using namespace specmat;

namespace {
SpaceModel sp(ExtendedCount d) { return {d}; }
ExtendedCount inf() { return ExtendedCount::infinity(); }
}  // namespace

TEST_CASE("plain embedding is dimension comparison") {
  CHECK(space_relation(RelationMode::Embeds, sp(0), sp(1)));
  CHECK(space_relation(RelationMode::Embeds, sp(3), sp(3)));
  CHECK(space_relation(RelationMode::Embeds, sp(3), sp(inf())));
  CHECK(space_relation(RelationMode::Embeds, sp(inf()), sp(inf())));
  CHECK(!space_relation(RelationMode::Embeds, sp(2), sp(1)));
  CHECK(!space_relation(RelationMode::Embeds, sp(inf()), sp(5)));
}

TEST_CASE("essential embedding needs an infinite target and room") {
  CHECK(!space_relation(RelationMode::EssentiallyEmbeds, sp(1), sp(1)));
  CHECK(!space_relation(RelationMode::EssentiallyEmbeds, sp(0), sp(5)));
  CHECK(space_relation(RelationMode::EssentiallyEmbeds, sp(0), sp(inf())));
  CHECK(space_relation(RelationMode::EssentiallyEmbeds, sp(7), sp(inf())));
  CHECK(!space_relation(RelationMode::EssentiallyEmbeds, sp(inf()), sp(inf())));
}

TEST_CASE("strong embedding forbids infinite codimension") {
  // any map from a finite space into an infinite one leaves infinite room
  CHECK(!space_relation(RelationMode::StronglyEmbeds, sp(3), sp(inf())));
  CHECK(!space_relation(RelationMode::StronglyEmbeds, sp(0), sp(inf())));
  CHECK(space_relation(RelationMode::StronglyEmbeds, sp(3), sp(5)));
  CHECK(space_relation(RelationMode::StronglyEmbeds, sp(5), sp(5)));
  CHECK(!space_relation(RelationMode::StronglyEmbeds, sp(5), sp(3)));
  CHECK(space_relation(RelationMode::StronglyEmbeds, sp(inf()), sp(inf())));
  CHECK(!space_relation(RelationMode::StronglyEmbeds, sp(inf()), sp(4)));
}

TEST_CASE("finiteness match") {
  CHECK(space_relation(RelationMode::Ufds, sp(2), sp(9)));
  CHECK(space_relation(RelationMode::Ufds, sp(inf()), sp(inf())));
  CHECK(!space_relation(RelationMode::Ufds, sp(2), sp(inf())));
  CHECK(!space_relation(RelationMode::Ufds, sp(inf()), sp(0)));
}

TEST_CASE("regularity is closed range") {
  Model S = Model::shift();
  CHECK(is_regular(S, CQ(0)));
  CHECK(is_regular(S, CQ(2)));
  CHECK(!is_regular(S, CQ(1)));  // on the circle the range is dense, not closed
  CHECK(complements_condition(S, CQ(0)));
  CHECK(!complements_condition(S, CQ(0, 1)));

  Model Z = Model::zero(ExtendedCount::infinity());
  CHECK(is_regular(Z, CQ(0)));
}
