#include <doctest.h>

#include "specmat/arrangement.hpp"
#include "specmat/spectra.hpp"

using namespace specmat;

namespace {

RegionExpr unit_circle() { return RegionExpr::circle(CQ(0), Rational(1)); }
RegionExpr unit_disk() { return RegionExpr::closed_disk(CQ(0), Rational(1)); }

// left and right kinds trade places under duality
SpectrumKind mirror(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::L: return SpectrumKind::R;
    case SpectrumKind::R: return SpectrumKind::L;
    case SpectrumKind::LE: return SpectrumKind::RE;
    case SpectrumKind::RE: return SpectrumKind::LE;
    case SpectrumKind::LW: return SpectrumKind::RW;
    case SpectrumKind::RW: return SpectrumKind::LW;
    default: return k;
  }
}

}  // namespace

TEST_CASE("kind names round trip") {
  for (SpectrumKind k : all_spectrum_kinds) {
    auto back = spectrum_kind_from_string(to_string(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK(spectrum_kind_from_string("spectrum") == SpectrumKind::Full);
  CHECK(spectrum_kind_from_string("left-weyl") == SpectrumKind::LW);
  CHECK(!spectrum_kind_from_string("weyle").has_value());
  CHECK(!spectrum_kind_from_string("").has_value());
}

TEST_CASE("pointwise membership by kind") {
  auto inv = FredholmData::invertible();
  for (SpectrumKind k : all_spectrum_kinds) CHECK(!in_spectrum(k, inv));

  // alpha=0 beta=1 closed: right but not left, Fredholm of index -1
  auto s0 = FredholmData::make(0, 1, true, false, 1);
  CHECK(!in_spectrum(SpectrumKind::L, s0));
  CHECK(in_spectrum(SpectrumKind::R, s0));
  CHECK(in_spectrum(SpectrumKind::Full, s0));
  CHECK(!in_spectrum(SpectrumKind::LE, s0));
  CHECK(!in_spectrum(SpectrumKind::RE, s0));
  CHECK(!in_spectrum(SpectrumKind::LW, s0));  // index <= 0 is fine
  CHECK(in_spectrum(SpectrumKind::RW, s0));   // index >= 0 fails
  CHECK(in_spectrum(SpectrumKind::W, s0));

  auto s1 = s0.dual();  // alpha=1 beta=0
  CHECK(in_spectrum(SpectrumKind::LW, s1));
  CHECK(!in_spectrum(SpectrumKind::RW, s1));

  // dense range, not closed
  auto dn = FredholmData::make(0, ExtendedCount::infinity(), false, true, 0);
  CHECK(in_spectrum(SpectrumKind::LE, dn));
  CHECK(in_spectrum(SpectrumKind::RE, dn));
  CHECK(in_spectrum(SpectrumKind::L, dn));
  CHECK(in_spectrum(SpectrumKind::R, dn));

  // infinite kernel, onto
  auto ik = FredholmData::make(ExtendedCount::infinity(), 0, true, true, 0);
  CHECK(in_spectrum(SpectrumKind::LE, ik));
  CHECK(!in_spectrum(SpectrumKind::RE, ik));
  CHECK(in_spectrum(SpectrumKind::LW, ik));
  CHECK(!in_spectrum(SpectrumKind::RW, ik));
}

TEST_CASE("unilateral shift spectra") {
  Model S = Model::shift();
  CHECK(is_equal(spectrum(S, SpectrumKind::L), unit_circle()));
  CHECK(is_equal(spectrum(S, SpectrumKind::R), unit_disk()));
  CHECK(is_equal(spectrum(S, SpectrumKind::Full), unit_disk()));
  // inside the disk S - z is injective with closed range of codimension 1,
  // hence Fredholm from both sides: the essential spectra are the circle
  CHECK(is_equal(spectrum(S, SpectrumKind::LE), unit_circle()));
  CHECK(is_equal(spectrum(S, SpectrumKind::RE), unit_circle()));
  CHECK(is_equal(spectrum(S, SpectrumKind::E), unit_circle()));
  CHECK(is_equal(spectrum(S, SpectrumKind::LW), unit_circle()));
  CHECK(is_equal(spectrum(S, SpectrumKind::RW), unit_disk()));
  CHECK(is_equal(spectrum(S, SpectrumKind::W), unit_disk()));
  CHECK(is_equal(dense_range_region(S),
                 RegionExpr::complement(
                     RegionExpr::open_disk(CQ(0), Rational(1)))));

  // every spectrum of S is symmetric under conjugation, so dualising
  // just swaps the left and right kinds
  Model Sd = S.dual();
  for (SpectrumKind k : all_spectrum_kinds)
    CHECK(is_equal(spectrum(Sd, k), spectrum(S, mirror(k))));
}

TEST_CASE("scalar models have singleton spectra") {
  Model I = Model::identity(ExtendedCount::infinity());
  Model Z = Model::zero(ExtendedCount::infinity());
  Model D = Model::diagonal({{CQ(0), ExtendedCount::infinity()}});
  for (SpectrumKind k : all_spectrum_kinds) {
    CHECK(is_equal(spectrum(I, k), RegionExpr::point(CQ(1))));
    CHECK(is_equal(spectrum(Z, k), RegionExpr::point(CQ(0))));
    CHECK(is_equal(spectrum(D, k), RegionExpr::point(CQ(0))));
  }
  // finite rank scalars fall out of the essential kinds entirely
  Model Ifin = Model::identity(ExtendedCount(3));
  CHECK(is_equal(spectrum(Ifin, SpectrumKind::Full), RegionExpr::point(CQ(1))));
  CHECK(is_empty(spectrum(Ifin, SpectrumKind::E)));
}

TEST_CASE("bilateral shift spectra sit on the circle") {
  Model W = Model::bishift();
  for (SpectrumKind k : all_spectrum_kinds)
    CHECK(is_equal(spectrum(W, k), unit_circle()));
  CHECK(is_equal(spectrum(W.dual(), SpectrumKind::Full), unit_circle()));
}

TEST_CASE("spectra respect affine moves") {
  Model S = Model::shift();
  CQ a(0, 2);
  CQ b{Rational(1, 2), Rational(-1, 3)};
  Model moved = Model::translate(Model::scale(S, a), b);
  for (SpectrumKind k : all_spectrum_kinds) {
    CHECK(is_equal(spectrum(moved, k),
                   spectrum(S, k).transformed(a, Rational(2), b)));
  }
}

TEST_CASE("direct sum spectra are unions") {
  Model S = Model::shift();
  Model M = Model::direct_sum(S, Model::translate(S, CQ(3)));
  for (SpectrumKind k : {SpectrumKind::Full, SpectrumKind::L, SpectrumKind::LE}) {
    CHECK(is_equal(
        spectrum(M, k),
        RegionExpr::union_of(
            {spectrum(S, k),
             spectrum(S, k).transformed(CQ(1), Rational(1), CQ(3))})));
  }
  // inflating never changes the set, only multiplicities
  Model I = Model::inflate(S);
  for (SpectrumKind k : all_spectrum_kinds)
    CHECK(is_equal(spectrum(I, k), spectrum(S, k)));
}

TEST_CASE("membership agrees with data at rational probes") {
  std::vector<Model> ms = {Model::shift(), Model::bishift(),
                           Model::direct_sum(Model::zero(ExtendedCount(2)),
                                             Model::shift())};
  std::vector<CQ> probes = {CQ(0), CQ(1), CQ(-1), CQ(0, 1), CQ(2),
                            CQ{Rational(3, 5), Rational(4, 5)},
                            CQ{Rational(1, 2), Rational(1, 2)}};
  for (const auto& m : ms)
    for (const auto& z : probes) {
      auto d = m.data_at(z);
      for (SpectrumKind k : all_spectrum_kinds)
        CHECK(contains(spectrum(m, k), z) == in_spectrum(k, d));
    }
}
