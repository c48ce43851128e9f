#include <benchmark/benchmark.h>

#include "specmat/arrangement.hpp"
#include "specmat/theorems.hpp"

using namespace specmat;

namespace {

DiagonalTuple twelve_circle_tuple() {
  const Rational radii[6][2] = {
      {Rational(1, 2), Rational(1)},    {Rational(1), Rational(3, 2)},
      {Rational(1, 2), Rational(3, 2)}, {Rational(2, 3), Rational(4, 3)},
      {Rational(1, 3), Rational(1)},    {Rational(3, 2), Rational(1, 2)}};
  std::vector<Model> entries;
  for (int i = 0; i < 6; ++i) {
    Model sum = Model::direct_sum(
        Model::scale(Model::shift(), CQ{radii[i][0], Rational(0)}),
        Model::scale(Model::backshift(), CQ{radii[i][1], Rational(0)}));
    entries.push_back(Model::translate(sum, CQ(4 * i)));
  }
  return DiagonalTuple(std::move(entries));
}

std::vector<Primitive> crossing_circles(int n) {
  std::vector<Primitive> prims;
  for (int i = 0; i < n; ++i)
    prims.push_back(Primitive::circle(CQ{Rational(i, 2), Rational(0)}, Rational(1)));
  return prims;
}

void BM_arrangement_build(benchmark::State& state) {
  auto prims = crossing_circles(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_arrangement(prims));
  }
}
BENCHMARK(BM_arrangement_build)->Arg(2)->Arg(4)->Arg(8);

void BM_region_contains(benchmark::State& state) {
  auto prims = crossing_circles(6);
  std::vector<RegionExpr> leaves;
  for (const auto& p : prims) leaves.push_back(RegionExpr::leaf(p));
  RegionExpr r = RegionExpr::difference(
      RegionExpr::union_of(leaves),
      RegionExpr::intersection_of({leaves[0], leaves[1]}));
  CQ z{Rational(1, 3), Rational(2, 7)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(contains(r, z));
  }
}
BENCHMARK(BM_region_contains);

void BM_grid_row(benchmark::State& state) {
  DiagonalTuple t({Model::shift(), Model::backshift()});
  RegionExpr flat = simplify(intersection_spectrum(t, SpectrumKind::LE).result);
  for (auto _ : state) {
    int members = 0;
    for (int c = 0; c < 501; ++c) {
      CQ z{Rational(-2) + Rational(4 * c, 500), Rational(1, 3)};
      members += contains(flat, z) ? 1 : 0;
    }
    benchmark::DoNotOptimize(members);
  }
}
BENCHMARK(BM_grid_row);

void BM_intersection_spectrum(benchmark::State& state) {
  DiagonalTuple t = twelve_circle_tuple();
  for (auto _ : state) {
    benchmark::DoNotOptimize(intersection_spectrum(t, SpectrumKind::LE).result);
  }
}
BENCHMARK(BM_intersection_spectrum);

}  // namespace

BENCHMARK_MAIN();
