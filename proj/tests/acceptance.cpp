// Acceptance gate: ten checks covering the region algebra, duality, the
// spectrum lattice, the intersection formulas with their completion
// constructions, finite dimensional degeneracy, and performance floors.
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specmat/arrangement.hpp"
#include "specmat/completion.hpp"
#include "specmat/matrixq.hpp"
#include "specmat/theorems.hpp"

#include "support.hpp"

using namespace specmat;
using testsupport::Rng;

namespace {

int g_note_count = 0;

void note(const std::string& what) {
  // details go to stderr so the pass/fail lines stay one per criterion
  std::fprintf(stderr, "    note: %s\n", what.c_str());
  ++g_note_count;
}

bool expect(bool ok, const std::string& what) {
  if (!ok) note(what);
  return ok;
}

CQ conj(const CQ& z) { return {z.re, -z.im}; }

/// Membership by folding the boolean structure directly, the slow way.
bool fold_membership(const RegionExpr& e, const CQ& z) {
  switch (e.op()) {
    case RegionOp::Leaf:
      return contains(e.primitive(), z);
    case RegionOp::Union: {
      for (const auto& a : e.args())
        if (fold_membership(a, z)) return true;
      return false;
    }
    case RegionOp::Intersection: {
      for (const auto& a : e.args())
        if (!fold_membership(a, z)) return false;
      return true;
    }
    case RegionOp::Complement:
      return !fold_membership(e.args()[0], z);
    case RegionOp::Difference:
      return fold_membership(e.args()[0], z) &&
             !fold_membership(e.args()[1], z);
  }
  return false;
}

// ---- criterion 1: region algebra laws + grid agreement ----

bool criterion1() {
  Rng rng(1001);
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    std::uniform_int_distribution<std::size_t> psz(1, 6);
    std::vector<Primitive> pool;
    for (std::size_t j = psz(rng); j > 0; --j)
      pool.push_back(testsupport::random_primitive(rng));
    RegionExpr a = testsupport::random_region(rng, pool, 3);
    RegionExpr b = testsupport::random_region(rng, pool, 2);

    RegionExpr na = RegionExpr::complement(a);
    RegionExpr nb = RegionExpr::complement(b);
    ok &= expect(is_equal(RegionExpr::complement(RegionExpr::union_of({a, b})),
                          RegionExpr::intersection_of({na, nb})),
                 "de morgan over union, iteration " + std::to_string(i));
    ok &= expect(
        is_equal(RegionExpr::complement(RegionExpr::intersection_of({a, b})),
                 RegionExpr::union_of({na, nb})),
        "de morgan over intersection, iteration " + std::to_string(i));
    ok &= expect(
        is_equal(RegionExpr::union_of({a, RegionExpr::intersection_of({a, b})}),
                 a),
        "absorption over union, iteration " + std::to_string(i));
    ok &= expect(
        is_equal(
            RegionExpr::intersection_of({a, RegionExpr::union_of({a, b})}), a),
        "absorption over intersection, iteration " + std::to_string(i));
    ok &= expect(is_equal(RegionExpr::union_of({a, a}), a),
                 "union idempotence, iteration " + std::to_string(i));
    ok &= expect(is_equal(RegionExpr::intersection_of({a, a}), a),
                 "intersection idempotence, iteration " + std::to_string(i));

    if (i % 25 == 0) {
      // combine membership against the boolean fold on a 101 x 101 grid
      RegionExpr c = RegionExpr::difference(a, b);
      bool grid_ok = true;
      for (int r = 0; r < 101 && grid_ok; ++r) {
        Rational im = Rational(3) - Rational(6 * r) / 100;
        for (int col = 0; col < 101; ++col) {
          CQ z{Rational(-3) + Rational(6 * col) / 100, im};
          if (contains(a, z) != fold_membership(a, z) ||
              contains(c, z) != fold_membership(c, z)) {
            grid_ok = false;
            break;
          }
        }
      }
      ok &= expect(grid_ok, "grid fold disagreement, iteration " + std::to_string(i));
    }
    if (!ok) return false;  // one detailed note is enough
  }
  return ok;
}

// ---- criterion 2: duality of shifted-operator data ----

bool criterion2() {
  Rng rng(1002);
  bool ok = true;
  for (const Model& m : testsupport::catalog_representatives()) {
    Model md = m.dual();
    for (int i = 0; i < 100; ++i) {
      CQ z = testsupport::random_point(rng);
      FredholmData d = m.data_at(z);
      FredholmData dd = md.data_at(conj(z));
      ok &= expect(dd == d.dual(), "dual data mismatch for " + m.to_string() +
                                       " at " + complex_to_string(z));
      ok &= expect(dd.range_closed == d.range_closed,
                   "closedness not preserved for " + m.to_string());
      ok &= expect(dd.range_dense == (d.alpha == ExtendedCount(0)),
                   "dense range of the dual vs trivial kernel, " + m.to_string());
      if (d.range_closed) {
        ok &= expect(dd.alpha == d.beta && dd.beta == d.alpha,
                     "alpha/beta swap with closed range, " + m.to_string());
      } else {
        // annihilator form: the dual kernel only sees the range closure
        ok &= expect(dd.alpha == d.closure_defect && dd.beta.is_infinite(),
                     "annihilator relation without closed range, " + m.to_string());
      }
      if (!ok) return false;
    }
  }
  return ok;
}

// ---- criterion 3: lattice of the nine spectra ----

bool criterion3() {
  bool ok = true;
  for (const Model& m : testsupport::catalog_representatives()) {
    RegionExpr le = spectrum(m, SpectrumKind::LE);
    RegionExpr re = spectrum(m, SpectrumKind::RE);
    RegionExpr e = spectrum(m, SpectrumKind::E);
    RegionExpr lw = spectrum(m, SpectrumKind::LW);
    RegionExpr rw = spectrum(m, SpectrumKind::RW);
    RegionExpr w = spectrum(m, SpectrumKind::W);
    ok &= expect(is_subset(le, lw), "le inside lw for " + m.to_string());
    ok &= expect(is_subset(lw, w), "lw inside w for " + m.to_string());
    ok &= expect(is_subset(re, rw), "re inside rw for " + m.to_string());
    ok &= expect(is_subset(rw, w), "rw inside w for " + m.to_string());
    ok &= expect(is_equal(e, RegionExpr::union_of({le, re})),
                 "e is the union of le and re for " + m.to_string());
    ok &= expect(is_equal(w, RegionExpr::union_of({lw, rw})),
                 "w is the union of lw and rw for " + m.to_string());
    if (!ok) return false;
  }
  return ok;
}

// ---- criterion 4: sandwich property on random tuples ----

const std::vector<SpectrumKind> formula_kinds = {
    SpectrumKind::LE, SpectrumKind::RE, SpectrumKind::E, SpectrumKind::LW,
    SpectrumKind::RW};

std::vector<DiagonalTuple> g_c4_tuples;  // reused by criterion 8

bool criterion4() {
  Rng rng(1004);
  bool ok = true;
  g_c4_tuples.clear();
  for (int i = 0; i < 50; ++i) {
    DiagonalTuple t = testsupport::random_tuple(rng);
    g_c4_tuples.push_back(t);
    for (SpectrumKind kind : formula_kinds) {
      CheckReport rep = inclusion_bounds_check(t, kind);
      std::string label;
      if (!rep.holds) {
        for (const auto& m : t.entries()) label += m.to_string() + "; ";
        label += to_string(kind);
      }
      ok &= expect(rep.holds, "bounds violated on tuple " + std::to_string(i) +
                                  ": " + label + " " + rep.detail);
      if (!ok) return false;
    }
  }
  return ok;
}

// ---- criterion 5: the classical pair ----

bool criterion5() {
  DiagonalTuple t({Model::shift(), Model::backshift()});
  RegionExpr circle = RegionExpr::circle(CQ(0), Rational(1));
  bool ok = true;
  ok &= expect(is_equal(intersection_spectrum(t, SpectrumKind::LE).result, circle),
               "left essential intersection is not the circle");
  ok &= expect(is_equal(intersection_spectrum(t, SpectrumKind::LW).result, circle),
               "left weyl intersection is not the circle");

  CompletionPlan plan = build_completion(t, CQ(0), SpectrumKind::LW);
  try {
    VerificationReport rep = verify_plan(t, plan, CQ(0));
    ok &= expect(rep.kernel_generators_checked == 0 && !rep.geometric_kernel,
                 "completion kernel is not trivial");
    ok &= expect(rep.ranks.size() == 3, "expected three section sizes");
    const std::uint64_t sizes[3] = {8, 16, 32};
    for (std::size_t i = 0; i < rep.ranks.size(); ++i) {
      ok &= expect(rep.ranks[i].first == sizes[i],
                   "section size " + std::to_string(rep.ranks[i].first));
      ok &= expect(rep.ranks[i].second == 2 * rep.ranks[i].first,
                   "section not of full column rank");
      ok &= expect(rep.truncation_kernel_dims[i] == 0,
                   "section kernel not trivial");
    }
  } catch (const VerificationFailed& e) {
    ok = expect(false, std::string("verification failed: ") + e.what());
  }
  return ok;
}

// ---- criterion 6: finite dimensional tuples degenerate ----

bool criterion6() {
  Rng rng(1006);
  bool ok = true;
  for (int i = 0; i < 20; ++i) {
    std::uniform_int_distribution<std::size_t> nn(2, 4), dd(1, 6);
    std::size_t n = nn(rng);
    std::vector<CMatrix> mats;
    std::vector<Model> entries;
    std::size_t total = 0;
    for (std::size_t j = 0; j < n; ++j) {
      CMatrix m = testsupport::random_triangular(rng, dd(rng));
      total += m.rows();
      entries.push_back(Model::finite_matrix(m));
      mats.push_back(std::move(m));
    }
    DiagonalTuple t(std::move(entries));
    for (SpectrumKind kind : formula_kinds) {
      ok &= expect(is_empty(intersection_spectrum(t, kind).result),
                   "nonempty intersection on finite tuple " + std::to_string(i));
    }

    // eigenvalues of any block upper triangular completion stay on the
    // diagonal blocks, and every point keeps finite index-zero data
    std::vector<CQ> eigs;
    for (const auto& m : mats)
      for (std::size_t r = 0; r < m.rows(); ++r) {
        bool seen = false;
        for (const auto& v : eigs) seen = seen || v == m.at(r, r);
        if (!seen) eigs.push_back(m.at(r, r));
      }
    for (int c = 0; c < 20; ++c) {
      CMatrix full(total, total);
      std::size_t row0 = 0;
      for (std::size_t bi = 0; bi < mats.size(); ++bi) {
        for (std::size_t r = 0; r < mats[bi].rows(); ++r)
          for (std::size_t cc = 0; cc < mats[bi].cols(); ++cc)
            full.at(row0 + r, row0 + cc) = mats[bi].at(r, cc);
        std::size_t col0 = row0 + mats[bi].rows();
        for (std::size_t bj = bi + 1; bj < mats.size(); ++bj) {
          for (std::size_t r = 0; r < mats[bi].rows(); ++r)
            for (std::size_t cc = 0; cc < mats[bj].cols(); ++cc)
              full.at(row0 + r, col0 + cc) = testsupport::random_point(rng);
          col0 += mats[bj].cols();
        }
        row0 += mats[bi].rows();
      }

      std::vector<CQ> probes = eigs;
      while (probes.size() < eigs.size() + 2) {
        CQ z = testsupport::random_point(rng);
        bool collides = false;
        for (const auto& v : eigs) collides = collides || v == z;
        if (!collides) probes.push_back(z);
      }
      for (const CQ& z : probes) {
        CMatrix shifted = full;
        for (std::size_t r = 0; r < total; ++r)
          shifted.at(r, r) = shifted.at(r, r) - z;
        std::size_t rank = exact_rank(shifted);
        bool is_eig = false;
        for (const auto& v : eigs) is_eig = is_eig || v == z;
        ok &= expect((rank < total) == is_eig,
                     "completion spectrum left the diagonal eigenvalues");
        std::uint64_t defect = total - rank;
        FredholmData d =
            FredholmData::make(defect, defect, true, defect == 0, defect);
        for (SpectrumKind kind : formula_kinds)
          ok &= expect(!in_spectrum(kind, d),
                       "finite data landed in an essential spectrum");
      }
      if (!ok) return false;
    }
  }
  return ok;
}

// ---- criterion 7: every construction case has a witness ----

struct CaseWitness {
  SpectrumKind kind;
  std::string label;
  std::vector<Model> entries;
  bool forced = false;                // build through an explicit tag
  std::uint64_t l = 0, k = 0;         // tag indices when forced
  const char* expect_alpha = nullptr; // frozen predicted pair, when pinned
  const char* expect_beta = nullptr;
};

ExtendedCount count_of(const char* s) {
  if (std::string(s) == "inf") return ExtendedCount::infinity();
  return ExtendedCount(std::stoull(s));
}

bool criterion7() {
  Model S = Model::shift(), B = Model::backshift();
  Model IS = Model::inflate(S), IB = Model::inflate(B);
  Model Iinf = Model::identity(ExtendedCount::infinity());
  Model Zinf = Model::zero(ExtendedCount::infinity());

  std::vector<CaseWitness> table = {
      {SpectrumKind::LE, "omega_1", {IS, Zinf}, false, 0, 0, "0", "inf"},
      {SpectrumKind::LE, "omega_k", {S, IS, Iinf}},
      {SpectrumKind::LE, "omega_n", {S, S}, false, 0, 0, "0", "2"},
      {SpectrumKind::LW, "omega_1", {IS, S}},
      {SpectrumKind::LW, "omega_k", {B, S, Iinf}, true, 0, 2, "1", "1"},
      {SpectrumKind::LW, "omega_n", {S, S}, true, 0, 2, "0", "2"},
      {SpectrumKind::LW, "classical-superdiagonal", {S, B}, false, 0, 0, "0", "0"},
      {SpectrumKind::E, "trivial", {S, B}},
      {SpectrumKind::E, "omega_1k", {IS, IB, Iinf}, true, 1, 2, "0", "0"},
      {SpectrumKind::E, "omega_1n", {IS, IB}},
      {SpectrumKind::E,
       "omega_lk",
       {Model::translate(S, CQ(2)), IS, IB, Iinf},
       true, 2, 3, "0", "0"},
      {SpectrumKind::E, "omega_ln", {S, IS, IB}, true, 2, 3, "0", "1"},
      {SpectrumKind::RE, "omega_1", {Zinf, IB}},
      {SpectrumKind::RE, "omega_k", {Iinf, IB, B}},
      {SpectrumKind::RE, "omega_n", {B, S}, false, 0, 0, "1", "1"},
      {SpectrumKind::RW, "omega_1", {S, IB}},
      {SpectrumKind::RW, "omega_k", {Iinf, B, S}, true, 0, 2, "1", "1"},
      {SpectrumKind::RW, "omega_n", {B, B}, true, 0, 1, "2", "0"},
      {SpectrumKind::RW, "classical-superdiagonal", {S, B}, false, 0, 0, "0", "0"},
  };

  CQ zero;
  bool ok = true;
  for (const CaseWitness& w : table) {
    std::string who = std::string(to_string(w.kind)) + " " + w.label;
    try {
      CompletionPlan plan;
      if (w.forced) {
        CaseTag tag;
        tag.target = w.kind;
        tag.label = w.label;
        tag.l = w.l;
        tag.k = w.k;
        plan = build_completion_for_case(DiagonalTuple(w.entries), zero, tag);
      } else if (w.label == "classical-superdiagonal") {
        // classification rejects these points; only build_completion reaches
        // the classical fallback
        plan = build_completion(DiagonalTuple(w.entries), zero, w.kind);
      } else {
        CaseTag tag = classify_case(DiagonalTuple(w.entries), zero, w.kind);
        ok &= expect(tag.label == w.label,
                     who + ": classified as " + tag.label + " instead");
        plan = build_completion(DiagonalTuple(w.entries), zero, w.kind);
      }
      ok &= expect(plan.tag.label == w.label,
                   who + ": plan carries label " + plan.tag.label);

      DiagonalTuple t(w.entries);
      auto p = predicted_invariants(t, plan, zero);
      if (w.expect_alpha) {
        ok &= expect(p.first == count_of(w.expect_alpha) &&
                         p.second == count_of(w.expect_beta),
                     who + ": predicted (" + p.first.to_string() + ", " +
                         p.second.to_string() + ")");
      }

      VerificationReport rep = verify_plan(t, plan, zero);
      ExtendedCount kernel_side =
          plan.tag.via_reversed_dual ? p.second : p.first;
      if (kernel_side.is_finite()) {
        ok &= expect(rep.kernel_generators_checked == kernel_side.value(),
                     who + ": symbolic kernel dimension " +
                         std::to_string(rep.kernel_generators_checked));
      } else {
        ok &= expect(rep.kernel_generators_checked > 0,
                     who + ": no sample of the infinite kernel checked");
      }

      if (w.kind == SpectrumKind::LW || w.kind == SpectrumKind::RW) {
        auto ind = index_of(p.first, p.second);
        bool sign_ok = false;
        if (ind) {
          if (w.kind == SpectrumKind::LW)
            sign_ok = ind->tag == ExtendedInt::Tag::NegInf ||
                      (ind->tag == ExtendedInt::Tag::Finite && ind->v <= 0);
          else
            sign_ok = ind->tag == ExtendedInt::Tag::PosInf ||
                      (ind->tag == ExtendedInt::Tag::Finite && ind->v >= 0);
        }
        ok &= expect(sign_ok, who + ": index sign");
      }
    } catch (const EngineError& e) {
      ok = expect(false, who + ": " + e.what());
    }
  }
  return ok;
}

// ---- criterion 8: equality criterion is consistent ----

bool criterion8() {
  bool ok = true;
  if (g_c4_tuples.empty()) {
    // criterion 4 did not run; regenerate its tuples from the same seed
    Rng rng(1004);
    for (int i = 0; i < 50; ++i) g_c4_tuples.push_back(testsupport::random_tuple(rng));
  }
  for (std::size_t i = 0; i < g_c4_tuples.size(); ++i) {
    const DiagonalTuple& t = g_c4_tuples[i];
    for (SpectrumKind kind : formula_kinds) {
      CheckReport chk = union_equality_check(t, kind);
      bool equal = is_equal(intersection_spectrum(t, kind).result,
                            diagonal_union_spectrum(t, kind));
      ok &= expect(chk.holds == equal,
                   "criterion and reality disagree on tuple " +
                       std::to_string(i) + ", " + to_string(kind));
      if (!ok) return false;
    }
  }
  return ok;
}

// ---- criterion 9: right results are left results of the reversed dual ----

bool criterion9() {
  Rng rng(1009);
  bool ok = true;
  for (int i = 0; i < 25; ++i) {
    DiagonalTuple t = testsupport::random_tuple(rng);
    RegionExpr re = intersection_spectrum(t, SpectrumKind::RE).result;
    RegionExpr le = intersection_spectrum(t.reversed_dual(), SpectrumKind::LE).result;
    ok &= expect(is_equal(re, le), "mismatch on tuple " + std::to_string(i));
    if (!ok) return false;
  }
  return ok;
}

// ---- criterion 10: performance floors ----

bool criterion10() {
  // six entries, each a translated sum of a scaled shift and a scaled
  // backshift: two distinct circles per entry, twelve in total
  const Rational radii[6][2] = {
      {Rational(1, 2), Rational(1)},  {Rational(1), Rational(3, 2)},
      {Rational(1, 2), Rational(3, 2)}, {Rational(2, 3), Rational(4, 3)},
      {Rational(1, 3), Rational(1)},  {Rational(3, 2), Rational(1, 2)}};
  std::vector<Model> entries;
  for (int i = 0; i < 6; ++i) {
    Model sum = Model::direct_sum(
        Model::scale(Model::shift(), CQ{radii[i][0], Rational(0)}),
        Model::scale(Model::backshift(), CQ{radii[i][1], Rational(0)}));
    entries.push_back(Model::translate(sum, CQ(4 * i)));
  }
  DiagonalTuple t(std::move(entries));

  auto t0 = std::chrono::steady_clock::now();
  TheoremReport rep = intersection_spectrum(t, SpectrumKind::LE);
  auto t1 = std::chrono::steady_clock::now();
  double formula_s = std::chrono::duration<double>(t1 - t0).count();

  bool ok = expect(refine_tuple(t).arrangement.circles.size() == 12,
                   "expected twelve distinct circles");
  ok &= expect(formula_s < 1.0, "intersection took " + std::to_string(formula_s) + "s");

  RegionExpr flat = simplify(rep.result);
  auto t2 = std::chrono::steady_clock::now();
  const int res = 501;
  Rational re_min(-3), re_w(26), im_min(-3), im_w(6);
  std::uint64_t members = 0;
  for (int r = 0; r < res; ++r) {
    Rational im = im_min + im_w * Rational(res - 1 - r) / (res - 1);
    for (int c = 0; c < res; ++c) {
      CQ z{re_min + re_w * Rational(c) / (res - 1), im};
      if (contains(flat, z)) ++members;
    }
  }
  auto t3 = std::chrono::steady_clock::now();
  double grid_s = std::chrono::duration<double>(t3 - t2).count();
  ok &= expect(grid_s < 10.0, "grid took " + std::to_string(grid_s) + "s");
  ok &= expect(members > 0, "empty plot grid");
  std::fprintf(stderr, "    note: formula %.3fs, 501x501 grid %.3fs, %llu members\n",
               formula_s, grid_s, static_cast<unsigned long long>(members));
  return ok;
}

struct Criterion {
  const char* what;
  bool (*run)();
  double budget_s;  // 0 = untimed
};

}  // namespace

int main() {
  const Criterion table[] = {
      {"region algebra laws and grid agreement", criterion1, 30},
      {"duality of shifted-operator data", criterion2, 10},
      {"spectrum lattice per catalog model", criterion3, 10},
      {"sandwich bounds on 50 random tuples", criterion4, 60},
      {"classical shift pair and its completion", criterion5, 10},
      {"finite dimensional degeneracy", criterion6, 30},
      {"construction case coverage", criterion7, 60},
      {"union equality criterion consistency", criterion8, 0},
      {"right/left duality of the engine", criterion9, 0},
      {"performance floors", criterion10, 0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < sizeof(table) / sizeof(table[0]); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = table[i].run();
    } catch (const std::exception& e) {
      note(std::string("unexpected exception: ") + e.what());
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    if (table[i].budget_s > 0 && secs >= table[i].budget_s) {
      note("over budget: " + std::to_string(secs) + "s of " +
           std::to_string(table[i].budget_s) + "s");
      ok = false;
    }
    if (!ok) ++failed;
    if (table[i].budget_s > 0)
      std::printf("criterion %2zu %s  %s (%.2fs, budget %.0fs)\n", i + 1,
                  ok ? "PASS" : "FAIL", table[i].what, secs, table[i].budget_s);
    else
      std::printf("criterion %2zu %s  %s (%.2fs)\n", i + 1, ok ? "PASS" : "FAIL",
                  table[i].what, secs);
  }
  if (failed) {
    std::printf("%d criterion(s) failed\n", failed);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
