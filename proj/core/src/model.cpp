#include "specmat/model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "specmat/arrangement.hpp"

namespace specmat {

// ---------------------------------------------------------------------------
// FredholmData

FredholmData FredholmData::make(ExtendedCount alpha, ExtendedCount beta,
                                bool closed, bool dense, ExtendedCount defect) {
  if (beta.is_finite() && !closed)
    throw EngineError("Fredholm data: a finite cokernel forces a closed range");
  if (closed && defect != beta)
    throw EngineError("Fredholm data: closed range needs closure defect == beta");
  if (dense != (defect == ExtendedCount(0)))
    throw EngineError("Fredholm data: dense iff closure defect is zero");
  FredholmData d;
  d.alpha = alpha;
  d.beta = beta;
  d.range_closed = closed;
  d.range_dense = dense;
  d.closure_defect = defect;
  return d;
}

FredholmData FredholmData::dual() const {
  // N(T') = annihilator of cl R(T); R(T') closed iff R(T) is, and then it is
  // the annihilator of N(T).
  ExtendedCount b2 = range_closed ? alpha : ExtendedCount::infinity();
  return make(closure_defect, b2, range_closed, alpha == ExtendedCount(0), alpha);
}

// ---------------------------------------------------------------------------
// Shared layout helpers

namespace {

// Fold between the two-sided index set and 0,1,2,...: 0,-1,1,-2,2,... so that
// nonnegative positions land on evens and negative ones on odds.
std::int64_t unfold(std::uint64_t q) {
  return q % 2 == 0 ? static_cast<std::int64_t>(q / 2)
                    : -static_cast<std::int64_t>(q / 2) - 1;
}
std::uint64_t fold(std::int64_t z) {
  return z >= 0 ? 2 * static_cast<std::uint64_t>(z)
                : 2 * static_cast<std::uint64_t>(-z) - 1;
}

Rational rabs(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }
// |re| + |im| >= |z|, exact and rational.
Rational one_bound(const CQ& z) { return rabs(z.re) + rabs(z.im); }

struct CQLess {
  bool operator()(const CQ& a, const CQ& b) const { return compare(a, b) < 0; }
};

// How the coordinates of a direct sum interleave. A finite summand sits as a
// prefix; two infinite summands alternate (left on evens).
struct SumLayout {
  int mode;         // 0: left finite prefix; 1: right finite prefix; 2: interleave
  std::uint64_t n;  // prefix length for modes 0/1
};

SumLayout sum_layout(const ExtendedCount& da, const ExtendedCount& db) {
  if (da.is_finite()) return {0, da.value()};
  if (db.is_finite()) return {1, db.value()};
  return {2, 0};
}

std::uint64_t sum_map(const SumLayout& L, bool left, std::uint64_t p) {
  switch (L.mode) {
    case 0: return left ? p : L.n + p;
    case 1: return left ? L.n + p : p;
    default: return left ? 2 * p : 2 * p + 1;
  }
}

std::pair<bool, std::uint64_t> sum_unmap(const SumLayout& L, std::uint64_t g) {
  switch (L.mode) {
    case 0: return g < L.n ? std::pair{true, g} : std::pair{false, g - L.n};
    case 1: return g < L.n ? std::pair{false, g} : std::pair{true, g - L.n};
    default: return g % 2 == 0 ? std::pair{true, g / 2} : std::pair{false, g / 2};
  }
}

// Count of one side's coordinates strictly below a global bound.
std::uint64_t sum_count_below(const SumLayout& L, bool left, std::uint64_t bound) {
  switch (L.mode) {
    case 0:
      return left ? std::min(bound, L.n) : (bound > L.n ? bound - L.n : 0);
    case 1:
      return left ? (bound > L.n ? bound - L.n : 0) : std::min(bound, L.n);
    default:
      return left ? (bound + 1) / 2 : bound / 2;
  }
}

SymbolicVector sum_embed(const SumLayout& L, bool left, const SymbolicVector& v) {
  switch (L.mode) {
    case 0: return left ? v : (L.n ? v.mapped_affine(1, L.n) : v);
    case 1: return left ? (L.n ? v.mapped_affine(1, L.n) : v) : v;
    default: return v.mapped_affine(2, left ? 0 : 1);
  }
}

void push_tail(SymbolicVector& dst, const GeoTerm& t, bool drop_last_op) {
  std::vector<IndexOp> prog = t.program;
  if (drop_last_op) prog.pop_back();
  dst.add_geometric(t.coeff, t.ratio, t.start, t.stride, std::move(prog));
}

// Split a direct-sum vector into the two summand vectors (local coordinates).
void sum_split(const SumLayout& L, const SymbolicVector& v, SymbolicVector& va,
               SymbolicVector& vb) {
  for (const auto& [k, c] : v.finite_part()) {
    auto [left, p] = sum_unmap(L, k);
    (left ? va : vb).add_finite(p, c);
  }
  for (const GeoTerm& t : v.tails()) {
    const IndexOp* last = t.program.empty() ? nullptr : &t.program.back();
    if (L.mode == 2) {
      // Canonical tails carry the interleave either composed into an even
      // outer affine op (Pair-rooted programs) or folded into start/stride.
      if (last && last->kind == IndexOp::Kind::Affine && last->a % 2 == 0) {
        GeoTerm u = t;
        u.program.back() = {IndexOp::Kind::Affine, last->a / 2, last->b / 2};
        push_tail(last->b % 2 == 0 ? va : vb, u, false);
        continue;
      }
      if (!last && t.stride % 2 == 0) {
        GeoTerm u = t;
        u.stride = t.stride / 2;
        u.start = t.start / 2;  // parity of start picks the side
        push_tail(t.start % 2 == 0 ? va : vb, u, false);
        continue;
      }
      throw EngineError("cannot attribute a tail to a direct summand");
    }
    // One side is a finite prefix of length n; only the other carries tails.
    SymbolicVector& infinite_side = L.mode == 0 ? vb : va;
    if (L.n == 0) {
      push_tail(infinite_side, t, false);
      continue;
    }
    if (last && last->kind == IndexOp::Kind::Affine && last->b >= L.n) {
      GeoTerm u = t;
      u.program.back() = {IndexOp::Kind::Affine, last->a, last->b - L.n};
      push_tail(infinite_side, u, false);
      continue;
    }
    if (!last && t.start >= L.n) {
      GeoTerm u = t;
      u.start = t.start - L.n;
      push_tail(infinite_side, u, false);
      continue;
    }
    throw EngineError("cannot attribute a tail to a direct summand");
  }
}

// Split an inflated-space vector by copy (local coordinates per copy).
std::map<std::uint64_t, SymbolicVector> split_copies(const SymbolicVector& v) {
  std::map<std::uint64_t, SymbolicVector> by;
  for (const auto& [k, c] : v.finite_part()) {
    auto [j, h] = cantor_unpair(k);
    by[h].add_finite(j, c);
  }
  for (const GeoTerm& t : v.tails()) {
    if (t.program.empty() || t.program.back().kind != IndexOp::Kind::Pair)
      throw EngineError("tail does not lie in a single inflation copy");
    push_tail(by[t.program.back().b], t, true);
  }
  return by;
}

// Merged enumeration of two indexed families with the given cardinalities:
// a finite family goes first; two infinite ones alternate (left on evens).
std::pair<bool, std::uint64_t> merge_at(const ExtendedCount& ca,
                                        const ExtendedCount& cb,
                                        std::uint64_t t) {
  if (ca.is_finite())
    return t < ca.value() ? std::pair{true, t} : std::pair{false, t - ca.value()};
  if (cb.is_finite())
    return t < cb.value() ? std::pair{false, t} : std::pair{true, t - cb.value()};
  return t % 2 == 0 ? std::pair{true, t / 2} : std::pair{false, t / 2};
}

std::uint64_t merge_index(const ExtendedCount& ca, const ExtendedCount& cb,
                          bool left, std::uint64_t lt) {
  if (ca.is_finite()) return left ? lt : ca.value() + lt;
  if (cb.is_finite()) return left ? cb.value() + lt : lt;
  return left ? 2 * lt : 2 * lt + 1;
}

SymbolicVector from_coords(const std::vector<CQ>& v) {
  SymbolicVector out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.add_finite(i, v[i]);
  return out;
}

// Values c0*r, c0*r^2, ... at two-sided positions a-1, a-2, ... folded.
void add_left_tail(SymbolicVector& out, std::int64_t a, const CQ& c0, const CQ& r) {
  if (c0.is_zero()) return;
  if (a <= 0) {
    out.add_geometric(c0 * r, r, static_cast<std::uint64_t>(-2 * a + 1), 2);
    return;
  }
  for (std::int64_t j = 0; j < a; ++j)
    out.add_finite(fold(a - 1 - j), c0 * cq_pow(r, static_cast<std::uint64_t>(j + 1)));
  out.add_geometric(c0 * cq_pow(r, static_cast<std::uint64_t>(a + 1)), r, 1, 2);
}

// Values c0*r, c0*r^2, ... at two-sided positions b+1, b+2, ... folded.
void add_right_tail(SymbolicVector& out, std::int64_t b, const CQ& c0, const CQ& r) {
  if (c0.is_zero()) return;
  if (b >= -1) {
    out.add_geometric(c0 * r, r, 2 * static_cast<std::uint64_t>(b + 1), 2);
    return;
  }
  for (std::int64_t j = 0; b + 1 + j < 0; ++j)
    out.add_finite(fold(b + 1 + j), c0 * cq_pow(r, static_cast<std::uint64_t>(j + 1)));
  out.add_geometric(c0 * cq_pow(r, static_cast<std::uint64_t>(-b)), r, 0, 2);
}

// Continued-fraction convergents of the exact binary value of d, most useful
// first; the list ends at the exact value unless denominators explode.
std::vector<Rational> convergents_of(double d) {
  std::vector<Rational> out;
  if (!std::isfinite(d)) return out;
  Rational x{mpq_class(d)};
  mpz_class n = x.get_num(), den = x.get_den();
  mpz_class h_prev = 1, k_prev = 0, pc = 0, qc = 1;
  const mpz_class q_cap("1000000000000");
  for (int i = 0; i < 64 && den != 0; ++i) {
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), den.get_mpz_t());
    if (i == 0) {
      pc = q;
      qc = 1;
    } else {
      mpz_class np = q * pc + h_prev, nq = q * qc + k_prev;
      h_prev = pc;
      k_prev = qc;
      pc = np;
      qc = nq;
    }
    Rational conv(pc, qc);
    conv.canonicalize();
    out.push_back(conv);
    if (qc > q_cap) break;
    n = den;
    den = rem;
  }
  return out;
}

RegionExpr complement_of_points(std::vector<RegionExpr> pts) {
  if (pts.empty()) return RegionExpr::full_plane();
  return RegionExpr::complement(RegionExpr::union_of(std::move(pts)));
}

}  // namespace

// ---------------------------------------------------------------------------
// Impl

struct Model::Impl {
  ModelKind kind = ModelKind::Zero;
  ExtendedCount dim;
  FredholmProfile profile;
  std::string text;

  CMatrix mat;
  ExtendedCount dim_param;
  std::vector<std::pair<CQ, ExtendedCount>> diag;
  std::vector<Model> subs;  // inner, or left/right
  CQ scalar;
  Rational scalar_abs = Rational(1);

  // Diagonal layout: finite-multiplicity entries occupy a prefix in entry
  // order, infinite ones share the tail round-robin.
  std::vector<std::uint64_t> entry_pos;  // finite: start offset; infinite: rank
  std::vector<std::uint64_t> fin_ends;   // cumulative ends over finite entries
  std::vector<std::size_t> fin_idx;
  std::vector<std::size_t> inf_idx;
  std::uint64_t fin_total = 0;

  struct EigenPoint {
    CQ value;
    std::vector<std::vector<CQ>> kernel;  // nullspace basis, delta at anchors
    std::vector<std::uint64_t> anchors;   // free columns, ascending
    std::vector<std::uint64_t> slots;     // basis completion of the range
  };
  std::vector<EigenPoint> eigen;

  std::uint64_t diag_position(std::size_t entry, std::uint64_t j) const {
    if (diag[entry].second.is_finite()) return entry_pos[entry] + j;
    return fin_total + j * inf_idx.size() + entry_pos[entry];
  }

  CQ diag_value_at(std::uint64_t pos) const {
    if (pos < fin_total) {
      auto it = std::upper_bound(fin_ends.begin(), fin_ends.end(), pos);
      return diag[fin_idx[it - fin_ends.begin()]].first;
    }
    if (inf_idx.empty()) throw EngineError("coordinate outside the model space");
    return diag[inf_idx[(pos - fin_total) % inf_idx.size()]].first;
  }

  std::optional<std::size_t> diag_entry_of(const CQ& v) const {
    auto it = std::lower_bound(
        diag.begin(), diag.end(), v,
        [](const auto& e, const CQ& q) { return compare(e.first, q) < 0; });
    if (it == diag.end() || it->first != v) return std::nullopt;
    return static_cast<std::size_t>(it - diag.begin());
  }

  const EigenPoint* eigen_at(const CQ& v) const {
    for (const auto& e : eigen)
      if (e.value == v) return &e;
    return nullptr;
  }

  bool in_space(std::uint64_t pos) const {
    return dim.is_infinite() || pos < dim.value();
  }

  static std::shared_ptr<Impl> base(ModelKind k, ExtendedCount dim, std::string text) {
    auto im = std::make_shared<Impl>();
    im->kind = k;
    im->dim = dim;
    im->text = std::move(text);
    return im;
  }
};

// ---------------------------------------------------------------------------
// Factories

Model Model::shift() {
  auto im = Impl::base(ModelKind::Shift, ExtendedCount::infinity(), "shift");
  im->profile.parts = {
      {RegionExpr::open_disk(CQ(0), Rational(1)),
       FredholmData::make(0, 1, true, false, 1)},
      {RegionExpr::circle(CQ(0), Rational(1)),
       FredholmData::make(0, ExtendedCount::infinity(), false, true, 0)},
      {RegionExpr::complement(RegionExpr::closed_disk(CQ(0), Rational(1))),
       FredholmData::invertible()},
  };
  return Model(std::move(im));
}

Model Model::backshift() {
  auto im = Impl::base(ModelKind::BackShift, ExtendedCount::infinity(), "backshift");
  im->profile.parts = {
      {RegionExpr::open_disk(CQ(0), Rational(1)),
       FredholmData::make(1, 0, true, true, 0)},
      {RegionExpr::circle(CQ(0), Rational(1)),
       FredholmData::make(0, ExtendedCount::infinity(), false, true, 0)},
      {RegionExpr::complement(RegionExpr::closed_disk(CQ(0), Rational(1))),
       FredholmData::invertible()},
  };
  return Model(std::move(im));
}

namespace {

FredholmProfile two_sided_profile() {
  return {{
      {RegionExpr::circle(CQ(0), Rational(1)),
       FredholmData::make(0, ExtendedCount::infinity(), false, true, 0)},
      {RegionExpr::complement(RegionExpr::circle(CQ(0), Rational(1))),
       FredholmData::invertible()},
  }};
}

}  // namespace

Model Model::bishift() {
  auto im = Impl::base(ModelKind::BiShift, ExtendedCount::infinity(), "bishift");
  im->profile = two_sided_profile();
  return Model(std::move(im));
}

Model Model::bishift_back() {
  auto im = Impl::base(ModelKind::BiShiftBack, ExtendedCount::infinity(), "dual(bishift)");
  im->profile = two_sided_profile();
  return Model(std::move(im));
}

Model Model::identity(ExtendedCount dim) {
  auto im = Impl::base(ModelKind::Identity, dim, "identity(" + dim.to_string() + ")");
  im->dim_param = dim;
  if (dim == ExtendedCount(0)) {
    im->profile.parts = {{RegionExpr::full_plane(), FredholmData::invertible()}};
  } else {
    im->profile.parts = {
        {RegionExpr::point(CQ(1)), FredholmData::make(dim, dim, true, false, dim)},
        {RegionExpr::complement(RegionExpr::point(CQ(1))),
         FredholmData::invertible()},
    };
  }
  return Model(std::move(im));
}

Model Model::zero(ExtendedCount dim) {
  auto im = Impl::base(ModelKind::Zero, dim, "zero(" + dim.to_string() + ")");
  im->dim_param = dim;
  if (dim == ExtendedCount(0)) {
    im->profile.parts = {{RegionExpr::full_plane(), FredholmData::invertible()}};
  } else {
    im->profile.parts = {
        {RegionExpr::point(CQ(0)), FredholmData::make(dim, dim, true, false, dim)},
        {RegionExpr::complement(RegionExpr::point(CQ(0))),
         FredholmData::invertible()},
    };
  }
  return Model(std::move(im));
}

Model Model::diagonal(std::vector<std::pair<CQ, ExtendedCount>> values) {
  std::erase_if(values, [](const auto& e) { return e.second == ExtendedCount(0); });
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    return compare(a.first, b.first) < 0;
  });
  std::vector<std::pair<CQ, ExtendedCount>> merged;
  for (auto& e : values) {
    if (!merged.empty() && merged.back().first == e.first) {
      if (merged.back().second != e.second)
        throw EngineError("diagonal value repeated with conflicting multiplicity");
      continue;
    }
    merged.push_back(std::move(e));
  }

  std::string text = "diag{";
  ExtendedCount dim(0);
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (i) text += ",";
    text += "(" + complex_to_string(merged[i].first) + "," +
            merged[i].second.to_string() + ")";
    dim += merged[i].second;
  }
  text += "}";

  auto im = Impl::base(ModelKind::Diagonal, dim, std::move(text));
  im->diag = std::move(merged);
  im->entry_pos.resize(im->diag.size());
  for (std::size_t i = 0; i < im->diag.size(); ++i) {
    if (im->diag[i].second.is_finite()) {
      im->entry_pos[i] = im->fin_total;
      im->fin_total += im->diag[i].second.value();
      im->fin_ends.push_back(im->fin_total);
      im->fin_idx.push_back(i);
    } else {
      im->entry_pos[i] = im->inf_idx.size();
      im->inf_idx.push_back(i);
    }
  }

  if (im->diag.empty()) {
    im->profile.parts = {{RegionExpr::full_plane(), FredholmData::invertible()}};
  } else {
    std::vector<RegionExpr> pts;
    for (const auto& [v, m] : im->diag) {
      im->profile.parts.push_back(
          {RegionExpr::point(v), FredholmData::make(m, m, true, false, m)});
      pts.push_back(RegionExpr::point(v));
    }
    im->profile.parts.push_back(
        {complement_of_points(std::move(pts)), FredholmData::invertible()});
  }
  return Model(std::move(im));
}

Model Model::finite_matrix(CMatrix m) {
  if (m.rows() != m.cols()) throw EngineError("finite model matrix must be square");
  const std::size_t n = m.rows();

  std::string text = "matrix[";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) text += ",";
    text += "[";
    for (std::size_t j = 0; j < n; ++j) {
      if (j) text += ",";
      text += complex_to_string(m.at(i, j));
    }
    text += "]";
  }
  text += "]";

  auto im = Impl::base(ModelKind::FiniteMatrix, ExtendedCount(n), std::move(text));
  im->mat = std::move(m);

  if (n > 0) {
    // Numeric seeds, then exact certification against the characteristic
    // polynomial; anything the convergents miss is out of scope.
    Eigen::MatrixXcd ad(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        ad(i, j) = std::complex<double>(im->mat.at(i, j).re.get_d(),
                                        im->mat.at(i, j).im.get_d());
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ad, false);

    std::set<CQ, CQLess> cands;
    if (es.info() == Eigen::Success) {
      for (std::size_t k = 0; k < n; ++k) {
        auto res = convergents_of(es.eigenvalues()[static_cast<long>(k)].real());
        auto ims = convergents_of(es.eigenvalues()[static_cast<long>(k)].imag());
        for (const auto& re : res)
          for (const auto& imv : ims) cands.insert(CQ(re, imv));
      }
    }

    auto remaining = char_poly(im->mat);
    std::vector<CQ> roots;
    for (const CQ& lam : cands) {
      bool hit = false;
      while (remaining.size() > 1 && eval_poly(remaining, lam).is_zero()) {
        remaining = deflate(remaining, lam);
        hit = true;
      }
      if (hit) roots.push_back(lam);
    }
    if (remaining.size() > 1)
      throw EngineError("matrix spectrum is not rational over Q(i)");

    std::vector<RegionExpr> pts;
    for (const CQ& lam : roots) {
      CMatrix shifted = im->mat - CMatrix::identity(n).scaled(lam);
      CMatrix red = shifted;
      auto pivots = rref(red);
      Impl::EigenPoint ep;
      ep.value = lam;
      ep.kernel = nullspace(shifted);
      std::vector<bool> is_pivot(n, false);
      for (auto c : pivots) is_pivot[c] = true;
      for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) ep.anchors.push_back(j);

      // Greedy standard-basis completion of the range.
      std::size_t cur = pivots.size();
      for (std::size_t j = 0; j < n && cur < n; ++j) {
        CMatrix aug(n, n + ep.slots.size() + 1);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = shifted.at(r, c);
        for (std::size_t s = 0; s < ep.slots.size(); ++s)
          aug.at(ep.slots[s], n + s) = CQ(1);
        aug.at(j, n + ep.slots.size()) = CQ(1);
        if (exact_rank(aug) > cur) {
          ep.slots.push_back(j);
          ++cur;
        }
      }

      ExtendedCount g(ep.kernel.size());
      im->profile.parts.push_back(
          {RegionExpr::point(lam), FredholmData::make(g, g, true, false, g)});
      pts.push_back(RegionExpr::point(lam));
      im->eigen.push_back(std::move(ep));
    }
    im->profile.parts.push_back(
        {complement_of_points(std::move(pts)), FredholmData::invertible()});
  } else {
    im->profile.parts = {{RegionExpr::full_plane(), FredholmData::invertible()}};
  }
  return Model(std::move(im));
}

Model Model::translate(Model inner, CQ offset) {
  auto im = Impl::base(ModelKind::Translate, inner.space().dim,
                 "translate(" + inner.to_string() + "," +
                     complex_to_string(offset) + ")");
  for (const auto& [region, data] : inner.profile().parts)
    im->profile.parts.push_back(
        {region.transformed(CQ(1), Rational(1), offset), data});
  im->scalar = std::move(offset);
  im->subs.push_back(std::move(inner));
  return Model(std::move(im));
}

Model Model::scale(Model inner, CQ factor) {
  if (factor.is_zero()) throw EngineError("scale factor must be nonzero");
  auto abs = exact_sqrt(factor.norm2());
  if (!abs) throw EngineError("scale factor needs a rational modulus");
  auto im = Impl::base(ModelKind::Scale, inner.space().dim,
                 "scale(" + inner.to_string() + "," + complex_to_string(factor) +
                     ")");
  for (const auto& [region, data] : inner.profile().parts)
    im->profile.parts.push_back({region.transformed(factor, *abs, CQ(0)), data});
  im->scalar = std::move(factor);
  im->scalar_abs = *abs;
  im->subs.push_back(std::move(inner));
  return Model(std::move(im));
}

Model Model::direct_sum(Model a, Model b) {
  auto im = Impl::base(ModelKind::DirectSum, a.space().dim + b.space().dim,
                 "dsum(" + a.to_string() + "," + b.to_string() + ")");
  for (const auto& [ra, da] : a.profile().parts) {
    for (const auto& [rb, db] : b.profile().parts) {
      RegionExpr cell = RegionExpr::intersection_of({ra, rb});
      if (is_empty(cell)) continue;
      ExtendedCount defect = da.closure_defect + db.closure_defect;
      im->profile.parts.push_back(
          {std::move(cell),
           FredholmData::make(da.alpha + db.alpha, da.beta + db.beta,
                              da.range_closed && db.range_closed,
                              defect == ExtendedCount(0), defect)});
    }
  }
  im->subs.push_back(std::move(a));
  im->subs.push_back(std::move(b));
  return Model(std::move(im));
}

Model Model::inflate(Model inner) {
  ExtendedCount dim = inner.space().dim == ExtendedCount(0)
                          ? ExtendedCount(0)
                          : ExtendedCount::infinity();
  auto im = Impl::base(ModelKind::Inflate, dim, "inflate(" + inner.to_string() + ")");
  auto blow = [](const ExtendedCount& c) {
    return c == ExtendedCount(0) ? ExtendedCount(0) : ExtendedCount::infinity();
  };
  for (const auto& [region, data] : inner.profile().parts)
    im->profile.parts.push_back(
        {region, FredholmData::make(blow(data.alpha), blow(data.beta),
                                    data.range_closed, data.range_dense,
                                    blow(data.closure_defect))});
  im->subs.push_back(std::move(inner));
  return Model(std::move(im));
}

// ---------------------------------------------------------------------------
// Basic observers

ModelKind Model::kind() const { return impl_->kind; }
SpaceModel Model::space() const { return {impl_->dim}; }
const FredholmProfile& Model::profile() const { return impl_->profile; }
std::string Model::to_string() const { return impl_->text; }
const CMatrix& Model::matrix() const { return impl_->mat; }
ExtendedCount Model::dim_param() const { return impl_->dim_param; }
const std::vector<std::pair<CQ, ExtendedCount>>& Model::diagonal_values() const {
  return impl_->diag;
}
const Model& Model::inner() const { return impl_->subs.at(0); }
const Model& Model::left() const { return impl_->subs.at(0); }
const Model& Model::right() const { return impl_->subs.at(1); }
const CQ& Model::scalar() const { return impl_->scalar; }

FredholmData Model::data_at(const CQ& lambda) const {
  for (const auto& [region, data] : impl_->profile.parts)
    if (contains(region, lambda)) return data;
  throw EngineError("profile does not cover the requested point");
}

Model Model::dual() const {
  switch (impl_->kind) {
    case ModelKind::Shift: return backshift();
    case ModelKind::BackShift: return shift();
    case ModelKind::BiShift: return bishift_back();
    case ModelKind::BiShiftBack: return bishift();
    case ModelKind::Identity:
    case ModelKind::Zero:
    case ModelKind::Diagonal: return *this;
    case ModelKind::FiniteMatrix: {
      const std::size_t n = impl_->mat.rows();
      CMatrix t(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t.at(i, j) = impl_->mat.at(j, i);
      return finite_matrix(std::move(t));
    }
    case ModelKind::Translate: return translate(inner().dual(), impl_->scalar);
    case ModelKind::Scale: return scale(inner().dual(), impl_->scalar);
    case ModelKind::DirectSum: return direct_sum(left().dual(), right().dual());
    case ModelKind::Inflate: return inflate(inner().dual());
  }
  throw EngineError("unknown model kind");
}

// ---------------------------------------------------------------------------
// Kernel

ExtendedCount Model::kernel_dim(const CQ& lambda) const {
  return data_at(lambda).alpha;
}

SymbolicVector Model::kernel_generator(const CQ& lambda, std::uint64_t t) const {
  ExtendedCount a = data_at(lambda).alpha;
  if (a.is_finite() && t >= a.value())
    throw EngineError("kernel generator index out of range");
  switch (impl_->kind) {
    case ModelKind::BackShift: {
      SymbolicVector v;
      v.add_geometric(CQ(1), lambda, 0, 1);
      return v;
    }
    case ModelKind::Identity:
    case ModelKind::Zero:
      return SymbolicVector::basis(t);
    case ModelKind::Diagonal:
      return SymbolicVector::basis(impl_->diag_position(*impl_->diag_entry_of(lambda), t));
    case ModelKind::FiniteMatrix:
      return from_coords(impl_->eigen_at(lambda)->kernel[t]);
    case ModelKind::Translate:
      return inner().kernel_generator(lambda - impl_->scalar, t);
    case ModelKind::Scale:
      return inner().kernel_generator(lambda / impl_->scalar, t);
    case ModelKind::DirectSum: {
      ExtendedCount aa = left().kernel_dim(lambda), ab = right().kernel_dim(lambda);
      auto [isl, lt] = merge_at(aa, ab, t);
      SumLayout L = sum_layout(left().space().dim, right().space().dim);
      return sum_embed(L, isl, (isl ? left() : right()).kernel_generator(lambda, lt));
    }
    case ModelKind::Inflate: {
      ExtendedCount g = inner().kernel_dim(lambda);
      std::uint64_t j, h;
      if (g.is_finite()) {
        j = t % g.value();
        h = t / g.value();
      } else {
        std::tie(j, h) = cantor_unpair(t);
      }
      return inner().kernel_generator(lambda, j).into_copy(h);
    }
    default:
      throw EngineError("kernel generator index out of range");
  }
}

std::uint64_t Model::kernel_anchor(const CQ& lambda, std::uint64_t t) const {
  ExtendedCount a = data_at(lambda).alpha;
  if (a.is_finite() && t >= a.value())
    throw EngineError("kernel generator index out of range");
  switch (impl_->kind) {
    case ModelKind::BackShift: return 0;
    case ModelKind::Identity:
    case ModelKind::Zero: return t;
    case ModelKind::Diagonal:
      return impl_->diag_position(*impl_->diag_entry_of(lambda), t);
    case ModelKind::FiniteMatrix:
      return impl_->eigen_at(lambda)->anchors[t];
    case ModelKind::Translate:
      return inner().kernel_anchor(lambda - impl_->scalar, t);
    case ModelKind::Scale:
      return inner().kernel_anchor(lambda / impl_->scalar, t);
    case ModelKind::DirectSum: {
      ExtendedCount aa = left().kernel_dim(lambda), ab = right().kernel_dim(lambda);
      auto [isl, lt] = merge_at(aa, ab, t);
      SumLayout L = sum_layout(left().space().dim, right().space().dim);
      return sum_map(L, isl, (isl ? left() : right()).kernel_anchor(lambda, lt));
    }
    case ModelKind::Inflate: {
      ExtendedCount g = inner().kernel_dim(lambda);
      std::uint64_t j, h;
      if (g.is_finite()) {
        j = t % g.value();
        h = t / g.value();
      } else {
        std::tie(j, h) = cantor_unpair(t);
      }
      return cantor_pair(inner().kernel_anchor(lambda, j), h);
    }
    default:
      throw EngineError("kernel generator index out of range");
  }
}

namespace {

using IndexedPositions = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

void sort_by_index(IndexedPositions& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
}

}  // namespace

std::vector<std::pair<std::uint64_t, std::uint64_t>> Model::kernel_anchors_below(
    const CQ& lambda, std::uint64_t bound) const {
  IndexedPositions out;
  ExtendedCount a = data_at(lambda).alpha;
  if (a == ExtendedCount(0) || bound == 0) return out;
  switch (impl_->kind) {
    case ModelKind::BackShift:
      out.push_back({0, 0});
      break;
    case ModelKind::Identity:
    case ModelKind::Zero: {
      std::uint64_t stop = a.is_finite() ? std::min(a.value(), bound) : bound;
      for (std::uint64_t t = 0; t < stop; ++t) out.push_back({t, t});
      break;
    }
    case ModelKind::Diagonal: {
      std::size_t e = *impl_->diag_entry_of(lambda);
      ExtendedCount m = impl_->diag[e].second;
      for (std::uint64_t t = 0; m.is_infinite() || t < m.value(); ++t) {
        std::uint64_t pos = impl_->diag_position(e, t);
        if (pos >= bound) break;  // positions grow with t within one entry
        out.push_back({t, pos});
      }
      break;
    }
    case ModelKind::FiniteMatrix: {
      const auto* ep = impl_->eigen_at(lambda);
      for (std::uint64_t t = 0; t < ep->anchors.size(); ++t)
        if (ep->anchors[t] < bound) out.push_back({t, ep->anchors[t]});
      break;
    }
    case ModelKind::Translate:
      return inner().kernel_anchors_below(lambda - impl_->scalar, bound);
    case ModelKind::Scale:
      return inner().kernel_anchors_below(lambda / impl_->scalar, bound);
    case ModelKind::DirectSum: {
      ExtendedCount aa = left().kernel_dim(lambda), ab = right().kernel_dim(lambda);
      SumLayout L = sum_layout(left().space().dim, right().space().dim);
      for (bool isl : {true, false}) {
        std::uint64_t side_bound = sum_count_below(L, isl, bound);
        auto side = (isl ? left() : right()).kernel_anchors_below(lambda, side_bound);
        for (const auto& [lt, lp] : side)
          out.push_back({merge_index(aa, ab, isl, lt), sum_map(L, isl, lp)});
      }
      sort_by_index(out);
      break;
    }
    case ModelKind::Inflate: {
      ExtendedCount g = inner().kernel_dim(lambda);
      auto inner_list = inner().kernel_anchors_below(lambda, bound);
      for (const auto& [j, aj] : inner_list) {
        for (std::uint64_t h = 0;; ++h) {
          std::uint64_t pos = cantor_pair(aj, h);
          if (pos >= bound) break;
          std::uint64_t t = g.is_finite() ? h * g.value() + j : cantor_pair(j, h);
          out.push_back({t, pos});
        }
      }
      sort_by_index(out);
      break;
    }
    default:
      break;
  }
  return out;
}

KernelBasis Model::kernel_basis(const CQ& lambda, std::uint64_t max_when_infinite) const {
  KernelBasis kb;
  ExtendedCount a = data_at(lambda).alpha;
  kb.infinite = a.is_infinite();
  std::uint64_t count = kb.infinite ? max_when_infinite : a.value();
  for (std::uint64_t t = 0; t < count; ++t)
    kb.vectors.push_back(kernel_generator(lambda, t));
  return kb;
}

// ---------------------------------------------------------------------------
// Cokernel

std::uint64_t Model::coker_slot_position(const CQ& lambda, std::uint64_t s) const {
  FredholmData d = data_at(lambda);
  if (!d.range_closed)
    throw EngineError("cokernel slots are defined only for a closed range");
  if (d.beta.is_finite() && s >= d.beta.value())
    throw EngineError("cokernel slot index out of range");
  switch (impl_->kind) {
    case ModelKind::Shift: return 0;
    case ModelKind::Identity:
    case ModelKind::Zero: return s;
    case ModelKind::Diagonal:
      return impl_->diag_position(*impl_->diag_entry_of(lambda), s);
    case ModelKind::FiniteMatrix:
      return impl_->eigen_at(lambda)->slots[s];
    case ModelKind::Translate:
      return inner().coker_slot_position(lambda - impl_->scalar, s);
    case ModelKind::Scale:
      return inner().coker_slot_position(lambda / impl_->scalar, s);
    case ModelKind::DirectSum: {
      ExtendedCount ba = left().data_at(lambda).beta, bb = right().data_at(lambda).beta;
      auto [isl, ls] = merge_at(ba, bb, s);
      SumLayout L = sum_layout(left().space().dim, right().space().dim);
      return sum_map(L, isl, (isl ? left() : right()).coker_slot_position(lambda, ls));
    }
    case ModelKind::Inflate: {
      ExtendedCount g = inner().data_at(lambda).beta;
      std::uint64_t j, h;
      if (g.is_finite()) {
        j = s % g.value();
        h = s / g.value();
      } else {
        std::tie(j, h) = cantor_unpair(s);
      }
      return cantor_pair(inner().coker_slot_position(lambda, j), h);
    }
    default:
      throw EngineError("cokernel slot index out of range");
  }
}

SymbolicVector Model::coker_slot(const CQ& lambda, std::uint64_t s) const {
  return SymbolicVector::basis(coker_slot_position(lambda, s));
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> Model::coker_positions_below(
    const CQ& lambda, std::uint64_t bound) const {
  FredholmData d = data_at(lambda);
  if (!d.range_closed)
    throw EngineError("cokernel slots are defined only for a closed range");
  IndexedPositions out;
  if (d.beta == ExtendedCount(0) || bound == 0) return out;
  switch (impl_->kind) {
    case ModelKind::Shift:
      out.push_back({0, 0});
      break;
    case ModelKind::Identity:
    case ModelKind::Zero: {
      std::uint64_t stop = d.beta.is_finite() ? std::min(d.beta.value(), bound) : bound;
      for (std::uint64_t s = 0; s < stop; ++s) out.push_back({s, s});
      break;
    }
    case ModelKind::Diagonal: {
      std::size_t e = *impl_->diag_entry_of(lambda);
      ExtendedCount m = impl_->diag[e].second;
      for (std::uint64_t s = 0; m.is_infinite() || s < m.value(); ++s) {
        std::uint64_t pos = impl_->diag_position(e, s);
        if (pos >= bound) break;
        out.push_back({s, pos});
      }
      break;
    }
    case ModelKind::FiniteMatrix: {
      const auto* ep = impl_->eigen_at(lambda);
      for (std::uint64_t s = 0; s < ep->slots.size(); ++s)
        if (ep->slots[s] < bound) out.push_back({s, ep->slots[s]});
      break;
    }
    case ModelKind::Translate:
      return inner().coker_positions_below(lambda - impl_->scalar, bound);
    case ModelKind::Scale:
      return inner().coker_positions_below(lambda / impl_->scalar, bound);
    case ModelKind::DirectSum: {
      ExtendedCount ba = left().data_at(lambda).beta, bb = right().data_at(lambda).beta;
      SumLayout L = sum_layout(left().space().dim, right().space().dim);
      for (bool isl : {true, false}) {
        std::uint64_t side_bound = sum_count_below(L, isl, bound);
        auto side = (isl ? left() : right()).coker_positions_below(lambda, side_bound);
        for (const auto& [ls, lp] : side)
          out.push_back({merge_index(ba, bb, isl, ls), sum_map(L, isl, lp)});
      }
      sort_by_index(out);
      break;
    }
    case ModelKind::Inflate: {
      ExtendedCount g = inner().data_at(lambda).beta;
      auto inner_list = inner().coker_positions_below(lambda, bound);
      for (const auto& [j, pj] : inner_list) {
        for (std::uint64_t h = 0;; ++h) {
          std::uint64_t pos = cantor_pair(pj, h);
          if (pos >= bound) break;
          std::uint64_t s = g.is_finite() ? h * g.value() + j : cantor_pair(j, h);
          out.push_back({s, pos});
        }
      }
      sort_by_index(out);
      break;
    }
    default:
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Solving

std::optional<SymbolicVector> Model::solve_shifted(const CQ& lambda,
                                                   const SymbolicVector& rhs) const {
  if (!rhs.is_finite_support())
    throw EngineError("solver needs a finite-support right-hand side");
  if (impl_->dim.is_finite() && rhs.finite_support_bound() > impl_->dim.value())
    throw EngineError("right-hand side lies outside the model space");
  if (rhs.is_zero()) return SymbolicVector{};
  const auto& y = rhs.finite_part();

  switch (impl_->kind) {
    case ModelKind::Shift: {
      if (lambda.is_zero()) {
        if (!rhs.coeff_at(0).is_zero()) return std::nullopt;
        SymbolicVector x;
        for (const auto& [k, c] : y)
          if (k > 0) x.add_finite(k - 1, c);
        return x;
      }
      std::uint64_t K = rhs.finite_support_bound() - 1;
      SymbolicVector x;
      CQ cur = (CQ() - rhs.coeff_at(0)) / lambda;
      if (!cur.is_zero()) x.add_finite(0, cur);
      for (std::uint64_t k = 1; k <= K; ++k) {
        cur = (cur - rhs.coeff_at(k)) / lambda;
        if (!cur.is_zero()) x.add_finite(k, cur);
      }
      if (cmp(lambda.norm2(), Rational(1)) > 0) {
        x.add_geometric(cur / lambda, CQ(1) / lambda, K + 1, 1);
        return x;
      }
      if (!cur.is_zero()) return std::nullopt;
      return x;
    }
    case ModelKind::BackShift: {
      SymbolicVector x;
      if (lambda.is_zero()) {
        for (const auto& [k, c] : y) x.add_finite(k + 1, c);
        return x;
      }
      std::uint64_t K = rhs.finite_support_bound() - 1;
      CQ cur;  // x_{K+1} = 0
      for (std::uint64_t k = K + 1; k-- > 0;) {
        cur = (cur - rhs.coeff_at(k)) / lambda;
        if (!cur.is_zero()) x.add_finite(k, cur);
      }
      return x;
    }
    case ModelKind::BiShift: {
      std::map<std::int64_t, CQ> yz;
      for (const auto& [k, c] : y) yz[unfold(k)] = c;
      std::int64_t kmin = yz.begin()->first, kmax = yz.rbegin()->first;
      auto at = [&](std::int64_t k) {
        auto it = yz.find(k);
        return it == yz.end() ? CQ() : it->second;
      };
      SymbolicVector x;
      int c = cmp(lambda.norm2(), Rational(1));
      if (c < 0) {
        // Zeros to the right; x_{k-1} = y_k + lambda x_k, then a left tail.
        CQ cur;
        for (std::int64_t k = kmax; k >= kmin; --k) {
          cur = at(k) + lambda * cur;
          if (!cur.is_zero()) x.add_finite(fold(k - 1), cur);
        }
        add_left_tail(x, kmin - 1, cur, lambda);
        return x;
      }
      // Zeros to the left; x_k = (x_{k-1} - y_k) / lambda.
      CQ cur;
      std::vector<std::pair<std::int64_t, CQ>> vals;
      for (std::int64_t k = kmin; k <= kmax; ++k) {
        cur = (cur - at(k)) / lambda;
        vals.push_back({k, cur});
      }
      if (c == 0) {
        if (!cur.is_zero()) return std::nullopt;
        for (const auto& [k, v] : vals)
          if (!v.is_zero()) x.add_finite(fold(k), v);
        return x;
      }
      for (const auto& [k, v] : vals)
        if (!v.is_zero()) x.add_finite(fold(k), v);
      add_right_tail(x, kmax, cur, CQ(1) / lambda);
      return x;
    }
    case ModelKind::BiShiftBack: {
      std::map<std::int64_t, CQ> yz;
      for (const auto& [k, c] : y) yz[unfold(k)] = c;
      std::int64_t kmin = yz.begin()->first, kmax = yz.rbegin()->first;
      auto at = [&](std::int64_t k) {
        auto it = yz.find(k);
        return it == yz.end() ? CQ() : it->second;
      };
      SymbolicVector x;
      int c = cmp(lambda.norm2(), Rational(1));
      if (c < 0) {
        // Zeros to the left; x_{k+1} = y_k + lambda x_k, then a right tail.
        CQ cur;
        for (std::int64_t k = kmin; k <= kmax; ++k) {
          cur = at(k) + lambda * cur;
          if (!cur.is_zero() && k + 1 <= kmax) x.add_finite(fold(k + 1), cur);
        }
        add_right_tail(x, kmax + 1, cur, lambda);
        if (!cur.is_zero()) x.add_finite(fold(kmax + 1), cur);
        return x;
      }
      if (c == 0) {
        CQ cur;
        for (std::int64_t k = kmin; k <= kmax; ++k) {
          cur = at(k) + lambda * cur;
          if (!cur.is_zero() && k + 1 <= kmax) x.add_finite(fold(k + 1), cur);
        }
        if (!cur.is_zero()) return std::nullopt;  // x_{kmax+1} must vanish
        return x;
      }
      // Zeros to the right; x_k = (x_{k+1} - y_k) / lambda, then a left tail.
      CQ cur;
      for (std::int64_t k = kmax; k >= kmin; --k) {
        cur = (cur - at(k)) / lambda;
        if (!cur.is_zero()) x.add_finite(fold(k), cur);
      }
      add_left_tail(x, kmin, cur, CQ(1) / lambda);
      return x;
    }
    case ModelKind::Identity: {
      if (lambda == CQ(1)) return std::nullopt;  // rhs != 0 here
      return rhs.scaled(CQ(1) / (CQ(1) - lambda));
    }
    case ModelKind::Zero: {
      if (lambda.is_zero()) return std::nullopt;
      return rhs.scaled((CQ() - CQ(1)) / lambda);
    }
    case ModelKind::Diagonal: {
      SymbolicVector x;
      for (const auto& [k, c] : y) {
        CQ v = impl_->diag_value_at(k);
        if (v == lambda) {
          if (!c.is_zero()) return std::nullopt;
          continue;
        }
        x.add_finite(k, c / (v - lambda));
      }
      return x;
    }
    case ModelKind::FiniteMatrix: {
      const std::size_t n = impl_->mat.rows();
      std::vector<CQ> b(n);
      for (const auto& [k, c] : y) b[k] = c;
      CMatrix a = impl_->mat - CMatrix::identity(n).scaled(lambda);
      auto sol = solve_linear(a, b);
      if (!sol) return std::nullopt;
      return from_coords(*sol);
    }
    case ModelKind::Translate:
      return inner().solve_shifted(lambda - impl_->scalar, rhs);
    case ModelKind::Scale:
      return inner().solve_shifted(lambda / impl_->scalar,
                                   rhs.scaled(CQ(1) / impl_->scalar));
    case ModelKind::DirectSum: {
      SumLayout L = sum_layout(left().space().dim, right().space().dim);
      SymbolicVector ya, yb;
      sum_split(L, rhs, ya, yb);
      auto xa = left().solve_shifted(lambda, ya);
      if (!xa) return std::nullopt;
      auto xb = right().solve_shifted(lambda, yb);
      if (!xb) return std::nullopt;
      return sum_embed(L, true, *xa) + sum_embed(L, false, *xb);
    }
    case ModelKind::Inflate: {
      SymbolicVector x;
      for (const auto& [h, vh] : split_copies(rhs)) {
        auto xh = inner().solve_shifted(lambda, vh);
        if (!xh) return std::nullopt;
        x = x + xh->into_copy(h);
      }
      return x;
    }
  }
  throw EngineError("unknown model kind");
}

// ---------------------------------------------------------------------------
// Application

namespace {

// Forward two-sided shift on folded coordinates.
SymbolicVector bishift_forward(const SymbolicVector& v) {
  SymbolicVector out;
  for (const auto& [q, c] : v.finite_part()) out.add_finite(fold(unfold(q) + 1), c);
  for (const GeoTerm& t : v.tails()) {
    if (!t.program.empty() || t.stride % 2 != 0)
      throw EngineError("cannot shift a rerouted tail");
    if (t.start % 2 == 0) {
      GeoTerm u = t;
      u.start += 2;
      push_tail(out, u, false);
    } else if (t.start >= 3) {
      GeoTerm u = t;
      u.start -= 2;
      push_tail(out, u, false);
    } else {
      out.add_finite(0, t.coeff);  // position -1 moves to 0
      out.add_geometric(t.coeff * t.ratio, t.ratio, t.stride - 1, t.stride);
    }
  }
  return out;
}

SymbolicVector bishift_backward(const SymbolicVector& v) {
  SymbolicVector out;
  for (const auto& [q, c] : v.finite_part()) out.add_finite(fold(unfold(q) - 1), c);
  for (const GeoTerm& t : v.tails()) {
    if (!t.program.empty() || t.stride % 2 != 0)
      throw EngineError("cannot shift a rerouted tail");
    if (t.start % 2 == 1) {
      GeoTerm u = t;
      u.start += 2;
      push_tail(out, u, false);
    } else if (t.start >= 2) {
      GeoTerm u = t;
      u.start -= 2;
      push_tail(out, u, false);
    } else {
      out.add_finite(1, t.coeff);  // position 0 moves to -1
      out.add_geometric(t.coeff * t.ratio, t.ratio, t.stride - 2, t.stride);
    }
  }
  return out;
}

SymbolicVector backshift_apply(const SymbolicVector& v) {
  SymbolicVector out;
  for (const auto& [k, c] : v.finite_part())
    if (k > 0) out.add_finite(k - 1, c);
  for (const GeoTerm& t : v.tails()) {
    if (t.program.empty()) {
      if (t.start >= 1) {
        GeoTerm u = t;
        u.start -= 1;
        push_tail(out, u, false);
      } else {
        out.add_geometric(t.coeff * t.ratio, t.ratio, t.stride - 1, t.stride);
      }
      continue;
    }
    const IndexOp& last = t.program.back();
    if (last.kind == IndexOp::Kind::Affine && last.b >= 1) {
      GeoTerm u = t;
      u.program.back().b -= 1;
      push_tail(out, u, false);
      continue;
    }
    throw EngineError("cannot shift a rerouted tail");
  }
  return out;
}

}  // namespace

SymbolicVector Model::apply_shifted(const CQ& lambda, const SymbolicVector& v) const {
  switch (impl_->kind) {
    case ModelKind::Shift:
      return v.mapped_affine(1, 1) - v.scaled(lambda);
    case ModelKind::BackShift:
      return backshift_apply(v) - v.scaled(lambda);
    case ModelKind::BiShift:
      return bishift_forward(v) - v.scaled(lambda);
    case ModelKind::BiShiftBack:
      return bishift_backward(v) - v.scaled(lambda);
    case ModelKind::Identity:
      return v.scaled(CQ(1) - lambda);
    case ModelKind::Zero:
      return v.scaled(CQ() - lambda);
    case ModelKind::Diagonal: {
      if (!v.is_finite_support())
        throw EngineError("diagonal model applies to finite-support vectors only");
      SymbolicVector out;
      for (const auto& [k, c] : v.finite_part())
        out.add_finite(k, c * (impl_->diag_value_at(k) - lambda));
      return out;
    }
    case ModelKind::FiniteMatrix: {
      if (!v.is_finite_support())
        throw EngineError("matrix model applies to finite-support vectors only");
      const std::size_t n = impl_->mat.rows();
      if (!v.is_zero() && v.finite_support_bound() > n)
        throw EngineError("vector lies outside the model space");
      std::vector<CQ> x(n);
      for (const auto& [k, c] : v.finite_part()) x[k] = c;
      std::vector<CQ> y = mat_vec(impl_->mat, x);
      for (std::size_t i = 0; i < n; ++i) y[i] = y[i] - lambda * x[i];
      return from_coords(y);
    }
    case ModelKind::Translate:
      return inner().apply_shifted(lambda - impl_->scalar, v);
    case ModelKind::Scale:
      return inner().apply_shifted(lambda / impl_->scalar, v).scaled(impl_->scalar);
    case ModelKind::DirectSum: {
      SumLayout L = sum_layout(left().space().dim, right().space().dim);
      SymbolicVector va, vb;
      sum_split(L, v, va, vb);
      return sum_embed(L, true, left().apply_shifted(lambda, va)) +
             sum_embed(L, false, right().apply_shifted(lambda, vb));
    }
    case ModelKind::Inflate: {
      SymbolicVector out;
      for (const auto& [h, vh] : split_copies(v))
        out = out + inner().apply_shifted(lambda, vh).into_copy(h);
      return out;
    }
  }
  throw EngineError("unknown model kind");
}

// ---------------------------------------------------------------------------
// Entries and truncation

CQ Model::entry(std::uint64_t row, std::uint64_t col) const {
  switch (impl_->kind) {
    case ModelKind::Shift:
      return row == col + 1 ? CQ(1) : CQ();
    case ModelKind::BackShift:
      return col == row + 1 ? CQ(1) : CQ();
    case ModelKind::BiShift:
      return unfold(row) == unfold(col) + 1 ? CQ(1) : CQ();
    case ModelKind::BiShiftBack:
      return unfold(row) == unfold(col) - 1 ? CQ(1) : CQ();
    case ModelKind::Identity:
      return row == col && impl_->in_space(row) ? CQ(1) : CQ();
    case ModelKind::Zero:
      return CQ();
    case ModelKind::Diagonal:
      return row == col && impl_->in_space(row) ? impl_->diag_value_at(row) : CQ();
    case ModelKind::FiniteMatrix:
      return row < impl_->mat.rows() && col < impl_->mat.cols()
                 ? impl_->mat.at(row, col)
                 : CQ();
    case ModelKind::Translate: {
      CQ e = inner().entry(row, col);
      if (row == col && impl_->in_space(row)) e = e + impl_->scalar;
      return e;
    }
    case ModelKind::Scale:
      return impl_->scalar * inner().entry(row, col);
    case ModelKind::DirectSum: {
      SumLayout L = sum_layout(left().space().dim, right().space().dim);
      auto [rl, rp] = sum_unmap(L, row);
      auto [cl, cp] = sum_unmap(L, col);
      if (rl != cl) return CQ();
      return (rl ? left() : right()).entry(rp, cp);
    }
    case ModelKind::Inflate: {
      auto [rj, rh] = cantor_unpair(row);
      auto [cj, ch] = cantor_unpair(col);
      if (rh != ch) return CQ();
      return inner().entry(rj, cj);
    }
  }
  throw EngineError("unknown model kind");
}

std::uint64_t Model::rows_needed(std::uint64_t cols) const {
  if (cols == 0) return 0;
  switch (impl_->kind) {
    case ModelKind::Shift:
      return cols + 1;
    case ModelKind::BackShift:
      return cols >= 2 ? cols - 1 : 0;
    case ModelKind::BiShift:
    case ModelKind::BiShiftBack: {
      std::uint64_t bound = 0;
      for (std::uint64_t c = 0; c < cols; ++c) {
        std::int64_t z = unfold(c) + (impl_->kind == ModelKind::BiShift ? 1 : -1);
        bound = std::max(bound, fold(z) + 1);
      }
      return bound;
    }
    case ModelKind::Identity:
    case ModelKind::Diagonal: {
      std::uint64_t d = impl_->dim.is_finite() ? impl_->dim.value() : cols;
      return std::min(cols, d);
    }
    case ModelKind::Zero:
      return 0;
    case ModelKind::FiniteMatrix:
      return impl_->mat.rows();
    case ModelKind::Translate:
      return std::max(inner().rows_needed(cols), cols);
    case ModelKind::Scale:
      return inner().rows_needed(cols);
    case ModelKind::DirectSum: {
      SumLayout L = sum_layout(left().space().dim, right().space().dim);
      std::uint64_t ra = left().rows_needed(sum_count_below(L, true, cols));
      std::uint64_t rb = right().rows_needed(sum_count_below(L, false, cols));
      std::uint64_t bound = 0;
      if (ra > 0) bound = std::max(bound, sum_map(L, true, ra - 1) + 1);
      if (rb > 0) bound = std::max(bound, sum_map(L, false, rb - 1) + 1);
      return bound;
    }
    case ModelKind::Inflate: {
      std::uint64_t bound = 0;
      for (std::uint64_t c = 0; c < cols; ++c) {
        auto [j, h] = cantor_unpair(c);
        std::uint64_t r = inner().rows_needed(j + 1);
        if (r > 0) bound = std::max(bound, cantor_pair(r - 1, h) + 1);
      }
      return bound;
    }
  }
  throw EngineError("unknown model kind");
}

CMatrix Model::rect_truncation(const CQ& lambda, std::uint64_t rows,
                               std::uint64_t cols) const {
  if (impl_->dim.is_finite() && cols > impl_->dim.value())
    throw EngineError("truncation wider than the model space");
  if (rows < cols || rows < rows_needed(cols))
    throw EngineError("truncation rows too small to capture every column");
  CMatrix m(rows, cols);
  for (std::uint64_t r = 0; r < rows; ++r)
    for (std::uint64_t c = 0; c < cols; ++c) {
      CQ e = entry(r, c);
      if (r == c && impl_->in_space(r)) e = e - lambda;
      m.at(r, c) = e;
    }
  return m;
}

Rational Model::spectral_radius_bound() const {
  switch (impl_->kind) {
    case ModelKind::Shift:
    case ModelKind::BackShift:
    case ModelKind::BiShift:
    case ModelKind::BiShiftBack:
    case ModelKind::Identity:
      return Rational(1);
    case ModelKind::Zero:
      return Rational(0);
    case ModelKind::Diagonal: {
      Rational r(0);
      for (const auto& [v, m] : impl_->diag) r = std::max(r, one_bound(v));
      return r;
    }
    case ModelKind::FiniteMatrix: {
      Rational r(0);
      for (std::size_t i = 0; i < impl_->mat.rows(); ++i) {
        Rational row(0);
        for (std::size_t j = 0; j < impl_->mat.cols(); ++j)
          row += one_bound(impl_->mat.at(i, j));
        r = std::max(r, row);
      }
      return r;
    }
    case ModelKind::Translate:
      return inner().spectral_radius_bound() + one_bound(impl_->scalar);
    case ModelKind::Scale:
      return one_bound(impl_->scalar) * inner().spectral_radius_bound();
    case ModelKind::DirectSum:
      return std::max(left().spectral_radius_bound(), right().spectral_radius_bound());
    case ModelKind::Inflate:
      return inner().spectral_radius_bound();
  }
  throw EngineError("unknown model kind");
}

}  // namespace specmat
