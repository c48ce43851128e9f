#include "specmat/symvec.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace specmat {

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t k) {
  // Largest s with s(s+1)/2 <= k.
  std::uint64_t s = 0;
  while ((s + 1) * (s + 2) / 2 <= k) ++s;
  std::uint64_t b = k - s * (s + 1) / 2;
  return {s - b, b};
}

CQ cq_pow(const CQ& base, std::uint64_t e) {
  CQ acc{Rational(1), Rational(0)};
  CQ b = base;
  while (e) {
    if (e & 1) acc = acc * b;
    b = b * b;
    e >>= 1;
  }
  return acc;
}

namespace {

std::uint64_t run_program(std::uint64_t k, const std::vector<IndexOp>& prog) {
  for (const auto& op : prog)
    k = op.kind == IndexOp::Kind::Affine ? op.a * k + op.b : cantor_pair(k, op.b);
  return k;
}

// Base coordinate of k under the program, when k is in its image.
std::optional<std::uint64_t> invert_program(std::uint64_t k, const std::vector<IndexOp>& prog) {
  for (std::size_t i = prog.size(); i-- > 0;) {
    const auto& op = prog[i];
    if (op.kind == IndexOp::Kind::Affine) {
      if (k < op.b || (k - op.b) % op.a) return std::nullopt;
      k = (k - op.b) / op.a;
    } else {
      auto [a, b] = cantor_unpair(k);
      if (b != op.b) return std::nullopt;
      k = a;
    }
  }
  return k;
}

// Normal form for a term's program: identity ops dropped, adjacent affine
// ops composed, and a leading run of affine ops (which act directly on the
// arithmetic progression) folded into start and stride. Equal supports then
// get equal programs, and every nonempty program starts with a Pair op.
void canonicalize(GeoTerm& t) {
  std::vector<IndexOp> out;
  for (const IndexOp& op : t.program) {
    if (op.kind == IndexOp::Kind::Affine) {
      if (op.a == 1 && op.b == 0) continue;
      if (out.empty()) {
        t.start = op.a * t.start + op.b;
        t.stride = op.a * t.stride;
        continue;
      }
      if (out.back().kind == IndexOp::Kind::Affine) {
        out.back() = {IndexOp::Kind::Affine, op.a * out.back().a, op.a * out.back().b + op.b};
        continue;
      }
    }
    out.push_back(op);
  }
  t.program = std::move(out);
}

// Whether the supports of two canonical-program groups are provably
// disjoint. Distinct programs arising inside one vector always separate at
// a Pair copy index or an affine residue class (using the raw start/stride
// residues when one program is a suffix of the other), so anything else is
// a structural bug worth a loud failure.
bool groups_disjoint(std::vector<IndexOp> p, const std::vector<const GeoTerm*>& pt,
                     std::vector<IndexOp> q, const std::vector<const GeoTerm*>& qt) {
  while (!p.empty() && !q.empty() && p.back() == q.back()) {
    p.pop_back();
    q.pop_back();
  }
  if (!p.empty() && !q.empty()) {
    const IndexOp& x = p.back();
    const IndexOp& y = q.back();
    if (x.kind == IndexOp::Kind::Pair && y.kind == IndexOp::Kind::Pair && x.b != y.b) return true;
    if (x.kind == IndexOp::Kind::Affine && y.kind == IndexOp::Kind::Affine) {
      std::uint64_t g = std::gcd(x.a, y.a);
      if (x.b % g != y.b % g) return true;
    }
    throw std::logic_error("embedding programs with undecided overlap");
  }
  // One program is a suffix of the other. The suffix side's terms live on
  // raw progressions; separate each from the other side's outermost affine.
  const auto& raw = p.empty() ? pt : qt;
  const auto& deep = p.empty() ? q : p;
  if (deep.empty() || deep.back().kind != IndexOp::Kind::Affine)
    throw std::logic_error("nested embedding programs overlap");
  const IndexOp& y = deep.back();
  for (const GeoTerm* u : raw) {
    std::uint64_t g = std::gcd(u->stride, y.a);
    if (u->start % g == y.b % g)
      throw std::logic_error("embedding programs with undecided overlap");
  }
  return true;
}

}  // namespace

SymbolicVector SymbolicVector::basis(std::uint64_t k) {
  SymbolicVector v;
  v.add_finite(k, CQ{Rational(1), Rational(0)});
  return v;
}

void SymbolicVector::add_finite(std::uint64_t k, const CQ& c) {
  if (c.is_zero()) return;
  auto it = fin_.find(k);
  if (it == fin_.end()) {
    fin_.emplace(k, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) fin_.erase(it);
}

void SymbolicVector::add_geometric(const CQ& coeff, const CQ& ratio, std::uint64_t start,
                                   std::uint64_t stride, std::vector<IndexOp> program) {
  if (coeff.is_zero()) return;
  if (stride == 0) throw std::invalid_argument("geometric stride must be positive");
  if (cmp(ratio.norm2(), Rational(1)) >= 0)
    throw std::invalid_argument("geometric ratio must have modulus < 1");
  GeoTerm t{coeff, ratio, start, stride, std::move(program)};
  canonicalize(t);
  if (ratio.is_zero()) {
    add_finite(run_program(t.start, t.program), t.coeff);
    return;
  }
  geo_.push_back(std::move(t));
}

CQ SymbolicVector::coeff_at(std::uint64_t k) const {
  CQ v;
  auto it = fin_.find(k);
  if (it != fin_.end()) v = it->second;
  for (const auto& t : geo_) {
    auto a = invert_program(k, t.program);
    if (!a || *a < t.start) continue;
    std::uint64_t off = *a - t.start;
    if (off % t.stride) continue;
    v = v + t.coeff * cq_pow(t.ratio, off / t.stride);
  }
  return v;
}

SymbolicVector SymbolicVector::scaled(const CQ& f) const {
  SymbolicVector r;
  if (f.is_zero()) return r;
  for (const auto& [k, c] : fin_) r.fin_.emplace(k, c * f);
  for (const auto& t : geo_)
    r.geo_.push_back({t.coeff * f, t.ratio, t.start, t.stride, t.program});
  return r;
}

SymbolicVector SymbolicVector::operator+(const SymbolicVector& o) const {
  SymbolicVector r = *this;
  for (const auto& [k, c] : o.fin_) r.add_finite(k, c);
  for (const auto& t : o.geo_) r.geo_.push_back(t);
  return r;
}

SymbolicVector SymbolicVector::operator-(const SymbolicVector& o) const {
  return *this + o.scaled(CQ{Rational(-1), Rational(0)});
}

bool SymbolicVector::is_zero() const {
  if (geo_.empty()) {
    for (const auto& [k, c] : fin_)
      if (!c.is_zero()) return false;
    return true;
  }
  // Tails are grouped by embedding program; distinct programs occupy
  // provably disjoint coordinate sets, so each group is sampled on its own
  // base space. Within a group, a sum of T geometric sequences vanishing on
  // T+1 consecutive steps of every residue class past all starts (and past
  // the finite part) is identically zero.
  std::map<std::vector<IndexOp>, std::vector<const GeoTerm*>> groups;
  for (const auto& t : geo_) groups[t.program].push_back(&t);
  {
    std::vector<const std::pair<const std::vector<IndexOp>, std::vector<const GeoTerm*>>*> gs;
    for (const auto& g : groups) gs.push_back(&g);
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t j = i + 1; j < gs.size(); ++j)
        groups_disjoint(gs[i]->first, gs[i]->second, gs[j]->first,
                        gs[j]->second);  // throws when undecided
  }

  std::set<std::uint64_t> coords;
  for (const auto& [k, c] : fin_) coords.insert(k);
  for (const auto& [prog, terms] : groups) {
    std::uint64_t L = 1, M = 0;
    for (const auto* t : terms) {
      L = std::lcm(L, t->stride);
      M = std::max(M, t->start);
    }
    for (const auto& [k, c] : fin_)
      if (auto a = invert_program(k, prog)) M = std::max(M, *a + 1);
    std::uint64_t hi = M + L * (terms.size() + 1);
    for (std::uint64_t a = 0; a <= hi; ++a) coords.insert(run_program(a, prog));
  }
  for (auto k : coords)
    if (!coeff_at(k).is_zero()) return false;
  return true;
}

bool SymbolicVector::is_finite_support() const {
  for (const auto& t : geo_)
    if (!t.coeff.is_zero()) return false;
  return true;
}

std::uint64_t SymbolicVector::finite_support_bound() const {
  if (!is_finite_support()) throw std::logic_error("vector has geometric tails");
  std::uint64_t b = 0;
  for (const auto& [k, c] : fin_) b = std::max(b, k + 1);
  return b;
}

SymbolicVector SymbolicVector::into_copy(std::uint64_t h) const {
  SymbolicVector r;
  for (const auto& [k, c] : fin_) r.fin_.emplace(cantor_pair(k, h), c);
  for (const auto& t : geo_) {
    auto prog = t.program;
    prog.push_back({IndexOp::Kind::Pair, 1, h});
    r.add_geometric(t.coeff, t.ratio, t.start, t.stride, std::move(prog));
  }
  return r;
}

SymbolicVector SymbolicVector::mapped_affine(std::uint64_t a, std::uint64_t b) const {
  if (a == 0) throw std::invalid_argument("affine embedding needs a nonzero scale");
  SymbolicVector r;
  for (const auto& [k, c] : fin_) r.fin_.emplace(a * k + b, c);
  for (const auto& t : geo_) {
    auto prog = t.program;
    prog.push_back({IndexOp::Kind::Affine, a, b});
    r.add_geometric(t.coeff, t.ratio, t.start, t.stride, std::move(prog));
  }
  return r;
}

}  // namespace specmat
