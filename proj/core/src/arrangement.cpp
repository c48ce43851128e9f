#include "specmat/arrangement.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

namespace specmat {

namespace {

// Monic quadratic t^2 + b t + c with no rational root, plus an isolating
// interval. Invariant: q(lo) and q(hi) have opposite, nonzero signs.
struct IsoInterval {
  Rational lo, hi;
  Rational b, c;
};

int quad_sign(const Rational& b, const Rational& c, const Rational& t) {
  Rational v = t * t + b * t + c;
  return sgn(v);
}

void bisect(IsoInterval& iv) {
  Rational m = (iv.lo + iv.hi) / 2;
  int sm = quad_sign(iv.b, iv.c, m);
  // sm != 0: the quadratic has no rational roots.
  if (sm == quad_sign(iv.b, iv.c, iv.lo))
    iv.lo = m;
  else
    iv.hi = m;
}

struct CircleEvents {
  std::set<Rational> exact;          // rational parameter values
  std::vector<IsoInterval> isolated; // irrational ones, pairwise disjoint
  bool anchor_is_event = false;      // a feature sits at parameter infinity
};

// Point on the circle at tangent half-angle parameter t.
CQ circle_point(const Arrangement::CircleGeom& g, const Rational& t) {
  Rational den = 1 + t * t;
  return CQ{g.center.re + g.radius * (1 - t * t) / den,
            g.center.im + g.radius * (2 * t) / den};
}

CQ circle_anchor(const Arrangement::CircleGeom& g) {
  return CQ{g.center.re - g.radius, g.center.im};
}

// Events on circle i induced by circle j: parameters where a point of i lies
// on j. Substituting the parameterization into |x - c_j|^2 = r_j^2 gives the
// quadratic (K - 2 r da) t^2 + 4 r db t + (K + 2 r da) with d = c_i - c_j and
// K = |d|^2 + r_i^2 - r_j^2.
void events_from_circle(const Arrangement::CircleGeom& gi,
                        const Arrangement::CircleGeom& gj,
                        CircleEvents& ev,
                        std::map<std::pair<Rational, Rational>, bool>& seen_quads) {
  Rational da = gi.center.re - gj.center.re;
  Rational db = gi.center.im - gj.center.im;
  Rational K = da * da + db * db + gi.radius * gi.radius - gj.radius * gj.radius;
  Rational A = K - 2 * gi.radius * da;
  Rational B = 4 * gi.radius * db;
  Rational C = K + 2 * gi.radius * da;
  if (sgn(A) == 0) {
    if (sgn(B) != 0) ev.exact.insert(-C / B);
    // A == 0 means the anchor (t = infinity) lies on circle j.
    ev.anchor_is_event = true;
    return;
  }
  Rational D = B * B - 4 * A * C;
  int sd = sgn(D);
  if (sd < 0) return;
  if (sd == 0) {
    ev.exact.insert(-B / (2 * A));
    return;
  }
  if (auto s = exact_sqrt(D)) {
    ev.exact.insert((-B + *s) / (2 * A));
    ev.exact.insert((-B - *s) / (2 * A));
    return;
  }
  // Irrational pair of roots: isolate both around the vertex of the monic
  // normalization t^2 + b t + c.
  Rational b = B / A;
  Rational c = C / A;
  if (seen_quads.count({b, c})) return;
  seen_quads[{b, c}] = true;
  Rational v = -b / 2;
  // q(v) < 0 since D > 0; walk outward until the sign flips.
  Rational s = 1;
  while (quad_sign(b, c, v - s) < 0) s *= 2;
  ev.isolated.push_back({v - s, v, b, c});
  s = 1;
  while (quad_sign(b, c, v + s) < 0) s *= 2;
  ev.isolated.push_back({v, v + s, b, c});
}

// Shrink the isolating intervals until they avoid every exact event and are
// pairwise strictly disjoint. Roots are irrational and distinct per interval,
// so bisection separates them in finitely many steps.
void refine_intervals(CircleEvents& ev) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& iv : ev.isolated) {
      for (const auto& e : ev.exact) {
        if (cmp(iv.lo, e) <= 0 && cmp(e, iv.hi) <= 0) {
          bisect(iv);
          changed = true;
        }
      }
    }
    for (size_t a = 0; a < ev.isolated.size(); ++a)
      for (size_t b2 = a + 1; b2 < ev.isolated.size(); ++b2) {
        auto& A = ev.isolated[a];
        auto& B = ev.isolated[b2];
        bool disjoint = cmp(A.hi, B.lo) < 0 || cmp(B.hi, A.lo) < 0;
        if (!disjoint) {
          bisect(A);
          bisect(B);
          changed = true;
        }
      }
  }
}

struct Marker {
  Rational lo, hi;
  bool exact;
};

std::vector<std::int8_t> signature_of(const CQ& q,
                                      const std::vector<Arrangement::CircleGeom>& circles,
                                      const std::vector<CQ>& points) {
  std::vector<std::int8_t> sig;
  sig.reserve(circles.size() + points.size());
  for (const auto& g : circles) {
    Rational dr = q.re - g.center.re;
    Rational di = q.im - g.center.im;
    Rational v = dr * dr + di * di - g.radius * g.radius;
    sig.push_back(static_cast<std::int8_t>(sgn(v)));
  }
  for (const auto& p : points) sig.push_back(q == p ? 1 : 0);
  return sig;
}

Rational rat_abs(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }

}  // namespace

Arrangement build_arrangement(const std::vector<Primitive>& prims) {
  Arrangement arr;
  std::vector<CQ> pts;
  for (const auto& p : prims) {
    switch (p.kind) {
      case PrimKind::Point:
        pts.push_back(p.center);
        break;
      case PrimKind::Circle:
      case PrimKind::OpenDisk:
      case PrimKind::ClosedDisk:
        arr.circles.push_back({p.center, p.radius});
        break;
      default:
        break;  // Empty / FullPlane carry no geometry
    }
  }
  std::sort(arr.circles.begin(), arr.circles.end(), [](const auto& a, const auto& b) {
    int c = compare(a.center, b.center);
    if (c != 0) return c < 0;
    return cmp(a.radius, b.radius) < 0;
  });
  arr.circles.erase(std::unique(arr.circles.begin(), arr.circles.end(),
                                [](const auto& a, const auto& b) {
                                  return a.center == b.center && cmp(a.radius, b.radius) == 0;
                                }),
                    arr.circles.end());
  std::sort(pts.begin(), pts.end(), [](const CQ& a, const CQ& b) { return compare(a, b) < 0; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  arr.points = pts;

  std::vector<CQ> samples;
  for (const auto& p : arr.points) samples.push_back(p);

  if (arr.circles.empty()) {
    // One face; pick a rational point clear of all point primitives.
    Rational far = 1;
    for (const auto& p : arr.points)
      if (cmp(p.re, far) >= 0) far = p.re + 1;
    samples.push_back(CQ{far, Rational(0)});
  }

  for (size_t i = 0; i < arr.circles.size(); ++i) {
    const auto& gi = arr.circles[i];
    CircleEvents ev;
    std::map<std::pair<Rational, Rational>, bool> seen_quads;
    for (size_t j = 0; j < arr.circles.size(); ++j) {
      if (j == i) continue;
      events_from_circle(gi, arr.circles[j], ev, seen_quads);
    }
    for (const auto& p : arr.points) {
      Rational dr = p.re - gi.center.re;
      Rational di = p.im - gi.center.im;
      if (cmp(dr * dr + di * di, gi.radius * gi.radius) != 0) continue;
      // u = (p - c)/r on the unit circle; t = u.im / (1 + u.re) unless u = -1.
      Rational ure = dr / gi.radius;
      Rational uim = di / gi.radius;
      if (cmp(ure, Rational(-1)) == 0)
        ev.anchor_is_event = true;
      else
        ev.exact.insert(uim / (1 + ure));
    }
    refine_intervals(ev);

    std::vector<Marker> markers;
    for (const auto& e : ev.exact) markers.push_back({e, e, true});
    for (const auto& iv : ev.isolated) markers.push_back({iv.lo, iv.hi, false});
    std::sort(markers.begin(), markers.end(),
              [](const Marker& a, const Marker& b) { return cmp(a.lo, b.lo) < 0; });

    std::vector<Rational> ts;
    if (markers.empty()) {
      ts.push_back(Rational(0));
    } else {
      ts.push_back(markers.front().lo - 1);
      for (size_t m = 0; m + 1 < markers.size(); ++m)
        ts.push_back((markers[m].hi + markers[m + 1].lo) / 2);
      ts.push_back(markers.back().hi + 1);
      for (const auto& m : markers)
        if (m.exact) ts.push_back(m.lo);
    }
    for (const auto& t : ts) samples.push_back(circle_point(gi, t));
    samples.push_back(circle_anchor(gi));
  }

  // Face samples: nudge radially off every sample that sits on exactly one
  // circle and at no point. The step bound keeps every other primitive's sign.
  size_t on_circle_samples = samples.size();
  for (size_t s = 0; s < on_circle_samples; ++s) {
    CQ x = samples[s];
    auto sig = signature_of(x, arr.circles, arr.points);
    size_t nc = arr.circles.size();
    int zeros = 0;
    size_t zidx = 0;
    for (size_t j = 0; j < nc; ++j)
      if (sig[j] == 0) {
        ++zeros;
        zidx = j;
      }
    bool atp = false;
    for (size_t j = 0; j < arr.points.size(); ++j)
      if (sig[nc + j]) atp = true;
    if (zeros != 1 || atp) continue;

    const auto& gi = arr.circles[zidx];
    CQ d{x.re - gi.center.re, x.im - gi.center.im};
    Rational delta(1, 2);
    for (size_t j = 0; j < nc; ++j) {
      if (j == zidx) continue;
      const auto& gj = arr.circles[j];
      Rational er = x.re - gj.center.re;
      Rational ei = x.im - gj.center.im;
      Rational c0 = er * er + ei * ei - gj.radius * gj.radius;
      Rational c1 = 2 * (d.re * er + d.im * ei);
      Rational c2 = d.re * d.re + d.im * d.im;
      Rational bound = rat_abs(c0) / (1 + rat_abs(c1) + rat_abs(c2));
      if (cmp(bound, delta) < 0) delta = bound;
    }
    delta = delta / 2;
    for (int sign_dir : {1, -1}) {
      Rational dd = delta;
      for (;;) {
        CQ y{x.re + sign_dir * dd * d.re, x.im + sign_dir * dd * d.im};
        bool hit = false;
        for (const auto& p : arr.points)
          if (y == p) hit = true;
        if (!hit) {
          samples.push_back(y);
          break;
        }
        dd = dd / 3;  // a ray meets each point once, so this terminates
      }
    }
  }

  // Collapse samples into signature cells.
  std::map<std::vector<std::int8_t>, CQ> by_sig;
  for (const auto& q : samples) {
    auto sig = signature_of(q, arr.circles, arr.points);
    by_sig.emplace(std::move(sig), q);
  }
  for (auto& [sig, rep] : by_sig) {
    Arrangement::Cell cell;
    cell.rep = rep;
    size_t nc = arr.circles.size();
    cell.circle_sign.assign(sig.begin(), sig.begin() + nc);
    cell.at_point.assign(sig.begin() + nc, sig.end());
    bool atp = false;
    int zeros = 0;
    for (auto v : cell.at_point)
      if (v) atp = true;
    for (auto v : cell.circle_sign)
      if (v == 0) ++zeros;
    cell.dim = atp ? 0 : (zeros == 0 ? 2 : (zeros == 1 ? 1 : 0));
    arr.cells.push_back(std::move(cell));
  }
  std::sort(arr.cells.begin(), arr.cells.end(), [](const auto& a, const auto& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.circle_sign != b.circle_sign) return a.circle_sign < b.circle_sign;
    return a.at_point < b.at_point;
  });
  return arr;
}

bool is_empty(const RegionExpr& r) {
  Arrangement arr = build_arrangement(r.primitives());
  for (const auto& cell : arr.cells)
    if (contains(r, cell.rep)) return false;
  return true;
}

namespace {

std::vector<Primitive> joint_prims(const RegionExpr& a, const RegionExpr& b) {
  auto pa = a.primitives();
  auto pb = b.primitives();
  pa.insert(pa.end(), pb.begin(), pb.end());
  return pa;
}

}  // namespace

bool is_equal(const RegionExpr& a, const RegionExpr& b) {
  Arrangement arr = build_arrangement(joint_prims(a, b));
  for (const auto& cell : arr.cells)
    if (contains(a, cell.rep) != contains(b, cell.rep)) return false;
  return true;
}

bool is_subset(const RegionExpr& a, const RegionExpr& b) {
  Arrangement arr = build_arrangement(joint_prims(a, b));
  for (const auto& cell : arr.cells)
    if (contains(a, cell.rep) && !contains(b, cell.rep)) return false;
  return true;
}

namespace {

std::string modulus_text(const Arrangement::CircleGeom& g) {
  if (g.center.is_zero()) return "|λ|";
  std::string c = complex_to_string(g.center);
  bool simple = sgn(g.center.im) == 0 && sgn(g.center.re) > 0;
  if (simple) return "|λ-" + c + "|";
  return "|λ-(" + c + ")|";
}

struct CoverTerm {
  std::string text;
  RegionExpr expr;
};

// Greedy exact cover of the member cells; empty/full handled by the caller.
std::vector<CoverTerm> cover_terms(const Arrangement& arr,
                                   const std::vector<bool>& is_member) {
  std::vector<size_t> members;
  for (size_t i = 0; i < arr.cells.size(); ++i)
    if (is_member[i]) members.push_back(i);
  std::vector<bool> covered(arr.cells.size(), false);

  std::vector<std::pair<std::string, RegionExpr>> catalog;
  for (size_t ci = 0; ci < arr.circles.size(); ++ci) {
    const auto& g = arr.circles[ci];
    std::string m = modulus_text(g);
    std::string rs = rational_to_string(g.radius);
    RegionExpr closed = RegionExpr::closed_disk(g.center, g.radius);
    RegionExpr open = RegionExpr::open_disk(g.center, g.radius);
    RegionExpr circ = RegionExpr::circle(g.center, g.radius);
    catalog.emplace_back("{" + m + "≤" + rs + "}", closed);
    catalog.emplace_back("{" + m + "<" + rs + "}", open);
    catalog.emplace_back("{" + m + "=" + rs + "}", circ);
    catalog.emplace_back("{" + m + "≥" + rs + "}", RegionExpr::complement(open));
    catalog.emplace_back("{" + m + ">" + rs + "}", RegionExpr::complement(closed));
  }
  for (const auto& p : arr.points)
    catalog.emplace_back("{" + complex_to_string(p) + "}", RegionExpr::point(p));

  struct Candidate {
    std::string text;
    RegionExpr expr;
    std::vector<size_t> cov;  // member cells the term contains
  };
  std::vector<Candidate> cands;
  for (auto& [text, expr] : catalog) {
    bool all_member = true;
    std::vector<size_t> cov;
    for (size_t i = 0; i < arr.cells.size(); ++i) {
      if (!contains(expr, arr.cells[i].rep)) continue;
      if (!is_member[i]) {
        all_member = false;
        break;
      }
      cov.push_back(i);
    }
    if (all_member && !cov.empty()) cands.push_back({text, expr, std::move(cov)});
  }

  // Largest gain first so a term never survives inside a later, wider one;
  // ties break by catalog order to keep the output canonical.
  std::vector<size_t> chosen;
  for (;;) {
    size_t best = cands.size(), best_gain = 0;
    for (size_t c = 0; c < cands.size(); ++c) {
      size_t gain = 0;
      for (auto i : cands[c].cov)
        if (!covered[i]) ++gain;
      if (gain > best_gain) {
        best = c;
        best_gain = gain;
      }
    }
    if (best == cands.size()) break;
    for (auto i : cands[best].cov) covered[i] = true;
    chosen.push_back(best);
  }
  std::sort(chosen.begin(), chosen.end());

  std::vector<CoverTerm> terms;
  for (auto c : chosen) terms.push_back({cands[c].text, cands[c].expr});

  // Leftover member cells become pruned signature conjunctions.
  for (auto idx : members) {
    if (covered[idx]) continue;
    const auto& cell = arr.cells[idx];
    struct Conj {
      std::string text;
      RegionExpr expr;
    };
    std::vector<Conj> conj;
    for (size_t ci = 0; ci < arr.circles.size(); ++ci) {
      const auto& g = arr.circles[ci];
      std::string m = modulus_text(g);
      std::string rs = rational_to_string(g.radius);
      int s = cell.circle_sign[ci];
      if (s < 0)
        conj.push_back({m + "<" + rs, RegionExpr::open_disk(g.center, g.radius)});
      else if (s == 0)
        conj.push_back({m + "=" + rs, RegionExpr::circle(g.center, g.radius)});
      else
        conj.push_back({m + ">" + rs,
                        RegionExpr::complement(RegionExpr::closed_disk(g.center, g.radius))});
    }
    for (size_t pi = 0; pi < arr.points.size(); ++pi) {
      if (cell.at_point[pi]) continue;  // handled by the point candidate above
      conj.push_back({"λ≠" + complex_to_string(arr.points[pi]),
                      RegionExpr::complement(RegionExpr::point(arr.points[pi]))});
    }
    // Drop conjuncts while the widened term still fits inside the region.
    std::vector<bool> keep(conj.size(), true);
    auto assemble = [&](const std::vector<bool>& k) {
      std::vector<RegionExpr> parts;
      for (size_t i = 0; i < conj.size(); ++i)
        if (k[i]) parts.push_back(conj[i].expr);
      if (parts.empty()) return RegionExpr::full_plane();
      return RegionExpr::intersection_of(parts);
    };
    auto inside = [&](const RegionExpr& e) {
      for (size_t i = 0; i < arr.cells.size(); ++i)
        if (!is_member[i] && contains(e, arr.cells[i].rep)) return false;
      return true;
    };
    for (size_t i = 0; i < conj.size(); ++i) {
      auto trial = keep;
      trial[i] = false;
      if (inside(assemble(trial))) keep = trial;
    }
    RegionExpr final_expr = assemble(keep);
    for (size_t i = 0; i < arr.cells.size(); ++i)
      if (contains(final_expr, arr.cells[i].rep)) covered[i] = true;
    std::string text;
    for (size_t i = 0; i < conj.size(); ++i) {
      if (!keep[i]) continue;
      if (!text.empty()) text += " ∧ ";
      text += conj[i].text;
    }
    if (text.empty()) text = "ℂ";  // pruned to everything (unreachable here)
    terms.push_back({"{" + text + "}", final_expr});
  }
  return terms;
}

}  // namespace

std::string describe(const RegionExpr& r) {
  Arrangement arr = build_arrangement(r.primitives());
  std::vector<bool> members(arr.cells.size(), false);
  size_t count = 0;
  for (size_t i = 0; i < arr.cells.size(); ++i)
    if (contains(r, arr.cells[i].rep)) members[i] = true, ++count;
  if (count == 0) return "∅";
  if (count == arr.cells.size()) return "ℂ";
  auto terms = cover_terms(arr, members);
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " ∪ ";
    out += terms[i].text;
  }
  return out;
}

RegionExpr cover_region(const Arrangement& arr, const std::vector<bool>& members) {
  size_t count = 0;
  for (size_t i = 0; i < members.size(); ++i)
    if (members[i]) ++count;
  if (count == 0) return RegionExpr::empty();
  if (count == arr.cells.size()) return RegionExpr::full_plane();
  auto terms = cover_terms(arr, members);
  std::vector<RegionExpr> parts;
  parts.reserve(terms.size());
  for (auto& t : terms) parts.push_back(std::move(t.expr));
  return RegionExpr::union_of(std::move(parts));
}

RegionExpr simplify(const RegionExpr& r) {
  Arrangement arr = build_arrangement(r.primitives());
  std::vector<bool> members(arr.cells.size(), false);
  for (size_t i = 0; i < arr.cells.size(); ++i)
    if (contains(r, arr.cells[i].rep)) members[i] = true;
  return cover_region(arr, members);
}

}  // namespace specmat
