#include "bsva/partial_map.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

#include "bsva/errors.hpp"

namespace bsva {

namespace {

BigInt rceil(const Rational& x) { return -((-x).floor()); }

const Rational kOne(1);

// Pieces of [jlo, jhi) cap (arc + Z), as raw intervals [start, end) together
// with the shift k such that start - k lies in [arc.lo, arc.hi).
struct RawPiece {
  Rational start;
  Rational end;
  BigInt shift;
};

std::vector<RawPiece> interval_arc_pieces(const Rational& jlo, const Rational& jhi,
                                          const Arc& arc) {
  std::vector<RawPiece> out;
  if (!(jlo < jhi)) return out;
  BigInt k = (jlo - arc.hi()).floor();
  const BigInt kmax = (jhi - arc.lo).floor();
  for (; k <= kmax; ++k) {
    const Rational rk{BigInt(k)};
    const Rational s = std::max(jlo, arc.lo + rk);
    const Rational e = std::min(jhi, arc.hi() + rk);
    if (s < e) out.push_back({s, e, k});
  }
  return out;
}

// Joins contiguous branches whose affine formulas agree across the seam, so
// piecewise enumeration artifacts collapse back into one branch.
bool try_join(const MapBranch& a, const MapBranch& b, const Rational& seam_lift, MapBranch& out) {
  if (!(a.slope == b.slope)) return false;
  if (kOne < a.domain.len + b.domain.len) return false;
  const Rational at_seam = (a.slope * seam_lift + a.offset).mod1();
  const Rational b_start = (b.slope * b.domain.lo + b.offset).mod1();
  if (!(at_seam == b_start)) return false;
  out = MapBranch{Arc{a.domain.lo, a.domain.len + b.domain.len}, a.slope, a.offset};
  return true;
}

std::vector<MapBranch> coalesce(std::vector<MapBranch> bs) {
  if (bs.size() < 2) return bs;
  std::sort(bs.begin(), bs.end(),
            [](const MapBranch& x, const MapBranch& y) { return x.domain.lo < y.domain.lo; });
  std::vector<MapBranch> out;
  out.push_back(bs[0]);
  for (std::size_t i = 1; i < bs.size(); ++i) {
    MapBranch joined;
    if (out.back().domain.hi() == bs[i].domain.lo &&
        try_join(out.back(), bs[i], out.back().domain.hi(), joined))
      out.back() = joined;
    else
      out.push_back(bs[i]);
  }
  if (out.size() >= 2) {
    MapBranch joined;
    if (out.back().domain.hi() == out.front().domain.lo + kOne &&
        try_join(out.back(), out.front(), out.back().domain.hi(), joined)) {
      out.back() = joined;
      out.erase(out.begin());
    }
  }
  return out;
}

}  // namespace

Arc Arc::make(const Rational& lo, const Rational& len) {
  if (lo.sign() < 0 || !(lo < kOne)) throw invalid_params("arc base must lie in [0,1): " + lo.str());
  if (len.sign() <= 0 || kOne < len) throw invalid_params("arc length must lie in (0,1]: " + len.str());
  return Arc{lo, len};
}

Arc Arc::from_endpoints(const Rational& lo, const Rational& hi) {
  if (lo == hi) throw invalid_params("arc endpoints coincide; use Arc::full() for the whole circle");
  if (hi.sign() < 0 || !(hi < kOne)) throw invalid_params("arc endpoint must lie in [0,1): " + hi.str());
  Rational len = hi - lo;
  if (len.sign() < 0) len = len + kOne;
  return make(lo, len);
}

Arc Arc::full() { return Arc{Rational(0), kOne}; }

bool Arc::contains(const RationalAngle& x) const {
  const Rational v = x.value();
  if (!(v < lo)) return v < hi();
  return v + kOne < hi();
}

Rational Arc::lift(const RationalAngle& x) const {
  const Rational v = x.value();
  return v < lo ? v + kOne : v;
}

std::string Arc::str() const { return "[" + lo.str() + ", " + hi().str() + ")"; }

std::vector<std::pair<Rational, Rational>> arc_intersection(const Arc& a, const Arc& b) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const RawPiece& p : interval_arc_pieces(a.lo, a.hi(), b))
    out.emplace_back(p.start, p.end - p.start);
  return out;
}

bool arcs_disjoint(const Arc& a, const Arc& b) {
  return interval_arc_pieces(a.lo, a.hi(), b).empty();
}

Arc MapBranch::image() const {
  const Rational ulen = slope.abs() * domain.len;
  const Rational base =
      slope.sign() > 0 ? slope * domain.lo + offset : slope * domain.hi() + offset;
  return Arc::make(base.mod1(), ulen);
}

RationalAngle MapBranch::apply(const RationalAngle& x) const {
  assert(domain.contains(x));
  return RationalAngle::from_rational(slope * domain.lift(x) + offset);
}

std::vector<RationalAngle> MapBranch::preimages(const RationalAngle& y) const {
  // slope * x + offset = y + k with x in [lo, hi); k ranges over an interval
  // of length |slope| * len <= 1, so at most one solution.
  std::vector<RationalAngle> out;
  const Rational y0 = y.value();
  const Rational a = slope * domain.lo + offset - y0;
  const Rational b = slope * domain.hi() + offset - y0;
  BigInt k, kend;
  if (slope.sign() > 0) {  // k in [a, b)
    k = rceil(a);
    kend = rceil(b) - 1;
  } else {  // k in (b, a]
    k = b.floor() + 1;
    kend = a.floor();
  }
  for (; k <= kend; ++k) {
    const Rational x = (y0 + Rational(BigInt(k)) - offset) / slope;
    if (!(x < domain.lo) && x < domain.hi()) out.push_back(RationalAngle::from_rational(x));
  }
  return out;
}

PartialMap::PartialMap(std::vector<MapBranch> branches) : branches_(std::move(branches)) {
  for (MapBranch& br : branches_) {
    if (br.slope.is_zero()) throw invalid_params("branch slope must be nonzero on " + br.domain.str());
    if (kOne < br.slope.abs() * br.domain.len)
      throw invalid_params("branch on " + br.domain.str() + " with slope " + br.slope.str() +
                           " is not injective: |slope| * length exceeds 1");
    br.offset = br.offset.mod1();
  }
  for (std::size_t i = 0; i < branches_.size(); ++i)
    for (std::size_t j = i + 1; j < branches_.size(); ++j) {
      if (!arcs_disjoint(branches_[i].domain, branches_[j].domain))
        throw gluing_conflict("overlapping domains " + branches_[i].domain.str() + " and " +
                              branches_[j].domain.str());
      if (!arcs_disjoint(branches_[i].image(), branches_[j].image()))
        throw gluing_conflict("overlapping images " + branches_[i].image().str() + " and " +
                              branches_[j].image().str());
    }
}

PartialMap PartialMap::affine(const Rational& slope, const Rational& offset, const Arc& domain) {
  return PartialMap({MapBranch{domain, slope, offset}});
}

PartialMap PartialMap::rotation(const Rational& by) {
  return PartialMap({MapBranch{Arc::full(), kOne, by}});
}

std::optional<std::size_t> PartialMap::branch_at(const RationalAngle& x) const {
  for (std::size_t i = 0; i < branches_.size(); ++i)
    if (branches_[i].domain.contains(x)) return i;
  return std::nullopt;
}

std::optional<RationalAngle> PartialMap::apply(const RationalAngle& x) const {
  const auto i = branch_at(x);
  if (!i) return std::nullopt;
  return branches_[*i].apply(x);
}

std::vector<std::pair<std::size_t, RationalAngle>> PartialMap::preimages(
    const RationalAngle& y) const {
  std::vector<std::pair<std::size_t, RationalAngle>> out;
  for (std::size_t i = 0; i < branches_.size(); ++i)
    for (const RationalAngle& x : branches_[i].preimages(y)) out.emplace_back(i, x);
  return out;
}

Rational PartialMap::domain_length() const {
  Rational total(0);
  for (const MapBranch& br : branches_) total = total + br.domain.len;
  return total;
}

PartialMap compose(const PartialMap& f, const PartialMap& g) {
  std::vector<MapBranch> out;
  for (const MapBranch& bf : f.branches()) {
    const Rational u = bf.slope, v = bf.offset;
    // Raw image interval of bf, before reduction mod 1.
    const Rational jlo = u.sign() > 0 ? u * bf.domain.lo + v : u * bf.domain.hi() + v;
    const Rational jhi = u.sign() > 0 ? u * bf.domain.hi() + v : u * bf.domain.lo + v;
    for (const MapBranch& bg : g.branches()) {
      for (const RawPiece& p : interval_arc_pieces(jlo, jhi, bg.domain)) {
        // On this piece g sees the lift w - k, so g(f(x)) = S x + O below.
        const Rational rk{BigInt(p.shift)};
        const Rational S = bg.slope * u;
        const Rational O = bg.slope * (v - rk) + bg.offset;
        Rational xs, xe;
        if (u.sign() > 0) {
          xs = (p.start - v) / u;
          xe = (p.end - v) / u;
        } else {
          xs = (p.end - v) / u;
          xe = (p.start - v) / u;
        }
        const Rational base = xs.mod1();
        // Stored base is the lift start shifted into [0,1); fold the shift
        // into the offset so the branch formula agrees with g after f.
        const Rational shift = xs - base;
        MapBranch nb{Arc::make(base, xe - xs), S, O + S * shift};
#ifndef NDEBUG
        const RationalAngle mid = RationalAngle::from_rational(xs + (xe - xs) / Rational(2));
        assert(nb.apply(mid) == *g.apply(*f.apply(mid)));
#endif
        out.push_back(nb);
      }
    }
  }
  return PartialMap(coalesce(std::move(out)));
}

PartialMap glue(const std::vector<PartialMap>& parts) {
  std::vector<MapBranch> all;
  for (const PartialMap& p : parts)
    for (const MapBranch& br : p.branches()) all.push_back(br);
  return PartialMap(std::move(all));
}

}  // namespace bsva
