#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bsva/angles.hpp"

namespace bsva {

// Half-open arc [lo, lo + len) on the circle, lo in [0,1), 0 < len <= 1.
// Points are taken in the lifted coordinate x in [lo, lo + len), so arcs may
// wrap past 1.
struct Arc {
  Rational lo;
  Rational len;

  static Arc make(const Rational& lo, const Rational& len);
  // [lo, hi) with endpoints in [0,1); wraps when hi <= lo.
  static Arc from_endpoints(const Rational& lo, const Rational& hi);
  static Arc full();

  Rational hi() const { return lo + len; }  // lifted, may exceed 1
  bool contains(const RationalAngle& x) const;
  // Lift of a contained circle point into [lo, lo + len).
  Rational lift(const RationalAngle& x) const;
  std::string str() const;  // "[p/q, p'/q')" with the lifted upper endpoint

  friend bool operator==(const Arc& a, const Arc& b) { return a.lo == b.lo && a.len == b.len; }
};

// Intersection pieces as real intervals (start, len) in a's lifted
// coordinate system; at most three, pairwise disjoint.
std::vector<std::pair<Rational, Rational>> arc_intersection(const Arc& a, const Arc& b);
bool arcs_disjoint(const Arc& a, const Arc& b);

// x -> slope * x + offset (mod 1) on one domain arc, applied in the lifted
// coordinate. |slope| * len <= 1 keeps the branch injective.
struct MapBranch {
  Arc domain;
  Rational slope;
  Rational offset;

  Rational rn_factor() const { return slope.abs(); }
  // Image as a half-open arc. Exact for slope > 0; for slope < 0 the true
  // image is open at the lower and closed at the upper endpoint, and the
  // returned arc differs from it exactly at those two points.
  Arc image() const;
  RationalAngle apply(const RationalAngle& x) const;  // requires domain.contains(x)
  // All exact solutions of slope * x + offset = y (mod 1) in the domain;
  // correct at endpoints for either slope sign.
  std::vector<RationalAngle> preimages(const RationalAngle& y) const;
};

// Finitely many affine branches with pairwise disjoint domains and pairwise
// disjoint images: an exact partial injection of the circle.
class PartialMap {
 public:
  PartialMap() = default;
  explicit PartialMap(std::vector<MapBranch> branches);  // validates, may throw gluing_conflict

  static PartialMap affine(const Rational& slope, const Rational& offset, const Arc& domain);
  static PartialMap rotation(const Rational& by);

  const std::vector<MapBranch>& branches() const { return branches_; }
  // Branch containing x, if any.
  std::optional<std::size_t> branch_at(const RationalAngle& x) const;
  std::optional<RationalAngle> apply(const RationalAngle& x) const;
  // (branch index, preimage) pairs across branches.
  std::vector<std::pair<std::size_t, RationalAngle>> preimages(const RationalAngle& y) const;
  Rational domain_length() const;

 private:
  std::vector<MapBranch> branches_;
};

// Applies f first, then g, on {x in dom f : f(x) in dom g}. Slopes multiply,
// so rn factors do too.
PartialMap compose(const PartialMap& f, const PartialMap& g);

// Union of the parts as one partial injection; throws gluing_conflict naming
// the offending arcs if any domains or images overlap.
PartialMap glue(const std::vector<PartialMap>& parts);

}  // namespace bsva
