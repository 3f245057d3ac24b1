#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bsva/bs_relation.hpp"

namespace bsva {

// Point of the skew product: circle angle plus an integer level. A step of
// direction d moves (y, t) to (z, t - step_weight(d)), so levels accumulate
// the negated path weight.
struct SkewNode {
  RationalAngle angle;
  long long level = 0;

  friend bool operator==(const SkewNode& a, const SkewNode& b) {
    return a.level == b.level && a.angle == b.angle;
  }
  std::string str() const;  // "p/q@level"
};

struct SkewNodeHash {
  std::size_t operator()(const SkewNode& s) const {
    return AngleHash{}(s.angle) * 1099511628211ULL +
           static_cast<std::size_t>(s.level) * 0x9e3779b97f4a7c15ULL;
  }
};

struct SkewEdge {
  int src = 0;
  int dst = 0;
  StepDirection dir = StepDirection::Forward;
  int branch = 0;
  long long shift = 0;  // dst level minus src level
};

// Breadth-first closure of a seed point under lifted steps, mirroring the
// orbit graph: nodes in discovery order, every edge stored in both
// directions with the same label and negated shift.
struct SkewOrbitGraph {
  std::vector<SkewNode> nodes;
  std::vector<int> node_depth;
  std::vector<int> parent_edge;  // -1 for the root
  std::vector<SkewEdge> edges;
  std::unordered_map<SkewNode, int, SkewNodeHash> index;
  bool complete = true;

  std::optional<int> find(const SkewNode& s) const;
  std::string edge_label(const SkewEdge& e) const;  // "F.<branch>" or "B.<branch>"
  std::string export_text() const;
};

SkewOrbitGraph skew_orbit(const BsParams& p, const SkewNode& seed, int depth,
                          const ClosureBudget& budget = default_budget(), int jobs = 1);

// gcd of the levels at which the orbit returns to the base angle (seed level
// 0); 0 when the base is never revisited at another level within the depth.
long long level_return_subgroup(const BsParams& p, const RationalAngle& base, int depth,
                                const ClosureBudget& budget = default_budget());

// Folds the two pieces of evidence into a label: unit weight image plus a
// full set of rotation certificates reads "III_lambda", a trivial weight
// image with certificates reads "I or II evidence", anything else is
// "inconclusive".
std::string taxonomy_rule(const std::optional<long long>& image_units, bool kernel_ok);

}  // namespace bsva
