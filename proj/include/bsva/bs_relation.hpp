#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bsva/angles.hpp"
#include "bsva/orbit_graph.hpp"
#include "bsva/words.hpp"

namespace bsva {

// The circle relation for parameters (n, m): y related to z when
// m * theta_y = n * theta_z (mod 1). A Forward step moves from y to such a z,
// a Backward step is the reverse.
enum class StepDirection { Forward, Backward };

long long step_weight(StepDirection d);  // Forward +1, Backward -1

// The n Forward neighbors (m t + j)/n resp. the |m| Backward neighbors
// (n t + j)/m of t, in branch order.
std::vector<RationalAngle> step_neighbors(const BsParams& p, const RationalAngle& t,
                                          StepDirection d);

// Orbit generators: the |m| Backward branch maps t -> (n t + j)/m, each total
// on the circle, injective (slope magnitude n/|m| <= 1) and of unit -1.
// Forward steps arise as their inverses. Requires 1 <= n <= |m|.
std::vector<ClosureGenerator> relation_generators(const BsParams& p);

OrbitGraph orbit(const BsParams& p, const RationalAngle& seed, int depth,
                 const ClosureBudget& budget = default_budget(), int jobs = 1);

// Searches exponents 0 <= a, b <= bound, ordered by (a + b, a), for
// m^a n^b * theta_z = n^a m^b * theta_y (mod 1); the first hit (a, b) is the
// returned witness.
std::optional<std::pair<long long, long long>> are_equivalent_def(const BsParams& p,
                                                                  const RationalAngle& y,
                                                                  const RationalAngle& z,
                                                                  long long bound);

// Sizes of the two step fibers into y and of their product, each candidate
// verified against the defining congruence: x counts for from_forward when
// y is among the Forward neighbors of x, and symmetrically.
struct FiberCount {
  std::size_t forward_count = 0;
  std::size_t backward_count = 0;
  std::size_t pair_count = 0;
};

FiberCount fiber_count_check(const BsParams& p, const RationalAngle& y);

struct RotationStep {
  StepDirection dir;
  int branch;
  RationalAngle to;
};

// Result of searching for a net-weight-zero path from y to
// y + 1/(n|m|)^k: ok with the path and its length when found,
// exhausted=false when a state budget stopped the search early.
struct RotationCheck {
  bool ok = false;
  int length = -1;
  RationalAngle start;
  RationalAngle target;
  std::vector<RotationStep> path;
  bool exhausted = true;
};

// Bidirectional breadth-first search over (angle, net weight) states, level
// synchronized from both ends; finds a minimal-length certificate of length
// at most max_steps.
RotationCheck lambda_rotation_check(const BsParams& p, const RationalAngle& y, int k,
                                    int max_steps, std::size_t max_states = 1000000);

struct KernelCheck {
  int k = 1;
  int samples = 0;
  int depth = 0;
  int passed = 0;
  int max_length = -1;  // longest certificate among the passing samples
};

struct ClassifyOptions {
  int depth = 8;        // rotation path-length budget
  int orbit_depth = 4;  // closure depth for the weight evidence
  int samples = 50;
  int k = 1;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct TypeVerdict {
  long long n = 0;
  long long m = 0;
  Rational lambda;
  std::string verdict;  // "III_lambda" or "inconclusive"
  std::optional<long long> image_units;
  KernelCheck kernel;
  std::vector<std::string> warnings;
  bool partial = false;  // orbit budget hit; evidence may be incomplete
};

// Combines orbit weight evidence (image subgroup of the index cocycle) with
// sampled rotation checks (kernel of the associated flow) into a verdict.
// Requires 1 <= n < |m|; warns when gcd(n, |m|) > 1 or n < 2.
TypeVerdict classify_type(const BsParams& p, const ClassifyOptions& opts = {});

struct DistinguishResult {
  Rational lambda1;
  Rational lambda2;
  bool separated = false;
};

// Two parameter pairs are separated exactly when their ratios n/|m| differ.
DistinguishResult distinguish(const BsParams& p1, const BsParams& p2);

}  // namespace bsva
