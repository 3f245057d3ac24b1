#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bsva/angles.hpp"
#include "bsva/partial_map.hpp"

namespace bsva {

// Partial injection with a cocycle unit: traversing the generator forward
// contributes `unit` to a path weight, the inverse contributes -unit.
struct ClosureGenerator {
  PartialMap map;
  long long unit = 0;
  std::string name;
};

struct ClosureBudget {
  std::size_t max_nodes = 100000;
  std::size_t max_edges = 400000;
};

// Default budget; BSVA_MAX_NODES overrides max_nodes (edges scale with it).
ClosureBudget default_budget();

struct OrbitEdge {
  int src = 0;
  int dst = 0;
  int gen = 0;
  int branch = 0;
  long long weight = 0;
};

// Breadth-first closure of a seed angle under generators and their inverses.
// nodes[0] is the seed; nodes appear in discovery order. Every edge is stored
// in both directions with the same label and negated weight (a zero-weight
// self-loop is stored once). parent_edge[v] points from the discovering node
// to v. complete is false when a budget cut anything off.
struct OrbitGraph {
  std::vector<RationalAngle> nodes;
  std::vector<int> node_depth;
  std::vector<int> parent_edge;  // -1 for the root
  std::vector<OrbitEdge> edges;
  std::vector<std::string> gen_names;
  std::unordered_map<RationalAngle, int, AngleHash> index;
  bool complete = true;

  std::optional<int> find(const RationalAngle& x) const;
  std::string edge_label(const OrbitEdge& e) const;  // "<gen name>.<branch>"
  // "node p/q" and "edge p/q p'/q' label weight" lines, sorted; identical
  // for equal graphs however they were built.
  std::string export_text() const;
};

OrbitGraph closure_serial(const RationalAngle& seed, const std::vector<ClosureGenerator>& gens,
                          int depth, const ClosureBudget& budget = default_budget());

// Same graph as closure_serial, bit for bit: frontier expansion runs in
// parallel, discovery is merged in frontier order. jobs <= 0 lets the
// runtime pick the thread count.
OrbitGraph closure(const RationalAngle& seed, const std::vector<ClosureGenerator>& gens, int depth,
                   const ClosureBudget& budget = default_budget(), int jobs = 1);

// Connected components of the weighted graph together with node potentials:
// potential[v] is the path weight from v to its component root along the
// union-find tree. loop_d[c] is the gcd of the absolute weight discrepancies
// of the edges the tree does not explain (0 when every edge is consistent),
// and anomalous lists the endpoints of those edges.
struct WeightedClassification {
  std::vector<int> component;
  std::vector<long long> potential;
  std::vector<long long> loop_d;
  std::vector<int> anomalous;
  int component_count = 0;
};

WeightedClassification classify_components(const OrbitGraph& g);

// gcd of all |potential differences| within components and all loop
// discrepancies; nullopt when that gcd is 0 (all path weights between equal
// endpoints vanish).
std::optional<long long> image_evidence(const OrbitGraph& g);

}  // namespace bsva
