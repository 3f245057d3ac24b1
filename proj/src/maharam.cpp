#include "bsva/maharam.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <omp.h>

#include "bsva/errors.hpp"

namespace bsva {

namespace {

struct EdgeKey {
  int src, dst, dir, branch;
  bool operator==(const EdgeKey&) const = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t x : {std::uint64_t(std::uint32_t(k.src)), std::uint64_t(std::uint32_t(k.dst)),
                            std::uint64_t(std::uint32_t(k.dir)),
                            std::uint64_t(std::uint32_t(k.branch))})
      h = (h ^ (x + 0x9e3779b97f4a7c15ULL)) * 1099511628211ULL;
    return std::size_t(h);
  }
};

struct SkewCandidate {
  StepDirection dir;
  int branch;
  SkewNode to;
};

std::vector<SkewCandidate> expand_skew(const BsParams& p, const SkewNode& s) {
  std::vector<SkewCandidate> out;
  for (const StepDirection d : {StepDirection::Forward, StepDirection::Backward}) {
    const auto ns = step_neighbors(p, s.angle, d);
    for (int j = 0; j < static_cast<int>(ns.size()); ++j)
      out.push_back({d, j, SkewNode{ns[j], s.level - step_weight(d)}});
  }
  return out;
}

struct SkewBuilder {
  SkewOrbitGraph g;
  ClosureBudget budget;
  std::unordered_set<EdgeKey, EdgeKeyHash> seen;

  SkewBuilder(const SkewNode& seed, const ClosureBudget& b) : budget(b) {
    g.nodes.push_back(seed);
    g.node_depth.push_back(0);
    g.parent_edge.push_back(-1);
    g.index.emplace(seed, 0);
  }

  void process(int v, const SkewCandidate& c, int new_depth, std::vector<int>& next_frontier) {
    int other;
    bool is_new = false;
    if (const auto it = g.index.find(c.to); it != g.index.end()) {
      other = it->second;
    } else {
      other = static_cast<int>(g.nodes.size());
      is_new = true;
    }
    const EdgeKey key{v, other, static_cast<int>(c.dir), c.branch};
    if (!is_new && seen.count(key)) return;
    const long long shift = c.to.level - g.nodes[v].level;
    const std::size_t needed = (v == other && shift == 0) ? 1 : 2;
    if (is_new && g.nodes.size() >= budget.max_nodes) {
      g.complete = false;
      return;
    }
    if (g.edges.size() + needed > budget.max_edges) {
      g.complete = false;
      return;
    }
    if (is_new) {
      g.nodes.push_back(c.to);
      g.node_depth.push_back(new_depth);
      g.index.emplace(c.to, other);
    }
    const int e0 = static_cast<int>(g.edges.size());
    g.edges.push_back({v, other, c.dir, c.branch, shift});
    if (needed == 2) g.edges.push_back({other, v, c.dir, c.branch, -shift});
    seen.insert(key);
    if (is_new) {
      g.parent_edge.push_back(e0);
      next_frontier.push_back(other);
    }
  }
};

}  // namespace

std::string SkewNode::str() const { return angle.str() + "@" + std::to_string(level); }

std::optional<int> SkewOrbitGraph::find(const SkewNode& s) const {
  if (const auto it = index.find(s); it != index.end()) return it->second;
  return std::nullopt;
}

std::string SkewOrbitGraph::edge_label(const SkewEdge& e) const {
  return (e.dir == StepDirection::Forward ? "F." : "B.") + std::to_string(e.branch);
}

std::string SkewOrbitGraph::export_text() const {
  const auto node_less = [&](int a, int b) {
    if (!(nodes[a].angle == nodes[b].angle)) return nodes[a].angle < nodes[b].angle;
    return nodes[a].level < nodes[b].level;
  };
  std::vector<int> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), node_less);
  std::ostringstream os;
  for (int v : order) os << "node " << nodes[v].str() << "\n";
  std::vector<int> eorder(edges.size());
  std::iota(eorder.begin(), eorder.end(), 0);
  std::sort(eorder.begin(), eorder.end(), [&](int a, int b) {
    const SkewEdge &ea = edges[a], &eb = edges[b];
    if (ea.src != eb.src || ea.dst != eb.dst) {
      if (node_less(ea.src, eb.src)) return true;
      if (node_less(eb.src, ea.src)) return false;
      if (node_less(ea.dst, eb.dst)) return true;
      if (node_less(eb.dst, ea.dst)) return false;
    }
    const std::string la = edge_label(ea), lb = edge_label(eb);
    if (la != lb) return la < lb;
    return ea.shift < eb.shift;
  });
  for (int e : eorder)
    os << "edge " << nodes[edges[e].src].str() << " " << nodes[edges[e].dst].str() << " "
       << edge_label(edges[e]) << " " << edges[e].shift << "\n";
  return os.str();
}

SkewOrbitGraph skew_orbit(const BsParams& p, const SkewNode& seed, int depth,
                          const ClosureBudget& budget, int jobs) {
  if (p.n < 1) throw invalid_params("skew orbit needs n >= 1");
  SkewBuilder b(seed, budget);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::vector<int> frontier{0};
  for (int d = 0; d < depth && !frontier.empty(); ++d) {
    const int fs = static_cast<int>(frontier.size());
    std::vector<std::vector<SkewCandidate>> found(fs);
    if (threads > 1) {
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
      for (int i = 0; i < fs; ++i) found[i] = expand_skew(p, b.g.nodes[frontier[i]]);
    } else {
      for (int i = 0; i < fs; ++i) found[i] = expand_skew(p, b.g.nodes[frontier[i]]);
    }
    std::vector<int> next;
    for (int i = 0; i < fs; ++i)
      for (const SkewCandidate& c : found[i]) b.process(frontier[i], c, d + 1, next);
    frontier = std::move(next);
  }
  return std::move(b.g);
}

long long level_return_subgroup(const BsParams& p, const RationalAngle& base, int depth,
                                const ClosureBudget& budget) {
  const SkewOrbitGraph g = skew_orbit(p, SkewNode{base, 0}, depth, budget);
  long long d = 0;
  for (const SkewNode& s : g.nodes)
    if (s.angle == base) d = std::gcd(d, s.level);
  return d;
}

std::string taxonomy_rule(const std::optional<long long>& image_units, bool kernel_ok) {
  if (!kernel_ok) return "inconclusive";
  if (!image_units.has_value()) return "I or II evidence";
  return *image_units == 1 ? "III_lambda" : "inconclusive";
}

}  // namespace bsva
