#include "bsva/orbit_graph.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include <omp.h>

namespace bsva {

namespace {

struct EdgeKey {
  int src, dst, gen, branch;
  bool operator==(const EdgeKey&) const = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& k) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t x : {std::uint64_t(std::uint32_t(k.src)), std::uint64_t(std::uint32_t(k.dst)),
                            std::uint64_t(std::uint32_t(k.gen)),
                            std::uint64_t(std::uint32_t(k.branch))})
      h = (h ^ (x + 0x9e3779b97f4a7c15ULL)) * 1099511628211ULL;
    return std::size_t(h);
  }
};

// One discovered move out of a node: forward application (edge node -> other)
// or inverse application (edge other -> node), both weighted by the
// generator's unit in the forward direction.
struct Candidate {
  int gen = 0;
  int branch = 0;
  bool inverse = false;
  RationalAngle other;
};

std::vector<Candidate> expand_node(const RationalAngle& theta,
                                   const std::vector<ClosureGenerator>& gens) {
  std::vector<Candidate> out;
  for (int gi = 0; gi < static_cast<int>(gens.size()); ++gi) {
    const PartialMap& map = gens[gi].map;
    for (int bi = 0; bi < static_cast<int>(map.branches().size()); ++bi)
      if (map.branches()[bi].domain.contains(theta))
        out.push_back({gi, bi, false, map.branches()[bi].apply(theta)});
    for (const auto& [bi, x] : map.preimages(theta))
      out.push_back({gi, static_cast<int>(bi), true, x});
  }
  return out;
}

struct Builder {
  OrbitGraph g;
  const std::vector<ClosureGenerator>& gens;
  ClosureBudget budget;
  std::unordered_set<EdgeKey, EdgeKeyHash> seen;

  explicit Builder(const RationalAngle& seed, const std::vector<ClosureGenerator>& gs,
                   const ClosureBudget& b)
      : gens(gs), budget(b) {
    for (const ClosureGenerator& gen : gs) g.gen_names.push_back(gen.name);
    g.nodes.push_back(seed);
    g.node_depth.push_back(0);
    g.parent_edge.push_back(-1);
    g.index.emplace(seed, 0);
  }

  void process(int v, const Candidate& c, int new_depth, std::vector<int>& next_frontier) {
    const long long unit = gens[c.gen].unit;
    int other;
    bool is_new = false;
    if (auto it = g.index.find(c.other); it != g.index.end()) {
      other = it->second;
    } else {
      other = static_cast<int>(g.nodes.size());
      is_new = true;
    }
    const int src = c.inverse ? other : v;
    const int dst = c.inverse ? v : other;
    const EdgeKey key{src, dst, c.gen, c.branch};
    if (!is_new && seen.count(key)) return;
    const std::size_t needed = (src == dst && unit == 0) ? 1 : 2;
    if (is_new && g.nodes.size() >= budget.max_nodes) {
      g.complete = false;
      return;
    }
    if (g.edges.size() + needed > budget.max_edges) {
      g.complete = false;
      return;
    }
    if (is_new) {
      g.nodes.push_back(c.other);
      g.node_depth.push_back(new_depth);
      g.index.emplace(c.other, other);
    }
    const int e0 = static_cast<int>(g.edges.size());
    g.edges.push_back({src, dst, c.gen, c.branch, unit});
    if (needed == 2) g.edges.push_back({dst, src, c.gen, c.branch, -unit});
    seen.insert(key);
    if (is_new) {
      g.parent_edge.push_back(src == v ? e0 : e0 + 1);
      next_frontier.push_back(other);
    }
  }
};

}  // namespace

ClosureBudget default_budget() {
  ClosureBudget b;
  if (const char* env = std::getenv("BSVA_MAX_NODES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) {
      b.max_nodes = static_cast<std::size_t>(v);
      b.max_edges = 4 * b.max_nodes;
    }
  }
  return b;
}

std::optional<int> OrbitGraph::find(const RationalAngle& x) const {
  if (auto it = index.find(x); it != index.end()) return it->second;
  return std::nullopt;
}

std::string OrbitGraph::edge_label(const OrbitEdge& e) const {
  return gen_names[e.gen] + "." + std::to_string(e.branch);
}

std::string OrbitGraph::export_text() const {
  std::vector<int> order(nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return nodes[a] < nodes[b]; });
  std::ostringstream os;
  for (int v : order) os << "node " << nodes[v].str() << "\n";
  std::vector<std::string> lines;
  lines.reserve(edges.size());
  std::vector<int> eorder(edges.size());
  std::iota(eorder.begin(), eorder.end(), 0);
  std::sort(eorder.begin(), eorder.end(), [&](int a, int b) {
    const OrbitEdge &ea = edges[a], &eb = edges[b];
    if (!(nodes[ea.src] == nodes[eb.src])) return nodes[ea.src] < nodes[eb.src];
    if (!(nodes[ea.dst] == nodes[eb.dst])) return nodes[ea.dst] < nodes[eb.dst];
    const std::string la = edge_label(ea), lb = edge_label(eb);
    if (la != lb) return la < lb;
    return ea.weight < eb.weight;
  });
  for (int e : eorder)
    os << "edge " << nodes[edges[e].src].str() << " " << nodes[edges[e].dst].str() << " "
       << edge_label(edges[e]) << " " << edges[e].weight << "\n";
  return os.str();
}

OrbitGraph closure_serial(const RationalAngle& seed, const std::vector<ClosureGenerator>& gens,
                          int depth, const ClosureBudget& budget) {
  Builder b(seed, gens, budget);
  std::vector<int> frontier{0};
  for (int d = 0; d < depth && !frontier.empty(); ++d) {
    std::vector<int> next;
    for (int v : frontier) {
      const RationalAngle theta = b.g.nodes[v];
      for (const Candidate& c : expand_node(theta, gens)) b.process(v, c, d + 1, next);
    }
    frontier = std::move(next);
  }
  return std::move(b.g);
}

OrbitGraph closure(const RationalAngle& seed, const std::vector<ClosureGenerator>& gens, int depth,
                   const ClosureBudget& budget, int jobs) {
  Builder b(seed, gens, budget);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
  std::vector<int> frontier{0};
  for (int d = 0; d < depth && !frontier.empty(); ++d) {
    const int fs = static_cast<int>(frontier.size());
    std::vector<std::vector<Candidate>> found(fs);
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (int i = 0; i < fs; ++i) found[i] = expand_node(b.g.nodes[frontier[i]], gens);
    std::vector<int> next;
    for (int i = 0; i < fs; ++i)
      for (const Candidate& c : found[i]) b.process(frontier[i], c, d + 1, next);
    frontier = std::move(next);
  }
  return std::move(b.g);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  std::vector<long long> pot;  // weight from node to parent

  explicit UnionFind(std::size_t n) : parent(n), pot(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    std::vector<int> chain;
    while (parent[x] != x) {
      chain.push_back(x);
      x = parent[x];
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      pot[*it] += pot[parent[*it]];
      parent[*it] = x;
    }
    return x;
  }

  // Joins with weight(u -> v) = w; keeps the smaller node index as root.
  void unite(int u, int v, long long w) {
    const int ru = find(u), rv = find(v);
    if (ru == rv) return;
    if (ru < rv) {
      parent[rv] = ru;
      pot[rv] = pot[u] - pot[v] - w;
    } else {
      parent[ru] = rv;
      pot[ru] = pot[v] - pot[u] + w;
    }
  }
};

}  // namespace

WeightedClassification classify_components(const OrbitGraph& g) {
  const int n = static_cast<int>(g.nodes.size());
  UnionFind uf(n);
  for (const OrbitEdge& e : g.edges) uf.unite(e.src, e.dst, e.weight);
  for (int v = 0; v < n; ++v) uf.find(v);

  WeightedClassification out;
  out.component.assign(n, -1);
  out.potential.assign(n, 0);
  std::unordered_map<int, int> comp_of_root;
  for (int v = 0; v < n; ++v) {
    const int r = uf.find(v);
    if (r == v) {
      comp_of_root.emplace(r, out.component_count);
      ++out.component_count;
    }
  }
  out.loop_d.assign(out.component_count, 0);
  for (int v = 0; v < n; ++v) {
    out.component[v] = comp_of_root.at(uf.find(v));
    out.potential[v] = uf.pot[v];
  }
  std::set<int> bad;
  for (const OrbitEdge& e : g.edges) {
    const long long c = out.potential[e.src] - out.potential[e.dst] - e.weight;
    if (c != 0) {
      long long& d = out.loop_d[out.component[e.src]];
      d = std::gcd(d, std::llabs(c));
      bad.insert(e.src);
      bad.insert(e.dst);
    }
  }
  out.anomalous.assign(bad.begin(), bad.end());
  return out;
}

std::optional<long long> image_evidence(const OrbitGraph& g) {
  const WeightedClassification cls = classify_components(g);
  long long d = 0;
  for (long long p : cls.potential) d = std::gcd(d, std::llabs(p));
  for (long long l : cls.loop_d) d = std::gcd(d, l);
  if (d == 0) return std::nullopt;
  return d;
}

}  // namespace bsva
