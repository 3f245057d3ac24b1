// Wall-clock comparison of the serial reference paths against their OpenMP
// counterparts. Results are checked for equality before any timing is
// reported; a mismatch fails the run.
#include <omp.h>

#include <cstdio>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "bsva/bs_relation.hpp"
#include "bsva/orbit_graph.hpp"
#include "bsva/words.hpp"

using namespace bsva;

namespace {

Word random_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len_d(0, max_len);
  std::uniform_int_distribution<int> kind(0, 1);
  std::uniform_int_distribution<int> run(1, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  const int target = len_d(rng);
  std::vector<Letter> ls;
  int used = 0;
  while (used < target) {
    const int eps = sign(rng) == 0 ? 1 : -1;
    if (kind(rng) == 0) {
      const int r = std::min(run(rng), target - used);
      ls.push_back(Letter::a(BigInt(eps * r)));
      used += r;
    } else {
      ls.push_back(Letter::b(eps));
      used += 1;
    }
  }
  return Word::from_letters(std::move(ls));
}

bool same_graph(const OrbitGraph& a, const OrbitGraph& b) {
  if (a.nodes != b.nodes || a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const OrbitEdge &x = a.edges[i], &y = b.edges[i];
    if (x.src != y.src || x.dst != y.dst || x.gen != y.gen || x.branch != y.branch ||
        x.weight != y.weight)
      return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = omp_get_max_threads();
  int words = 20000;
  int word_len = 200;
  CLI::App app{"serial vs OpenMP timings", "bsva-bench"};
  app.add_option("--jobs", jobs, "parallel thread count");
  app.add_option("--words", words, "batch size for the normal-form benchmark");
  app.add_option("--word-len", word_len, "largest free length of a random word");
  CLI11_PARSE(app, argc, argv);

  bool ok = true;

  std::printf("orbit closure (seed 0)\n");
  std::printf("  %-14s %8s %10s %12s %8s\n", "params/depth", "nodes", "serial s",
              "parallel s", "speedup");
  const std::vector<std::pair<BsParams, int>> orbit_cases = {
      {BsParams{2, 3}, 8}, {BsParams{2, 5}, 6}, {BsParams{3, -4}, 6}};
  for (const auto& [p, depth] : orbit_cases) {
    const auto gens = relation_generators(p);
    const RationalAngle seed;
    double t0 = omp_get_wtime();
    const OrbitGraph serial = closure_serial(seed, gens, depth);
    double t1 = omp_get_wtime();
    const OrbitGraph parallel = closure(seed, gens, depth, default_budget(), jobs);
    double t2 = omp_get_wtime();
    if (!same_graph(serial, parallel)) {
      std::printf("  (%lld,%lld) depth %d: MISMATCH between serial and parallel closure\n", p.n,
                  p.m, depth);
      ok = false;
      continue;
    }
    const std::string label =
        "(" + std::to_string(p.n) + "," + std::to_string(p.m) + ")/" + std::to_string(depth);
    std::printf("  %-14s %8zu %10.3f %12.3f %7.2fx\n", label.c_str(), serial.nodes.size(),
                t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1));
  }

  std::printf("normal forms, batch of %d words (free length <= %d)\n", words, word_len);
  std::printf("  %-14s %8s %10s %12s %8s\n", "params", "words", "serial s", "parallel s",
              "speedup");
  for (const BsParams& p : {BsParams{2, 3}, BsParams{3, -4}}) {
    std::mt19937_64 rng(99);
    std::vector<Word> ws;
    ws.reserve(static_cast<std::size_t>(words));
    for (int i = 0; i < words; ++i) ws.push_back(random_word(rng, word_len));

    double t0 = omp_get_wtime();
    std::vector<NormalForm> serial;
    serial.reserve(ws.size());
    for (const Word& w : ws) serial.push_back(normal_form(p, w));
    double t1 = omp_get_wtime();
    const std::vector<NormalForm> parallel = normal_form_batch(p, ws, jobs);
    double t2 = omp_get_wtime();
    if (!(serial == parallel)) {
      std::printf("  (%lld,%lld): MISMATCH between loop and batch normal forms\n", p.n, p.m);
      ok = false;
      continue;
    }
    const std::string label = "(" + std::to_string(p.n) + "," + std::to_string(p.m) + ")";
    std::printf("  %-14s %8zu %10.3f %12.3f %7.2fx\n", label.c_str(), ws.size(), t1 - t0,
                t2 - t1, (t1 - t0) / (t2 - t1));
  }

  std::printf("%s with %d threads\n", ok ? "all comparisons equal" : "comparison FAILURES", jobs);
  return ok ? 0 : 1;
}
