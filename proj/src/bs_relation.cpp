#include "bsva/bs_relation.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <unordered_map>

#include "bsva/errors.hpp"

namespace bsva {

namespace {

StepDirection dual(StepDirection d) {
  return d == StepDirection::Forward ? StepDirection::Backward : StepDirection::Forward;
}

BigInt bpow(long long base, long long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), to_bigint(base).get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

long long step_weight(StepDirection d) { return d == StepDirection::Forward ? 1 : -1; }

std::vector<RationalAngle> step_neighbors(const BsParams& p, const RationalAngle& t,
                                          StepDirection d) {
  if (p.n < 1) throw invalid_params("step neighbors need n >= 1");
  const long long num = d == StepDirection::Forward ? p.m : p.n;
  const long long den = d == StepDirection::Forward ? p.n : p.m;
  const long long count = d == StepDirection::Forward ? p.n : p.abs_m();
  const Rational tv = t.value();
  std::vector<RationalAngle> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long j = 0; j < count; ++j)
    out.push_back(RationalAngle::from_rational(
        (Rational(to_bigint(num)) * tv + Rational(to_bigint(j))) / Rational(to_bigint(den))));
  return out;
}

std::vector<ClosureGenerator> relation_generators(const BsParams& p) {
  if (p.n < 1 || p.n > p.abs_m())
    throw invalid_params("orbit generators need 1 <= n <= |m|");
  const Rational slope(to_bigint(p.n), to_bigint(p.m));
  std::vector<ClosureGenerator> gens;
  for (long long j = 0; j < p.abs_m(); ++j)
    gens.push_back({PartialMap::affine(slope, Rational(to_bigint(j), to_bigint(p.m)), Arc::full()),
                    step_weight(StepDirection::Backward), "g" + std::to_string(j)});
  return gens;
}

OrbitGraph orbit(const BsParams& p, const RationalAngle& seed, int depth,
                 const ClosureBudget& budget, int jobs) {
  return closure(seed, relation_generators(p), depth, budget, jobs);
}

std::optional<std::pair<long long, long long>> are_equivalent_def(const BsParams& p,
                                                                  const RationalAngle& y,
                                                                  const RationalAngle& z,
                                                                  long long bound) {
  if (bound < 0) throw invalid_params("witness bound must be >= 0");
  for (long long s = 0; s <= 2 * bound; ++s) {
    for (long long a = std::max(0LL, s - bound); a <= std::min(s, bound); ++a) {
      const long long b = s - a;
      const BigInt e1 = bpow(p.n, a) * bpow(p.m, b);
      const BigInt e2 = bpow(p.m, a) * bpow(p.n, b);
      if (angle_pow(y, e1) == angle_pow(z, e2)) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

FiberCount fiber_count_check(const BsParams& p, const RationalAngle& y) {
  const auto verified_into = [&](StepDirection into) {
    std::vector<RationalAngle> cands = step_neighbors(p, y, dual(into));
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    std::vector<RationalAngle> ok;
    for (const RationalAngle& x : cands) {
      const auto ns = step_neighbors(p, x, into);
      if (std::find(ns.begin(), ns.end(), y) != ns.end()) ok.push_back(x);
    }
    return ok;
  };
  FiberCount fc;
  fc.forward_count = verified_into(StepDirection::Forward).size();
  fc.backward_count = verified_into(StepDirection::Backward).size();
  fc.pair_count = fc.forward_count * fc.backward_count;
  return fc;
}

namespace {

using SkewKey = std::pair<RationalAngle, long long>;

struct SkewKeyHash {
  std::size_t operator()(const SkewKey& k) const {
    return AngleHash{}(k.first) * 1099511628211ULL +
           static_cast<std::size_t>(k.second) * 0x9e3779b97f4a7c15ULL;
  }
};

struct SearchNode {
  SkewKey parent;
  StepDirection dir = StepDirection::Forward;
  int branch = -1;  // -1 marks a search root
  int depth = 0;
};

using StateMap = std::unordered_map<SkewKey, SearchNode, SkewKeyHash>;

}  // namespace

RotationCheck lambda_rotation_check(const BsParams& p, const RationalAngle& y, int k,
                                    int max_steps, std::size_t max_states) {
  if (p.n < 1) throw invalid_params("rotation check needs n >= 1");
  if (k < 1) throw invalid_params("rotation exponent k must be >= 1");
  if (max_steps < 0) throw invalid_params("rotation check needs max_steps >= 0");

  RotationCheck rc;
  rc.start = y;
  const BigInt den = bpow(p.n, k) * bpow(p.abs_m(), k);
  rc.target = angle_add(y, RationalAngle::from_rational(Rational(BigInt(1), den)));
  if (rc.target == y) {
    rc.ok = true;
    rc.length = 0;
    return rc;
  }

  StateMap fwd, bwd;
  const SkewKey froot{y, 0}, broot{rc.target, 0};
  fwd.emplace(froot, SearchNode{froot, StepDirection::Forward, -1, 0});
  bwd.emplace(broot, SearchNode{broot, StepDirection::Forward, -1, 0});
  std::vector<SkewKey> ffront{froot}, bfront{broot};
  int df = 0, db = 0;
  long long best = -1;
  SkewKey meet_f, meet_b;

  const auto try_meet = [&](const SkewKey& s, bool from_forward, int sdepth) {
    const SkewKey want{s.first, -s.second};
    const StateMap& other = from_forward ? bwd : fwd;
    const auto it = other.find(want);
    if (it == other.end()) return;
    const long long total = sdepth + it->second.depth;
    if (best < 0 || total < best) {
      best = total;
      meet_f = from_forward ? s : want;
      meet_b = from_forward ? want : s;
    }
  };

  bool over_budget = false;
  while (!over_budget && !(ffront.empty() && bfront.empty())) {
    const long long horizon = best < 0 ? max_steps : std::min<long long>(best, max_steps);
    if (df + db >= horizon) break;
    const bool expand_fwd = !ffront.empty() && (bfront.empty() || ffront.size() <= bfront.size());
    std::vector<SkewKey>& front = expand_fwd ? ffront : bfront;
    StateMap& map = expand_fwd ? fwd : bwd;
    const int ndepth = (expand_fwd ? df : db) + 1;
    std::vector<SkewKey> next;
    for (const SkewKey& s : front) {
      for (const StepDirection d : {StepDirection::Forward, StepDirection::Backward}) {
        if (over_budget) break;
        if (expand_fwd) {
          const auto ns = step_neighbors(p, s.first, d);
          for (int j = 0; j < static_cast<int>(ns.size()); ++j) {
            const SkewKey t{ns[j], s.second + step_weight(d)};
            if (std::llabs(t.second) > max_steps - ndepth) continue;
            if (map.count(t)) continue;
            if (fwd.size() + bwd.size() >= max_states) {
              over_budget = true;
              break;
            }
            map.emplace(t, SearchNode{s, d, j, ndepth});
            next.push_back(t);
            try_meet(t, true, ndepth);
          }
        } else {
          for (const RationalAngle& x : step_neighbors(p, s.first, dual(d))) {
            const auto fn = step_neighbors(p, x, d);
            for (int j = 0; j < static_cast<int>(fn.size()); ++j) {
              if (!(fn[j] == s.first)) continue;
              const SkewKey t{x, s.second + step_weight(d)};
              if (std::llabs(t.second) > max_steps - ndepth) break;
              if (map.count(t)) break;
              if (fwd.size() + bwd.size() >= max_states) {
                over_budget = true;
                break;
              }
              map.emplace(t, SearchNode{s, d, j, ndepth});
              next.push_back(t);
              try_meet(t, false, ndepth);
              break;
            }
            if (over_budget) break;
          }
        }
      }
      if (over_budget) break;
    }
    front = std::move(next);
    (expand_fwd ? df : db) = ndepth;
  }

  rc.exhausted = !over_budget;
  if (best >= 0 && best <= max_steps) {
    rc.ok = true;
    rc.length = static_cast<int>(best);
    std::vector<RotationStep> steps;
    for (SkewKey cur = meet_f;;) {
      const SearchNode& nd = fwd.at(cur);
      if (nd.branch < 0) break;
      steps.push_back({nd.dir, nd.branch, cur.first});
      cur = nd.parent;
    }
    std::reverse(steps.begin(), steps.end());
    for (SkewKey cur = meet_b;;) {
      const SearchNode& nd = bwd.at(cur);
      if (nd.branch < 0) break;
      steps.push_back({nd.dir, nd.branch, nd.parent.first});
      cur = nd.parent;
    }
    rc.path = std::move(steps);
  }
  return rc;
}

TypeVerdict classify_type(const BsParams& p, const ClassifyOptions& opts) {
  if (p.n < 1 || p.n >= p.abs_m())
    throw invalid_params("type classification needs 1 <= n < |m|");
  if (opts.depth < 1 || opts.orbit_depth < 1 || opts.samples < 1 || opts.k < 1)
    throw invalid_params("type classification needs positive depth, samples and k");

  TypeVerdict v;
  v.n = p.n;
  v.m = p.m;
  v.lambda = Rational(to_bigint(p.n), to_bigint(p.abs_m()));
  if (std::gcd(p.n, p.abs_m()) > 1)
    v.warnings.push_back("n and |m| share a common factor; the modulus ratio was reduced");
  if (p.n < 2) v.warnings.push_back("parameters lie outside the standard range 2 <= n < |m|");

  const OrbitGraph g = orbit(p, RationalAngle(), opts.orbit_depth, default_budget(), opts.jobs);
  if (!g.complete) {
    v.warnings.push_back("orbit budget reached; weight evidence may be partial");
    v.partial = true;
  }
  v.image_units = image_evidence(g);

  v.kernel = {opts.k, opts.samples, opts.depth, 0, -1};
  std::mt19937_64 rng(opts.seed);
  const long long base = p.n * p.abs_m();
  std::uniform_int_distribution<long long> pick(0, base - 1);
  for (int s = 0; s < opts.samples; ++s) {
    const RationalAngle sample =
        RationalAngle::from_rational(Rational(to_bigint(pick(rng)), to_bigint(base)));
    const RotationCheck rc = lambda_rotation_check(p, sample, opts.k, opts.depth);
    if (rc.ok) {
      ++v.kernel.passed;
      v.kernel.max_length = std::max(v.kernel.max_length, static_cast<int>(rc.length));
    }
  }

  const bool image_ok = v.image_units.has_value() && *v.image_units == 1;
  const bool kernel_ok = v.kernel.passed == v.kernel.samples;
  v.verdict = image_ok && kernel_ok ? "III_lambda" : "inconclusive";
  return v;
}

DistinguishResult distinguish(const BsParams& p1, const BsParams& p2) {
  for (const BsParams* p : {&p1, &p2})
    if (p->n < 1 || p->n >= p->abs_m())
      throw invalid_params("distinguishing needs 1 <= n < |m| on both sides");
  DistinguishResult r;
  r.lambda1 = Rational(to_bigint(p1.n), to_bigint(p1.abs_m()));
  r.lambda2 = Rational(to_bigint(p2.n), to_bigint(p2.abs_m()));
  r.separated = !(r.lambda1 == r.lambda2);
  return r;
}

}  // namespace bsva
