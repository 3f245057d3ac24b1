#include "bsva/cli.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bsva/bs_relation.hpp"
#include "bsva/errors.hpp"
#include "bsva/maharam.hpp"
#include "bsva/orbit_graph.hpp"
#include "bsva/words.hpp"
#include "json.hpp"

namespace bsva::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kSchema = "bsva/1";

// Shared flag storage; each leaf subcommand binds the options it uses.
struct Opts {
  long long n = 0;
  long long m = 0;
  long long n2 = 0;
  long long m2 = 0;
  std::string word;
  std::string lhs;
  std::string rhs;
  std::string angle = "0";
  std::string y;
  std::string z;
  std::string strategy = "leftmost";
  std::string dir = "both";
  int depth = 4;
  int type_depth = 8;
  int orbit_depth = 4;
  long long bound = 8;
  int samples = 50;
  int k = 1;
  int jobs = 1;
  int max_len = 5;
  int max_steps = 8;
  long long level = 0;
  std::uint64_t seed = 0;
  std::size_t max_nodes = 0;
  std::size_t max_states = 1000000;
  bool text = false;
  bool markdown = false;
  std::vector<std::string> pairs{"2,3", "2,5", "3,5"};
};

void emit(std::ostream& out, const ojson& j) { out << j.dump(2) << "\n"; }

ClosureBudget make_budget(const Opts& o) {
  ClosureBudget b = default_budget();
  if (o.max_nodes > 0) {
    b.max_nodes = o.max_nodes;
    b.max_edges = o.max_nodes * 4;
  }
  return b;
}

PinchStrategy parse_strategy(const std::string& s) {
  if (s == "leftmost") return PinchStrategy::Leftmost;
  if (s == "rightmost") return PinchStrategy::Rightmost;
  throw invalid_params("unknown strategy '" + s + "' (use leftmost or rightmost)");
}

BsParams parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw invalid_params("pair must look like n,m: '" + s + "'");
  std::size_t pos = 0;
  long long n = 0, m = 0;
  try {
    n = std::stoll(s.substr(0, comma), &pos);
    if (pos != comma) throw invalid_params("bad pair '" + s + "'");
    m = std::stoll(s.substr(comma + 1), &pos);
    if (comma + 1 + pos != s.size()) throw invalid_params("bad pair '" + s + "'");
  } catch (const std::logic_error&) {
    throw invalid_params("bad pair '" + s + "'");
  }
  return BsParams(n, m);
}

std::string pair_label(const BsParams& p) {
  return "(" + std::to_string(p.n) + "," + std::to_string(p.m) + ")";
}

std::string dir_name(StepDirection d) { return d == StepDirection::Forward ? "F" : "B"; }

ojson angle_array(const std::vector<RationalAngle>& v) {
  ojson a = ojson::array();
  for (const RationalAngle& t : v) a.push_back(t.str());
  return a;
}

ojson opt_ll(const std::optional<long long>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::size_t count_b_letters(const Word& w) {
  std::size_t c = 0;
  for (const Letter& l : w.letters())
    if (l.kind == Letter::B) ++c;
  return c;
}

ojson kernel_json(const KernelCheck& kc) {
  return ojson{{"k", kc.k}, {"samples", kc.samples}, {"depth", kc.depth}, {"passed", kc.passed}};
}

ojson verdict_json(const TypeVerdict& v) {
  ojson j;
  j["schema"] = kSchema;
  j["n"] = v.n;
  j["m"] = v.m;
  j["lambda"] = v.lambda.str();
  j["verdict"] = v.verdict;
  j["image_units"] = opt_ll(v.image_units);
  j["kernel"] = kernel_json(v.kernel);
  j["warnings"] = v.warnings;
  j["partial"] = v.partial;
  return j;
}

void run_word_reduce(const Opts& o, std::ostream& out) {
  const BsParams p(o.n, o.m);
  const Word w = Word::parse(o.word);
  const Word r = britton_reduce(p, w, parse_strategy(o.strategy));
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["word"] = o.word;
  j["strategy"] = o.strategy;
  j["reduced"] = r.str();
  j["b_length"] = count_b_letters(r);
  emit(out, j);
}

void run_word_nf(const Opts& o, std::ostream& out) {
  const BsParams p(o.n, o.m);
  const NormalForm nf = normal_form(p, Word::parse(o.word));
  ojson syls = ojson::array();
  for (const Syllable& s : nf.syllables)
    syls.push_back(ojson{{"eps", s.eps}, {"r", s.r.get_str()}});
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["word"] = o.word;
  j["z"] = nf.z.get_str();
  j["syllables"] = syls;
  j["normal"] = nf.str();
  j["is_identity"] = nf.is_identity();
  emit(out, j);
}

void run_word_eq(const Opts& o, std::ostream& out) {
  const BsParams p(o.n, o.m);
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["lhs"] = o.lhs;
  j["rhs"] = o.rhs;
  j["equal"] = words_equal(p, Word::parse(o.lhs), Word::parse(o.rhs));
  emit(out, j);
}

void run_word_conj_count(const Opts& o, std::ostream& out) {
  const BsParams p(o.n, o.m);
  if (o.max_len < 1) throw invalid_params("--max-len must be at least 1");
  const Word gamma = Word::parse(o.word);
  ojson counts = ojson::array();
  for (int len = 1; len <= o.max_len; ++len) counts.push_back(conjugate_count(p, gamma, len));
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["gamma"] = o.word;
  j["max_len"] = o.max_len;
  j["counts"] = counts;
  emit(out, j);
}

void run_rel_neighbors(const Opts& o, std::ostream& out) {
  const BsParams p(o.n, o.m);
  if (o.dir != "both" && o.dir != "forward" && o.dir != "backward")
    throw invalid_params("--dir must be both, forward or backward");
  const RationalAngle t = RationalAngle::parse(o.angle);
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["angle"] = t.str();
  if (o.dir != "backward")
    j["forward"] = angle_array(step_neighbors(p, t, StepDirection::Forward));
  if (o.dir != "forward")
    j["backward"] = angle_array(step_neighbors(p, t, StepDirection::Backward));
  emit(out, j);
}

int run_rel_orbit(const Opts& o, std::ostream& out, std::ostream& err) {
  const BsParams p(o.n, o.m);
  const RationalAngle seed = RationalAngle::parse(o.angle);
  const OrbitGraph g = orbit(p, seed, o.depth, make_budget(o), o.jobs);
  if (o.text) {
    out << g.export_text();
    if (!g.complete) err << "node budget reached; output is partial\n";
    return g.complete ? 0 : 3;
  }
  const WeightedClassification cls = classify_components(g);
  ojson nodes = ojson::array();
  for (const RationalAngle& t : g.nodes) nodes.push_back(t.str());
  ojson edges = ojson::array();
  for (const OrbitEdge& e : g.edges)
    edges.push_back(ojson{{"src", g.nodes[e.src].str()},
                          {"dst", g.nodes[e.dst].str()},
                          {"label", g.edge_label(e)},
                          {"weight", e.weight}});
  ojson anomalous = ojson::array();
  for (int v : cls.anomalous) anomalous.push_back(g.nodes[v].str());
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["angle"] = seed.str();
  j["depth"] = o.depth;
  j["complete"] = g.complete;
  j["partial"] = !g.complete;
  j["node_count"] = g.nodes.size();
  j["edge_count"] = g.edges.size();
  j["nodes"] = nodes;
  j["edges"] = edges;
  j["components"] = cls.component_count;
  j["anomalous"] = anomalous;
  j["image_units"] = opt_ll(image_evidence(g));
  emit(out, j);
  if (!g.complete) err << "node budget reached; output is partial\n";
  return g.complete ? 0 : 3;
}

void run_rel_equiv(const Opts& o, std::ostream& out) {
  const BsParams p(o.n, o.m);
  const RationalAngle y = RationalAngle::parse(o.y);
  const RationalAngle z = RationalAngle::parse(o.z);
  const auto witness = are_equivalent_def(p, y, z, o.bound);
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["y"] = y.str();
  j["z"] = z.str();
  j["bound"] = o.bound;
  j["related"] = witness.has_value();
  j["witness"] = witness ? ojson{witness->first, witness->second} : ojson(nullptr);
  emit(out, j);
}

int run_rel_rotation_check(const Opts& o, std::ostream& out, std::ostream& err) {
  const BsParams p(o.n, o.m);
  const RationalAngle y = RationalAngle::parse(o.angle);
  const RotationCheck rc = lambda_rotation_check(p, y, o.k, o.max_steps, o.max_states);
  const bool partial = !rc.ok && !rc.exhausted;
  ojson path = ojson::array();
  for (const RotationStep& s : rc.path)
    path.push_back(ojson{{"dir", dir_name(s.dir)}, {"branch", s.branch}, {"to", s.to.str()}});
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["angle"] = rc.start.str();
  j["k"] = o.k;
  j["max_steps"] = o.max_steps;
  j["target"] = rc.target.str();
  j["ok"] = rc.ok;
  j["length"] = rc.length;
  j["exhausted"] = rc.exhausted;
  j["partial"] = partial;
  j["path"] = path;
  emit(out, j);
  if (partial) err << "state budget reached before the search space was exhausted\n";
  return partial ? 3 : 0;
}

void run_rel_fibers(const Opts& o, std::ostream& out) {
  const BsParams p(o.n, o.m);
  const RationalAngle t = RationalAngle::parse(o.angle);
  const FiberCount f = fiber_count_check(p, t);
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["angle"] = t.str();
  j["forward_count"] = f.forward_count;
  j["backward_count"] = f.backward_count;
  j["pair_count"] = f.pair_count;
  emit(out, j);
}

int run_type(const Opts& o, std::ostream& out, std::ostream& err) {
  const BsParams p(o.n, o.m);
  ClassifyOptions co;
  co.depth = o.type_depth;
  co.orbit_depth = o.orbit_depth;
  co.samples = o.samples;
  co.k = o.k;
  co.seed = o.seed;
  co.jobs = o.jobs;
  const TypeVerdict v = classify_type(p, co);
  emit(out, verdict_json(v));
  if (v.partial) err << "orbit budget reached; verdict evidence is partial\n";
  return v.partial ? 3 : 0;
}

void run_distinguish(const Opts& o, std::ostream& out) {
  const DistinguishResult r = distinguish(BsParams(o.n, o.m), BsParams(o.n2, o.m2));
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["n2"] = o.n2;
  j["m2"] = o.m2;
  j["lambda1"] = r.lambda1.str();
  j["lambda2"] = r.lambda2.str();
  j["separated"] = r.separated;
  emit(out, j);
}

int run_maharam_orbit(const Opts& o, std::ostream& out, std::ostream& err) {
  const BsParams p(o.n, o.m);
  const SkewNode seed{RationalAngle::parse(o.angle), o.level};
  const SkewOrbitGraph g = skew_orbit(p, seed, o.depth, make_budget(o), o.jobs);
  if (o.text) {
    out << g.export_text();
    if (!g.complete) err << "node budget reached; output is partial\n";
    return g.complete ? 0 : 3;
  }
  ojson nodes = ojson::array();
  for (const SkewNode& s : g.nodes) nodes.push_back(s.str());
  ojson edges = ojson::array();
  for (const SkewEdge& e : g.edges)
    edges.push_back(ojson{{"src", g.nodes[e.src].str()},
                          {"dst", g.nodes[e.dst].str()},
                          {"label", g.edge_label(e)},
                          {"shift", e.shift}});
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["angle"] = seed.angle.str();
  j["level"] = o.level;
  j["depth"] = o.depth;
  j["complete"] = g.complete;
  j["partial"] = !g.complete;
  j["node_count"] = g.nodes.size();
  j["edge_count"] = g.edges.size();
  j["nodes"] = nodes;
  j["edges"] = edges;
  emit(out, j);
  if (!g.complete) err << "node budget reached; output is partial\n";
  return g.complete ? 0 : 3;
}

void run_maharam_levels(const Opts& o, std::ostream& out) {
  const BsParams p(o.n, o.m);
  const RationalAngle base = RationalAngle::parse(o.angle);
  ojson j;
  j["schema"] = kSchema;
  j["n"] = o.n;
  j["m"] = o.m;
  j["angle"] = base.str();
  j["depth"] = o.depth;
  j["subgroup"] = level_return_subgroup(p, base, o.depth, make_budget(o));
  emit(out, j);
}

struct ReportRow {
  BsParams p;
  TypeVerdict v;
  FiberCount f;
};

std::string md_cell(const std::string& s) {
  std::string r;
  for (char c : s) {
    if (c == '|') r += '\\';
    r += c;
  }
  return r;
}

void render_report_markdown(std::ostream& out, const std::vector<ReportRow>& rows,
                            const std::vector<std::vector<bool>>& sep) {
  out << "# Type verdicts\n\n";
  out << "| n | m | lambda | verdict | image_units | kernel | rotation_depth | warnings |\n";
  out << "|--:|--:|:-------|:--------|:------------|:-------|:---------------|:---------|\n";
  for (const ReportRow& r : rows) {
    std::string verdict = r.v.verdict;
    if (r.v.partial) verdict += " (partial)";
    std::string warnings;
    for (const std::string& w : r.v.warnings) {
      if (!warnings.empty()) warnings += "; ";
      warnings += md_cell(w);
    }
    out << "| " << r.p.n << " | " << r.p.m << " | " << r.v.lambda.str() << " | " << verdict
        << " | " << (r.v.image_units ? std::to_string(*r.v.image_units) : std::string("none"))
        << " | " << r.v.kernel.passed << "/" << r.v.kernel.samples << " | "
        << (r.v.kernel.max_length >= 0 ? std::to_string(r.v.kernel.max_length)
                                       : std::string("none"))
        << " | " << warnings << " |\n";
  }
  out << "\n# Separation matrix\n\n|  |";
  for (const ReportRow& r : rows) out << " " << pair_label(r.p) << " |";
  out << "\n|:-|";
  for (std::size_t i = 0; i < rows.size(); ++i) out << ":-:|";
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << "| " << pair_label(rows[i].p) << " |";
    for (std::size_t j = 0; j < rows.size(); ++j)
      out << " " << (sep[i][j] ? "separated" : "not separated") << " |";
    out << "\n";
  }
  out << "\n# Fiber counts at angle 0\n\n";
  out << "| n | m | forward_count | backward_count | pair_count |\n";
  out << "|--:|--:|--------------:|---------------:|-----------:|\n";
  for (const ReportRow& r : rows)
    out << "| " << r.p.n << " | " << r.p.m << " | " << r.f.forward_count << " | "
        << r.f.backward_count << " | " << r.f.pair_count << " |\n";
}

int run_report(const Opts& o, std::ostream& out, std::ostream& err) {
  std::vector<BsParams> ps;
  for (const std::string& s : o.pairs) ps.push_back(parse_pair(s));
  ClassifyOptions co;
  co.depth = o.type_depth;
  co.orbit_depth = o.orbit_depth;
  co.samples = o.samples;
  co.k = o.k;
  co.seed = o.seed;
  co.jobs = o.jobs;

  std::vector<ReportRow> rows;
  for (const BsParams& p : ps)
    rows.push_back({p, classify_type(p, co), fiber_count_check(p, RationalAngle())});

  std::vector<std::vector<bool>> sep(ps.size(), std::vector<bool>(ps.size(), false));
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = 0; j < ps.size(); ++j)
      sep[i][j] = i != j && distinguish(ps[i], ps[j]).separated;

  bool any_partial = false;
  for (const ReportRow& r : rows) any_partial = any_partial || r.v.partial;

  if (o.markdown) {
    render_report_markdown(out, rows, sep);
  } else {
    ojson params = ojson::array();
    for (const ReportRow& r : rows) {
      ojson row;
      row["n"] = r.p.n;
      row["m"] = r.p.m;
      row["lambda"] = r.v.lambda.str();
      row["verdict"] = r.v.verdict;
      row["image_units"] = opt_ll(r.v.image_units);
      row["kernel"] = kernel_json(r.v.kernel);
      row["rotation_depth"] =
          r.v.kernel.max_length >= 0 ? ojson(r.v.kernel.max_length) : ojson(nullptr);
      row["fibers"] = ojson{{"forward_count", r.f.forward_count},
                            {"backward_count", r.f.backward_count},
                            {"pair_count", r.f.pair_count}};
      row["warnings"] = r.v.warnings;
      row["partial"] = r.v.partial;
      params.push_back(row);
    }
    ojson labels = ojson::array();
    for (const BsParams& p : ps) labels.push_back(pair_label(p));
    ojson matrix = ojson::array();
    for (std::size_t i = 0; i < ps.size(); ++i) {
      ojson mrow = ojson::array();
      for (std::size_t j = 0; j < ps.size(); ++j) mrow.push_back(sep[i][j]);
      matrix.push_back(mrow);
    }
    ojson j;
    j["schema"] = kSchema;
    j["params"] = params;
    j["separation"] = ojson{{"labels", labels}, {"matrix", matrix}};
    j["partial"] = any_partial;
    emit(out, j);
  }
  if (any_partial) err << "orbit budget reached; some report cells are partial\n";
  return any_partial ? 3 : 0;
}

void add_group_params(CLI::App* cmd, Opts& o) {
  cmd->add_option("--n", o.n, "exponent inside the conjugation")->required();
  cmd->add_option("--m", o.m, "exponent on the right-hand side")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Opts o;
  int rc = 0;

  CLI::App app{"Exact toolkit for Baumslag-Solitar circle relations", "bsva"};
  app.require_subcommand(1);

  CLI::App* word = app.add_subcommand("word", "group words and normal forms");
  word->require_subcommand(1);

  CLI::App* reduce = word->add_subcommand("reduce", "Britton-reduce a word");
  add_group_params(reduce, o);
  reduce->add_option("--strategy", o.strategy, "pinch order: leftmost or rightmost");
  reduce->add_option("word", o.word, "word over a, A, b, B with optional ^<int>")->required();
  reduce->callback([&] { run_word_reduce(o, out); });

  CLI::App* nf = word->add_subcommand("nf", "canonical normal form of a word");
  add_group_params(nf, o);
  nf->add_option("word", o.word, "word to normalize")->required();
  nf->callback([&] { run_word_nf(o, out); });

  CLI::App* eq = word->add_subcommand("eq", "decide equality of two words");
  add_group_params(eq, o);
  eq->add_option("lhs", o.lhs, "left word")->required();
  eq->add_option("rhs", o.rhs, "right word")->required();
  eq->callback([&] { run_word_eq(o, out); });

  CLI::App* conj = word->add_subcommand("conj-count", "distinct short conjugates of a word");
  add_group_params(conj, o);
  conj->add_option("--max-len", o.max_len, "largest conjugator length");
  conj->add_option("gamma", o.word, "word to conjugate")->required();
  conj->callback([&] { run_word_conj_count(o, out); });

  CLI::App* rel = app.add_subcommand("rel", "the circle relation and its orbits");
  rel->require_subcommand(1);

  CLI::App* neighbors = rel->add_subcommand("neighbors", "one-step neighbors of an angle");
  add_group_params(neighbors, o);
  neighbors->add_option("--angle", o.angle, "rational angle p/q")->required();
  neighbors->add_option("--dir", o.dir, "both, forward or backward");
  neighbors->callback([&] { run_rel_neighbors(o, out); });

  CLI::App* orbit_cmd = rel->add_subcommand("orbit", "breadth-first orbit closure");
  add_group_params(orbit_cmd, o);
  orbit_cmd->add_option("--angle", o.angle, "seed angle p/q");
  orbit_cmd->add_option("--depth", o.depth, "closure depth");
  orbit_cmd->add_option("--jobs", o.jobs, "worker threads (0 = runtime pick)");
  orbit_cmd->add_option("--max-nodes", o.max_nodes, "node budget override");
  orbit_cmd->add_flag("--text", o.text, "emit the sorted text export instead of JSON");
  orbit_cmd->callback([&] { rc = run_rel_orbit(o, out, err); });

  CLI::App* equiv = rel->add_subcommand("equiv", "search for an equivalence witness");
  add_group_params(equiv, o);
  equiv->add_option("--y", o.y, "first angle")->required();
  equiv->add_option("--z", o.z, "second angle")->required();
  equiv->add_option("--bound", o.bound, "largest exponent tried");
  equiv->callback([&] { run_rel_equiv(o, out); });

  CLI::App* rot = rel->add_subcommand("rotation-check", "zero-weight path to a rotated angle");
  add_group_params(rot, o);
  rot->add_option("--angle", o.angle, "base angle p/q");
  rot->add_option("--k", o.k, "rotation exponent: target is angle + 1/(n|m|)^k");
  rot->add_option("--max-steps", o.max_steps, "path length budget");
  rot->add_option("--max-states", o.max_states, "search state budget");
  rot->callback([&] { rc = run_rel_rotation_check(o, out, err); });

  CLI::App* fibers = rel->add_subcommand("fibers", "verified step-fiber sizes at an angle");
  add_group_params(fibers, o);
  fibers->add_option("--angle", o.angle, "angle p/q")->required();
  fibers->callback([&] { run_rel_fibers(o, out); });

  CLI::App* type_cmd = app.add_subcommand("type", "orbit-weight and rotation-kernel verdict");
  add_group_params(type_cmd, o);
  type_cmd->add_option("--depth", o.type_depth, "rotation path-length budget");
  type_cmd->add_option("--orbit-depth", o.orbit_depth, "closure depth for weight evidence");
  type_cmd->add_option("--samples", o.samples, "rotation sample count");
  type_cmd->add_option("--k", o.k, "rotation exponent");
  type_cmd->add_option("--seed", o.seed, "sampling seed");
  type_cmd->add_option("--jobs", o.jobs, "worker threads (0 = runtime pick)");
  type_cmd->callback([&] { rc = run_type(o, out, err); });

  CLI::App* dist = app.add_subcommand("distinguish", "compare the modulus ratios of two pairs");
  add_group_params(dist, o);
  dist->add_option("--n2", o.n2, "second pair n")->required();
  dist->add_option("--m2", o.m2, "second pair m")->required();
  dist->callback([&] { run_distinguish(o, out); });

  CLI::App* maharam = app.add_subcommand("maharam", "level-extended orbits");
  maharam->require_subcommand(1);

  CLI::App* skew = maharam->add_subcommand("orbit", "closure of (angle, level) states");
  add_group_params(skew, o);
  skew->add_option("--angle", o.angle, "seed angle p/q");
  skew->add_option("--level", o.level, "seed level");
  skew->add_option("--depth", o.depth, "closure depth");
  skew->add_option("--jobs", o.jobs, "worker threads (0 = runtime pick)");
  skew->add_option("--max-nodes", o.max_nodes, "node budget override");
  skew->add_flag("--text", o.text, "emit the sorted text export instead of JSON");
  skew->callback([&] { rc = run_maharam_orbit(o, out, err); });

  CLI::App* levels = maharam->add_subcommand("levels", "gcd of return levels at a base angle");
  add_group_params(levels, o);
  levels->add_option("--angle", o.angle, "base angle p/q");
  levels->add_option("--depth", o.depth, "closure depth");
  levels->add_option("--max-nodes", o.max_nodes, "node budget override");
  levels->callback([&] { run_maharam_levels(o, out); });

  CLI::App* report = app.add_subcommand("report", "verdict, separation and fiber tables");
  report->add_option("--pair", o.pairs, "parameter pair n,m (repeatable)");
  report->add_option("--depth", o.type_depth, "rotation path-length budget");
  report->add_option("--orbit-depth", o.orbit_depth, "closure depth for weight evidence");
  report->add_option("--samples", o.samples, "rotation sample count");
  report->add_option("--k", o.k, "rotation exponent");
  report->add_option("--seed", o.seed, "sampling seed");
  report->add_option("--jobs", o.jobs, "worker threads (0 = runtime pick)");
  report->add_flag("--markdown", o.markdown, "render markdown instead of JSON");
  report->callback([&] { rc = run_report(o, out, err); });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("bsva");
  for (const std::string& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const invalid_params& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const gluing_conflict& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

}  // namespace bsva::cli
