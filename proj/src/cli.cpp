#include "sunflower/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sunflower/bounds.hpp"
#include "sunflower/conjectures.hpp"
#include "sunflower/detect.hpp"
#include "sunflower/reduce.hpp"
#include "sunflower/search.hpp"
#include "sunflower/serialize.hpp"

namespace sunflower::cli {

namespace {

struct RunConfig {
  std::string input_path;
  std::string inline_text;
  std::string moduli;
  unsigned k = 0;
  std::uint64_t M = 0;
  unsigned m = 0;
  unsigned t = 3;
  unsigned q = 3;
  unsigned n = 1;
  double tol = 1e-12;
  double alpha = 2.0;
  double constant = 1.0;
  double epsilon = 0.5;
  std::string crt_mode = "formula";
  std::optional<std::uint64_t> seed;
  bool derandomize = false;
  bool allow_empty = false;
  bool canonical = false;
  bool naive = false;
  bool timing = false;
  bool no_anchor = false;
  unsigned threads = 1;
  std::uint64_t budget_nodes = 1'000'000'000;
  std::uint64_t budget_ms = 0;
  std::uint64_t max_points = std::uint64_t{1} << 20;
  std::size_t size = 0;
  std::string out_path;
  std::string json_path;
  std::string csv_path;
  std::string k_range = "1..3";
  std::string m_range = "4..9";
  std::string format = "json";
};

unsigned default_threads() {
  if (const char* env = std::getenv("SUNFLOWER_THREADS")) {
    try {
      const auto v = std::stoul(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

class UsageFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const RunConfig& cfg) {
  const bool has_file = !cfg.input_path.empty();
  const bool has_inline = !cfg.inline_text.empty();
  if (has_file == has_inline) throw UsageFailure("exactly one of --in or --inline is required");
  if (has_inline) {
    std::string text = cfg.inline_text;
    std::replace(text.begin(), text.end(), ';', '\n');
    return text;
  }
  std::ifstream in(cfg.input_path, std::ios::binary);
  if (!in) throw UsageFailure("cannot read " + cfg.input_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ScanRange parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = static_cast<unsigned>(std::stoul(text));
      return {v, v};
    }
    return {static_cast<unsigned>(std::stoul(text.substr(0, dots))),
            static_cast<unsigned>(std::stoul(text.substr(dots + 2)))};
  } catch (const std::exception&) {
    throw UsageFailure("bad range '" + text + "', expected LO..HI");
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageFailure("cannot write " + path);
  out << content;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json labels_of(const SetFamily& f, const ElementSet& s) {
  Json arr = Json::array();
  for (auto e : s) arr.push_back(f.label(e));
  return arr;
}

SearchBudget budget_of(const RunConfig& cfg) {
  SearchBudget b;
  b.max_nodes = cfg.budget_nodes;
  if (cfg.budget_ms > 0) b.time_limit = std::chrono::milliseconds(cfg.budget_ms);
  b.threads = cfg.threads;
  b.max_points = cfg.max_points;
  b.anchor = !cfg.no_anchor;
  return b;
}

// ---------------------------------------------------------------------------

int detect_sets(const RunConfig& cfg, std::ostream& out) {
  const auto f = parse_set_family(read_input(cfg), ParseOptions{cfg.allow_empty});
  std::optional<SunflowerWitness> w;
  if (cfg.t == 3 && !cfg.naive) {
    w = find_sunflower_sets_fast(f);
  } else {
    w = find_sunflower_sets(f, cfg.t);
  }
  Json j = {{"found", w.has_value()}, {"t", cfg.t}, {"family_size", f.size()}, {"M", f.ground_size()}};
  if (w) {
    j["witness"] = w->indices;
    j["kernel"] = labels_of(f, *w->kernel);
    Json members = Json::array();
    for (auto i : w->indices) members.push_back(labels_of(f, f[i]));
    j["members"] = members;
  }
  emit(out, j);
  return kOk;
}

int detect_vectors(const RunConfig& cfg, std::ostream& out) {
  const auto f = parse_vector_family(read_input(cfg), parse_moduli(cfg.moduli));
  const auto w = find_sunflower_vectors(f);
  Json j = {{"found", w.has_value()}, {"family_size", f.size()}};
  if (w) {
    const auto wj = to_json(*w);
    j["witness"] = w->indices;
    j["coords"] = wj.at("coords");
    Json members = Json::array();
    for (auto i : w->indices) members.push_back(f[i]);
    j["members"] = members;
  }
  emit(out, j);
  return kOk;
}

int detect_ap(const RunConfig& cfg, std::ostream& out) {
  const auto moduli = parse_moduli(cfg.moduli);
  const auto f = parse_vector_family(read_input(cfg), moduli);
  const auto ap = find_ap_triple(f);
  Json j = {{"found", ap.has_value()}, {"family_size", f.size()}};
  if (ap) {
    const auto& [a, b, c] = *ap;
    j["witness"] = {a, b, c};
    j["members"] = {f[a], f[b], f[c]};
    const bool sunflower = vectors_form_sunflower(f[a], f[b], f[c]);
    j["is_sunflower"] = sunflower;
    Json coords = Json::array();
    for (auto cc : classify_coordinates(f[a], f[b], f[c])) {
      coords.push_back(cc == CoordinateClass::AllEqual ? "all-equal" : "all-distinct");
    }
    if (sunflower) j["coords"] = coords;
    // Possible only for even moduli: the progression is not a vector sunflower.
    if (!sunflower) j["counterexample"] = true;
  }
  emit(out, j);
  return kOk;
}

void emit_bounds(const RunConfig& cfg, const std::vector<BoundReport>& reports, std::ostream& out) {
  if (cfg.format == "table") {
    std::vector<std::array<std::string, 5>> rows;
    rows.push_back({"bound", "exactness", "value", "radius", "strictness"});
    for (const auto& r : reports) {
      const auto j = to_json(r);
      std::string value = j.at("value").is_string() ? j.at("value").get<std::string>() : j.at("value").dump();
      std::string radius = j.contains("radius") ? j.at("radius").dump() : "0";
      rows.push_back({r.name, r.exactness(), value, radius, j.at("strictness").get<std::string>()});
    }
    std::array<std::size_t, 5> width{};
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows) {
      for (std::size_t c = 0; c + 1 < 5; ++c) out << std::left << std::setw(static_cast<int>(width[c])) << row[c] << "  ";
      out << row[4] << '\n';
    }
    return;
  }
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  emit(out, arr);
}

int bounds_compare(const RunConfig& cfg, std::ostream& out) {
  BoundContext ctx;
  if (!cfg.moduli.empty()) {
    if (cfg.k != 0 || cfg.M != 0) throw UsageFailure("give either --moduli or --k/--M, not both");
    ctx = parse_moduli(cfg.moduli);
  } else if (cfg.k != 0 || cfg.M != 0) {
    if (cfg.k == 0 || cfg.M == 0) throw UsageFailure("--k and --M go together");
    ctx = SetContext{cfg.k, cfg.M};
  } else {
    throw UsageFailure("bounds needs --moduli or --k with --M");
  }
  emit_bounds(cfg, compare_bounds(ctx), out);
  return kOk;
}

int bounds_j(const RunConfig& cfg, std::ostream& out) {
  emit(out, to_json(j_constant(cfg.q, cfg.tol)));
  return kOk;
}

int bounds_single(const RunConfig& cfg, const BoundReport& r, std::ostream& out) {
  emit_bounds(cfg, {r}, out);
  return kOk;
}

BoundReport factor_bound(std::uint64_t q, unsigned n) {
  // Exact s(q, n) when the box is tiny, otherwise the vector bound.
  std::vector<std::uint32_t> d(n, static_cast<std::uint32_t>(q));
  const ModulusVector moduli(d);
  if (moduli.point_count() <= 64) {
    const auto r = max_sunflower_free_vectors(moduli);
    if (r.optimal) return exact_report("search", BigInt(r.maximum), {{"q", std::to_string(q)}});
  }
  if (q > 2) return ns_vector_bound(static_cast<unsigned>(q), n);
  return exact_report("trivial", BigInt(moduli.point_count()), {{"q", std::to_string(q)}});
}

int bounds_crt(const RunConfig& cfg, std::ostream& out) {
  if (cfg.crt_mode == "formula") return bounds_single(cfg, crt_bound_formula(cfg.M, cfg.n), out);
  if (cfg.crt_mode == "recursive") return bounds_single(cfg, crt_bound_recursive(cfg.M, cfg.n, factor_bound), out);
  throw UsageFailure("--mode must be formula or recursive");
}

int reduce_pipeline(const RunConfig& cfg, std::ostream& out) {
  if (cfg.seed && cfg.derandomize) throw UsageFailure("--seed and --derandomize are exclusive");
  const auto f = parse_set_family(read_input(cfg));
  const auto mode = cfg.seed ? EkMode::Seeded : EkMode::Derandomized;
  const auto trace = pipeline(f, mode, cfg.seed.value_or(0));
  const auto j = to_json(trace);
  if (!cfg.json_path.empty()) write_file(cfg.json_path, j.dump(2) + "\n");
  emit(out, j);
  return trace.all_certified() ? kOk : kDomainError;
}

int reduce_embed(const RunConfig& cfg, std::ostream& out) {
  const auto f = parse_vector_family(read_input(cfg), parse_moduli(cfg.moduli));
  emit(out, to_json(embed_vectors_as_sets(f)));
  return kOk;
}

int reduce_crt(const RunConfig& cfg, std::ostream& out) {
  const auto f = parse_vector_family(read_input(cfg), parse_moduli(cfg.moduli));
  emit(out, to_json(crt_map(f)));
  return kOk;
}

Instance instance_of(const RunConfig& cfg) {
  if (!cfg.moduli.empty()) {
    if (cfg.k != 0 || cfg.m != 0) throw UsageFailure("give either --moduli or --k/--m, not both");
    return parse_moduli(cfg.moduli);
  }
  if (cfg.m == 0) throw UsageFailure("need --moduli or --k with --m");
  return UniformInstance{cfg.k, cfg.m};
}

int search_run(const RunConfig& cfg, const Instance& instance, std::ostream& out) {
  const auto r = max_sunflower_free(instance, budget_of(cfg));
  emit(out, to_json(r, instance, cfg.timing));
  return kOk;
}

int search_cnf(const RunConfig& cfg, std::ostream& out) {
  const auto cnf = export_cnf(instance_of(cfg), cfg.size);
  const auto text = to_dimacs(cnf);
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    write_file(cfg.out_path, text);
    emit(out, {{"out", cfg.out_path},
               {"variables", cnf.variables},
               {"clauses", cnf.clauses.size()},
               {"primary_variables", cnf.primary_variables},
               {"sunflower_clauses", cnf.sunflower_clauses},
               {"target", cnf.target}});
  }
  return kOk;
}

int cnf_check(const RunConfig& cfg, std::ostream& out) {
  const auto cnf = parse_dimacs(read_input(cfg));
  const auto model = solve_cnf_by_enumeration(cnf);
  Json j = {{"satisfiable", model.has_value()}, {"primary_variables", cnf.primary_variables},
            {"variables", cnf.variables}, {"clauses", cnf.clauses.size()}};
  if (model) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < model->size(); ++i) {
      if ((*model)[i]) chosen.push_back(i + 1);
    }
    j["true_primary"] = chosen;
  }
  emit(out, j);
  return kOk;
}

int conjecture_scan_cmd(const RunConfig& cfg, std::ostream& out) {
  const auto rows = conjecture_scan(parse_range(cfg.k_range), parse_range(cfg.m_range), budget_of(cfg));
  const auto csv = scan_to_csv(rows);
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, csv);
  if (cfg.format == "csv") {
    out << csv;
  } else {
    Json arr = Json::array();
    for (const auto& r : rows) arr.push_back(to_json(r));
    emit(out, arr);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

void add_input(CLI::App* app, RunConfig& cfg) {
  app->add_option("--in", cfg.input_path, "Input file");
  app->add_option("--inline", cfg.inline_text, "Inline input, ';' separates lines");
}

void add_search_flags(CLI::App* app, RunConfig& cfg) {
  app->add_option("--budget-nodes", cfg.budget_nodes, "Node budget")->check(CLI::PositiveNumber);
  app->add_option("--budget-ms", cfg.budget_ms, "Wall-clock budget in milliseconds (0 = none)");
  app->add_option("--threads", cfg.threads, "Worker threads (default: SUNFLOWER_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  app->add_option("--max-points", cfg.max_points, "Candidate ceiling")->check(CLI::PositiveNumber);
  app->add_flag("--no-anchor", cfg.no_anchor, "Disable the translation/relabeling anchor");
  app->add_flag("--timing", cfg.timing, "Include elapsed_ms (output is then not reproducible)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.threads = default_threads();

  CLI::App app{"Sunflower-free set systems: detection, bounds, reductions and exact search", "sunflower"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sunflower 0.1.0");

  auto* detect = app.add_subcommand("detect", "Find sunflowers in set or vector families");
  detect->require_subcommand(1);
  auto* d_sets = detect->add_subcommand("sets", "t-petal sunflowers in a set family");
  add_input(d_sets, cfg);
  d_sets->add_option("--t", cfg.t, "Petal count")->check(CLI::Range(2u, 64u));
  d_sets->add_flag("--canonical", cfg.canonical, "Lexicographically smallest witness (always on)");
  d_sets->add_flag("--naive", cfg.naive, "Use the naive combination scan for t = 3");
  d_sets->add_flag("--allow-empty", cfg.allow_empty, "Accept '{}' lines as empty members");
  auto* d_vec = detect->add_subcommand("vectors", "3-sunflowers in a vector family");
  add_input(d_vec, cfg);
  d_vec->add_option("--moduli", cfg.moduli, "Comma-separated moduli D_1,...,D_n")->required();
  auto* d_ap = detect->add_subcommand("ap", "Three-term arithmetic progressions in a vector family");
  add_input(d_ap, cfg);
  d_ap->add_option("--moduli", cfg.moduli, "Comma-separated moduli D_1,...,D_n")->required();

  auto* bounds = app.add_subcommand("bounds", "Evaluate the bounds applicable to a context");
  bounds->add_option("--k", cfg.k, "Uniformity k");
  bounds->add_option("--M", cfg.M, "Union size M");
  bounds->add_option("--moduli", cfg.moduli, "Comma-separated moduli");
  bounds->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  auto* b_j = bounds->add_subcommand("j", "The constant J(q)");
  b_j->add_option("--q", cfg.q, "q >= 2")->check(CLI::Range(2u, 1u << 24));
  b_j->add_option("--tol", cfg.tol, "Tolerance in x (>= 1e-12)");
  auto* b_er = bounds->add_subcommand("erdos-rado", "Erdos-Rado threshold");
  b_er->add_option("--k", cfg.k, "Uniformity k")->required();
  b_er->add_option("--t", cfg.t, "Petal count t")->default_val(3);
  auto* b_ko = bounds->add_subcommand("kostochka", "Kostochka-type threshold up to its constant");
  b_ko->add_option("--k", cfg.k, "Uniformity k >= 16")->required();
  b_ko->add_option("--t", cfg.t, "Petal count t > 2")->default_val(3);
  b_ko->add_option("--alpha", cfg.alpha, "alpha > 1");
  b_ko->add_option("--constant", cfg.constant, "Value used for the unspecified constant");
  auto* b_main = bounds->add_subcommand("main", "Uniform sunflower-free bound in k and M");
  b_main->add_option("--k", cfg.k, "Uniformity k")->required();
  b_main->add_option("--M", cfg.M, "Union size M")->required();
  auto* b_cor = bounds->add_subcommand("corollary", "Bound under |union| <= k^(2.5 - eps)");
  b_cor->add_option("--k", cfg.k, "Uniformity k")->required();
  b_cor->add_option("--epsilon", cfg.epsilon, "0 < eps < 1.5")->required();
  auto* b_crt = bounds->add_subcommand("crt", "Product bound over the prime-power factors of m");
  b_crt->add_option("--m", cfg.M, "Modulus m >= 2")->required();
  b_crt->add_option("--n", cfg.n, "Dimension n")->default_val(1);
  b_crt->add_option("--mode", cfg.crt_mode, "formula or recursive");
  for (auto* sub : {b_j, b_er, b_ko, b_main, b_cor, b_crt}) {
    sub->add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  }

  auto* reduce = app.add_subcommand("reduce", "Constructive reductions");
  reduce->require_subcommand(1);
  auto* r_pipe = reduce->add_subcommand("pipeline", "Certified partite reduction of a uniform family");
  add_input(r_pipe, cfg);
  r_pipe->add_option("--seed", cfg.seed, "Seeded random class assignment");
  r_pipe->add_flag("--derandomize", cfg.derandomize, "Conditional-expectation class assignment (default)");
  r_pipe->add_option("--json", cfg.json_path, "Also write the trace to this file");
  auto* r_embed = reduce->add_subcommand("embed", "Vector family to n-uniform set family");
  add_input(r_embed, cfg);
  r_embed->add_option("--moduli", cfg.moduli, "Comma-separated moduli")->required();
  auto* r_crt = reduce->add_subcommand("crt", "Split coordinates by prime-power residues");
  add_input(r_crt, cfg);
  r_crt->add_option("--moduli", cfg.moduli, "Comma-separated moduli")->required();

  auto* search = app.add_subcommand("search", "Exact maximum sunflower-free families");
  search->require_subcommand(1);
  auto* s_vec = search->add_subcommand("vectors", "Maximum over Z_D1 x ... x Z_Dn");
  s_vec->add_option("--moduli", cfg.moduli, "Comma-separated moduli")->required();
  add_search_flags(s_vec, cfg);
  auto* s_uni = search->add_subcommand("uniform", "Maximum k-uniform family on [m]");
  s_uni->add_option("--k", cfg.k, "Uniformity k")->required();
  s_uni->add_option("--m", cfg.m, "Ground size m <= 64")->required();
  add_search_flags(s_uni, cfg);
  auto* s_cnf = search->add_subcommand("cnf", "Export a DIMACS instance for size >= s");
  s_cnf->add_option("--moduli", cfg.moduli, "Comma-separated moduli");
  s_cnf->add_option("--k", cfg.k, "Uniformity k");
  s_cnf->add_option("--m", cfg.m, "Ground size m");
  s_cnf->add_option("--size", cfg.size, "Target family size s")->required();
  s_cnf->add_option("--out", cfg.out_path, "Output path (stdout if omitted)");

  auto* conj = app.add_subcommand("conjecture", "Desk-scale evidence for the union conjectures");
  conj->require_subcommand(1);
  auto* c_scan = conj->add_subcommand("scan", "Maximum union and cover counts over (k, m)");
  c_scan->add_option("--k", cfg.k_range, "Range LO..HI");
  c_scan->add_option("--m", cfg.m_range, "Range LO..HI");
  c_scan->add_option("--csv", cfg.csv_path, "Also write CSV to this file");
  c_scan->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_search_flags(c_scan, cfg);

  auto* cnf = app.add_subcommand("cnf", "DIMACS utilities");
  cnf->require_subcommand(1);
  auto* cnf_chk = cnf->add_subcommand("check", "Decide a small exported instance by enumeration");
  add_input(cnf_chk, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (d_sets->parsed()) return detect_sets(cfg, out);
    if (d_vec->parsed()) return detect_vectors(cfg, out);
    if (d_ap->parsed()) return detect_ap(cfg, out);
    if (b_j->parsed()) return bounds_j(cfg, out);
    if (b_er->parsed()) {
      BoundReport r;
      r.name = "erdos_rado";
      r.parameters = {{"k", std::to_string(cfg.k)}, {"t", std::to_string(cfg.t)}};
      r.value = erdos_rado_threshold(cfg.k, cfg.t);
      r.strictness = Strictness::ExceedingForcesSunflower;
      return bounds_single(cfg, r, out);
    }
    if (b_ko->parsed()) return bounds_single(cfg, kostochka_value(cfg.k, cfg.t, cfg.alpha, cfg.constant), out);
    if (b_main->parsed()) return bounds_single(cfg, main_bound(cfg.k, cfg.M), out);
    if (b_cor->parsed()) return bounds_single(cfg, corollary_bound(cfg.k, cfg.epsilon), out);
    if (b_crt->parsed()) return bounds_crt(cfg, out);
    if (bounds->parsed()) return bounds_compare(cfg, out);
    if (r_pipe->parsed()) return reduce_pipeline(cfg, out);
    if (r_embed->parsed()) return reduce_embed(cfg, out);
    if (r_crt->parsed()) return reduce_crt(cfg, out);
    if (s_vec->parsed()) return search_run(cfg, parse_moduli(cfg.moduli), out);
    if (s_uni->parsed()) return search_run(cfg, UniformInstance{cfg.k, cfg.m}, out);
    if (s_cnf->parsed()) return search_cnf(cfg, out);
    if (c_scan->parsed()) return conjecture_scan_cmd(cfg, out);
    if (cnf_chk->parsed()) return cnf_check(cfg, out);
  } catch (const UsageFailure& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SunflowerFound& e) {
    Json j = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}, {"witness", to_json(e.witness())}};
    emit(out, j);
    err << e.what() << '\n';
    return kDomainError;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UsageError) {
      err << "usage error: " << e.what() << '\n';
      return kUsageError;
    }
    emit(out, {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}});
    err << e.what() << '\n';
    return kDomainError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace sunflower::cli
