#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "amplex/ampleness.hpp"
#include "amplex/constructions.hpp"
#include "amplex/disc.hpp"
#include "amplex/error.hpp"
#include "amplex/experiments.hpp"
#include "amplex/homology.hpp"
#include "amplex/io.hpp"
#include "amplex/tc.hpp"

namespace amplex::cli {

namespace {

using nlohmann::json;

struct Common {
  std::uint64_t seed = 1;
  std::string format = "structured";
  std::string config;
  std::string output;
  unsigned threads = 1;
  bool force = false;
  bool pretty = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, sep);) out.push_back(tok);
  return out;
}

std::uint64_t num(const std::string& s) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidParameters, "not a number: " + s);
  }
}

json complex_json(const SimplicialComplex& x) { return json::parse(io::to_structured(x)); }

json complex_summary(const SimplicialComplex& x) {
  return {{"vertices", x.vertex_count()}, {"dim", x.dim()}, {"f_vector", x.f_vector()},
          {"euler_characteristic", x.euler_characteristic()}};
}

/// Builtin names or a file path.
SimplicialComplex load_complex(const std::string& spec, std::size_t tower_budget) {
  const auto parts = split(spec, ':');
  const auto& head = parts.empty() ? spec : parts[0];
  auto arg = [&](std::size_t i, std::uint64_t dflt) { return i < parts.size() ? num(parts[i]) : dflt; };
  if (head == "example13") return example_thirteen();
  if (head == "octahedron") return sphere_join(3);
  if (head == "sphere") return sphere_join(arg(1, 1));
  if (head == "simplex") return full_simplex(static_cast<std::size_t>(arg(1, 3)));
  if (head == "cycle") return cycle_graph(static_cast<std::size_t>(arg(1, 4)));
  if (head == "paley") {
    if (parts.size() < 3) throw Error(ErrorKind::InvalidParameters, "paley:Q:P[:MAXDIM]");
    return paley_complex(PrimeFieldSpec{arg(1, 0), arg(2, 0), std::nullopt}, static_cast<int>(arg(3, 2)));
  }
  if (head == "medial") return medial_sample(static_cast<std::size_t>(arg(1, 16)), arg(2, 1)).complex;
  if (head == "rado") {
    auto t = rado_tower(static_cast<int>(arg(1, 2)), tower_budget);
    if (!t.complete) throw Error(ErrorKind::ResourceLimit, "rado tower exceeded the vertex budget");
    return t.stages.back().complex;
  }
  if (head == "sphere-tower") {
    auto t = barmak_tower(static_cast<int>(arg(1, 1)), static_cast<int>(arg(2, 1)), tower_budget);
    if (!t.complete) throw Error(ErrorKind::ResourceLimit, "sphere tower exceeded the vertex budget");
    return t.stages.back().complex;
  }
  std::ifstream probe(spec);
  if (!probe) throw Error(ErrorKind::InvalidInput, "unknown complex (not a builtin or readable file): " + spec);
  return io::read_file(spec);
}

std::vector<Vertex> parse_vertices(const std::string& s) {
  std::vector<Vertex> out;
  for (const auto& tok : split(s, ','))
    if (!tok.empty()) out.push_back(static_cast<Vertex>(num(tok)));
  return out;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const auto up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] != b[j - 1])});
      diag = up;
    }
  }
  return row[b.size()];
}

// Closest long flag or subcommand name, if any is near enough.
std::optional<std::string> suggestion(const CLI::App& app, const std::string& word) {
  std::vector<std::string> names;
  auto collect = [&](const CLI::App& a) {
    for (const auto* o : a.get_options())
      for (const auto& l : o->get_lnames()) names.push_back("--" + l);
  };
  collect(app);
  for (const auto* sub : app.get_subcommands({})) {
    names.push_back(sub->get_name());
    collect(*sub);
  }
  std::optional<std::string> best;
  std::size_t best_d = 3;
  for (const auto& n : names) {
    const auto d = edit_distance(word, n);
    if (d < best_d) best_d = d, best = n;
  }
  return best;
}

class Runner {
 public:
  Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args);

 private:
  void emit(const json& j) { out_ << (c_.pretty ? j.dump(2) : j.dump()) << '\n'; }
  json base_config() const {
    return {{"seed", c_.seed}, {"format", c_.format}, {"threads", c_.threads}, {"force", c_.force},
            {"output", c_.output}, {"config", c_.config}};
  }
  AmpleOptions ample_opts(int r_cap) const {
    AmpleOptions o;
    o.r_cap = r_cap;
    o.force = c_.force;
    o.threads = c_.threads;
    return o;
  }
  std::size_t budget() const {
    if (tower_budget_ > kDefaultTowerBudget && !c_.force)
      throw Error(ErrorKind::ResourceLimit, "--budget above the default needs --force");
    return tower_budget_;
  }

  int cmd_gen();
  int cmd_verify();
  int cmd_homology();
  int cmd_fill_loop();
  int cmd_experiment(const std::string& which);
  int cmd_partition();
  int cmd_dedekind();
  int cmd_tc();
  int cmd_iso();

  std::ostream& out_;
  std::ostream& err_;
  Common c_;

  // per-command state
  std::string kind_, complex_, complex_b_, expect_, field_ = "both", loop_;
  int ample_r_ = 0, conic_r_ = 0, r_cap_ = 4, max_dim_ = -1, r_ = 2, k_ = 1, parts_ = 2;
  std::uint64_t q_ = 13, p_ = 3, g_ = 0, n_ = 16, trials_ = 1000, iterations_ = 1, levels_ = 2;
  std::size_t tower_budget_ = kDefaultTowerBudget, torsion_guard_ = kTorsionGuard, iso_max_ = 20;
  std::size_t n_min_ = 58, n_max_ = 60, betti_guard_ = 20000;
  std::uint64_t search_trials_ = 5000;
  std::vector<std::size_t> n_list_;
  std::string generator_;
  bool witness_table_ = false, torsion_ = false, connectivity_ = false, edge_list_ = false,
       include_empty_ = false, record_timings_ = false;
  std::optional<int> conn_ample_r_;
  std::int64_t tc_dim_ = -1, tc_conn_ = -1;
  double tc_L_ = 0, epsilon_ = 1.0;
  CLI::App* sub_ = nullptr;
};

int Runner::cmd_gen() {
  json cfg = base_config();
  cfg["kind"] = kind_;
  json meta;
  SimplicialComplex x;
  if (kind_ == "paley") {
    PrimeFieldSpec spec{q_, p_, g_ ? std::optional<std::uint64_t>(g_) : std::nullopt};
    const auto res = paley_residues(spec);
    const int d = max_dim_ < 0 ? 2 : max_dim_;
    x = paley_complex(res, d);
    cfg.update({{"q", q_}, {"p", p_}, {"max_dim", d}});
    meta = {{"g", res.g}, {"residue_count", res.size()}};
  } else if (kind_ == "medial") {
    const auto s = medial_sample(n_, c_.seed, max_dim_ < 0 ? std::nullopt : std::optional<int>(max_dim_));
    x = s.complex;
    cfg.update({{"n", n_}, {"max_dim", max_dim_ < 0 ? json(nullptr) : json(max_dim_)}});
    meta = {{"h", s.h}, {"sample_seed", s.seed}};
  } else if (kind_ == "rado" || kind_ == "sphere-tower") {
    const auto t = kind_ == "rado" ? rado_tower(static_cast<int>(levels_), budget())
                                   : barmak_tower(static_cast<int>(n_), static_cast<int>(iterations_), budget(),
                                                  include_empty_);
    cfg.update({{"budget", tower_budget_}});
    if (kind_ == "rado") cfg["levels"] = levels_;
    else cfg.update({{"n", n_}, {"iterations", iterations_}, {"include_empty_subcomplex", include_empty_}});
    json counts = json::array();
    for (const auto& st : t.stages) counts.push_back(st.complex.vertex_count());
    meta = {{"stage_vertex_counts", counts}, {"complete", t.complete}};
    if (!t.complete) {
      emit({{"command", "gen"}, {"config", cfg}, {"metadata", meta}, {"error", "vertex budget exhausted"}});
      return kResource;
    }
    x = t.stages.back().complex;
  } else if (kind_ == "example13") {
    x = example_thirteen();
  } else if (kind_ == "sphere") {
    x = sphere_join(k_);
    cfg["k"] = k_;
  } else if (kind_ == "search") {
    const auto res = search_ample(n_, r_, trials_, c_.seed, ample_opts(r_cap_));
    cfg.update({{"n", n_}, {"r", r_}, {"trials", trials_}, {"r_cap", r_cap_}});
    meta = {{"trials_used", res.trials_used}, {"found", res.complex.has_value()},
            {"sample_seed", res.seed ? json(*res.seed) : json(nullptr)}};
    if (!res.complex) {
      emit({{"command", "gen"}, {"config", cfg}, {"metadata", meta}});
      return kNegative;
    }
    x = *res.complex;
  } else {
    throw Error(ErrorKind::InvalidParameters, "unknown generator kind: " + kind_);
  }
  meta.update(complex_summary(x));
  json doc{{"command", "gen"}, {"config", cfg}, {"metadata", meta}};
  if (!c_.output.empty()) {
    io::write_file(c_.output, x, io::parse_format(c_.format));
    std::ofstream(c_.output + ".meta.json") << json{{"config", cfg}, {"metadata", meta}}.dump(2) << '\n';
    doc["files"] = {c_.output, c_.output + ".meta.json"};
  } else if (c_.format == "text") {
    out_ << "# " << json{{"command", "gen"}, {"config", cfg}, {"metadata", meta}}.dump() << '\n' << io::to_text(x);
    return kOk;
  } else {
    doc["complex"] = complex_json(x);
  }
  emit(doc);
  return kOk;
}

int Runner::cmd_verify() {
  if ((ample_r_ > 0) == (conic_r_ > 0)) throw Error(ErrorKind::InvalidParameters, "give exactly one of --ample or --conic");
  const auto x = load_complex(complex_, tower_budget_);
  json cfg = base_config();
  cfg.update({{"complex", complex_}, {"r_cap", r_cap_}, {"witness_table", witness_table_}});
  json doc{{"command", "verify"}};
  std::string verdict;
  if (ample_r_ > 0) {
    auto o = ample_opts(r_cap_);
    o.witness_table = witness_table_;
    const auto v = is_r_ample(x, ample_r_, o);
    verdict = v.ample ? "ample" : "not_ample";
    cfg.update({{"property", "ample"}, {"r", ample_r_}});
    doc.update({{"result", verdict}, {"r", v.r}, {"elapsed", v.elapsed_seconds}});
    doc["counterexample"] = v.counterexample ? json{{"u", v.counterexample->u},
                                                   {"a", complex_json(v.counterexample->a)["maximal_simplices"]}}
                                             : json(nullptr);
    if (witness_table_) {
      json tab = json::array();
      for (const auto& w : v.witness_table)
        tab.push_back({{"u", w.u}, {"a", complex_json(w.a)["maximal_simplices"]}, {"witness", w.witness}});
      doc["witness_table"] = tab;
    }
  } else {
    const auto v = is_r_conic(x, conic_r_, ample_opts(r_cap_));
    verdict = v.conic ? "conic" : "not_conic";
    cfg.update({{"property", "conic"}, {"r", conic_r_}});
    doc.update({{"result", verdict}, {"r", v.r}, {"elapsed", v.elapsed_seconds}});
    doc["counterexample"] = v.counterexample ? json{{"u", *v.counterexample}} : json(nullptr);
  }
  const std::string expected = expect_.empty() ? (ample_r_ > 0 ? "ample" : "conic") : expect_;
  cfg["expect"] = expected;
  doc["config"] = cfg;
  doc["expectation_met"] = verdict == expected;
  if (c_.format == "text") out_ << verdict << " r=" << (ample_r_ > 0 ? ample_r_ : conic_r_) << '\n';
  else emit(doc);
  return verdict == expected ? kOk : kNegative;
}

int Runner::cmd_homology() {
  const auto x = load_complex(complex_, tower_budget_);
  json cfg = base_config();
  cfg.update({{"complex", complex_}, {"field", field_}, {"torsion", torsion_}, {"torsion_guard", torsion_guard_},
              {"connectivity", connectivity_},
              {"ample_r", conn_ample_r_ ? json(*conn_ample_r_) : json(nullptr)}});
  json doc{{"command", "homology"}, {"config", cfg}, {"summary", complex_summary(x)}};
  auto add = [&](Field f) {
    const auto b = betti_numbers(x, f);
    doc["betti"][to_string(f)] = b.betti;
    doc["reduced_betti"][to_string(f)] = b.reduced();
  };
  if (field_ == "gf2" || field_ == "both") add(Field::GF2);
  if (field_ == "rationals" || field_ == "both") add(Field::Rationals);
  if (field_ != "gf2" && field_ != "rationals" && field_ != "both")
    throw Error(ErrorKind::InvalidParameters, "--field must be gf2, rationals or both");
  if (torsion_) {
    const std::size_t guard = c_.force ? SIZE_MAX : torsion_guard_;
    json t = json::array();
    for (const auto& dim : integral_torsion(x, guard)) {
      json row = json::array();
      for (const auto& f : dim) row.push_back(f.str());
      t.push_back(row);
    }
    doc["torsion"] = t;
  }
  if (connectivity_) {
    const auto r = connectivity_report(x, conn_ample_r_);
    doc["connectivity"] = {{"homological_connectivity", r.homological_connectivity},
                           {"connectivity_gf2", r.connectivity_gf2},
                           {"connectivity_rationals", r.connectivity_rationals},
                           {"simply_connected_certified", r.simply_connected_certified},
                           {"loops_filled", r.loops_filled},
                           {"homological_only", r.homological_only},
                           {"caveat", r.caveat}};
  }
  emit(doc);
  return kOk;
}

int Runner::cmd_fill_loop() {
  const auto loop = parse_vertices(loop_);
  json cfg = base_config();
  cfg.update({{"complex", complex_}, {"loop", loop}, {"r", r_}, {"edge_list", edge_list_}});
  FilledDisc disc;
  DiscCertificate cert;
  if (complex_ == "lazy-rado") {
    LazyRadoComplex lazy;
    disc = fill_loop([&]() -> const SimplicialComplex& { return lazy.complex(); },
                     [&](std::span<const Vertex> u, const SimplicialComplex& a) -> std::optional<Vertex> {
                       return lazy.witness(u, a);
                     },
                     loop, r_);
    cert = validate_disc(disc, lazy.complex());
    cfg["grown_vertices"] = lazy.complex().vertex_count();
  } else {
    const auto x = load_complex(complex_, tower_budget_);
    disc = fill_loop(x, loop, r_);
    cert = validate_disc(disc, x);
  }
  if (edge_list_) {
    out_ << "# " << json{{"command", "fill-loop"}, {"config", cfg}, {"valid", cert.valid}}.dump() << '\n'
         << to_edge_list(disc);
  } else {
    emit({{"command", "fill-loop"},
          {"config", cfg},
          {"disc", to_json(disc)},
          {"certificate", {{"valid", cert.valid}, {"within_bounds", cert.within_bounds}, {"failure", cert.failure}}}});
  }
  return cert.valid ? kOk : kNegative;
}

int Runner::cmd_experiment(const std::string& which) {
  ExperimentConfig cfg;
  if (!c_.config.empty()) {
    std::ifstream in(c_.config);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read config " + c_.config);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw Error(ErrorKind::MalformedInput, std::string("config is not valid JSON: ") + e.what());
    }
    cfg = ExperimentConfig::from_json(j);
  }
  // explicit flags win over the config file
  auto given = [&](const char* name) {
    for (const CLI::App* a : {static_cast<const CLI::App*>(sub_), static_cast<const CLI::App*>(sub_->get_parent())})
      if (const auto* o = a->get_option_no_throw(name); o && o->count() > 0) return true;
    return false;
  };
  cfg.experiment = which;
  if (given("--seed")) cfg.seed = c_.seed;
  if (given("--threads")) cfg.threads = c_.threads;
  if (given("--trials")) cfg.trials = trials_;
  if (given("--r")) cfg.r = r_;
  if (given("--k")) cfg.k = k_;
  if (given("--generator")) cfg.generator = generator_;
  if (given("--n-min")) cfg.n_min = n_min_;
  if (given("--n-max")) cfg.n_max = n_max_;
  if (given("--search-trials")) cfg.search_trials = search_trials_;
  if (given("--n-list")) cfg.n_list = n_list_;
  if (given("--betti-guard")) cfg.betti_guard = betti_guard_;
  if (given("--record-timings")) cfg.record_timings = record_timings_;
  if (given("-o")) cfg.output = c_.output;
  if (!c_.force) {
    for (auto n : cfg.n_list)
      if (n > kMedialMaxN) throw Error(ErrorKind::ResourceLimit, "n above the sampler limit");
    if (cfg.r > 4) throw Error(ErrorKind::ResourceLimit, "r above the cap 4 needs --force");
  }
  ExperimentReport rep;
  if (which == "resilience") rep = resilience_experiment(cfg);
  else if (which == "census") rep = census_experiment(cfg);
  else rep = empirical_dimension_and_betti(cfg.n_list, cfg.trials, cfg.seed, cfg.betti_guard, cfg.threads);
  rep.config = cfg.to_json();
  json doc{{"command", which}, {"config", rep.config}, {"aggregate", rep.aggregate}};
  if (!rep.label.empty()) doc["label"] = rep.label;
  if (!cfg.output.empty()) {
    rep.write(cfg.output);
    doc["files"] = {cfg.output + ".json", cfg.output + ".csv"};
  } else {
    doc["columns"] = rep.columns;
    doc["records"] = rep.records;
  }
  emit(doc);
  if (which == "resilience" && rep.aggregate["hypothesis_passed"] != rep.aggregate["hypothesis_records"])
    return kNegative;
  return kOk;
}

int Runner::cmd_partition() {
  const auto x = load_complex(complex_, tower_budget_);
  const auto rep = partition_experiment(x, parts_, c_.seed, r_);
  json cfg = base_config();
  cfg.update({{"complex", complex_}, {"parts", parts_}, {"r", r_}});
  emit({{"command", "partition"},
        {"config", cfg},
        {"label", rep.label},
        {"columns", rep.columns},
        {"records", rep.records},
        {"aggregate", rep.aggregate}});
  return kOk;
}

int Runner::cmd_dedekind() {
  if (r_ > 5 && !c_.force) throw Error(ErrorKind::ResourceLimit, "r = 6 enumerates for a long time; pass --force");
  const auto m = dedekind_reduced(r_);
  json cfg = base_config();
  cfg["r"] = r_;
  if (c_.format == "text") {
    out_ << "# " << json{{"command", "dedekind"}, {"config", cfg}}.dump() << '\n' << m << '\n';
  } else {
    emit({{"command", "dedekind"}, {"config", cfg}, {"reduced_dedekind", m}, {"dedekind", m + 1},
          {"min_vertices_for_ample", m + static_cast<std::uint64_t>(r_)}});
  }
  return kOk;
}

int Runner::cmd_tc() {
  json cfg = base_config();
  json doc{{"command", "tc-bound"}};
  std::int64_t bound = 0;
  if (tc_L_ > 0) {
    const auto b = medial_tc_calculator(tc_L_, epsilon_);
    cfg.update({{"L", tc_L_}, {"epsilon", epsilon_}});
    doc.update({{"beta", b.beta}, {"dim_bound", b.dim_bound}, {"conn_bound", b.conn_bound}, {"tc_bound", b.tc_bound},
                {"note", tc_L_ < 100 ? "pre-asymptotic L; the bound 4 needs larger L" : ""}});
    bound = b.tc_bound;
  } else {
    if (tc_dim_ < 0 || tc_conn_ < 0) throw Error(ErrorKind::InvalidParameters, "give --dim and --conn, or --L");
    bound = tc_upper_bound(tc_dim_, tc_conn_);
    cfg.update({{"dim", tc_dim_}, {"conn", tc_conn_}});
    doc["tc_bound"] = bound;
  }
  doc["config"] = cfg;
  if (c_.format == "text") out_ << "# " << cfg.dump() << '\n' << bound << '\n';
  else emit(doc);
  return kOk;
}

int Runner::cmd_iso() {
  const auto a = load_complex(complex_, tower_budget_);
  const auto b = load_complex(complex_b_, tower_budget_);
  if (iso_max_ > 20 && !c_.force) throw Error(ErrorKind::ResourceLimit, "--max-vertices above 20 needs --force");
  const auto m = is_isomorphic(a, b, iso_max_);
  json cfg = base_config();
  cfg.update({{"a", complex_}, {"b", complex_b_}, {"max_vertices", iso_max_}});
  json map = nullptr;
  if (m) {
    map = json::array();
    for (const auto& [u, v] : *m) map.push_back({u, v});
  }
  emit({{"command", "iso"}, {"config", cfg}, {"isomorphic", m.has_value()}, {"map", map}});
  return m ? kOk : kNegative;
}

int Runner::run(const std::vector<std::string>& args) {
  CLI::App app{"amplex: ample and conic simplicial complexes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", c_.seed, "random seed");
  app.add_option("--format", c_.format, "complex/output format")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--config", c_.config, "experiment config (JSON)");
  app.add_option("-o,--output", c_.output, "output path or prefix");
  app.add_option("--threads", c_.threads, "worker threads")->check(CLI::Range(1U, 256U));
  app.add_flag("--force", c_.force, "allow runs beyond the safety guards");
  app.add_flag("--pretty", c_.pretty, "indent JSON output");

  auto* gen = app.add_subcommand("gen", "generate a complex");
  gen->add_option("kind", kind_, "paley|medial|rado|sphere-tower|example13|sphere|search")->required();
  gen->add_option("--q", q_);
  gen->add_option("--p", p_);
  gen->add_option("--g", g_, "primitive root (default: least)");
  gen->add_option("--max-dim", max_dim_);
  gen->add_option("--n", n_);
  gen->add_option("--r", r_);
  gen->add_option("--k", k_);
  gen->add_option("--r-cap", r_cap_);
  gen->add_option("--trials", trials_);
  gen->add_option("--levels", levels_);
  gen->add_option("--iterations", iterations_);
  gen->add_option("--budget", tower_budget_);
  gen->add_flag("--include-empty-subcomplex", include_empty_, "sphere-tower: also cone over the empty subcomplex");

  auto* verify = app.add_subcommand("verify", "check r-ampleness or r-conicity");
  verify->add_option("complex", complex_)->required();
  verify->add_option("--ample", ample_r_);
  verify->add_option("--conic", conic_r_);
  verify->add_option("--r-cap", r_cap_);
  verify->add_option("--expect", expect_)->check(CLI::IsMember({"ample", "not_ample", "conic", "not_conic"}));
  verify->add_flag("--witness-table", witness_table_);
  verify->add_option("--budget", tower_budget_);

  auto* hom = app.add_subcommand("homology", "Betti numbers, torsion, connectivity");
  hom->add_option("complex", complex_)->required();
  hom->add_option("--field", field_);
  hom->add_flag("--torsion", torsion_);
  hom->add_option("--torsion-guard", torsion_guard_);
  hom->add_flag("--connectivity", connectivity_);
  hom->add_option("--ample-r", conn_ample_r_, "verified ampleness (enables loop filling when >= 4)");
  hom->add_option("--budget", tower_budget_);

  auto* fill = app.add_subcommand("fill-loop", "fill an edge loop by a disc");
  fill->add_option("complex", complex_, "complex, or lazy-rado")->required();
  fill->add_option("--loop", loop_, "comma-separated vertices")->required();
  fill->add_option("--r", r_)->required();
  fill->add_flag("--edge-list", edge_list_);
  fill->add_option("--budget", tower_budget_);

  std::vector<CLI::App*> exps;
  for (const char* name : {"resilience", "census", "medial-stats"}) {
    auto* e = app.add_subcommand(name, std::string(name) + " experiment");
    e->add_option("--trials", trials_);
    e->add_option("--r", r_);
    e->add_option("--k", k_);
    e->add_option("--generator", generator_);
    e->add_option("--n-min", n_min_);
    e->add_option("--n-max", n_max_);
    e->add_option("--search-trials", search_trials_);
    e->add_option("--n-list", n_list_)->delimiter(',');
    e->add_option("--betti-guard", betti_guard_);
    e->add_flag("--record-timings", record_timings_);
    exps.push_back(e);
  }

  auto* part = app.add_subcommand("partition", "random equipartition of an ample complex");
  part->add_option("complex", complex_)->required();
  part->add_option("--parts", parts_);
  part->add_option("--r", r_);
  part->add_option("--budget", tower_budget_);

  auto* ded = app.add_subcommand("dedekind", "count complexes on r labelled vertices");
  ded->add_option("--r", r_)->required();

  auto* tc = app.add_subcommand("tc-bound", "topological complexity bound");
  tc->add_option("--dim", tc_dim_);
  tc->add_option("--conn", tc_conn_);
  tc->add_option("--L", tc_L_, "log2 log2 n for the medial calculator");
  tc->add_option("--epsilon", epsilon_);

  auto* iso = app.add_subcommand("iso", "isomorphism test");
  iso->add_option("a", complex_)->required();
  iso->add_option("b", complex_b_)->required();
  iso->add_option("--max-vertices", iso_max_);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out_ << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out_ << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err_ << "usage error: " << e.what() << '\n';
    for (const auto& a : args)
      if (auto hint = suggestion(app, a); hint && *hint != a) {
        const bool known = std::any_of(args.begin(), args.end(), [&](const std::string& x) { return x == *hint; });
        if (!known && (a.rfind("-", 0) == 0 || hint->rfind("-", 0) != 0)) {
          err_ << "did you mean " << *hint << " instead of " << a << "?\n";
          break;
        }
      }
    err_ << "run with --help for the list of commands and flags\n";
    return kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen();
    if (verify->parsed()) return cmd_verify();
    if (hom->parsed()) return cmd_homology();
    if (fill->parsed()) return cmd_fill_loop();
    for (auto* e : exps)
      if (e->parsed()) {
        sub_ = e;
        return cmd_experiment(e->get_name());
      }
    if (part->parsed()) return cmd_partition();
    if (ded->parsed()) return cmd_dedekind();
    if (tc->parsed()) return cmd_tc();
    if (iso->parsed()) return cmd_iso();
  } catch (const Error& e) {
    err_ << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::ResourceLimit:
        return kResource;
      case ErrorKind::NotAmpleEnough:
        return kNegative;
      default:
        return kUsage;
    }
  }
  return kUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Runner r(out, err);
  return r.run(args);
}

}  // namespace amplex::cli
