#include "amplex/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "amplex/ampleness.hpp"
#include "amplex/constructions.hpp"
#include "amplex/error.hpp"
#include "amplex/homology.hpp"
#include "amplex/rng.hpp"

namespace amplex {

namespace {

constexpr const char* kExploratory = "exploratory: finite-scale analog, no theorem applies at fixed n";

// Runs f(i) for i in [0, count) on `threads` workers; f must not throw.
template <class F>
void parallel_for(std::uint64_t count, unsigned threads, F&& f) {
  threads = std::max(1U, threads);
  if (threads == 1 || count < 2) {
    for (std::uint64_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::uint64_t i; (i = next.fetch_add(1)) < count;) f(i);
    });
  for (auto& th : pool) th.join();
}

std::string simplex_text(const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

std::string family_text(const RemovalFamily& f) {
  std::string out;
  for (const auto& s : f.simplexes()) out += (out.empty() ? "" : ";") + simplex_text(s);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Draws simplexes of dimension <= max_dim until the weight target is spent.
RemovalFamily sample_family(const SimplicialComplex& x, Rng& rng, std::size_t target, int max_dim) {
  std::vector<Simplex> chosen;
  std::size_t remaining = target;
  int misses = 0;
  while (remaining > 0) {
    std::vector<int> dims;
    for (int d = 0; d <= std::min(max_dim, x.dim()); ++d)
      if (static_cast<std::size_t>(d) + 1 <= remaining && !x.level(d).empty()) dims.push_back(d);
    if (dims.empty()) break;
    const int d = dims[rng.below(dims.size())];
    const auto& lvl = x.level(d);
    const auto& s = lvl[rng.below(lvl.size())];
    // keep the draw an antichain so the weight lands on the target
    const bool clash = std::any_of(chosen.begin(), chosen.end(),
                                   [&](const Simplex& t) { return t.is_face_of(s) || s.is_face_of(t); });
    if (clash) {
      if (++misses > 10000) break;
      continue;
    }
    chosen.push_back(s);
    remaining -= static_cast<std::size_t>(d) + 1;
  }
  return RemovalFamily(std::move(chosen));
}

}  // namespace

RemovalFamily::RemovalFamily(std::vector<Simplex> simplexes) {
  std::sort(simplexes.begin(), simplexes.end());
  simplexes.erase(std::unique(simplexes.begin(), simplexes.end()), simplexes.end());
  for (const auto& s : simplexes) {
    const bool has_face = std::any_of(s_.begin(), s_.end(), [&](const Simplex& t) { return t.is_face_of(s); });
    if (!has_face) s_.push_back(s);
  }
}

std::size_t RemovalFamily::total_dimension() const {
  std::size_t d = 0;
  for (const auto& s : s_) d += static_cast<std::size_t>(s.dim());
  return d;
}

SimplicialComplex remove_family(const SimplicialComplex& x, const RemovalFamily& f) {
  for (const auto& s : f.simplexes())
    if (!x.contains(s)) throw Error(ErrorKind::AbsentSimplex, "removal family member " + simplex_text(s) + " is not in X");
  std::vector<Simplex> keep;
  x.for_each_simplex([&](const Simplex& s) {
    for (const auto& t : f.simplexes())
      if (t.is_face_of(s)) return;
    keep.push_back(s);
  });
  return SimplicialComplex::from_closed(std::move(keep));
}

std::optional<int> resilience_guarantee(int r, const RemovalFamily& f) {
  if (r < 1) throw Error(ErrorKind::InvalidParameters, "r must be at least 1");
  const auto w = f.weight();
  for (int k = 0; k <= 6 && k < r; ++k)
    if (w < min_vertices_for_ample(k)) return r - k;
  return std::nullopt;
}

bool connectivity_after_removal_bound(int r, std::uint64_t a0, std::uint64_t a1) {
  if (r < 3) throw Error(ErrorKind::InvalidParameters, "r must be at least 3");
  const unsigned __int128 lhs = static_cast<unsigned __int128>(a0) + 2 * static_cast<unsigned __int128>(a1);
  const int m = r - 2;
  if (m <= 6) return lhs < min_vertices_for_ample(m);
  // 2^C(m, ⌊r/2⌋-1) + m; exponents of 128 or more exceed any 64-bit input.
  std::uint64_t e = 1;
  const int kk = r / 2 - 1;
  for (int i = 1; i <= kk; ++i) {
    e = e * static_cast<std::uint64_t>(m - kk + i) / static_cast<std::uint64_t>(i);
    if (e >= 127) return true;
  }
  return lhs < (static_cast<unsigned __int128>(1) << e) + static_cast<unsigned>(m);
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::InvalidInput, "config must be an object");
  ExperimentConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const auto& key = it.key();
      const auto& v = it.value();
      if (key == "experiment") c.experiment = v.get<std::string>();
      else if (key == "generator") c.generator = v.get<std::string>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "r") c.r = v.get<int>();
      else if (key == "k") c.k = v.get<int>();
      else if (key == "trials") c.trials = v.get<std::uint64_t>();
      else if (key == "n_min") c.n_min = v.get<std::size_t>();
      else if (key == "n_max") c.n_max = v.get<std::size_t>();
      else if (key == "search_trials") c.search_trials = v.get<std::uint64_t>();
      else if (key == "n_list") c.n_list = v.get<std::vector<std::size_t>>();
      else if (key == "parts") c.parts = v.get<int>();
      else if (key == "betti_guard") c.betti_guard = v.get<std::size_t>();
      else if (key == "threads") c.threads = v.get<unsigned>();
      else if (key == "record_timings") c.record_timings = v.get<bool>();
      else if (key == "output") c.output = v.get<std::string>();
      else if (key == "policy") {
        for (auto p = v.begin(); p != v.end(); ++p) {
          if (p.key() == "max_dim") c.policy.max_dim = p.value().get<int>();
          else if (p.key() == "control") c.policy.control = p.value().get<bool>();
          else if (p.key() == "control_excess") c.policy.control_excess = p.value().get<int>();
          else throw Error(ErrorKind::InvalidInput, "unknown policy key: " + p.key());
        }
      } else {
        throw Error(ErrorKind::InvalidInput, "unknown config key: " + key);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("bad config value: ") + e.what());
  }
  return c;
}

nlohmann::json ExperimentConfig::to_json() const {
  return {{"experiment", experiment},
          {"generator", generator},
          {"seed", seed},
          {"r", r},
          {"k", k},
          {"trials", trials},
          {"n_min", n_min},
          {"n_max", n_max},
          {"search_trials", search_trials},
          {"n_list", n_list},
          {"parts", parts},
          {"betti_guard", betti_guard},
          {"threads", threads},
          {"record_timings", record_timings},
          {"output", output},
          {"policy",
           {{"max_dim", policy.max_dim}, {"control", policy.control}, {"control_excess", policy.control_excess}}}};
}

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  if (!label.empty()) j["label"] = label;
  j["config"] = config;
  j["columns"] = columns;
  j["records"] = records;
  j["aggregate"] = aggregate;
  return j;
}

std::string ExperimentReport::to_csv() const {
  auto cell = [](const nlohmann::json& v) -> std::string {
    if (v.is_null()) return "";
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    }
    return v.dump();
  };
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < columns.size(); ++i)
      os << (i ? "," : "") << (rec.contains(columns[i]) ? cell(rec[columns[i]]) : std::string());
    os << '\n';
  }
  return os.str();
}

void ExperimentReport::write(const std::string& prefix) const {
  std::ofstream js(prefix + ".json"), csv(prefix + ".csv");
  if (!js || !csv) throw Error(ErrorKind::InvalidInput, "cannot write report files at " + prefix);
  js << to_json().dump() << '\n';
  csv << to_csv();
}

ExperimentReport resilience_experiment(const ExperimentConfig& cfg) {
  if (cfg.r < 1 || cfg.k < 0 || cfg.k >= cfg.r) throw Error(ErrorKind::InvalidParameters, "need r >= 1 and 0 <= k < r");
  if (cfg.generator != "medial" && cfg.generator != "example13")
    throw Error(ErrorKind::InvalidParameters, "unknown generator: " + cfg.generator);
  if (cfg.n_min > cfg.n_max) throw Error(ErrorKind::InvalidParameters, "n_min > n_max");
  const std::size_t bound = min_vertices_for_ample(cfg.k);
  ExperimentReport rep;
  rep.experiment = "resilience";
  rep.config = cfg.to_json();
  rep.columns = {"trial", "arm", "n", "sample_seed", "vertices", "family", "family_size", "family_dim",
                 "weight", "bound", "hypothesis", "guarantee", "checked_r", "result_ample", "result_connected",
                 "status"};
  if (cfg.record_timings) rep.columns.push_back("seconds");

  std::vector<std::vector<nlohmann::json>> rows(cfg.trials);
  parallel_for(cfg.trials, cfg.threads, [&](std::uint64_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(cfg.seed ^ (0x9E3779B97F4A7C15ULL * (i + 1)));
    nlohmann::json base{{"trial", i}};
    std::optional<SimplicialComplex> x;
    try {
      if (cfg.generator == "example13") {
        base["n"] = 13;
        base["sample_seed"] = nullptr;
        x = example_thirteen();
        if (!is_r_ample(*x, cfg.r).ample) x.reset();
      } else {
        const auto n = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(cfg.n_min),
                                                            static_cast<std::int64_t>(cfg.n_max)));
        base["n"] = n;
        const auto found = search_ample(n, cfg.r, cfg.search_trials, cfg.seed + i * cfg.search_trials);
        base["sample_seed"] = found.seed ? nlohmann::json(*found.seed) : nlohmann::json(nullptr);
        x = found.complex;
      }
    } catch (const Error& e) {
      x.reset();
    }
    if (!x) {
      auto row = base;
      row["arm"] = "none";
      row["status"] = "generator_failure";
      if (cfg.record_timings) row["seconds"] = seconds_since(t0);
      rows[i].push_back(row);
      return;
    }
    std::vector<std::pair<std::string, std::size_t>> arms;
    arms.emplace_back("hypothesis", 1 + rng.below(bound - 1));
    if (cfg.policy.control)
      arms.emplace_back("control", bound + rng.below(static_cast<std::uint64_t>(cfg.policy.control_excess) + 1));
    for (const auto& [arm, target] : arms) {
      const auto family = sample_family(*x, rng, target, cfg.policy.max_dim);
      const auto y = remove_family(*x, family);
      auto row = base;
      row["arm"] = arm;
      row["vertices"] = x->vertex_count();
      row["family"] = family_text(family);
      row["family_size"] = family.cardinality();
      row["family_dim"] = family.total_dimension();
      row["weight"] = family.weight();
      row["bound"] = bound;
      row["hypothesis"] = family.weight() < bound;
      const auto g = resilience_guarantee(cfg.r, family);
      row["guarantee"] = g ? nlohmann::json(*g) : nlohmann::json(nullptr);
      const int checked = family.weight() < bound ? *g : cfg.r - cfg.k;
      row["checked_r"] = checked;
      row["result_ample"] = checked >= 1 && is_r_ample(y, checked).ample;
      const auto b = betti_numbers(y, Field::Rationals);
      row["result_connected"] = !y.empty() && b.betti[0] == 1;
      row["status"] = "ok";
      if (cfg.record_timings) row["seconds"] = seconds_since(t0);
      rows[i].push_back(row);
    }
  });

  std::uint64_t failures = 0, hyp = 0, hyp_ok = 0, ctl = 0, ctl_ok = 0;
  for (auto& trial : rows)
    for (auto& row : trial) {
      if (row["status"] == "generator_failure") {
        ++failures;
      } else if (row["hypothesis"].get<bool>()) {
        ++hyp;
        hyp_ok += row["result_ample"].get<bool>();
      } else {
        ++ctl;
        ctl_ok += row["result_ample"].get<bool>();
      }
      rep.records.push_back(std::move(row));
    }
  auto rate = [](std::uint64_t a, std::uint64_t b) { return b ? nlohmann::json(static_cast<double>(a) / b) : nlohmann::json(nullptr); };
  rep.aggregate = {{"trials", cfg.trials},
                   {"generator_failures", failures},
                   {"hypothesis_records", hyp},
                   {"hypothesis_passed", hyp_ok},
                   {"hypothesis_pass_rate", rate(hyp_ok, hyp)},
                   {"control_records", ctl},
                   {"control_passed", ctl_ok},
                   {"control_pass_rate", rate(ctl_ok, ctl)}};
  return rep;
}

std::size_t witness_census(const SimplicialComplex& x, std::span<const Vertex> u, const SimplicialComplex& a) {
  return count_witnesses(x, u, a);
}

namespace {

// Label of A in local coordinates of U (vertex i = i-th smallest of U).
std::string local_label(const SimplicialComplex& a, const std::vector<Vertex>& u) {
  std::string out = "[";
  bool first = true;
  for (const auto& s : a.maximal_simplexes()) {
    out += first ? "" : " ";
    first = false;
    out += "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
      const auto pos = std::lower_bound(u.begin(), u.end(), s[i]) - u.begin();
      out += (i ? "," : "") + std::to_string(pos);
    }
    out += "}";
  }
  return out + "]";
}

}  // namespace

ExperimentReport census_experiment(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.experiment = "census";
  rep.label = kExploratory;
  rep.config = cfg.to_json();
  rep.columns = {"n", "u_size", "x_u", "a", "samples", "mean_census"};
  for (auto n : cfg.n_list) {
    std::map<std::tuple<std::size_t, std::string, std::string>, std::pair<std::uint64_t, std::uint64_t>> acc;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      const auto s = medial_sample(n, cfg.seed + t);
      const auto& vs = s.complex.vertices();
      for (std::size_t size = 1; size <= 2 && size <= vs.size(); ++size) {
        const std::vector<Vertex> u(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(size));
        const auto xu = induced(s.complex, u);
        const auto xu_label = local_label(xu, u);
        enumerate_subcomplexes(xu, [&](const SimplicialComplex& a) {
          auto& slot = acc[{size, xu_label, local_label(a, u)}];
          ++slot.first;
          slot.second += witness_census(s.complex, u, a);
          return true;
        });
      }
    }
    for (const auto& [key, v] : acc)
      rep.records.push_back({{"n", n},
                             {"u_size", std::get<0>(key)},
                             {"x_u", std::get<1>(key)},
                             {"a", std::get<2>(key)},
                             {"samples", v.first},
                             {"mean_census", static_cast<double>(v.second) / static_cast<double>(v.first)}});
  }
  rep.aggregate = {{"rows", rep.records.size()}};
  return rep;
}

ExperimentReport partition_experiment(const SimplicialComplex& x, int parts, std::uint64_t seed, int r) {
  if (parts < 1 || static_cast<std::size_t>(parts) > x.vertex_count())
    throw Error(ErrorKind::InvalidParameters, "parts must lie in [1, |V(X)|]");
  if (!is_r_ample(x, r).ample) throw Error(ErrorKind::NotAmpleEnough, "partition_experiment needs an r-ample complex");
  ExperimentReport rep;
  rep.experiment = "partition";
  rep.label = kExploratory;
  rep.config = {{"parts", parts}, {"seed", seed}, {"r", r}, {"vertices", x.vertex_count()}};
  rep.columns = {"part", "vertices", "ampleness", "conicity"};
  std::vector<Vertex> vs = x.vertices();
  Rng rng(seed);
  rng.shuffle(vs);
  std::vector<std::vector<Vertex>> split(static_cast<std::size_t>(parts));
  for (std::size_t i = 0; i < vs.size(); ++i) split[i % split.size()].push_back(vs[i]);
  int best = 0;
  for (std::size_t p = 0; p < split.size(); ++p) {
    std::sort(split[p].begin(), split[p].end());
    const auto part = induced(x, split[p]);
    const int a = max_ampleness(part, r);
    best = std::max(best, a);
    rep.records.push_back(
        {{"part", p}, {"vertices", split[p].size()}, {"ampleness", a}, {"conicity", max_conicity(part, r)}});
  }
  rep.aggregate = {{"max_over_parts_ampleness", best}};
  return rep;
}

std::optional<double> beta_of(std::size_t n) {
  if (n < 3) return std::nullopt;
  const double lg = std::log2(static_cast<double>(n));
  const double inner = std::log2(std::log(static_cast<double>(n)));  // log2(L ln 2)
  if (lg <= 1 || inner <= 1) return std::nullopt;
  return std::log2(lg) + std::log2(inner);
}

ExperimentReport empirical_dimension_and_betti(const std::vector<std::size_t>& n_list, std::uint64_t trials,
                                               std::uint64_t seed, std::size_t betti_guard, unsigned threads) {
  ExperimentReport rep;
  rep.experiment = "medial-stats";
  rep.label = kExploratory;
  rep.config = {{"n_list", n_list}, {"trials", trials}, {"seed", seed}, {"betti_guard", betti_guard}};
  rep.columns = {"n", "trial", "seed", "vertices", "simplexes", "dim", "beta", "window_low", "window_high",
                 "in_window", "reduced_b0", "reduced_b1", "reduced_b2"};
  nlohmann::json per_n = nlohmann::json::array();
  for (auto n : n_list) {
    const auto beta = beta_of(n);
    std::vector<nlohmann::json> rows(trials);
    parallel_for(trials, threads, [&](std::uint64_t t) {
      const auto s = medial_sample(n, seed + t);
      nlohmann::json row{{"n", n}, {"trial", t}, {"seed", seed + t}, {"vertices", s.complex.vertex_count()},
                         {"simplexes", s.complex.simplex_count()}, {"dim", s.complex.dim()}};
      if (beta) {
        const double lo = std::floor(*beta) - 1, hi = *beta;  // upper side with ε = 1
        row["beta"] = *beta;
        row["window_low"] = lo;
        row["window_high"] = hi;
        row["in_window"] = s.complex.dim() >= lo && s.complex.dim() <= hi;
      }
      if (s.complex.simplex_count() <= betti_guard && !s.complex.empty()) {
        const auto red = betti_numbers(s.complex, Field::GF2).reduced();
        for (std::size_t d = 0; d < 3; ++d)
          row["reduced_b" + std::to_string(d)] = d < red.size() ? red[d] : 0;
      }
      rows[t] = std::move(row);
    });
    std::uint64_t in = 0, with_beta = 0, computed = 0, b0 = 0, b1 = 0;
    double dim_sum = 0;
    for (auto& row : rows) {
      dim_sum += row["dim"].get<int>();
      if (row.contains("in_window")) {
        ++with_beta;
        in += row["in_window"].get<bool>();
      }
      if (row.contains("reduced_b0")) {
        ++computed;
        b0 += row["reduced_b0"] == 0;
        b1 += row["reduced_b1"] == 0;
      }
      rep.records.push_back(std::move(row));
    }
    auto frac = [](std::uint64_t a, std::uint64_t b) { return b ? nlohmann::json(static_cast<double>(a) / b) : nlohmann::json(nullptr); };
    per_n.push_back({{"n", n},
                     {"beta", beta ? nlohmann::json(*beta) : nlohmann::json(nullptr)},
                     {"mean_dim", trials ? dim_sum / static_cast<double>(trials) : 0.0},
                     {"fraction_in_window", frac(in, with_beta)},
                     {"betti_computed", computed},
                     {"b0_vanishing_rate", frac(b0, computed)},
                     {"b1_vanishing_rate", frac(b1, computed)}});
  }
  rep.aggregate = {{"per_n", per_n}};
  return rep;
}

}  // namespace amplex
