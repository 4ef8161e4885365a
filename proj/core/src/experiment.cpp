#include "regraph/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "regraph/census.hpp"
#include "regraph/embed.hpp"
#include "regraph/enumeration.hpp"
#include "regraph/io.hpp"
#include "regraph/moments.hpp"
#include "regraph/quantile.hpp"
#include "regraph/sandwich.hpp"
#include "regraph/summary.hpp"
#include "regraph/thresholds.hpp"

namespace regraph {
namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<unsigned> parse_degree_list(const std::string& text) {
  std::vector<unsigned> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ','))
    if (!trim(cur).empty()) out.push_back(static_cast<unsigned>(std::stoul(trim(cur))));
  if (out.empty()) throw usage_error("empty degree list: '" + text + "'");
  return out;
}

std::string csv_row(const std::string& name, const std::string& n, const std::string& dp,
                    std::uint64_t trials, std::uint64_t seed, double mean, double se,
                    double predicted, double z) {
  std::ostringstream os;
  os << name << ',' << n << ',' << dp << ',' << trials << ',' << seed << ','
     << fmt_double(mean) << ',' << fmt_double(se) << ',' << fmt_double(predicted) << ','
     << fmt_double(z);
  return os.str();
}

std::filesystem::path ensure_out_dir(const ExperimentConfig& cfg) {
  std::filesystem::path dir = cfg.get("out", "out");
  std::filesystem::create_directories(dir);
  return dir;
}

void emit(ResultSet& rs, const std::filesystem::path& path, const std::string& contents) {
  write_file(path.string(), contents);
  rs.files_written.push_back(path.string());
}

SamplerSpec spec_from_config(const ExperimentConfig& cfg) {
  return SamplerSpec::parse(cfg.require("model"),
                            static_cast<Vertex>(cfg.require_int("n")),
                            static_cast<std::uint32_t>(cfg.get_int("d", 0)),
                            cfg.get_double("p", 0.0),
                            static_cast<std::uint32_t>(cfg.get_int("i", 0)));
}

ResultSet run_sample(const ExperimentConfig& cfg) {
  ResultSet rs;
  auto dir = ensure_out_dir(cfg);
  SamplerSpec spec = spec_from_config(cfg);
  std::uint64_t trials = cfg.trials(), seed = cfg.seed();
  json report;
  report["kind"] = "sample";
  report["model"] = spec.name();
  double mean_edges = 0;
  bool pairing_family = spec.kind == SamplerSpec::Kind::kPairing ||
                        spec.kind == SamplerSpec::Kind::kLooplessPairing ||
                        spec.kind == SamplerSpec::Kind::kDisjointDoubles;
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStream rng(seed, 1 + t);
    std::string body;
    if (pairing_family) {
      PairingCondition cond = PairingCondition::none();
      if (spec.kind == SamplerSpec::Kind::kLooplessPairing) cond = PairingCondition::loopless();
      if (spec.kind == SamplerSpec::Kind::kDisjointDoubles)
        cond = PairingCondition::disjoint_doubles(spec.doubles);
      Pairing p = sample_pairing(spec.n, spec.d, cond, rng, spec.rejection_cap);
      body = serialize(p);
      mean_edges += static_cast<double>(p.project().pair_count());
    } else {
      Multigraph g = spec.sample(rng);
      body = serialize(g);
      mean_edges += static_cast<double>(g.pair_count());
    }
    emit(rs, dir / ("sample_" + std::to_string(t) + ".txt"), body);
  }
  mean_edges /= static_cast<double>(trials);
  rs.csv_rows.push_back(csv_row("mean_distinct_pairs", std::to_string(spec.n),
                                spec.kind == SamplerSpec::Kind::kGnp
                                    ? fmt_double(spec.p)
                                    : std::to_string(spec.d),
                                trials, seed, mean_edges, 0.0, 0.0, 0.0));
  report["mean_distinct_pairs"] = mean_edges;
  rs.json_report = report.dump(2);
  return rs;
}

ResultSet run_enumerate(const ExperimentConfig& cfg) {
  ResultSet rs;
  auto dir = ensure_out_dir(cfg);
  std::string op = cfg.require("op");
  json report;
  report["kind"] = "enumerate";
  report["op"] = op;
  if (op == "bipartite-count" || op == "bipartite-estimate") {
    BipartiteDegreePair dp{parse_degree_list(cfg.require("s")), parse_degree_list(cfg.require("t"))};
    if (op == "bipartite-count") {
      BigCount c = exact_bipartite_count(dp);
      BigCount c2 = exact_bipartite_count_alt(dp);
      report["count"] = c.str();
      report["count_alt"] = c2.str();
      rs.gates_passed = c == c2;
    } else {
      auto est = mckay_bipartite_estimate(dp);
      report["log_value"] = est.log_value;
      report["value"] = est.value;
      report["remainder_arg"] = est.remainder_arg;
      report["outside_hypothesis"] = est.outside_hypothesis;
    }
  } else if (op == "avoiding-count" || op == "avoiding-estimate") {
    AvoidanceInstance inst;
    inst.degrees = parse_degree_list(cfg.require("g"));
    if (cfg.has("x_edges")) {
      // "u-v;u-v" edge list
      std::istringstream is(cfg.require("x_edges"));
      std::string tok;
      while (std::getline(is, tok, ';')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos) throw usage_error("bad x_edges entry: " + tok);
        inst.forbidden.push_back(
            {static_cast<Vertex>(std::stoul(tok.substr(0, dash))),
             static_cast<Vertex>(std::stoul(tok.substr(dash + 1)))});
      }
    }
    if (op == "avoiding-count") {
      report["count"] = exact_avoiding_count(inst).str();
    } else {
      auto est = mckay_avoiding_estimate(inst);
      report["log_value"] = est.log_value;
      report["value"] = est.value;
      report["lambda"] = est.lambda;
      report["mu"] = est.mu;
      report["delta_hat"] = est.delta_hat;
      report["remainder_arg"] = est.remainder_arg;
    }
  } else if (op == "pm-count") {
    Multigraph g = parse_multigraph(read_file(cfg.require("graph")));
    MatchingCountOptions opts;
    opts.parallel_edges_distinct = cfg.get_int("parallel", 0) != 0;
    report["count"] = count_perfect_matchings(g, opts).str();
  } else if (op == "matching-pairs") {
    unsigned n = static_cast<unsigned>(cfg.require_int("n"));
    unsigned k = static_cast<unsigned>(cfg.require_int("k"));
    std::string mode = cfg.get("mode", "formula");
    if (mode == "exact")
      report["count"] = matching_pair_count_exact(n, k).str();
    else
      report["main_term"] = matching_pair_count_formula(n, k);
  } else if (op == "model-dist") {
    ExactModelSpec spec;
    std::string model = cfg.require("model");
    if (model == "pairing") spec.model = ExactModel::kPairing;
    else if (model == "pstar" || model == "loopless-pairing") spec.model = ExactModel::kLooplessPairing;
    else if (model == "mplus") spec.model = ExactModel::kMatchingSuperpose;
    else if (model == "grd") spec.model = ExactModel::kGrd;
    else if (model == "pstar-plus-matchings") spec.model = ExactModel::kPairingPlusMatchings;
    else throw usage_error("model-dist: unknown model " + model);
    spec.n = static_cast<Vertex>(cfg.require_int("n"));
    spec.d = static_cast<std::uint32_t>(cfg.get_int("d", 0));
    spec.j = static_cast<std::uint32_t>(cfg.get_int("j", 0));
    ModelLaw law = exact_model_distribution(spec);
    emit(rs, dir / (model + "_law.txt"), serialize(law.dist));
    report["support"] = law.dist.size();
  } else if (op == "threshold") {
    ThresholdFunctions th;
    report["value"] = th.eval(cfg.require("which"), cfg.get_double("x", 1.0));
  } else {
    throw usage_error("enumerate: unknown op " + op);
  }
  rs.json_report = report.dump(2);
  emit(rs, dir / "enumerate.json", rs.json_report);
  return rs;
}

ResultSet run_couple(const ExperimentConfig& cfg) {
  ResultSet rs;
  auto dir = ensure_out_dir(cfg);
  std::string op = cfg.get("op", "strassen");
  json report;
  report["kind"] = "couple";
  report["op"] = op;
  if (op == "strassen") {
    FiniteDistribution mux = parse_finite_distribution(read_file(cfg.require("x")));
    FiniteDistribution muy = parse_finite_distribution(read_file(cfg.require("y")));
    std::string bad_kind = cfg.get("bad", "inequality");
    if (bad_kind != "inequality") throw usage_error("couple: only bad=inequality supported");
    Relation bad = Relation::inequality(mux, muy);
    auto res = strassen_deficiency(mux, muy, bad);
    JointCoupling jc = build_optimal_coupling(mux, muy, bad);
    report["deficiency"] = static_cast<double>(res.deficiency);
    report["failure_mass"] = static_cast<double>(jc.failure_mass);
    report["witness_size"] = res.witness.size();
    rs.gates_passed = res.deficiency == jc.failure_mass;
    emit(rs, dir / "coupling.txt", serialize(jc));
  } else if (op == "quantile") {
    IntDistribution a = IntDistribution::binomial(
        static_cast<std::uint64_t>(cfg.require_int("n1")), cfg.get_double("p1", 0.5));
    IntDistribution b = IntDistribution::binomial(
        static_cast<std::uint64_t>(cfg.require_int("n2")), cfg.get_double("p2", 0.5));
    auto qc = quantile_coupling(a, b);
    report["dominated"] = qc.dominated;
    report["failure_mass"] = static_cast<double>(qc.coupling.failure_mass);
    emit(rs, dir / "coupling.txt", serialize(qc.coupling));
  } else {
    throw usage_error("couple: unknown op " + op);
  }
  rs.json_report = report.dump(2);
  emit(rs, dir / "couple.json", rs.json_report);
  return rs;
}

ResultSet run_moments(const ExperimentConfig& cfg) {
  ResultSet rs;
  auto dir = ensure_out_dir(cfg);
  SamplerSpec spec = spec_from_config(cfg);
  std::uint64_t trials = std::max<std::uint64_t>(2, cfg.trials());
  std::uint64_t seed = cfg.seed();
  std::vector<std::string> stats;
  {
    std::istringstream is(cfg.get("stats", "doubles,triangles"));
    std::string tok;
    while (std::getline(is, tok, ','))
      if (!trim(tok).empty()) stats.push_back(trim(tok));
  }
  RngStream base(seed, 0);
  SampleSummary sum = empirical_summary(spec, stats, trials, base,
                                        static_cast<unsigned>(cfg.get_int("workers", 0)));
  std::optional<MomentPrediction> pred;
  if (spec.d >= 3) pred = predicted_moments(spec.n, spec.d);
  double gate_z = cfg.get_double("gate_z", 0.0);
  double gate_rel = cfg.get_double("gate_rel", 0.0);
  json report;
  report["kind"] = "moments";
  report["model"] = spec.name();
  json rows = json::array();
  for (std::size_t i = 0; i < stats.size(); ++i) {
    double predicted = 0.0;
    if (pred) {
      if (stats[i] == "doubles") predicted = pred->ex;
      if (stats[i] == "triangles") predicted = pred->ew;
    }
    double se = sum.se(i);
    double z = (se > 0 && predicted != 0.0) ? (sum.mean[i] - predicted) / se : 0.0;
    rs.csv_rows.push_back(csv_row(stats[i], std::to_string(spec.n),
                                  spec.kind == SamplerSpec::Kind::kGnp
                                      ? fmt_double(spec.p)
                                      : std::to_string(spec.d),
                                  trials, seed, sum.mean[i], se, predicted, z));
    json row;
    row["stat"] = stats[i];
    row["mean"] = sum.mean[i];
    row["se"] = se;
    row["predicted"] = predicted;
    row["z"] = z;
    rows.push_back(row);
    if (predicted != 0.0) {
      if (gate_z > 0 && std::abs(z) > gate_z) rs.gates_passed = false;
      if (gate_rel > 0 && std::abs(sum.mean[i] - predicted) > gate_rel * std::abs(predicted))
        rs.gates_passed = false;
    }
  }
  report["rows"] = rows;
  rs.json_report = report.dump(2);
  emit(rs, dir / "moments.csv", rs.csv_text());
  emit(rs, dir / "moments.json", rs.json_report);
  return rs;
}

ResultSet run_sandwich(const ExperimentConfig& cfg) {
  ResultSet rs;
  auto dir = ensure_out_dir(cfg);
  Vertex n = static_cast<Vertex>(cfg.require_int("n"));
  std::uint32_t d = static_cast<std::uint32_t>(cfg.require_int("d"));
  double x = cfg.get_double("x", 4.0);
  std::uint64_t trials = cfg.trials(), seed = cfg.seed();
  std::uint64_t contained = 0, decoupled = 0;
  json stages_seen = json::object();
  for (std::uint64_t t = 0; t < trials; ++t) {
    RngStream rng(seed, 1 + t);
    SandwichReport rep = sandwich_run(n, d, x, rng);
    if (rep.contained) ++contained;
    if (rep.decoupled) ++decoupled;
    for (const auto& st : rep.stages) {
      auto& bucket = stages_seen[st.name];
      bucket["attempted"] = bucket.value("attempted", 0) + (st.attempted ? 1 : 0);
      bucket["ok"] = bucket.value("ok", 0) + (st.ok ? 1 : 0);
    }
  }
  double rate = static_cast<double>(contained) / static_cast<double>(trials);
  rs.csv_rows.push_back(csv_row("containment_rate", std::to_string(n), std::to_string(d),
                                trials, seed, rate, 0.0, cfg.get_double("gate_rate", 0.0),
                                0.0));
  json report;
  report["kind"] = "sandwich";
  report["x"] = x;
  report["containment_rate"] = rate;
  report["decoupled_rate"] = static_cast<double>(decoupled) / static_cast<double>(trials);
  report["stages"] = stages_seen;
  double gate_rate = cfg.get_double("gate_rate", 0.0);
  if (gate_rate > 0 && rate < gate_rate) rs.gates_passed = false;
  rs.json_report = report.dump(2);
  emit(rs, dir / "sandwich.csv", rs.csv_text());
  emit(rs, dir / "sandwich.json", rs.json_report);
  return rs;
}

ResultSet run_micro_study(const ExperimentConfig& cfg) {
  ResultSet rs;
  auto dir = ensure_out_dir(cfg);
  Vertex n = static_cast<Vertex>(cfg.get_int("n", 4));
  std::uint32_t d = static_cast<std::uint32_t>(cfg.get_int("d", 2));
  // Exact laws of P*(n,d) + M_1^+ versus P*(n,d+1).
  ModelLaw lhs = exact_model_distribution({ExactModel::kPairingPlusMatchings, n, d, 1});
  ModelLaw rhs = exact_model_distribution({ExactModel::kLooplessPairing, n,
                                           static_cast<std::uint32_t>(d + 1), 0});
  Rational tv = lhs.dist.tv_distance(rhs.dist);
  Relation bad = Relation::inequality(lhs.dist, rhs.dist);
  auto def = strassen_deficiency(lhs.dist, rhs.dist, bad);
  JointCoupling jc = build_optimal_coupling(lhs.dist, rhs.dist, bad);
  json report;
  report["kind"] = "micro-study";
  report["n"] = n;
  report["d"] = d;
  report["lhs_support"] = lhs.dist.size();
  report["rhs_support"] = rhs.dist.size();
  report["tv_distance"] = static_cast<double>(tv);
  report["strassen_deficiency"] = static_cast<double>(def.deficiency);
  report["coupling_failure_mass"] = static_cast<double>(jc.failure_mass);
  // Identity check: the minimal equality-failure equals the TV distance.
  rs.gates_passed = (tv == def.deficiency) && (jc.failure_mass == def.deficiency);
  report["identity_holds"] = rs.gates_passed;
  rs.csv_rows.push_back(csv_row("tv_vs_deficiency", std::to_string(n), std::to_string(d), 1,
                                cfg.seed(), static_cast<double>(tv), 0.0,
                                static_cast<double>(def.deficiency), 0.0));
  emit(rs, dir / "lhs_law.txt", serialize(lhs.dist));
  emit(rs, dir / "rhs_law.txt", serialize(rhs.dist));
  emit(rs, dir / "coupling.txt", serialize(jc));
  rs.json_report = report.dump(2);
  emit(rs, dir / "micro_study.json", rs.json_report);
  return rs;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_text(read_file(path));
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw usage_error("config line is not key = value: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw usage_error("config line with empty key");
    cfg.values[key] = value;
  }
  if (cfg.values.count("kind")) cfg.kind = cfg.values["kind"];
  return cfg;
}

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

std::string ExperimentConfig::require(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw usage_error("missing required config key: " + key);
  return it->second;
}

std::int64_t ExperimentConfig::get_int(const std::string& key, std::int64_t fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  try {
    return std::stoll(it->second);
  } catch (const std::exception&) {
    throw usage_error("config key " + key + " is not an integer: " + it->second);
  }
}

std::int64_t ExperimentConfig::require_int(const std::string& key) const {
  require(key);
  return get_int(key, 0);
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  auto it = values.find(key);
  if (it == values.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw usage_error("config key " + key + " is not a number: " + it->second);
  }
}

std::uint64_t ExperimentConfig::seed() const {
  if (!has("seed")) throw usage_error("seed is mandatory (no wall-clock seeding)");
  return static_cast<std::uint64_t>(get_int("seed", 0));
}

std::uint64_t ExperimentConfig::trials() const {
  std::int64_t t = get_int("trials", 1);
  if (t < 1) throw usage_error("trials >= 1 required");
  return static_cast<std::uint64_t>(t);
}

std::string ExperimentConfig::echo() const {
  std::ostringstream os;
  os << "kind = " << kind << '\n';
  for (const auto& [k, v] : values)
    if (k != "kind") os << k << " = " << v << '\n';
  return os.str();
}

const char* ResultSet::csv_header() { return "name,n,d_or_p,trials,seed,mean,se,predicted,z"; }

std::string ResultSet::csv_text() const {
  std::ostringstream os;
  os << csv_header() << '\n';
  for (const auto& row : csv_rows) os << row << '\n';
  return os.str();
}

ResultSet run_experiment(const ExperimentConfig& cfg) {
  if (cfg.kind.empty()) throw usage_error("config needs a kind");
  cfg.seed();  // mandatory everywhere
  ResultSet rs;
  if (cfg.kind == "sample") rs = run_sample(cfg);
  else if (cfg.kind == "enumerate") rs = run_enumerate(cfg);
  else if (cfg.kind == "couple") rs = run_couple(cfg);
  else if (cfg.kind == "moments") rs = run_moments(cfg);
  else if (cfg.kind == "sandwich") rs = run_sandwich(cfg);
  else if (cfg.kind == "micro-study") rs = run_micro_study(cfg);
  else throw usage_error("unknown experiment kind: " + cfg.kind);
  rs.config_echo = cfg.echo();
  auto dir = ensure_out_dir(cfg);
  write_file((dir / "config_echo.txt").string(), rs.config_echo);
  rs.files_written.push_back((dir / "config_echo.txt").string());
  return rs;
}

}  // namespace regraph
