#include "regraph/summary.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <thread>

#include "regraph/census.hpp"
#include "regraph/enumeration.hpp"
#include "regraph/moments.hpp"

namespace regraph {

SamplerSpec SamplerSpec::parse(const std::string& name, Vertex n, std::uint32_t d, double p,
                               std::uint32_t doubles) {
  SamplerSpec s;
  s.n = n;
  s.d = d;
  s.p = p;
  s.doubles = doubles;
  if (name == "gnp") s.kind = Kind::kGnp;
  else if (name == "pairing") s.kind = Kind::kPairing;
  else if (name == "pstar" || name == "loopless-pairing") s.kind = Kind::kLooplessPairing;
  else if (name == "pi" || name == "disjoint-doubles") s.kind = Kind::kDisjointDoubles;
  else if (name == "grd") s.kind = Kind::kGrd;
  else if (name == "mplus" || name == "superpose") s.kind = Kind::kMatchingSuperpose;
  else if (name == "munion" || name == "union") s.kind = Kind::kMatchingUnion;
  else if (name == "moplus" || name == "simple-conditioned") s.kind = Kind::kMatchingSimple;
  else if (name == "dout") s.kind = Kind::kDoutUndirected;
  else throw std::invalid_argument("unknown model name: " + name);
  return s;
}

std::string SamplerSpec::name() const {
  switch (kind) {
    case Kind::kGnp: return "gnp";
    case Kind::kPairing: return "pairing";
    case Kind::kLooplessPairing: return "pstar";
    case Kind::kDisjointDoubles: return "pi";
    case Kind::kGrd: return "grd";
    case Kind::kMatchingSuperpose: return "mplus";
    case Kind::kMatchingUnion: return "munion";
    case Kind::kMatchingSimple: return "moplus";
    case Kind::kDoutUndirected: return "dout";
  }
  return "?";
}

Multigraph SamplerSpec::sample(RngStream& rng) const {
  switch (kind) {
    case Kind::kGnp:
      return sample_gnp(n, p, rng);
    case Kind::kPairing:
      return sample_pairing(n, d, PairingCondition::none(), rng, rejection_cap).project();
    case Kind::kLooplessPairing:
      return sample_pairing(n, d, PairingCondition::loopless(), rng, rejection_cap).project();
    case Kind::kDisjointDoubles:
      return sample_pairing(n, d, PairingCondition::disjoint_doubles(doubles), rng,
                            rejection_cap)
          .project();
    case Kind::kGrd:
      return sample_grd(n, d, rng, rejection_cap);
    case Kind::kMatchingSuperpose:
      return sample_matching_model(n, d, MatchingModelMode::kSuperpose, rng);
    case Kind::kMatchingUnion:
      return sample_matching_model(n, d, MatchingModelMode::kUnion, rng);
    case Kind::kMatchingSimple:
      return sample_matching_model(n, d, MatchingModelMode::kSimpleConditioned, rng,
                                   rejection_cap);
    case Kind::kDoutUndirected:
      return sample_dout_undirected(n, d, rng);
  }
  throw std::logic_error("unreachable");
}

double SampleSummary::se(std::size_t i) const {
  return std::sqrt(covariance[i][i] / static_cast<double>(trials));
}

std::size_t SampleSummary::index_of(const std::string& name) const {
  auto it = std::find(statistics.begin(), statistics.end(), name);
  if (it == statistics.end())
    throw std::invalid_argument("SampleSummary: unknown statistic " + name);
  return static_cast<std::size_t>(it - statistics.begin());
}

double extract_statistic(const std::string& name, const Multigraph& g) {
  if (name == "edges") return static_cast<double>(g.pair_count());
  if (name == "edge_mass") return static_cast<double>(g.total_multiplicity());
  CensusCounts c = multigraph_census(g);
  if (name == "loops") return static_cast<double>(c.loops);
  if (name == "doubles") return static_cast<double>(c.doubles_exact);
  if (name == "doubles_min") return static_cast<double>(c.doubles_at_least);
  if (name == "triangles") return static_cast<double>(c.triangles);
  if (name == "mult3plus") return static_cast<double>(c.mult3_plus);
  if (name == "simple") return c.simple ? 1.0 : 0.0;
  if (name == "pm_count")
    return static_cast<double>(count_perfect_matchings(g, {}));
  if (name == "pm_count_pairing") {
    MatchingCountOptions opts;
    opts.parallel_edges_distinct = true;
    return static_cast<double>(count_perfect_matchings(g, opts));
  }
  throw std::invalid_argument("unknown statistic name: " + name);
}

void parallel_trials(std::uint64_t trials, unsigned workers,
                     const std::function<void(std::uint64_t)>& fn) {
  if (workers == 0)
    workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  if (workers == 1 || trials < 2 * workers) {
    for (std::uint64_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::uint64_t t = next.fetch_add(1);
        if (t >= trials) return;
        fn(t);
      }
    });
  }
  for (auto& th : pool) th.join();
}

SampleSummary empirical_summary(const SamplerSpec& model,
                                const std::vector<std::string>& statistics,
                                std::uint64_t trials, const RngStream& rng, unsigned workers) {
  if (trials < 2) throw std::invalid_argument("empirical_summary: trials >= 2 required");
  for (const auto& s : statistics) extract_statistic(s, Multigraph(2));  // validate names
  std::size_t k = statistics.size();
  // Per-trial values land in their slot; the fold below runs in trial order,
  // so the summary is independent of the worker count.
  std::vector<std::vector<double>> values(trials);
  parallel_trials(trials, workers, [&](std::uint64_t t) {
    RngStream local(rng.seed(), rng.stream() + 1 + t);
    Multigraph g = model.sample(local);
    std::vector<double> row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = extract_statistic(statistics[i], g);
    values[t] = std::move(row);
  });

  SampleSummary out;
  out.statistics = statistics;
  out.trials = trials;
  out.mean.assign(k, 0.0);
  out.covariance.assign(k, std::vector<double>(k, 0.0));
  // Welford-style streaming update in trial order.
  for (std::uint64_t t = 0; t < trials; ++t) {
    double w = 1.0 / static_cast<double>(t + 1);
    std::vector<double> delta(k);
    for (std::size_t i = 0; i < k; ++i) delta[i] = values[t][i] - out.mean[i];
    for (std::size_t i = 0; i < k; ++i) out.mean[i] += delta[i] * w;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        out.covariance[i][j] += delta[i] * (values[t][j] - out.mean[j]);
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out.covariance[i][j] /= static_cast<double>(trials - 1);
  return out;
}

EmpiricalTv tv_distance_empirical(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b, RngStream& rng,
                                  unsigned bootstrap) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("tv_distance_empirical: empty sample set");
  auto plug_in = [](const std::map<std::string, double>& fa,
                    const std::map<std::string, double>& fb) {
    double tv = 0;
    for (const auto& [key, pa] : fa) {
      auto it = fb.find(key);
      tv += std::abs(pa - (it == fb.end() ? 0.0 : it->second));
    }
    for (const auto& [key, pb] : fb)
      if (!fa.count(key)) tv += pb;
    return tv / 2.0;
  };
  auto freq = [](const std::vector<std::string>& xs) {
    std::map<std::string, double> f;
    for (const auto& x : xs) f[x] += 1.0 / static_cast<double>(xs.size());
    return f;
  };
  EmpiricalTv out;
  out.tv = plug_in(freq(a), freq(b));
  std::vector<double> boots(bootstrap);
  for (unsigned r = 0; r < bootstrap; ++r) {
    std::vector<std::string> ra(a.size()), rb(b.size());
    for (auto& x : ra) x = a[rng.below(a.size())];
    for (auto& x : rb) x = b[rng.below(b.size())];
    boots[r] = plug_in(freq(ra), freq(rb));
  }
  double m = 0;
  for (double v : boots) m += v;
  m /= bootstrap;
  double var = 0;
  for (double v : boots) var += (v - m) * (v - m);
  out.bootstrap_se = bootstrap > 1 ? std::sqrt(var / (bootstrap - 1)) : 0.0;
  return out;
}

ConcentrationReport concentration_report(const SamplerSpec& model, std::uint64_t trials,
                                         const RngStream& rng, const ModelLaw* exact_law,
                                         const std::vector<double>& c_values) {
  if (model.n > 24)
    throw std::invalid_argument("concentration_report: n <= 24 required (exact Y per sample)");
  ConcentrationReport rep;
  rep.trials = trials;
  rep.c_values = c_values;
  rep.cover_mode = model.kind == SamplerSpec::Kind::kDisjointDoubles;

  std::vector<double> xs(trials), ws(trials), ys(trials), yps(trials);
  std::atomic<std::uint64_t> violations{0};
  parallel_trials(trials, 0, [&](std::uint64_t t) {
    RngStream local(rng.seed(), rng.stream() + 1 + t);
    Multigraph g = model.sample(local);
    CensusCounts c = multigraph_census(g);
    xs[t] = static_cast<double>(c.doubles_exact);
    ws[t] = static_cast<double>(c.triangles);
    MatchingCountOptions opts;
    if (rep.cover_mode) {
      for (const auto& [pair, mult] : g.edges())
        if (mult == 2) opts.must_cover.push_back(pair);
    }
    BigCount y = count_perfect_matchings(g, opts);
    ys[t] = static_cast<double>(y);
    MatchingCountOptions popts = opts;
    popts.parallel_edges_distinct = true;
    yps[t] = static_cast<double>(count_perfect_matchings(g, popts));
    if (rep.cover_mode) {
      // Contract check: recount by filtering an explicit enumeration.
      Multigraph capped = g;
      capped.cap_multiplicities();
      std::uint64_t covered = 0;
      for (const auto& m : perfect_matchings_of(capped)) {
        bool covers = true;
        for (const auto& pr : opts.must_cover) {
          bool found = false;
          for (const auto& mp : m.pairs)
            if (mp == pr) found = true;
          if (!found) covers = false;
        }
        if (covers) ++covered;
      }
      if (BigCount(covered) != y) violations.fetch_add(1);
    }
  });
  rep.cover_violations = violations.load();

  auto mean_of = [](const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m += x;
    return m / static_cast<double>(v.size());
  };
  auto var_of = [&](const std::vector<double>& v, double m) {
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return v.size() > 1 ? s / static_cast<double>(v.size() - 1) : 0.0;
  };
  double mx = mean_of(xs), mw = mean_of(ws), my = mean_of(ys);
  rep.y_mean = my;
  rep.y_se = std::sqrt(var_of(ys, my) / static_cast<double>(trials));
  rep.y_mean_pairing = mean_of(yps);
  double my2 = 0;
  for (double y : ys) my2 += y * y;
  my2 /= static_cast<double>(trials);
  rep.var_ratio_emp = my > 0 ? my2 / (my * my) : 0.0;
  rep.ratio_predicted = rep.cover_mode
                            ? 1.0 + 1.0 / (6.0 * std::pow(model.d, 3))
                            : 1.0 + 1.0 / (4.0 * model.d * model.d) +
                                  2.0 / (3.0 * std::pow(model.d, 3));
  rep.predicted_exceed_bound = 1.0 / (static_cast<double>(model.d) * model.d);
  double logd = std::log(std::max<double>(model.d, 2));
  for (double c : c_values) {
    double tx = c * std::sqrt(logd * std::max(mx, 1e-12));
    double tw = c * std::sqrt(logd * std::max(mw, 1e-12));
    double ex = 0, ew = 0;
    for (double x : xs) ex += std::abs(x - mx) > tx ? 1.0 : 0.0;
    for (double w : ws) ew += std::abs(w - mw) > tw ? 1.0 : 0.0;
    rep.exceed_x.push_back(ex / static_cast<double>(trials));
    rep.exceed_w.push_back(ew / static_cast<double>(trials));
  }
  if (exact_law) {
    // E Y = sum over the support of P(G) * (simple matching count of G).
    Rational ey = 0;
    for (std::size_t i = 0; i < exact_law->dist.size(); ++i) {
      BigCount y = count_perfect_matchings(exact_law->graph_of(i), {});
      ey += exact_law->dist.prob(i) * Rational(y);
    }
    rep.ey_oracle = static_cast<double>(ey);
    rep.y_z = rep.y_se > 0 ? std::abs(rep.y_mean - rep.ey_oracle) / rep.y_se : 0.0;
  }
  return rep;
}

}  // namespace regraph
