#include "regraph/embed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>

#include "regraph/quantile.hpp"
#include "regraph/samplers.hpp"

namespace regraph {

RejectionFilter::RejectionFilter(Vertex n, std::uint32_t d, double fn, Target target)
    : n_(n), d_(d), fn_(fn) {
  if (!(fn > 1.0)) throw std::invalid_argument("RejectionFilter: fn > 1 required");
  proposal_ = exact_model_distribution({ExactModel::kMatchingSuperpose, n, d, 0});
  target_law_ = exact_model_distribution(
      {target == Target::kLooplessPairing ? ExactModel::kLooplessPairing : ExactModel::kGrd,
       n, d, 0});

  // Admissible outcomes: target-support graphs whose likelihood ratio
  // against the proposal stays within [1/fn, fn] (fn as an exact dyadic).
  Rational fn_exact(fn);
  std::vector<bool> keep(target_law_.dist.size(), false);
  Rational mass = 0;
  for (std::size_t i = 0; i < target_law_.dist.size(); ++i) {
    const std::string& key = target_law_.dist.key(i);
    Rational pm = proposal_.dist.prob_of(key);
    if (pm == 0) continue;
    Rational w = pm / target_law_.dist.prob(i);
    weights_[key] = static_cast<double>(w);
    bool ok = w * fn_exact >= 1 && w <= fn_exact;
    admissible_[key] = ok;
    if (ok) {
      keep[i] = true;
      mass += target_law_.dist.prob(i);
    }
  }
  admissible_mass_ = static_cast<double>(mass);
  accepted_law_ = target_law_.dist.restricted(keep);
}

double RejectionFilter::weight_of(const std::string& key) const {
  auto it = weights_.find(key);
  return it == weights_.end() ? std::numeric_limits<double>::infinity() : it->second;
}

bool RejectionFilter::in_admissible_set(const std::string& key) const {
  auto it = admissible_.find(key);
  return it != admissible_.end() && it->second;
}

const RejectionFilter& shared_rejection_filter(Vertex n, std::uint32_t d, double fn,
                                               RejectionFilter::Target target) {
  static std::mutex mu;
  static std::map<std::tuple<Vertex, std::uint32_t, double, int>,
                  std::unique_ptr<RejectionFilter>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, d, fn, static_cast<int>(target));
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<RejectionFilter>(n, d, fn, target)).first;
  return *it->second;
}

EmbeddingReport rejection_embed(const RejectionFilter& filter, std::uint32_t tau,
                                RngStream& rng) {
  std::uint32_t i_star = tau / filter.d();
  if (i_star < 1) throw std::invalid_argument("rejection_embed: tau < d leaves no rounds");
  EmbeddingReport rep;
  rep.outer = Multigraph(filter.n());
  double fn = filter.fn();
  std::uint32_t accept_step = 0, admissible_seen = 0;
  for (std::uint32_t i = 1; i <= i_star; ++i) {
    Multigraph h =
        sample_matching_model(filter.n(), filter.d(), MatchingModelMode::kSuperpose, rng);
    rep.outer.superpose(h);
    if (accept_step != 0) continue;
    std::string key = h.canonical_key();
    if (!filter.in_admissible_set(key)) continue;
    ++admissible_seen;
    double w = filter.weight_of(key);
    // Accept with probability 1/(fn * w); w >= 1/fn keeps this within [0,1].
    if (rng.u01() < 1.0 / (fn * w)) {
      rep.inner = h;
      accept_step = i;
    }
  }
  rep.contained = rep.inner.has_value() &&
                  contains(*rep.inner, rep.outer, ContainmentMode::kSubMultigraph);
  rep.diagnostics["i_star"] = i_star;
  rep.diagnostics["accept_step"] = accept_step;
  rep.diagnostics["admissible_seen"] = admissible_seen;
  rep.diagnostics["empty"] = rep.inner.has_value() ? 0.0 : 1.0;
  return rep;
}

namespace {

// Uniform k-subset of [n] \ {v}, returned as vertex ids.
std::vector<Vertex> heads_subset(Vertex n, Vertex v, std::uint64_t k, RngStream& rng) {
  auto raw = rng.subset(n - 1, k);
  std::vector<Vertex> out;
  out.reserve(raw.size());
  for (std::uint64_t w : raw) {
    Vertex u = static_cast<Vertex>(w) + 1;
    if (u >= v) ++u;
    out.push_back(u);
  }
  return out;
}

void add_undirected(Multigraph& g, Vertex u, Vertex v) {
  if (g.multiplicity(u, v) == 0) g.add_edge(u, v, 1);
}

// Uniform k-subset of the index range [0, pool_size) mapped through `pool`.
std::vector<Vertex> pool_subset(const std::vector<Vertex>& pool, std::uint64_t k,
                                RngStream& rng) {
  auto idx = rng.subset(pool.size(), k);
  std::vector<Vertex> out;
  out.reserve(k);
  for (auto i : idx) out.push_back(pool[i]);
  return out;
}

}  // namespace

EmbeddingReport dout_gnp_embed(Vertex n, double p, const DoutOptions& opts, RngStream& rng,
                               OutCouplingState* state_out) {
  if (n < 3) throw std::invalid_argument("dout_gnp_embed: n >= 3 required");
  if (!(p > 0.0) || !(p <= 1.0)) throw std::invalid_argument("dout_gnp_embed: p in (0,1]");
  if (opts.d < 1 || opts.d >= n) throw std::invalid_argument("dout_gnp_embed: 1 <= d <= n-1");
  double logn = std::log(static_cast<double>(n));
  double x = p * static_cast<double>(n) / logn;
  if (x < 1.0 + 1e-3)
    throw std::invalid_argument("dout_gnp_embed: p = x log n / n needs x >= 1 + 1e-3");
  std::uint32_t d = opts.d;

  EmbeddingReport rep;
  rep.diagnostics["x"] = x;
  OutCouplingState state;
  state.p = p;

  if (x >= opts.easy_regime_boundary) {
    // One-layer route: expose the directed graph, check the minimum
    // out-degree, subsample d out-neighbours per vertex.
    double p_arrow = 1.0 - std::sqrt(1.0 - p);
    rep.diagnostics["regime"] = 1;
    rep.diagnostics["p_arrow"] = p_arrow;
    std::vector<std::vector<Vertex>> arcs(n + 1);
    std::uint64_t delta_plus = n;
    for (Vertex v = 1; v <= n; ++v) {
      std::uint64_t deg = rng.binomial(n - 1, p_arrow);
      delta_plus = std::min(delta_plus, deg);
      arcs[v] = heads_subset(n, v, deg, rng);
    }
    rep.diagnostics["delta_plus"] = static_cast<double>(delta_plus);
    rep.outer = Multigraph(n);
    for (Vertex v = 1; v <= n; ++v)
      for (Vertex w : arcs[v]) add_undirected(rep.outer, v, w);

    Digraph inner(n);
    if (delta_plus >= d) {
      for (Vertex v = 1; v <= n; ++v)
        for (Vertex w : pool_subset(arcs[v], d, rng)) inner.add_arc(v, w);
    } else {
      rep.decoupled = true;
      rep.notes.push_back("min out-degree below d; inner resampled independently");
      inner = sample_dout(n, d, rng);
    }
    rep.inner_directed = inner;
    rep.inner = inner.to_undirected();
    rep.contained = contains(*rep.inner, rep.outer, ContainmentMode::kSimpleSubgraph);
    if (state_out) *state_out = state;
    return rep;
  }

  // Hard regime: three layers. Densities chosen so that
  // (1 - p1)(1 - p2) = 1 - p exactly; no sprinkle needed.
  double eps = std::min(x - 1.0, opts.eps0);
  state.p1 = (eps / 2.0) * logn / static_cast<double>(n);
  state.p2 = 1.0 - (1.0 - p) / (1.0 - state.p1);
  state.p3 = state.p2;
  state.p1_arrow = 1.0 - std::sqrt(1.0 - state.p1);
  state.p3_arrow = 1.0 - std::sqrt(1.0 - state.p2);
  rep.diagnostics["regime"] = 3;
  rep.diagnostics["eps"] = eps;

  // Layer 1: directed bottom layer; good = out-degree >= d.
  std::vector<std::vector<Vertex>> layer1(n + 1);
  std::vector<bool> good(n + 1, false);
  std::vector<Vertex> good_list, bad_list;
  for (Vertex v = 1; v <= n; ++v) {
    std::uint64_t deg = rng.binomial(n - 1, state.p1_arrow);
    layer1[v] = heads_subset(n, v, deg, rng);
    good[v] = deg >= d;
    (good[v] ? good_list : bad_list).push_back(v);
  }
  state.good_count = good_list.size();
  state.bad_count = bad_list.size();
  state.f1 = static_cast<double>(state.bad_count) <=
             std::pow(static_cast<double>(n), 1.0 - eps / 8.0);

  rep.outer = Multigraph(n);
  for (Vertex v = 1; v <= n; ++v)
    for (Vertex w : layer1[v]) add_undirected(rep.outer, v, w);

  // Middle layer restricted to pairs with at most one bad endpoint.
  // Good-good pairs: plain Bernoulli sprinkle among good vertices.
  for (std::size_t a = 0; a < good_list.size(); ++a) {
    // geometric skipping over the pairs (good_a, good_b), a < b
    if (state.p2 <= 0.0) break;
    double log1mp = std::log1p(-state.p2);
    std::uint64_t row = good_list.size() - a - 1;
    std::uint64_t i = 0;
    while (row > 0) {
      double u = rng.u01();
      double skip = std::floor(std::log1p(-u) / log1mp);
      if (skip >= static_cast<double>(row - i)) break;
      i += static_cast<std::uint64_t>(skip);
      add_undirected(rep.outer, good_list[a], good_list[a + 1 + i]);
      if (++i >= row) break;
    }
  }

  // Bad-good pairs, grouped by their unique bad endpoint (which becomes the
  // tail after orientation).
  std::uint64_t x_pool = good_list.size();
  std::uint64_t y_pool = bad_list.empty() ? 0 : bad_list.size() - 1;
  std::vector<std::uint64_t> s_count(n + 1, 0);
  std::vector<std::vector<Vertex>> s_set(n + 1);
  bool f2 = true;
  for (Vertex v : bad_list) {
    s_count[v] = rng.binomial(x_pool, state.p2);
    s_set[v] = pool_subset(good_list, s_count[v], rng);
    for (Vertex w : s_set[v]) add_undirected(rep.outer, v, w);
    if (s_count[v] < d + 1) f2 = false;
  }
  state.f2 = f2;

  // Binomial domination for the label counts, shared by all bad vertices.
  bool domination = false;
  IntDistribution ell_dist, t_dist;
  if (!bad_list.empty() && y_pool > 0) {
    ell_dist = IntDistribution::binomial(d + 1, static_cast<double>(y_pool) /
                                                    static_cast<double>(n - 1));
    t_dist = IntDistribution::binomial(y_pool, state.p3_arrow);
    domination = quantile_coupling(ell_dist, t_dist).dominated;
  } else if (!bad_list.empty()) {
    // No bad heads at all: ell is forced to 0, vacuous domination.
    ell_dist = IntDistribution::point_mass(0);
    t_dist = IntDistribution::point_mass(0);
    domination = true;
  }
  state.domination = domination;

  // Per-bad-vertex label sampling; layer-3 arcs are built around the labels
  // on success and fresh on failure, so the outer law is exact either way.
  Digraph inner(n);
  bool any_vertex_failed = false;
  bool f3 = true;
  for (Vertex v : bad_list) {
    BadVertexRecord rec;
    rec.v = v;
    rec.s = s_count[v];
    std::vector<Vertex> bad_heads;
    bad_heads.reserve(bad_list.size() - 1);
    for (Vertex w : bad_list)
      if (w != v) bad_heads.push_back(w);

    std::uint64_t ell = 0, t = 0;
    if (y_pool > 0) {
      auto [lv, tv] = quantile_sample(ell_dist, t_dist, rng);
      ell = static_cast<std::uint64_t>(lv);
      t = static_cast<std::uint64_t>(tv);
    }
    rec.ell = ell;
    rec.t = t;

    // Distinct-label counts on each side (labels themselves are exchangeable,
    // so only the counts matter before heads are attached).
    std::set<std::uint64_t> ydistinct, xdistinct;
    for (std::uint64_t i = 0; i < ell; ++i) ydistinct.insert(rng.below(std::max<std::uint64_t>(y_pool, 1)));
    for (std::uint64_t i = 0; i < d + 1 - ell; ++i) xdistinct.insert(rng.below(std::max<std::uint64_t>(x_pool, 1)));
    rec.u_y = ell == 0 ? 0 : ydistinct.size();
    rec.u_x = (d + 1 - ell) == 0 ? 0 : xdistinct.size();
    std::uint64_t u = rec.u_x + rec.u_y;
    bool vertex_ok = true;
    if (u < d) {
      f3 = false;
      vertex_ok = false;
    }
    if (ell > t) vertex_ok = false;             // Y-side cannot embed
    if (s_count[v] < d + 1) vertex_ok = false;  // X-side cannot embed
    if (ell > 0 && y_pool == 0) vertex_ok = false;

    std::vector<Vertex> t_heads;
    std::vector<Vertex> inner_heads;
    if (vertex_ok) {
      // Y side: u_y heads inside the layer-3 out-set.
      std::vector<Vertex> y_heads = pool_subset(bad_heads, rec.u_y, rng);
      std::vector<Vertex> remaining;
      for (Vertex w : bad_heads)
        if (std::find(y_heads.begin(), y_heads.end(), w) == y_heads.end())
          remaining.push_back(w);
      std::vector<Vertex> extra = pool_subset(remaining, t - rec.u_y, rng);
      t_heads = y_heads;
      t_heads.insert(t_heads.end(), extra.begin(), extra.end());
      // X side: S' is a uniform (d+1)-subset of S, inner heads inside S'.
      std::vector<Vertex> s_prime = pool_subset(s_set[v], d + 1, rng);
      std::vector<Vertex> x_heads = pool_subset(s_prime, rec.u_x, rng);
      inner_heads = x_heads;
      inner_heads.insert(inner_heads.end(), y_heads.begin(), y_heads.end());
    } else {
      any_vertex_failed = true;
      rec.failed = true;
      t_heads = pool_subset(bad_heads, std::min<std::uint64_t>(t, bad_heads.size()), rng);
    }
    for (Vertex w : t_heads) add_undirected(rep.outer, v, w);

    if (vertex_ok) {
      // Uniform d-subset of the distinct heads.
      std::vector<Vertex> pick = pool_subset(inner_heads, d, rng);
      for (Vertex w : pick) inner.add_arc(v, w);
    }
    if (opts.keep_state) state.bad_records.push_back(rec);
  }
  state.f3 = f3;

  // Good vertices subsample their layer-1 out-arcs.
  for (Vertex v : good_list)
    for (Vertex w : pool_subset(layer1[v], d, rng)) inner.add_arc(v, w);

  bool failed = !state.f1 || !state.f2 || !f3 || any_vertex_failed;
  if (failed) {
    rep.decoupled = true;
    rep.notes.push_back("stage failure (F1/F2/F3 or label embedding); inner resampled");
    inner = sample_dout(n, d, rng);
  }
  rep.inner_directed = inner;
  rep.inner = inner.to_undirected();
  rep.contained = contains(*rep.inner, rep.outer, ContainmentMode::kSimpleSubgraph);
  rep.diagnostics["bad_count"] = static_cast<double>(state.bad_count);
  rep.diagnostics["domination"] = domination ? 1.0 : 0.0;
  rep.diagnostics["f1"] = state.f1 ? 1.0 : 0.0;
  rep.diagnostics["f2"] = state.f2 ? 1.0 : 0.0;
  rep.diagnostics["f3"] = state.f3 ? 1.0 : 0.0;
  if (state_out) *state_out = state;
  return rep;
}

}  // namespace regraph
