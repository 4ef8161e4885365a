#include "regraph/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace regraph {
namespace {

unsigned checked_sum(const std::vector<unsigned>& v) {
  unsigned s = 0;
  for (unsigned x : v) s += x;
  return s;
}

// Degree-multiset DP shared by both bipartite oracles. Processes the `cols`
// sequence one vertex at a time; the state is the sorted residual vector of
// the other side. Counting by grouped binomial choices keeps the state space
// polynomial for regular-ish sequences.
class BipartiteDP {
 public:
  BipartiteDP(std::vector<unsigned> rows, std::vector<unsigned> cols)
      : rows_(std::move(rows)), cols_(std::move(cols)) {}

  BigCount run() {
    std::sort(rows_.begin(), rows_.end(), std::greater<>());
    std::sort(cols_.begin(), cols_.end(), std::greater<>());
    return count(0, rows_);
  }

 private:
  BigCount count(std::size_t j, std::vector<unsigned> residual) {
    if (j == cols_.size()) {
      for (unsigned r : residual)
        if (r != 0) return 0;
      return 1;
    }
    std::sort(residual.begin(), residual.end(), std::greater<>());
    MemoKey key{j, residual};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    // Group equal residual values.
    std::vector<std::pair<unsigned, unsigned>> groups;  // (value, count)
    for (unsigned r : residual) {
      if (!groups.empty() && groups.back().first == r)
        ++groups.back().second;
      else
        groups.emplace_back(r, 1);
    }
    BigCount total = 0;
    std::vector<unsigned> take(groups.size(), 0);
    enumerate_compositions(groups, take, 0, cols_[j], residual, j, total);
    memo_.emplace(std::move(key), total);
    return total;
  }

  void enumerate_compositions(const std::vector<std::pair<unsigned, unsigned>>& groups,
                              std::vector<unsigned>& take, std::size_t gi, unsigned remaining,
                              const std::vector<unsigned>& residual, std::size_t j,
                              BigCount& total) {
    if (remaining == 0) {
      BigCount ways = 1;
      std::vector<unsigned> next;
      next.reserve(residual.size());
      for (std::size_t g = 0; g < groups.size(); ++g) {
        auto [value, cnt] = groups[g];
        if (take[g] > 0) ways *= binomial_big(cnt, take[g]);
        for (unsigned c = 0; c < take[g]; ++c) next.push_back(value - 1);
        for (unsigned c = take[g]; c < cnt; ++c) next.push_back(value);
      }
      total += ways * count(j + 1, std::move(next));
      return;
    }
    if (gi == groups.size()) return;
    auto [value, cnt] = groups[gi];
    unsigned cap = value >= 1 ? std::min(cnt, remaining) : 0;
    for (unsigned k = 0; k <= cap; ++k) {
      take[gi] = k;
      enumerate_compositions(groups, take, gi + 1, remaining - k, residual, j, total);
    }
    take[gi] = 0;
  }

  using MemoKey = std::pair<std::size_t, std::vector<unsigned>>;
  std::vector<unsigned> rows_, cols_;
  std::map<MemoKey, BigCount> memo_;
};

}  // namespace

unsigned BipartiteDegreePair::edge_total() const {
  unsigned ms = checked_sum(s), mt = checked_sum(t);
  if (ms != mt)
    throw std::invalid_argument("BipartiteDegreePair: sum(s) != sum(t)");
  return ms;
}

unsigned BipartiteDegreePair::max_degree() const {
  unsigned m = 0;
  for (unsigned x : s) m = std::max(m, x);
  for (unsigned x : t) m = std::max(m, x);
  return m;
}

unsigned BipartiteDegreePair::joint_degree_bound() const {
  std::vector<unsigned> ss = s, tt = t;
  std::sort(ss.begin(), ss.end(), std::greater<>());
  std::sort(tt.begin(), tt.end(), std::greater<>());
  unsigned s1 = ss.empty() ? 0 : ss[0];
  unsigned t1 = tt.empty() ? 0 : tt[0];
  unsigned j = 0;
  for (unsigned i = 0; i < s1 && i < tt.size(); ++i) j += tt[i];
  for (unsigned i = 0; i < t1 && i < ss.size(); ++i) j += ss[i];
  return j;
}

BigCount exact_bipartite_count(const BipartiteDegreePair& dp, unsigned size_cap) {
  unsigned m = dp.edge_total();
  if (m > size_cap)
    throw std::invalid_argument("exact_bipartite_count: instance above size cap");
  if (dp.max_degree() > std::max(dp.s.size(), dp.t.size())) return 0;
  return BipartiteDP(dp.s, dp.t).run();  // V side drives the recursion
}

BigCount exact_bipartite_count_alt(const BipartiteDegreePair& dp, unsigned size_cap) {
  unsigned m = dp.edge_total();
  if (m > size_cap)
    throw std::invalid_argument("exact_bipartite_count_alt: instance above size cap");
  if (dp.max_degree() > std::max(dp.s.size(), dp.t.size())) return 0;
  return BipartiteDP(dp.t, dp.s).run();  // U side drives the recursion
}

BipartiteEstimate mckay_bipartite_estimate(const BipartiteDegreePair& dp) {
  unsigned m = dp.edge_total();
  if (m < 1) throw std::invalid_argument("mckay_bipartite_estimate: M >= 1 required");
  double logv = std::lgamma(static_cast<double>(m) + 1.0);
  double s2 = 0, t2 = 0;
  for (unsigned x : dp.s) {
    logv -= std::lgamma(static_cast<double>(x) + 1.0);
    s2 += static_cast<double>(x) * (x - 1.0);
  }
  for (unsigned x : dp.t) {
    logv -= std::lgamma(static_cast<double>(x) + 1.0);
    t2 += static_cast<double>(x) * (x - 1.0);
  }
  logv -= s2 * t2 / (2.0 * static_cast<double>(m) * m);
  BipartiteEstimate est;
  est.log_value = logv;
  est.value = std::exp(logv);
  double delta = dp.max_degree();
  est.remainder_arg = delta * delta * delta * delta / m;
  est.outside_hypothesis = delta * delta >= static_cast<double>(m) / 6.0;
  return est;
}

namespace {

struct AvoidBacktracker {
  unsigned n;
  std::vector<unsigned> residual;
  std::vector<std::vector<bool>> blocked;  // forbidden or already used

  BigCount count() {
    // Complete the vertex with the largest residual degree; the deterministic
    // completion order means every admissible graph is produced exactly once.
    unsigned best = n, best_deg = 0;
    for (unsigned v = 0; v < n; ++v)
      if (residual[v] > best_deg) {
        best = v;
        best_deg = residual[v];
      }
    if (best == n) return 1;  // all residuals zero

    std::vector<unsigned> cands;
    for (unsigned u = 0; u < n; ++u)
      if (u != best && residual[u] > 0 && !blocked[best][u]) cands.push_back(u);
    if (cands.size() < best_deg) return 0;

    BigCount total = 0;
    std::vector<unsigned> chosen;
    pick(best, best_deg, cands, 0, best_deg, chosen, total);
    return total;
  }

  void pick(unsigned v, unsigned v_deg, const std::vector<unsigned>& cands, std::size_t from,
            unsigned need, std::vector<unsigned>& chosen, BigCount& total) {
    if (need == 0) {
      residual[v] = 0;
      for (unsigned u : chosen) {
        --residual[u];
        blocked[v][u] = blocked[u][v] = true;
      }
      total += count();
      for (unsigned u : chosen) {
        ++residual[u];
        blocked[v][u] = blocked[u][v] = false;
      }
      residual[v] = v_deg;
      return;
    }
    if (cands.size() - from < need) return;
    for (std::size_t i = from; i < cands.size(); ++i) {
      chosen.push_back(cands[i]);
      pick(v, v_deg, cands, i + 1, need - 1, chosen, total);
      chosen.pop_back();
    }
  }
};

}  // namespace

BigCount exact_avoiding_count(const AvoidanceInstance& inst, unsigned mass_cap) {
  unsigned n = static_cast<unsigned>(inst.degrees.size());
  unsigned mass = checked_sum(inst.degrees);
  if (mass > mass_cap)
    throw std::invalid_argument("exact_avoiding_count: instance above size cap");
  if (mass % 2 != 0) return 0;
  AvoidBacktracker bt;
  bt.n = n;
  bt.residual = inst.degrees;
  bt.blocked.assign(n, std::vector<bool>(n, false));
  for (auto [u, v] : inst.forbidden) {
    if (u == 0 || v == 0 || u > n || v > n || u == v)
      throw std::invalid_argument("exact_avoiding_count: bad forbidden edge");
    bt.blocked[u - 1][v - 1] = bt.blocked[v - 1][u - 1] = true;
  }
  return bt.count();
}

AvoidingEstimate mckay_avoiding_estimate(const AvoidanceInstance& inst) {
  unsigned n = static_cast<unsigned>(inst.degrees.size());
  double m = checked_sum(inst.degrees);
  unsigned delta_g = 0;
  for (unsigned x : inst.degrees) delta_g = std::max(delta_g, x);
  if (delta_g < 1) throw std::invalid_argument("mckay_avoiding_estimate: Delta(g) >= 1 required");
  std::vector<unsigned> xdeg(n, 0);
  for (auto [u, v] : inst.forbidden) {
    ++xdeg[u - 1];
    ++xdeg[v - 1];
  }
  unsigned delta_x = 0;
  for (unsigned x : xdeg) delta_x = std::max(delta_x, x);

  AvoidingEstimate est;
  double sum2 = 0;
  for (unsigned x : inst.degrees) sum2 += static_cast<double>(x) * (x - 1.0);
  est.lambda = sum2 / (2.0 * m);
  est.lambda_sq = est.lambda * est.lambda;
  est.mu = 0;
  for (auto [u, v] : inst.forbidden)
    est.mu += static_cast<double>(inst.degrees[u - 1]) * inst.degrees[v - 1];
  est.mu /= m;
  est.delta_hat = static_cast<double>(delta_g) * delta_g +
                  static_cast<double>(delta_g) * delta_x;
  est.remainder_arg = est.delta_hat * est.delta_hat / m;

  double logv = std::lgamma(m + 1.0) - std::lgamma(m / 2.0 + 1.0) -
                (m / 2.0) * std::log(2.0);
  for (unsigned x : inst.degrees) logv -= std::lgamma(static_cast<double>(x) + 1.0);
  logv += -est.lambda - est.lambda_sq - est.mu;
  est.log_value = logv;
  est.value = std::exp(logv);
  return est;
}

namespace {

struct BipartiteBacktracker {
  std::vector<unsigned> res_s, res_t;
  std::vector<std::vector<bool>> blocked;  // [u][v]

  BigCount count(std::size_t v) {
    // Plain backtracking, V vertices in index order; no memoization.
    while (v < res_t.size() && res_t[v] == 0) ++v;
    if (v == res_t.size()) {
      for (unsigned r : res_s)
        if (r != 0) return 0;
      return 1;
    }
    BigCount total = 0;
    std::vector<unsigned> chosen;
    pick(v, 0, res_t[v], chosen, total);
    return total;
  }

  void pick(std::size_t v, std::size_t from, unsigned need, std::vector<unsigned>& chosen,
            BigCount& total) {
    if (need == 0) {
      for (unsigned u : chosen) --res_s[u];
      unsigned saved = res_t[v];
      res_t[v] = 0;
      total += count(v + 1);
      res_t[v] = saved;
      for (unsigned u : chosen) ++res_s[u];
      return;
    }
    for (std::size_t u = from; u < res_s.size(); ++u) {
      if (res_s.size() - u < need) break;
      if (res_s[u] == 0 || blocked[u][v]) continue;
      chosen.push_back(static_cast<unsigned>(u));
      pick(v, u + 1, need - 1, chosen, total);
      chosen.pop_back();
    }
  }
};

}  // namespace

BigCount bipartite_count_avoiding(const std::vector<unsigned>& s,
                                  const std::vector<unsigned>& t,
                                  const std::vector<IndexPair>& forbidden) {
  if (checked_sum(s) != checked_sum(t)) return 0;
  BipartiteBacktracker bt;
  bt.res_s = s;
  bt.res_t = t;
  bt.blocked.assign(s.size(), std::vector<bool>(t.size(), false));
  for (auto [u, v] : forbidden) {
    if (u >= s.size() || v >= t.size())
      throw std::invalid_argument("bipartite_count_avoiding: pair out of range");
    bt.blocked[u][v] = true;
  }
  return bt.count(0);
}

ConditionalEdgeResult conditional_edge_probability(const BipartiteDegreePair& dp,
                                                   const std::vector<IndexPair>& h1,
                                                   const std::vector<IndexPair>& h2,
                                                   IndexPair uv, bool exact_mode) {
  unsigned m = dp.edge_total();
  std::set<IndexPair> set1(h1.begin(), h1.end()), set2(h2.begin(), h2.end());
  for (const auto& e : h1)
    if (set2.count(e))
      throw std::invalid_argument("conditional_edge_probability: H1 and H2 not disjoint");
  if (set1.count(uv) || set2.count(uv))
    throw std::invalid_argument("conditional_edge_probability: uv must avoid H1 and H2");
  std::vector<unsigned> d1u(dp.s.size(), 0), d1v(dp.t.size(), 0);
  for (auto [u, v] : h1) {
    ++d1u[u];
    ++d1v[v];
  }
  for (std::size_t i = 0; i < dp.s.size(); ++i)
    if (d1u[i] > dp.s[i])
      throw std::invalid_argument("conditional_edge_probability: deg(H1) exceeds d");
  for (std::size_t j = 0; j < dp.t.size(); ++j)
    if (d1v[j] > dp.t[j])
      throw std::invalid_argument("conditional_edge_probability: deg(H1) exceeds d");

  auto [u, v] = uv;
  ConditionalEdgeResult res;
  double denom = static_cast<double>(m) - static_cast<double>(h1.size());
  double main_num =
      (static_cast<double>(dp.s[u]) - d1u[u]) * (static_cast<double>(dp.t[v]) - d1v[v]);
  res.estimate = main_num / denom;

  unsigned delta2 = 0;
  {
    std::vector<unsigned> h2u(dp.s.size(), 0), h2v(dp.t.size(), 0);
    for (auto [a, b] : h2) {
      ++h2u[a];
      ++h2v[b];
    }
    for (unsigned x : h2u) delta2 = std::max(delta2, x);
    for (unsigned x : h2v) delta2 = std::max(delta2, x);
  }
  unsigned delta_s = 0, delta_t = 0;
  for (unsigned x : dp.s) delta_s = std::max(delta_s, x);
  for (unsigned x : dp.t) delta_t = std::max(delta_t, x);
  double delta_d = std::max(delta_s, delta_t);
  res.xi = (dp.joint_degree_bound() + delta_d * (1.0 + delta2) + main_num) / denom +
           static_cast<double>(h2.size()) * delta_s * delta_t / (denom * denom);
  res.xi_large = res.xi >= 1.0;

  if (exact_mode) {
    std::vector<unsigned> rs = dp.s, rt = dp.t;
    for (std::size_t i = 0; i < rs.size(); ++i) rs[i] -= d1u[i];
    for (std::size_t j = 0; j < rt.size(); ++j) rt[j] -= d1v[j];
    std::vector<IndexPair> avoid = h1;
    avoid.insert(avoid.end(), h2.begin(), h2.end());
    BigCount den = bipartite_count_avoiding(rs, rt, avoid);
    if (den == 0)
      throw std::invalid_argument("conditional_edge_probability: empty conditional support");
    std::vector<unsigned> rs2 = rs, rt2 = rt;
    if (rs2[u] == 0 || rt2[v] == 0) {
      res.exact = Rational(0);
      return res;
    }
    --rs2[u];
    --rt2[v];
    avoid.push_back(uv);
    BigCount num = bipartite_count_avoiding(rs2, rt2, avoid);
    res.exact = Rational(num) / Rational(den);
  }
  return res;
}

namespace {

struct PmCounter {
  Vertex n;
  std::vector<std::vector<std::pair<Vertex, std::uint32_t>>> adj;  // (other, mult)
  std::vector<bool> matched;
  std::vector<Vertex> cover_partner;  // 0 = unconstrained
  bool parallel;

  BigCount count(unsigned unmatched_left) {
    if (unmatched_left == 0) return 1;
    // Lowest-degree unmatched vertex, degree taken among unmatched partners.
    Vertex pick = 0;
    std::size_t best_deg = SIZE_MAX;
    for (Vertex v = 1; v <= n; ++v) {
      if (matched[v]) continue;
      std::size_t deg = 0;
      for (const auto& [other, mult] : adj[v])
        if (!matched[other]) ++deg;
      if (deg < best_deg) {
        best_deg = deg;
        pick = v;
      }
    }
    if (best_deg == 0) return 0;

    BigCount total = 0;
    for (const auto& [other, mult] : adj[pick]) {
      if (matched[other]) continue;
      if (cover_partner[pick] != 0 && cover_partner[pick] != other) continue;
      if (cover_partner[other] != 0 && cover_partner[other] != pick) continue;
      matched[pick] = matched[other] = true;
      BigCount sub = count(unmatched_left - 2);
      matched[pick] = matched[other] = false;
      if (parallel) sub *= mult;
      total += sub;
    }
    return total;
  }
};

}  // namespace

BigCount count_perfect_matchings(const Multigraph& g, const MatchingCountOptions& opts,
                                 Vertex size_cap) {
  if (g.n() > size_cap)
    throw std::invalid_argument("count_perfect_matchings: n above size cap");
  if (g.n() % 2 != 0) return 0;  // odd n: no perfect matching
  PmCounter pc;
  pc.n = g.n();
  pc.matched.assign(g.n() + 1, false);
  pc.cover_partner.assign(g.n() + 1, 0);
  pc.parallel = opts.parallel_edges_distinct;
  std::set<VertexPair> forb;
  for (auto [u, v] : opts.forbidden) {
    if (u > v) std::swap(u, v);
    forb.insert({u, v});
  }
  pc.adj.assign(g.n() + 1, {});
  for (const auto& [pair, mult] : g.edges()) {
    if (pair.first == pair.second) continue;  // loops never enter a matching
    if (forb.count(pair)) continue;
    pc.adj[pair.first].emplace_back(pair.second, mult);
    pc.adj[pair.second].emplace_back(pair.first, mult);
  }
  for (auto [u, v] : opts.must_cover) {
    if (u == v || u == 0 || v == 0 || u > g.n() || v > g.n())
      throw std::invalid_argument("count_perfect_matchings: bad must_cover pair");
    if (pc.cover_partner[u] != 0 || pc.cover_partner[v] != 0)
      throw std::invalid_argument("count_perfect_matchings: must_cover pairs must be disjoint");
    pc.cover_partner[u] = v;
    pc.cover_partner[v] = u;
  }
  return pc.count(g.n());
}

std::vector<Matching> all_perfect_matchings(Vertex n) {
  std::vector<Matching> out;
  if (n % 2 != 0) return out;
  Matching cur;
  cur.n = n;
  std::vector<bool> used(n + 1, false);
  std::function<void()> rec = [&]() {
    Vertex u = 0;
    for (Vertex v = 1; v <= n; ++v)
      if (!used[v]) {
        u = v;
        break;
      }
    if (u == 0) {
      out.push_back(cur);
      return;
    }
    used[u] = true;
    for (Vertex v = u + 1; v <= n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      cur.pairs.push_back({u, v});
      rec();
      cur.pairs.pop_back();
      used[v] = false;
    }
    used[u] = false;
  };
  rec();
  return out;
}

std::vector<Matching> perfect_matchings_of(const Multigraph& g, std::size_t limit) {
  std::vector<Matching> out;
  if (g.n() % 2 != 0) return out;
  std::vector<std::vector<Vertex>> adj(g.n() + 1);
  for (const auto& [pair, mult] : g.edges()) {
    if (pair.first == pair.second) continue;
    adj[pair.first].push_back(pair.second);
    adj[pair.second].push_back(pair.first);
  }
  Matching cur;
  cur.n = g.n();
  std::vector<bool> used(g.n() + 1, false);
  std::function<bool()> rec = [&]() -> bool {
    if (out.size() >= limit) return false;
    Vertex u = 0;
    for (Vertex v = 1; v <= g.n(); ++v)
      if (!used[v]) {
        u = v;
        break;
      }
    if (u == 0) {
      out.push_back(cur);
      return true;
    }
    used[u] = true;
    for (Vertex v : adj[u]) {
      if (used[v] || v == u) continue;
      used[v] = true;
      Vertex a = std::min(u, v), b = std::max(u, v);
      cur.pairs.push_back({a, b});
      bool ok = rec();
      cur.pairs.pop_back();
      used[v] = false;
      if (!ok) return false;
    }
    used[u] = false;
    return true;
  };
  rec();
  return out;
}

BigCount matching_pair_count_exact(unsigned n, unsigned k) {
  if (n % 2 != 0 || n == 0)
    throw std::invalid_argument("matching_pair_count_exact: n must be even");
  if (k > n / 2) throw std::invalid_argument("matching_pair_count_exact: k > n/2");
  if (n > 12) throw std::invalid_argument("matching_pair_count_exact: n <= 12 required");
  // Pairing-level semantics: a pair (H1, H2) is counted once per k-subset of
  // designated coincident edges; coincidences outside the subset stay as
  // doubled pairs. Fix H0 = {(1,2),(3,4),...}; by vertex transitivity the
  // total is (n-1)!! * sum over H of C(|H and H0 common|, k).
  std::set<VertexPair> h0;
  for (Vertex v = 1; v <= n; v += 2) h0.insert({v, static_cast<Vertex>(v + 1)});
  BigCount hits = 0;
  for (const auto& m : all_perfect_matchings(n)) {
    unsigned common = 0;
    for (auto pr : m.pairs)
      if (h0.count(pr)) ++common;
    if (common >= k) hits += binomial_big(common, k);
  }
  return hits * perfect_matching_count_complete(n);
}

double matching_pair_count_formula(unsigned n, unsigned k) {
  if (n % 2 != 0) throw std::invalid_argument("matching_pair_count_formula: n must be even");
  if (k > n / 2) throw std::invalid_argument("matching_pair_count_formula: k > n/2");
  double logv = std::lgamma(static_cast<double>(n) + 1.0) -
                static_cast<double>(k) * std::log(2.0) -
                std::lgamma(static_cast<double>(k) + 1.0) -
                0.5 * std::log(M_PI * (static_cast<double>(n) - 2.0 * k) / 2.0);
  return std::exp(logv);
}

}  // namespace regraph
