#include "regraph/strassen.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace regraph {

Relation Relation::from_predicate(std::size_t nx, std::size_t ny,
                                  const std::function<bool(std::size_t, std::size_t)>& is_bad) {
  Relation r(nx, ny);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      if (is_bad(i, j)) r.set_bad(i, j);
  return r;
}

Relation Relation::inequality(const FiniteDistribution& mu_x, const FiniteDistribution& mu_y) {
  Relation r(mu_x.size(), mu_y.size(), true);
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    auto j = mu_y.index_of(mu_x.key(i));
    if (j) r.set_bad(i, *j, false);
  }
  return r;
}

namespace {

// Exact max-flow (Dinic) with rational capacities. Node layout:
// 0 = source, 1..nx = X outcomes, nx+1..nx+ny = Y outcomes, nx+ny+1 = sink.
class RationalMaxFlow {
 public:
  explicit RationalMaxFlow(std::size_t nodes) : head_(nodes, -1) {}

  void add_edge(std::size_t u, std::size_t v, Rational cap) {
    edges_.push_back({v, head_[u], std::move(cap)});
    head_[u] = static_cast<int>(edges_.size() - 1);
    edges_.push_back({u, head_[v], Rational(0)});
    head_[v] = static_cast<int>(edges_.size() - 1);
  }

  Rational run(std::size_t s, std::size_t t) {
    Rational flow = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      for (;;) {
        Rational pushed = dfs(s, t, Rational(-1));
        if (pushed == 0) break;
        flow += pushed;
      }
    }
    return flow;
  }

  /// Residual flow across edge index e (forward edges are even-indexed).
  Rational flow_on(std::size_t e) const { return edges_[e ^ 1].cap; }

  /// Nodes reachable from s in the final residual network (min-cut side).
  std::vector<bool> reachable(std::size_t s) const {
    std::vector<bool> seen(head_.size(), false);
    std::queue<std::size_t> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > 0 && !seen[edges_[e].to]) {
          seen[edges_[e].to] = true;
          q.push(edges_[e].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    int next;
    Rational cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    level_.assign(head_.size(), -1);
    std::queue<std::size_t> q;
    q.push(s);
    level_[s] = 0;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = edges_[e].next) {
        if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
          level_[edges_[e].to] = level_[u] + 1;
          q.push(edges_[e].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  // limit < 0 encodes "unbounded".
  Rational dfs(std::size_t u, std::size_t t, Rational limit) {
    if (u == t) {
      if (limit < 0) throw std::logic_error("maxflow: unbounded augmenting path");
      return limit;
    }
    for (int& e = iter_[u]; e != -1; e = edges_[e].next) {
      Edge& fwd = edges_[e];
      if (fwd.cap <= 0 || level_[fwd.to] != level_[u] + 1) continue;
      Rational sub = limit < 0 ? fwd.cap : std::min(limit, fwd.cap);
      Rational pushed = dfs(fwd.to, t, sub);
      if (pushed > 0) {
        fwd.cap -= pushed;
        edges_[e ^ 1].cap += pushed;
        return pushed;
      }
    }
    level_[u] = -2;  // dead end for this phase
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> iter_;
  std::vector<int> level_;
};

struct FlowSolution {
  Rational max_flow;
  // flow[i][j] over allowed pairs only (zero elsewhere), dense nx x ny.
  std::vector<std::vector<Rational>> flow;
  std::vector<bool> source_side;  // reachability in the residual graph
};

FlowSolution solve_flow(const FiniteDistribution& mu_x, const FiniteDistribution& mu_y,
                        const Relation& bad) {
  std::size_t nx = mu_x.size(), ny = mu_y.size();
  if (bad.nx() != nx || bad.ny() != ny)
    throw std::invalid_argument("strassen: relation dimensions mismatch");
  std::size_t source = 0, sink = nx + ny + 1;
  RationalMaxFlow net(nx + ny + 2);
  // Allowed-pair arcs carry capacity 1 (>= any routable mass), so min cuts
  // never cross them.
  std::vector<std::vector<int>> pair_edge(nx, std::vector<int>(ny, -1));
  int counter = 0;
  std::vector<int> x_edge(nx), y_edge(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    x_edge[i] = counter;
    net.add_edge(source, 1 + i, mu_x.prob(i));
    counter += 2;
  }
  for (std::size_t j = 0; j < ny; ++j) {
    y_edge[j] = counter;
    net.add_edge(1 + nx + j, sink, mu_y.prob(j));
    counter += 2;
  }
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      if (!bad.bad(i, j)) {
        pair_edge[i][j] = counter;
        net.add_edge(1 + i, 1 + nx + j, Rational(1));
        counter += 2;
      }
  FlowSolution sol;
  sol.max_flow = net.run(source, sink);
  sol.flow.assign(nx, std::vector<Rational>(ny, Rational(0)));
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      if (pair_edge[i][j] >= 0) sol.flow[i][j] = net.flow_on(pair_edge[i][j]);
  sol.source_side = net.reachable(source);
  return sol;
}

}  // namespace

DeficiencyResult strassen_deficiency(const FiniteDistribution& mu_x,
                                     const FiniteDistribution& mu_y,
                                     const Relation& bad) {
  FlowSolution sol = solve_flow(mu_x, mu_y, bad);
  DeficiencyResult res;
  res.deficiency = Rational(1) - sol.max_flow;
  // Min-cut: A = X outcomes on the source side. Then mu_X(A) - mu_Y(N(A))
  // equals 1 - maxflow, the max over all subsets.
  for (std::size_t i = 0; i < mu_x.size(); ++i)
    if (sol.source_side[1 + i]) res.witness.push_back(i);
  return res;
}

JointCoupling build_optimal_coupling(const FiniteDistribution& mu_x,
                                     const FiniteDistribution& mu_y,
                                     const Relation& bad) {
  FlowSolution sol = solve_flow(mu_x, mu_y, bad);
  std::size_t nx = mu_x.size(), ny = mu_y.size();
  JointCoupling jc;
  jc.keys_x = mu_x.keys();
  jc.keys_y = mu_y.keys();
  std::vector<Rational> def_x(nx), def_y(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < ny; ++j) row += sol.flow[i][j];
    def_x[i] = mu_x.prob(i) - row;
  }
  for (std::size_t j = 0; j < ny; ++j) {
    Rational col = 0;
    for (std::size_t i = 0; i < nx; ++i) col += sol.flow[i][j];
    def_y[j] = mu_y.prob(j) - col;
  }
  // Residual completion in lexicographic outcome order (deterministic).
  // Maximality of the flow forces every completed cell onto a bad pair.
  std::size_t j = 0;
  for (std::size_t i = 0; i < nx; ++i) {
    while (def_x[i] > 0) {
      while (j < ny && def_y[j] == 0) ++j;
      if (j >= ny) throw std::logic_error("coupling completion: mass imbalance");
      Rational put = std::min(def_x[i], def_y[j]);
      sol.flow[i][j] += put;
      def_x[i] -= put;
      def_y[j] -= put;
    }
  }
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t jj = 0; jj < ny; ++jj)
      if (sol.flow[i][jj] != 0) {
        jc.entries.emplace_back(i, jj, sol.flow[i][jj]);
        if (bad.bad(i, jj)) jc.failure_mass += sol.flow[i][jj];
      }
  jc.check_marginals(mu_x, mu_y);
  return jc;
}

std::vector<Rational> JointCoupling::marginal_x() const {
  std::vector<Rational> m(keys_x.size(), Rational(0));
  for (const auto& [i, j, w] : entries) m[i] += w;
  return m;
}

std::vector<Rational> JointCoupling::marginal_y() const {
  std::vector<Rational> m(keys_y.size(), Rational(0));
  for (const auto& [i, j, w] : entries) m[j] += w;
  return m;
}

void JointCoupling::check_marginals(const FiniteDistribution& mu_x,
                                    const FiniteDistribution& mu_y) const {
  auto mx = marginal_x();
  auto my = marginal_y();
  for (std::size_t i = 0; i < mx.size(); ++i)
    if (mx[i] != mu_x.prob(i)) throw std::logic_error("JointCoupling: X marginal mismatch");
  for (std::size_t j = 0; j < my.size(); ++j)
    if (my[j] != mu_y.prob(j)) throw std::logic_error("JointCoupling: Y marginal mismatch");
}

DegreeCouplingResult degree_coupling(
    std::size_t s_size, std::size_t t_size,
    const std::function<bool(std::size_t, std::size_t)>& good) {
  if (s_size == 0 || t_size == 0)
    throw std::invalid_argument("degree_coupling: empty side");
  std::vector<std::size_t> deg_s(s_size, 0), deg_t(t_size, 0);
  std::size_t total = 0;
  for (std::size_t i = 0; i < s_size; ++i)
    for (std::size_t j = 0; j < t_size; ++j)
      if (good(i, j)) {
        ++deg_s[i];
        ++deg_t[j];
        ++total;
      }
  if (total == 0) throw std::invalid_argument("degree_coupling: empty relation");

  double mean_s = static_cast<double>(total) / static_cast<double>(s_size);
  double mean_t = static_cast<double>(total) / static_cast<double>(t_size);
  // Candidate epsilons where a degree crosses its threshold; pick the one
  // minimizing the resulting bound 2*delta + eps/(1-eps).
  std::vector<double> candidates{0.0};
  for (auto d : deg_s) candidates.push_back(1.0 - static_cast<double>(d) / mean_s);
  for (auto d : deg_t) candidates.push_back(1.0 - static_cast<double>(d) / mean_t);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto delta_for = [&](double eps) {
    std::size_t bad_s = 0, bad_t = 0;
    for (auto d : deg_s)
      if (static_cast<double>(d) < (1.0 - eps) * mean_s - 1e-12) ++bad_s;
    for (auto d : deg_t)
      if (static_cast<double>(d) < (1.0 - eps) * mean_t - 1e-12) ++bad_t;
    return std::max(static_cast<double>(bad_s) / static_cast<double>(s_size),
                    static_cast<double>(bad_t) / static_cast<double>(t_size));
  };

  DegreeCouplingResult res;
  res.bound = std::numeric_limits<double>::infinity();
  for (double eps : candidates) {
    if (eps < 0.0 || eps >= 1.0) continue;
    double delta = delta_for(eps);
    double bound = 2.0 * delta + eps / (1.0 - eps);
    if (bound < res.bound - 1e-15) {
      res.bound = bound;
      res.epsilon = eps;
      res.delta = delta;
    }
  }

  std::vector<std::string> ks(s_size), kt(t_size);
  for (std::size_t i = 0; i < s_size; ++i) ks[i] = "s" + std::to_string(i);
  for (std::size_t j = 0; j < t_size; ++j) kt[j] = "t" + std::to_string(j);
  FiniteDistribution mu_s(ks, std::vector<Rational>(s_size, Rational(1, s_size)));
  FiniteDistribution mu_t(kt, std::vector<Rational>(t_size, Rational(1, t_size)));
  Relation bad = Relation::from_predicate(
      s_size, t_size, [&](std::size_t i, std::size_t j) { return !good(i, j); });
  res.coupling = build_optimal_coupling(mu_s, mu_t, bad);
  res.realized_failure = res.coupling.failure_mass;
  return res;
}

}  // namespace regraph
