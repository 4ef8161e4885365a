#include "regraph/samplers.hpp"

#include <cmath>
#include <numeric>

namespace regraph {
namespace {

void check_probability(double p) {
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("probability must lie in [0,1]");
}

// Visits the indices of a Bernoulli(p) process over {0,...,total-1} by
// geometric skipping; identical law, O(#successes) draws.
template <typename Fn>
void bernoulli_process(std::uint64_t total, double p, RngStream& rng, Fn&& on_hit) {
  if (p <= 0.0 || total == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t i = 0; i < total; ++i) on_hit(i);
    return;
  }
  double log1mp = std::log1p(-p);
  std::uint64_t i = 0;
  for (;;) {
    double u = rng.u01();
    double skip = std::floor(std::log1p(-u) / log1mp);
    if (skip >= static_cast<double>(total - i)) return;
    i += static_cast<std::uint64_t>(skip);
    on_hit(i);
    if (++i >= total) return;
  }
}

// Unranks pair index k in the lexicographic list of pairs (u,v), u < v.
VertexPair unrank_pair(Vertex n, std::uint64_t k) {
  // Row u (1-indexed) holds n-u pairs.
  std::uint64_t u = 1;
  std::uint64_t row = n - 1;
  while (k >= row) {
    k -= row;
    ++u;
    --row;
  }
  return {static_cast<Vertex>(u), static_cast<Vertex>(u + 1 + k)};
}

}  // namespace

Multigraph sample_gnp(Vertex n, double p, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gnp: n >= 1 required");
  check_probability(p);
  Multigraph g(n);
  std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  bernoulli_process(total, p, rng, [&](std::uint64_t k) {
    auto [u, v] = unrank_pair(n, k);
    g.add_edge(u, v, 1);
  });
  return g;
}

Digraph sample_gnp_directed(Vertex n, double p, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gnp_directed: n >= 1 required");
  check_probability(p);
  Digraph g(n);
  std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1);
  bernoulli_process(total, p, rng, [&](std::uint64_t k) {
    Vertex u = static_cast<Vertex>(k / (n - 1)) + 1;
    Vertex w = static_cast<Vertex>(k % (n - 1)) + 1;
    Vertex v = (w >= u) ? w + 1 : w;  // skip the diagonal
    g.add_arc(u, v);
  });
  return g;
}

Matching sample_perfect_matching(Vertex n, RngStream& rng) {
  if (n % 2 != 0 || n < 2)
    throw std::invalid_argument("sample_perfect_matching: n must be even and >= 2");
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{1});
  rng.shuffle(order);
  Matching m;
  m.n = n;
  m.pairs.reserve(n / 2);
  for (Vertex i = 0; i < n; i += 2) {
    Vertex u = order[i], v = order[i + 1];
    if (u > v) std::swap(u, v);
    m.pairs.push_back({u, v});
  }
  return m;
}

Multigraph sample_matching_model(Vertex n, std::uint32_t d, MatchingModelMode mode,
                                 RngStream& rng, std::uint64_t rejection_cap) {
  if (n % 2 != 0) throw std::invalid_argument("sample_matching_model: n must be even");
  if (d < 1) throw std::invalid_argument("sample_matching_model: d >= 1 required");
  auto superpose_once = [&]() {
    Multigraph g(n);
    for (std::uint32_t i = 0; i < d; ++i) {
      Matching m = sample_perfect_matching(n, rng);
      for (auto [u, v] : m.pairs) g.add_edge(u, v, 1);
    }
    return g;
  };
  switch (mode) {
    case MatchingModelMode::kSuperpose:
      return superpose_once();
    case MatchingModelMode::kUnion: {
      Multigraph g = superpose_once();
      g.cap_multiplicities();
      return g;
    }
    case MatchingModelMode::kSimpleConditioned: {
      for (std::uint64_t attempt = 1; attempt <= rejection_cap; ++attempt) {
        Multigraph g = superpose_once();
        if (g.is_simple()) return g;
      }
      throw rejection_cap_error("sample_matching_model: simple-conditioned rejection cap exceeded",
                                rejection_cap);
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

Pairing random_pairing(Vertex n, std::uint32_t d, RngStream& rng) {
  Pairing p(n, d);
  std::vector<std::size_t> order(p.points());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  for (std::size_t i = 0; i < order.size(); i += 2) p.set_pair(order[i], order[i + 1]);
  return p;
}

}  // namespace

bool has_disjoint_double_profile(const Multigraph& g, std::uint32_t i) {
  std::uint32_t doubles = 0;
  std::vector<bool> touched(g.n() + 1, false);
  for (const auto& [pair, mult] : g.edges()) {
    if (pair.first == pair.second) return false;  // loop
    if (mult >= 3) return false;
    if (mult == 2) {
      if (touched[pair.first] || touched[pair.second]) return false;
      touched[pair.first] = touched[pair.second] = true;
      ++doubles;
    }
  }
  return doubles == i;
}

Pairing sample_pairing(Vertex n, std::uint32_t d, const PairingCondition& cond,
                       RngStream& rng, std::uint64_t rejection_cap) {
  if (static_cast<std::uint64_t>(n) * d % 2 != 0)
    throw std::invalid_argument("sample_pairing: d*n must be even");
  for (std::uint64_t attempt = 1; attempt <= rejection_cap; ++attempt) {
    Pairing p = random_pairing(n, d, rng);
    switch (cond.kind) {
      case PairingCondition::kNone:
        return p;
      case PairingCondition::kLoopless:
        if (!p.has_loop_pair()) return p;
        break;
      case PairingCondition::kDisjointDoubles:
        if (!p.has_loop_pair() && has_disjoint_double_profile(p.project(), cond.doubles))
          return p;
        break;
    }
  }
  throw rejection_cap_error("sample_pairing: rejection cap exceeded", rejection_cap);
}

Multigraph sample_grd(Vertex n, std::uint32_t d, RngStream& rng, std::uint64_t rejection_cap) {
  if (static_cast<std::uint64_t>(n) * d % 2 != 0)
    throw std::invalid_argument("sample_grd: d*n must be even");
  if (d >= n) throw std::invalid_argument("sample_grd: d < n required");
  for (std::uint64_t attempt = 1; attempt <= rejection_cap; ++attempt) {
    Pairing p = random_pairing(n, d, rng);
    if (p.has_loop_pair()) continue;
    Multigraph g = p.project();
    if (g.is_simple()) return g;
  }
  throw rejection_cap_error("sample_grd: rejection cap exceeded", rejection_cap);
}

Digraph sample_dout(Vertex n, std::uint32_t d, RngStream& rng) {
  if (d < 1 || d >= n) throw std::invalid_argument("sample_dout: 1 <= d <= n-1 required");
  Digraph g(n);
  for (Vertex v = 1; v <= n; ++v) {
    auto picks = rng.subset(n - 1, d);  // over [n] \ {v}
    for (std::uint64_t w : picks) {
      Vertex u = static_cast<Vertex>(w) + 1;
      if (u >= v) ++u;
      g.add_arc(v, u);
    }
  }
  return g;
}

Multigraph sample_dout_undirected(Vertex n, std::uint32_t d, RngStream& rng) {
  return sample_dout(n, d, rng).to_undirected();
}

}  // namespace regraph
