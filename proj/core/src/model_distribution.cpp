#include "regraph/model_distribution.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "regraph/enumeration.hpp"
#include "regraph/pairing.hpp"

namespace regraph {
namespace {

using CountMap = std::map<std::string, std::pair<Multigraph, BigCount>>;

void accumulate(CountMap& acc, const Multigraph& g, const BigCount& w = BigCount(1)) {
  std::string key = g.canonical_key();
  auto it = acc.find(key);
  if (it == acc.end())
    acc.emplace(std::move(key), std::make_pair(g, w));
  else
    it->second.second += w;
}

// Enumerates perfect matchings on the d*n points, optionally pruning pairs
// that would join two points of one bin (loopless models).
void enumerate_pairings(Vertex n, std::uint32_t d, bool loopless,
                        const std::function<void(const Pairing&)>& visit) {
  Pairing p(n, d);
  std::size_t total = p.points();
  std::vector<std::size_t> mate(total, SIZE_MAX);
  std::function<void(std::size_t)> rec = [&](std::size_t first) {
    while (first < total && mate[first] != SIZE_MAX) ++first;
    if (first == total) {
      Pairing out(n, d);
      for (std::size_t q = 0; q < total; ++q)
        if (mate[q] > q && mate[q] != SIZE_MAX) out.set_pair(q, mate[q]);
      visit(out);
      return;
    }
    for (std::size_t q = first + 1; q < total; ++q) {
      if (mate[q] != SIZE_MAX) continue;
      if (loopless && q / d == first / d) continue;
      mate[first] = q;
      mate[q] = first;
      rec(first + 1);
      mate[first] = SIZE_MAX;
      mate[q] = SIZE_MAX;
    }
  };
  rec(0);
}

void enumerate_matching_tuples(Vertex n, std::uint32_t d,
                               const std::function<void(const Multigraph&)>& visit) {
  auto singles = all_perfect_matchings(n);
  if (singles.empty()) throw std::invalid_argument("matching model needs even n >= 2");
  std::function<void(std::uint32_t, Multigraph&)> rec = [&](std::uint32_t level, Multigraph& acc) {
    if (level == d) {
      visit(acc);
      return;
    }
    for (const auto& m : singles) {
      for (auto [u, v] : m.pairs) acc.add_edge(u, v, 1);
      rec(level + 1, acc);
      for (auto [u, v] : m.pairs) acc.remove_edge(u, v, 1);
    }
  };
  Multigraph start(n);
  rec(0, start);
}

// All simple graphs with constant degree d on [n], via the avoiding
// backtracker turned enumerator (X = empty).
void enumerate_regular_graphs(Vertex n, std::uint32_t d,
                              const std::function<void(const Multigraph&)>& visit) {
  std::vector<unsigned> residual(n, d);
  std::vector<std::vector<bool>> used(n + 1, std::vector<bool>(n + 1, false));
  Multigraph cur(n);
  std::function<void()> rec = [&]() {
    unsigned best = n, best_deg = 0;
    for (unsigned v = 0; v < n; ++v)
      if (residual[v] > best_deg) {
        best = v;
        best_deg = residual[v];
      }
    if (best == n) {
      visit(cur);
      return;
    }
    std::vector<unsigned> cands;
    for (unsigned u = 0; u < n; ++u)
      if (u != best && residual[u] > 0 && !used[best + 1][u + 1]) cands.push_back(u);
    if (cands.size() < best_deg) return;
    std::vector<unsigned> chosen;
    std::function<void(std::size_t, unsigned)> pick = [&](std::size_t from, unsigned need) {
      if (need == 0) {
        unsigned saved = residual[best];
        residual[best] = 0;
        for (unsigned u : chosen) {
          --residual[u];
          used[best + 1][u + 1] = used[u + 1][best + 1] = true;
          cur.add_edge(best + 1, u + 1, 1);
        }
        rec();
        residual[best] = saved;
        for (unsigned u : chosen) {
          ++residual[u];
          used[best + 1][u + 1] = used[u + 1][best + 1] = false;
          cur.remove_edge(best + 1, u + 1, 1);
        }
        return;
      }
      if (cands.size() - from < need) return;
      for (std::size_t i = from; i < cands.size(); ++i) {
        chosen.push_back(cands[i]);
        pick(i + 1, need - 1);
        chosen.pop_back();
      }
    };
    pick(0, best_deg);
  };
  rec();
}

ModelLaw law_from_counts(CountMap&& acc) {
  std::vector<std::string> keys;
  std::vector<BigCount> counts;
  std::vector<Multigraph> graphs;
  keys.reserve(acc.size());
  for (auto& [key, entry] : acc) {
    keys.push_back(key);
    graphs.push_back(std::move(entry.first));
    counts.push_back(std::move(entry.second));
  }
  ModelLaw law;
  law.dist = FiniteDistribution::from_counts(std::move(keys), counts);
  law.graphs = std::move(graphs);
  return law;
}

}  // namespace

BigCount pairing_space_size(Vertex n, std::uint32_t d) {
  std::uint64_t points = static_cast<std::uint64_t>(n) * d;
  if (points % 2 != 0) throw std::invalid_argument("pairing_space_size: d*n must be even");
  return points == 0 ? BigCount(1) : double_factorial_big(static_cast<unsigned>(points - 1));
}

ModelLaw exact_model_distribution(const ExactModelSpec& spec, std::uint64_t space_cap) {
  CountMap acc;
  switch (spec.model) {
    case ExactModel::kPairing:
    case ExactModel::kLooplessPairing: {
      BigCount space = pairing_space_size(spec.n, spec.d);
      if (space > space_cap)
        throw std::invalid_argument("exact_model_distribution: pairing space too large (" +
                                    space.str() + " pairings)");
      bool loopless = spec.model == ExactModel::kLooplessPairing;
      enumerate_pairings(spec.n, spec.d, loopless,
                         [&](const Pairing& p) { accumulate(acc, p.project()); });
      break;
    }
    case ExactModel::kGrd: {
      // Every simple d-regular graph arises from the same number of loopless
      // pairings, so the law is uniform; enumerate the graphs directly.
      enumerate_regular_graphs(spec.n, spec.d,
                               [&](const Multigraph& g) { accumulate(acc, g); });
      break;
    }
    case ExactModel::kMatchingSuperpose: {
      BigCount single = perfect_matching_count_complete(spec.n);
      BigCount space = 1;
      for (std::uint32_t i = 0; i < spec.d; ++i) space *= single;
      if (space > space_cap)
        throw std::invalid_argument("exact_model_distribution: matching tuple space too large (" +
                                    space.str() + " tuples)");
      enumerate_matching_tuples(spec.n, spec.d,
                                [&](const Multigraph& g) { accumulate(acc, g); });
      break;
    }
    case ExactModel::kPairingPlusMatchings: {
      ModelLaw base = exact_model_distribution(
          {ExactModel::kLooplessPairing, spec.n, spec.d, 0}, space_cap);
      ModelLaw add = exact_model_distribution(
          {ExactModel::kMatchingSuperpose, spec.n, spec.j, 0}, space_cap);
      return superpose_laws(base, add);
    }
  }
  if (acc.empty()) throw std::invalid_argument("exact_model_distribution: empty support");
  return law_from_counts(std::move(acc));
}

ModelLaw superpose_laws(const ModelLaw& a, const ModelLaw& b) {
  std::map<std::string, std::pair<Multigraph, Rational>> acc;
  for (std::size_t i = 0; i < a.dist.size(); ++i) {
    for (std::size_t j = 0; j < b.dist.size(); ++j) {
      Multigraph g = a.graphs[i];
      g.superpose(b.graphs[j]);
      Rational w = a.dist.prob(i) * b.dist.prob(j);
      std::string key = g.canonical_key();
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(std::move(key), std::make_pair(std::move(g), std::move(w)));
      else
        it->second.second += w;
    }
  }
  std::vector<std::string> keys;
  std::vector<Rational> probs;
  std::vector<Multigraph> graphs;
  for (auto& [key, entry] : acc) {
    keys.push_back(key);
    graphs.push_back(std::move(entry.first));
    probs.push_back(std::move(entry.second));
  }
  ModelLaw law;
  law.dist = FiniteDistribution(std::move(keys), std::move(probs));
  law.graphs = std::move(graphs);
  return law;
}

}  // namespace regraph
