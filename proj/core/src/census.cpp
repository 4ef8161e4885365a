#include "regraph/census.hpp"

#include <algorithm>
#include <vector>

namespace regraph {

CensusCounts multigraph_census(const Multigraph& g) {
  CensusCounts c;
  std::vector<std::vector<Vertex>> adj(g.n() + 1);
  for (const auto& [pair, mult] : g.edges()) {
    c.multiplicity_histogram[mult] += 1;
    if (pair.first == pair.second) {
      c.loops += mult;
      c.simple = false;
      continue;
    }
    if (mult == 2) ++c.doubles_exact;
    if (mult >= 2) {
      ++c.doubles_at_least;
      c.simple = false;
    }
    if (mult >= 3) ++c.mult3_plus;
    adj[pair.first].push_back(pair.second);
    adj[pair.second].push_back(pair.first);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  // Triangles as vertex triples u < v < w with all three pairs present
  // (multiplicities ignored beyond presence, loops never participate).
  for (Vertex u = 1; u <= g.n(); ++u) {
    const auto& nu = adj[u];
    for (std::size_t i = 0; i < nu.size(); ++i) {
      Vertex v = nu[i];
      if (v <= u) continue;
      for (std::size_t j = i + 1; j < nu.size(); ++j) {
        Vertex w = nu[j];
        if (w <= v) continue;
        if (std::binary_search(adj[v].begin(), adj[v].end(), w)) ++c.triangles;
      }
    }
  }
  return c;
}

}  // namespace regraph
