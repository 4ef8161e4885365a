#include "regraph/two_out.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include "regraph/enumeration.hpp"
#include "regraph/samplers.hpp"

namespace regraph {
namespace {

using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;

std::optional<Matching> blossom_perfect_matching(const Multigraph& g) {
  BoostGraph bg(g.n());
  for (const auto& [pair, mult] : g.edges()) {
    if (pair.first == pair.second) continue;
    boost::add_edge(pair.first - 1, pair.second - 1, bg);
  }
  std::vector<boost::graph_traits<BoostGraph>::vertex_descriptor> mate(g.n());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  Matching m;
  m.n = g.n();
  for (Vertex v = 0; v < g.n(); ++v) {
    if (mate[v] == boost::graph_traits<BoostGraph>::null_vertex()) return std::nullopt;
    if (mate[v] > v) m.pairs.push_back({v + 1, static_cast<Vertex>(mate[v]) + 1});
  }
  return m;
}

}  // namespace

std::size_t maximum_matching_size(const Multigraph& g) {
  BoostGraph bg(g.n());
  for (const auto& [pair, mult] : g.edges()) {
    if (pair.first == pair.second) continue;
    boost::add_edge(pair.first - 1, pair.second - 1, bg);
  }
  std::vector<boost::graph_traits<BoostGraph>::vertex_descriptor> mate(g.n());
  boost::edmonds_maximum_cardinality_matching(bg, &mate[0]);
  std::size_t matched = 0;
  for (Vertex v = 0; v < g.n(); ++v)
    if (mate[v] != boost::graph_traits<BoostGraph>::null_vertex()) ++matched;
  return matched / 2;
}

TwoOutMatching perfect_matching_of_graph(const Multigraph& g, RngStream& rng,
                                         Vertex uniform_limit) {
  TwoOutMatching out;
  if (g.n() % 2 != 0) return out;
  if (g.n() <= uniform_limit) {
    auto all = perfect_matchings_of(g);
    if (all.empty()) return out;
    out.matching = all[rng.below(all.size())];
    return out;
  }
  out.uniform_choice = false;
  out.matching = blossom_perfect_matching(g);
  return out;
}

std::vector<TwoOutMatching> matchings_via_2out(Vertex n, std::uint32_t count, RngStream& rng,
                                               Vertex uniform_limit) {
  if (n % 2 != 0) throw std::invalid_argument("matchings_via_2out: n must be even");
  std::vector<TwoOutMatching> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    Multigraph copy = sample_dout_undirected(n, std::min<std::uint32_t>(2, n - 1), rng);
    out.push_back(perfect_matching_of_graph(copy, rng, uniform_limit));
  }
  return out;
}

}  // namespace regraph
