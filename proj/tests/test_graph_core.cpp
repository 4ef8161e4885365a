#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "regraph/io.hpp"
#include "regraph/model_distribution.hpp"
#include "regraph/multigraph.hpp"
#include "regraph/samplers.hpp"
#include "stat_util.hpp"

using namespace regraph;

TEST_CASE("gnp degenerate probabilities") {
  RngStream rng(1, 0);
  Multigraph empty = sample_gnp(3, 0.0, rng);
  CHECK(empty.pair_count() == 0);
  Multigraph full = sample_gnp(3, 1.0, rng);
  CHECK(full.pair_count() == 3);  // K_3
  CHECK_THROWS_AS(sample_gnp(3, 1.5, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_gnp(3, -0.1, rng), std::invalid_argument);
}

TEST_CASE("gnp edge count matches the binomial mean") {
  const int kTrials = 10000;
  double total = 0;
  for (int t = 0; t < kTrials; ++t) {
    RngStream rng(202, t);
    total += static_cast<double>(sample_gnp(100, 0.3, rng).pair_count());
  }
  double mean = total / kTrials;
  // Oracle: edge count ~ Bin(4950, 0.3).
  double expect = 4950 * 0.3;
  double se = std::sqrt(4950 * 0.3 * 0.7 / kTrials);
  CHECK(std::abs(mean - expect) < 3 * se);
}

TEST_CASE("directed gnp has both orientations independently") {
  const int kTrials = 20000;
  int fwd = 0, bwd = 0, both = 0;
  for (int t = 0; t < kTrials; ++t) {
    RngStream rng(203, t);
    Digraph g = sample_gnp_directed(3, 0.4, rng);
    bool f = g.has_arc(1, 2), b = g.has_arc(2, 1);
    fwd += f;
    bwd += b;
    both += f && b;
  }
  double se = std::sqrt(0.4 * 0.6 / kTrials);
  CHECK(std::abs(fwd / double(kTrials) - 0.4) < 3 * se);
  CHECK(std::abs(bwd / double(kTrials) - 0.4) < 3 * se);
  double se2 = std::sqrt(0.16 * 0.84 / kTrials);
  CHECK(std::abs(both / double(kTrials) - 0.16) < 3 * se2);
}

TEST_CASE("perfect matching on two vertices is forced") {
  RngStream rng(3, 0);
  Matching m = sample_perfect_matching(2, rng);
  REQUIRE(m.pairs.size() == 1);
  CHECK(m.pairs[0] == VertexPair{1, 2});
  CHECK_THROWS_AS(sample_perfect_matching(5, rng), std::invalid_argument);
}

TEST_CASE("perfect matching on four vertices is uniform over the 3 matchings") {
  std::map<std::string, std::size_t> counts;
  const int kTrials = 30000;
  for (int t = 0; t < kTrials; ++t) {
    RngStream rng(4, t);
    counts[sample_perfect_matching(4, rng).to_multigraph().canonical_key()]++;
  }
  REQUIRE(counts.size() == 3);
  for (const auto& [key, c] : counts) {
    double freq = static_cast<double>(c) / kTrials;
    double se = std::sqrt((1.0 / 3) * (2.0 / 3) / kTrials);
    CHECK(std::abs(freq - 1.0 / 3) < 3 * se);
  }
}

TEST_CASE("perfect matching on six vertices: 15 outcomes, chi-square uniform") {
  std::map<std::string, std::size_t> counts;
  const int kTrials = 150000;
  for (int t = 0; t < kTrials; ++t) {
    RngStream rng(6, t);
    counts[sample_perfect_matching(6, rng).to_multigraph().canonical_key()]++;
  }
  REQUIRE(counts.size() == 15);  // (6-1)!!
  std::map<std::string, double> probs;
  for (const auto& [k, c] : counts) probs[k] = 1.0 / 15;
  CHECK(testutil::chi_square_vs_probs(counts, probs, kTrials) > 0.001);
}

TEST_CASE("matching model degenerate cases on two vertices") {
  RngStream rng(8, 0);
  Multigraph sup = sample_matching_model(2, 3, MatchingModelMode::kSuperpose, rng);
  CHECK(sup.multiplicity(1, 2) == 3);
  Multigraph uni = sample_matching_model(2, 3, MatchingModelMode::kUnion, rng);
  CHECK(uni.multiplicity(1, 2) == 1);
  CHECK(uni.is_simple());
}

TEST_CASE("union equals superpose with capped multiplicities on the same stream") {
  for (int t = 0; t < 50; ++t) {
    RngStream a(77, t), b(77, t);
    Multigraph sup = sample_matching_model(8, 3, MatchingModelMode::kSuperpose, a);
    Multigraph uni = sample_matching_model(8, 3, MatchingModelMode::kUnion, b);
    sup.cap_multiplicities();
    CHECK(sup == uni);
  }
}

TEST_CASE("matching superposition matches the enumerated law at n=4, d=2") {
  ModelLaw law = exact_model_distribution({ExactModel::kMatchingSuperpose, 4, 2, 0});
  std::map<std::string, std::size_t> counts;
  const int kTrials = 100000;
  for (int t = 0; t < kTrials; ++t) {
    RngStream rng(9, t);
    counts[sample_matching_model(4, 2, MatchingModelMode::kSuperpose, rng).canonical_key()]++;
  }
  double tv = 0;
  for (std::size_t i = 0; i < law.dist.size(); ++i) {
    auto it = counts.find(law.dist.key(i));
    double freq = it == counts.end() ? 0.0 : static_cast<double>(it->second) / kTrials;
    tv += std::abs(freq - static_cast<double>(law.dist.prob(i)));
  }
  CHECK(tv / 2 < 0.02);
}

TEST_CASE("unconditioned pairing on (4,2) is uniform over the 105 pairings") {
  std::map<std::string, std::size_t> counts;
  const int kTrials = 1000000;
  for (int t = 0; t < kTrials; ++t) {
    RngStream rng(10, t);
    Pairing p = sample_pairing(4, 2, PairingCondition::none(), rng);
    std::string key;
    for (std::size_t q = 0; q < p.points(); ++q) key += std::to_string(p.mate(q)) + ".";
    counts[key]++;
  }
  REQUIRE(counts.size() == 105);  // (8-1)!!
  std::map<std::string, double> probs;
  for (const auto& [k, c] : counts) probs[k] = 1.0 / 105;
  CHECK(testutil::chi_square_vs_probs(counts, probs, kTrials) > 0.001);
}

TEST_CASE("loopless pairing on (2,2) always projects to the double edge") {
  for (int t = 0; t < 200; ++t) {
    RngStream rng(11, t);
    Multigraph g = sample_pairing(2, 2, PairingCondition::loopless(), rng).project();
    CHECK(g.multiplicity(1, 2) == 2);
  }
}

TEST_CASE("disjoint-doubles(1) pairing census at (6,3)") {
  for (int t = 0; t < 10000; ++t) {
    RngStream rng(12, t);
    Pairing p = sample_pairing(6, 3, PairingCondition::disjoint_doubles(1), rng);
    CHECK(!p.has_loop_pair());
    CHECK(has_disjoint_double_profile(p.project(), 1));
  }
}

TEST_CASE("projection: loops, parallel pairs, handshake") {
  Pairing loop(1, 2);
  loop.set_pair(0, 1);
  Multigraph g1 = loop.project();
  CHECK(g1.multiplicity(1, 1) == 1);
  CHECK(g1.degrees()[1] == 2);

  Pairing dbl(2, 2);
  dbl.set_pair(0, 2);
  dbl.set_pair(1, 3);
  CHECK(dbl.project().multiplicity(1, 2) == 2);

  RngStream rng(13, 0);
  Pairing p = sample_pairing(6, 3, PairingCondition::none(), rng);
  auto deg = p.project().degrees();
  std::uint64_t total = 0;
  for (Vertex v = 1; v <= 6; ++v) {
    CHECK(deg[v] == 3);
    total += deg[v];
  }
  CHECK(total == 18);
}

TEST_CASE("every pairing projects to a d-regular multigraph") {
  for (int t = 0; t < 300; ++t) {
    RngStream rng(14, t);
    Vertex n = static_cast<Vertex>(2 + 2 * rng.below(4));
    std::uint32_t d = static_cast<std::uint32_t>(1 + rng.below(4));
    Pairing p = sample_pairing(n, d, PairingCondition::none(), rng);
    auto deg = p.project().degrees();
    for (Vertex v = 1; v <= n; ++v) REQUIRE(deg[v] == d);
  }
}

TEST_CASE("grd on (4,3) is always K4; on (4,1) uniform over matchings") {
  for (int t = 0; t < 50; ++t) {
    RngStream rng(15, t);
    Multigraph g = sample_grd(4, 3, rng);
    CHECK(g.pair_count() == 6);
    CHECK(g.is_simple());
  }
  std::map<std::string, std::size_t> counts;
  const int kTrials = 30000;
  for (int t = 0; t < kTrials; ++t) {
    RngStream rng(16, t);
    counts[sample_grd(4, 1, rng).canonical_key()]++;
  }
  REQUIRE(counts.size() == 3);
  for (const auto& [k, c] : counts) {
    double se = std::sqrt((1.0 / 3) * (2.0 / 3) / kTrials);
    CHECK(std::abs(static_cast<double>(c) / kTrials - 1.0 / 3) < 3 * se);
  }
}

TEST_CASE("grd samples at (6,3) are simple cubic graphs in the enumerated support") {
  ModelLaw law = exact_model_distribution({ExactModel::kGrd, 6, 3, 0});
  REQUIRE(law.dist.size() == 70);  // labeled cubic graphs on 6 vertices
  for (int t = 0; t < 500; ++t) {
    RngStream rng(17, t);
    Multigraph g = sample_grd(6, 3, rng);
    CHECK(law.dist.index_of(g.canonical_key()).has_value());
  }
}

TEST_CASE("dout degenerate and marginal cases") {
  RngStream rng(18, 0);
  Digraph g = sample_dout(2, 1, rng);
  CHECK(g.has_arc(1, 2));
  CHECK(g.has_arc(2, 1));
  CHECK(sample_dout_undirected(2, 1, rng).multiplicity(1, 2) == 1);

  Multigraph k5 = sample_dout_undirected(5, 4, rng);
  CHECK(k5.pair_count() == 10);

  const int kTrials = 10000;
  int hits = 0;
  for (int t = 0; t < kTrials; ++t) {
    RngStream r(19, t);
    hits += sample_dout(50, 2, r).has_arc(1, 2) ? 1 : 0;
  }
  double expect = 2.0 / 49.0;
  double se = std::sqrt(expect * (1 - expect) / kTrials);
  CHECK(std::abs(hits / double(kTrials) - expect) < 3 * se);
  CHECK_THROWS_AS(sample_dout(4, 4, rng), std::invalid_argument);
}

TEST_CASE("dout out-degrees are exactly d") {
  for (int t = 0; t < 100; ++t) {
    RngStream rng(20, t);
    Digraph g = sample_dout(30, 3, rng);
    auto deg = g.out_degrees();
    for (Vertex v = 1; v <= 30; ++v) REQUIRE(deg[v] == 3);
  }
}

TEST_CASE("containment predicate modes") {
  Multigraph empty(4), any(4);
  any.add_edge(1, 2, 1);
  CHECK(contains(empty, any, ContainmentMode::kSimpleSubgraph));
  CHECK(contains(empty, any, ContainmentMode::kSubMultigraph));

  Multigraph dbl(4), simple(4);
  dbl.add_edge(1, 2, 2);
  simple.add_edge(1, 2, 1);
  CHECK_FALSE(contains(dbl, simple, ContainmentMode::kSubMultigraph));
  CHECK(contains(dbl, simple, ContainmentMode::kSimpleSubgraph));

  Multigraph other(5);
  CHECK_THROWS_AS(contains(dbl, other, ContainmentMode::kSimpleSubgraph),
                  std::invalid_argument);
}

TEST_CASE("sampler determinism across samplers") {
  RngStream a1(21, 5), a2(21, 5);
  CHECK(sample_gnp(40, 0.2, a1) == sample_gnp(40, 0.2, a2));
  RngStream b1(22, 5), b2(22, 5);
  CHECK(sample_pairing(6, 3, PairingCondition::loopless(), b1) ==
        sample_pairing(6, 3, PairingCondition::loopless(), b2));
  RngStream c1(23, 5), c2(23, 5);
  CHECK(sample_grd(8, 3, c1) == sample_grd(8, 3, c2));
  RngStream d1(24, 5), d2(24, 5);
  CHECK(sample_dout_undirected(20, 2, d1) == sample_dout_undirected(20, 2, d2));
}

TEST_CASE("rejection caps surface as distinct failures") {
  RngStream rng(25, 0);
  // An infeasible double-edge profile: more disjoint doubles than n/2 allows.
  CHECK_THROWS_AS(
      sample_pairing(4, 2, PairingCondition::disjoint_doubles(3), rng, 2000),
      rejection_cap_error);
}
