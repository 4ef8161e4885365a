#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "regraph/io.hpp"
#include "regraph/model_distribution.hpp"
#include "regraph/rng.hpp"
#include "regraph/samplers.hpp"

using namespace regraph;

TEST_CASE("pairing law at (2,2): two loops 1/3, double edge 2/3") {
  ModelLaw law = exact_model_distribution({ExactModel::kPairing, 2, 2, 0});
  REQUIRE(law.dist.size() == 2);
  Multigraph loops(2);
  loops.add_edge(1, 1, 1);
  loops.add_edge(2, 2, 1);
  Multigraph dbl(2);
  dbl.add_edge(1, 2, 2);
  CHECK(law.dist.prob_of(loops.canonical_key()) == Rational(1, 3));
  CHECK(law.dist.prob_of(dbl.canonical_key()) == Rational(2, 3));
}

TEST_CASE("loopless pairing law at (2,2) is a point mass on the double edge") {
  ModelLaw law = exact_model_distribution({ExactModel::kLooplessPairing, 2, 2, 0});
  REQUIRE(law.dist.size() == 1);
  CHECK(law.dist.prob(0) == Rational(1));
  CHECK(law.graphs[0].multiplicity(1, 2) == 2);
}

TEST_CASE("model laws sum to exactly one and match the space size") {
  // The pairing law's denominators divide (dn-1)!!.
  ModelLaw law = exact_model_distribution({ExactModel::kPairing, 4, 2, 0});
  Rational total = 0;
  for (std::size_t i = 0; i < law.dist.size(); ++i) total += law.dist.prob(i);
  CHECK(total == Rational(1));
  CHECK(pairing_space_size(4, 2) == 105);
}

TEST_CASE("space caps reject with the computed cardinality") {
  CHECK_THROWS_WITH_AS(exact_model_distribution({ExactModel::kPairing, 12, 6, 0}),
                       doctest::Contains("too large"), std::invalid_argument);
}

TEST_CASE("matching-superpose law at (4,2) spreads over the 9 ordered pairs") {
  ModelLaw law = exact_model_distribution({ExactModel::kMatchingSuperpose, 4, 2, 0});
  // 3 matchings, 9 ordered pairs; 3 equal ("doubled matching") outcomes and
  // 6 mixed ones.
  Rational total = 0;
  for (std::size_t i = 0; i < law.dist.size(); ++i) total += law.dist.prob(i);
  CHECK(total == Rational(1));
  std::size_t doubled = 0, mixed = 0;
  for (std::size_t i = 0; i < law.dist.size(); ++i) {
    bool has_double = false;
    for (const auto& [pr, mult] : law.graphs[i].edges())
      if (mult == 2) has_double = true;
    if (has_double) ++doubled;
    else ++mixed;
  }
  CHECK(doubled == 3);
  CHECK(mixed == 3);  // each mixed multigraph arises from 2 ordered pairs
  for (std::size_t i = 0; i < law.dist.size(); ++i)
    CHECK(law.dist.prob(i) == (law.graphs[i].is_simple() ? Rational(2, 9) : Rational(1, 9)));
}

TEST_CASE("superposition of laws convolves exactly") {
  ModelLaw base = exact_model_distribution({ExactModel::kLooplessPairing, 2, 2, 0});
  ModelLaw add = exact_model_distribution({ExactModel::kMatchingSuperpose, 2, 1, 0});
  ModelLaw sum = superpose_laws(base, add);
  REQUIRE(sum.dist.size() == 1);  // double edge + forced matching = triple edge
  CHECK(sum.graphs[0].multiplicity(1, 2) == 3);
  ModelLaw epm = exact_model_distribution({ExactModel::kPairingPlusMatchings, 2, 2, 1});
  CHECK(epm.dist.tv_distance(sum.dist) == Rational(0));
}

TEST_CASE("grd law at (6,3) is uniform over 70 graphs") {
  ModelLaw law = exact_model_distribution({ExactModel::kGrd, 6, 3, 0});
  REQUIRE(law.dist.size() == 70);
  for (std::size_t i = 0; i < law.dist.size(); ++i) {
    CHECK(law.dist.prob(i) == Rational(1, 70));
    CHECK(law.graphs[i].is_simple());
    auto deg = law.graphs[i].degrees();
    for (Vertex v = 1; v <= 6; ++v) REQUIRE(deg[v] == 3);
  }
}

TEST_CASE("tv distance basics") {
  FiniteDistribution a({"x", "y"}, {Rational(7, 10), Rational(3, 10)});
  FiniteDistribution b({"x", "y"}, {Rational(2, 5), Rational(3, 5)});
  CHECK(a.tv_distance(a) == Rational(0));
  CHECK(a.tv_distance(b) == Rational(3, 10));
  FiniteDistribution c({"z"}, {Rational(1)});
  CHECK(a.tv_distance(c) == Rational(1));  // disjoint supports
}

TEST_CASE("tv distance is a metric on random rational triples") {
  RngStream rng(41, 0);
  for (int t = 0; t < 40; ++t) {
    auto random_dist = [&](int support) {
      std::vector<std::string> keys;
      std::vector<Rational> probs;
      Rational total = 0;
      for (int i = 0; i < support; ++i) {
        keys.push_back("k" + std::to_string(i));
        Rational w(1 + rng.below(20), 1);
        probs.push_back(w);
        total += w;
      }
      for (auto& p : probs) p /= total;
      return FiniteDistribution(keys, probs);
    };
    FiniteDistribution a = random_dist(5), b = random_dist(5), c = random_dist(5);
    CHECK(a.tv_distance(b) == b.tv_distance(a));
    CHECK(a.tv_distance(c) <= a.tv_distance(b) + b.tv_distance(c));
    CHECK(a.tv_distance(b) >= Rational(0));
    CHECK(a.tv_distance(b) <= Rational(1));
  }
}

TEST_CASE("distribution restriction renormalizes exactly") {
  FiniteDistribution d({"a", "b", "c"}, {Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  FiniteDistribution r = d.restricted({true, false, true});
  CHECK(r.prob_of("a") == Rational(3, 4));
  CHECK(r.prob_of("c") == Rational(1, 4));
}

TEST_CASE("distribution serialization round-trips exactly") {
  ModelLaw law = exact_model_distribution({ExactModel::kLooplessPairing, 4, 2, 0});
  std::string text = serialize(law.dist);
  FiniteDistribution back = parse_finite_distribution(text);
  CHECK(back.tv_distance(law.dist) == Rational(0));
  CHECK(serialize(back) == text);
}
