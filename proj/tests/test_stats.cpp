#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "regraph/census.hpp"
#include "regraph/moments.hpp"
#include "regraph/rng.hpp"
#include "regraph/samplers.hpp"
#include "regraph/summary.hpp"

using namespace regraph;

namespace {

// O(n^3) triangle oracle.
std::uint64_t triangles_by_triple_scan(const Multigraph& g) {
  std::uint64_t count = 0;
  for (Vertex u = 1; u <= g.n(); ++u)
    for (Vertex v = u + 1; v <= g.n(); ++v)
      for (Vertex w = v + 1; w <= g.n(); ++w)
        if (g.multiplicity(u, v) && g.multiplicity(u, w) && g.multiplicity(v, w)) ++count;
  return count;
}

}  // namespace

TEST_CASE("census on canned multigraphs") {
  Multigraph g(3);
  g.add_edge(1, 2, 2);
  g.add_edge(3, 3, 1);
  CensusCounts c = multigraph_census(g);
  CHECK(c.loops == 1);
  CHECK(c.doubles_exact == 1);
  CHECK(c.triangles == 0);
  CHECK_FALSE(c.simple);

  Multigraph k4(4);
  for (Vertex u = 1; u <= 4; ++u)
    for (Vertex v = u + 1; v <= 4; ++v) k4.add_edge(u, v, 1);
  CensusCounts ck = multigraph_census(k4);
  CHECK(ck.triangles == 4);
  CHECK(ck.doubles_exact == 0);
  CHECK(ck.simple);
}

TEST_CASE("census triangles agree with the triple-scan oracle") {
  for (int t = 0; t < 100; ++t) {
    RngStream rng(81, t);
    Multigraph g = sample_matching_model(10, 4, MatchingModelMode::kSuperpose, rng);
    CHECK(multigraph_census(g).triangles == triangles_by_triple_scan(g));
  }
}

TEST_CASE("census is permutation-equivariant") {
  for (int t = 0; t < 100; ++t) {
    RngStream rng(82, t);
    Multigraph g = sample_pairing(8, 3, PairingCondition::none(), rng).project();
    CensusCounts base = multigraph_census(g);
    std::vector<Vertex> perm(8);
    for (Vertex i = 0; i < 8; ++i) perm[i] = i;
    rng.shuffle(perm);
    CensusCounts moved = multigraph_census(g.relabeled(perm));
    CHECK(base.loops == moved.loops);
    CHECK(base.doubles_exact == moved.doubles_exact);
    CHECK(base.doubles_at_least == moved.doubles_at_least);
    CHECK(base.triangles == moved.triangles);
  }
}

TEST_CASE("moment predictions: reference values") {
  MomentPrediction p3 = predicted_moments(1000, 3);
  CHECK(p3.ex == doctest::Approx(1.0));
  CHECK(p3.ew == doctest::Approx(8.0 / 6.0));
  MomentPrediction p4 = predicted_moments(5000, 4);
  CHECK(p4.ex == doctest::Approx(2.25));
  CHECK(p4.ew == doctest::Approx(4.5));
  MomentPrediction p10 = predicted_moments(10000, 10);
  CHECK(p10.ratio_conc2 == doctest::Approx(1.0 + 1.0 / 400 + 2.0 / 3000).epsilon(1e-12));
  CHECK(p10.ratio_conc1 == doctest::Approx(1.0 + 1.0 / 6000).epsilon(1e-12));
  CHECK_THROWS_AS(predicted_moments(100, 2), std::invalid_argument);
}

TEST_CASE("moment prediction identities hold exactly") {
  for (std::uint32_t d : {3u, 4u, 7u, 12u}) {
    MomentPrediction p = predicted_moments(2000, d);
    double dd = d;
    CHECK(p.ratio_conc2 == 1.0 + 1.0 / (4 * dd * dd) + 2.0 / (3 * dd * dd * dd));
    CHECK(p.ratio_conc1 == 1.0 + 1.0 / (6 * dd * dd * dd));
    CHECK(p.a_over_ey == p.cov_xy_ratio);
    CHECK(p.b_over_ey == p.cov_wy_ratio);
    CHECK(p.c_over_ey == 1.0 - p.a_over_ey * p.ex - p.b_over_ey * p.ew);
    CHECK(p.var_x == p.ex);
    CHECK(p.var_w == p.ew);
  }
}

TEST_CASE("low-degree exponent checks at both signs") {
  // eps = 0.02: theta < -eps/4 (the regime where the construction works).
  double eps_small = 0.02;
  double theta_small = low_degree_exponent(1.0 + eps_small / 2.0, eps_small * eps_small);
  CHECK(theta_small < -eps_small / 4.0);
  // eps = 0.1: theta > 0 (recorded; the inequality fails at this eps).
  double eps_big = 0.1;
  double theta_big = low_degree_exponent(1.0 + eps_big / 2.0, eps_big * eps_big);
  CHECK(theta_big > 0.0);
}

TEST_CASE("empirical summary: binomial edge count at G(100, 0.5)") {
  SamplerSpec spec = SamplerSpec::parse("gnp", 100, 0, 0.5);
  RngStream base(83, 0);
  SampleSummary sum = empirical_summary(spec, {"edges"}, 10000, base);
  double expect = 4950 * 0.5;
  CHECK(std::abs(sum.mean[0] - expect) < 3 * sum.se(0));
  CHECK(sum.se(0) > 0);
}

TEST_CASE("unknown statistics and models are rejected") {
  SamplerSpec spec = SamplerSpec::parse("gnp", 10, 0, 0.5);
  RngStream base(84, 0);
  CHECK_THROWS_AS(empirical_summary(spec, {"nope"}, 10, base), std::invalid_argument);
  CHECK_THROWS_AS(SamplerSpec::parse("wat", 10, 3, 0), std::invalid_argument);
}

TEST_CASE("summary is independent of the worker count") {
  SamplerSpec spec = SamplerSpec::parse("pstar", 60, 4, 0);
  RngStream base(85, 0);
  SampleSummary s1 = empirical_summary(spec, {"doubles", "triangles"}, 400, base, 1);
  SampleSummary s4 = empirical_summary(spec, {"doubles", "triangles"}, 400, base, 4);
  CHECK(s1.mean == s4.mean);
  CHECK(s1.covariance == s4.covariance);
}

TEST_CASE("double-edge mean approaches (d-1)^2/4 as n grows (trend)") {
  SamplerSpec small = SamplerSpec::parse("pstar", 500, 4, 0);
  SamplerSpec mid = SamplerSpec::parse("pstar", 2000, 4, 0);
  SamplerSpec big = SamplerSpec::parse("pstar", 8000, 4, 0);
  RngStream base(86, 0);
  const std::uint64_t kTrials = 600;
  SampleSummary a = empirical_summary(small, {"doubles"}, kTrials, base);
  SampleSummary b = empirical_summary(mid, {"doubles"}, kTrials, base);
  SampleSummary c = empirical_summary(big, {"doubles"}, kTrials, base);
  double da = std::abs(a.mean[0] - 2.25);
  double db = std::abs(b.mean[0] - 2.25);
  double dc = std::abs(c.mean[0] - 2.25);
  // Monotone shrinking within a 3-s.e. noise allowance.
  CHECK(db <= da + 3 * (a.se(0) + b.se(0)));
  CHECK(dc <= db + 3 * (b.se(0) + c.se(0)));
}

TEST_CASE("empirical TV between sample sets") {
  RngStream rng(87, 0);
  std::vector<std::string> same = {"a", "a", "b", "b"};
  auto zero = tv_distance_empirical(same, same, rng);
  CHECK(zero.tv == 0.0);
  std::vector<std::string> other = {"c", "c", "c", "c"};
  auto one = tv_distance_empirical(same, other, rng);
  CHECK(one.tv == 1.0);
}

TEST_CASE("concentration report on the forced model P*(2,2)") {
  SamplerSpec spec = SamplerSpec::parse("pstar", 2, 2, 0);
  RngStream base(88, 0);
  ConcentrationReport rep = concentration_report(spec, 500, base);
  CHECK(rep.y_mean == 1.0);  // the unique matching is always present
  CHECK(rep.y_se == 0.0);
  CHECK(rep.y_mean_pairing == 2.0);  // two strands of the double edge
}

TEST_CASE("concentration report on P^(1)(8,3): covering counts verified per sample") {
  SamplerSpec spec = SamplerSpec::parse("pi", 8, 3, 0, 1);
  RngStream base(89, 0);
  ConcentrationReport rep = concentration_report(spec, 1000, base);
  CHECK(rep.cover_mode);
  CHECK(rep.cover_violations == 0);
  CHECK(rep.y_mean >= 0.0);
  MESSAGE("covering-count mean at P^(1)(8,3): ", rep.y_mean, ", ratio emp ",
          rep.var_ratio_emp, " vs ", rep.ratio_predicted);
}

TEST_CASE("concentration report against the exact oracle at P*(6,3), reduced trials") {
  SamplerSpec spec = SamplerSpec::parse("pstar", 6, 3, 0);
  ModelLaw law = exact_model_distribution({ExactModel::kLooplessPairing, 6, 3, 0});
  RngStream base(90, 0);
  ConcentrationReport rep = concentration_report(spec, 2000, base, &law);
  CHECK(rep.ey_oracle > 0);
  CHECK(rep.y_z <= 3.0);
}
