#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "regraph/io.hpp"
#include "regraph/quantile.hpp"
#include "regraph/rng.hpp"
#include "regraph/strassen.hpp"
#include "regraph/thresholds.hpp"

using namespace regraph;

namespace {

// Exhaustive oracle: max over all subsets A of mu_X(A) - mu_Y(N(A)).
Rational deficiency_by_subset_scan(const FiniteDistribution& mx, const FiniteDistribution& my,
                                   const Relation& bad) {
  std::size_t nx = mx.size(), ny = my.size();
  REQUIRE(nx <= 16);
  Rational best = 0;
  for (std::uint32_t mask = 0; mask < (1u << nx); ++mask) {
    Rational mass_a = 0;
    std::vector<bool> nbhd(ny, false);
    for (std::size_t i = 0; i < nx; ++i) {
      if (!(mask & (1u << i))) continue;
      mass_a += mx.prob(i);
      for (std::size_t j = 0; j < ny; ++j)
        if (!bad.bad(i, j)) nbhd[j] = true;
    }
    Rational mass_n = 0;
    for (std::size_t j = 0; j < ny; ++j)
      if (nbhd[j]) mass_n += my.prob(j);
    Rational gap = mass_a - mass_n;
    if (gap > best) best = gap;
  }
  return best;
}

FiniteDistribution random_distribution(RngStream& rng, std::size_t support,
                                       const std::string& prefix) {
  std::vector<std::string> keys;
  std::vector<Rational> probs;
  Rational total = 0;
  for (std::size_t i = 0; i < support; ++i) {
    keys.push_back(prefix + std::to_string(i));
    Rational w(1 + rng.below(30), 1);
    probs.push_back(w);
    total += w;
  }
  for (auto& p : probs) p /= total;
  return FiniteDistribution(keys, probs);
}

}  // namespace

TEST_CASE("identical uniform distributions couple with zero failure") {
  FiniteDistribution u({"a", "b", "c"},
                       {Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  Relation bad = Relation::inequality(u, u);
  auto res = strassen_deficiency(u, u, bad);
  CHECK(res.deficiency == Rational(0));
  JointCoupling jc = build_optimal_coupling(u, u, bad);
  CHECK(jc.failure_mass == Rational(0));
}

TEST_CASE("inequality deficiency equals total variation") {
  FiniteDistribution a({"x", "y"}, {Rational(7, 10), Rational(3, 10)});
  FiniteDistribution b({"x", "y"}, {Rational(2, 5), Rational(3, 5)});
  Relation bad = Relation::inequality(a, b);
  auto res = strassen_deficiency(a, b, bad);
  CHECK(res.deficiency == Rational(3, 10));
  JointCoupling jc = build_optimal_coupling(a, b, bad);
  CHECK(jc.failure_mass == Rational(3, 10));
  jc.check_marginals(a, b);
}

TEST_CASE("flow deficiency equals the exhaustive subset-scan on random instances") {
  for (int t = 0; t < 60; ++t) {
    RngStream rng(51, t);
    std::size_t nx = 2 + rng.below(7), ny = 2 + rng.below(7);
    FiniteDistribution mx = random_distribution(rng, nx, "x");
    FiniteDistribution my = random_distribution(rng, ny, "y");
    Relation bad = Relation::from_predicate(
        nx, ny, [&](std::size_t, std::size_t) { return rng.bernoulli(0.4); });
    auto res = strassen_deficiency(mx, my, bad);
    Rational oracle = deficiency_by_subset_scan(mx, my, bad);
    REQUIRE(res.deficiency == oracle);

    // The witness attains the max.
    Rational mass_a = 0;
    std::vector<bool> nbhd(ny, false);
    for (std::size_t i : res.witness) {
      mass_a += mx.prob(i);
      for (std::size_t j = 0; j < ny; ++j)
        if (!bad.bad(i, j)) nbhd[j] = true;
    }
    Rational mass_n = 0;
    for (std::size_t j = 0; j < ny; ++j)
      if (nbhd[j]) mass_n += my.prob(j);
    REQUIRE(mass_a - mass_n == oracle);

    JointCoupling jc = build_optimal_coupling(mx, my, bad);
    REQUIRE(jc.failure_mass == oracle);
    jc.check_marginals(mx, my);
  }
}

TEST_CASE("inequality deficiency equals TV on random pairs with larger support") {
  for (int t = 0; t < 100; ++t) {
    RngStream rng(52, t);
    std::size_t support = 2 + rng.below(49);
    FiniteDistribution a = random_distribution(rng, support, "k");
    FiniteDistribution b = random_distribution(rng, support, "k");
    Relation bad = Relation::inequality(a, b);
    CHECK(strassen_deficiency(a, b, bad).deficiency == a.tv_distance(b));
  }
}

TEST_CASE("degree coupling: complete relation and perfect matching relation") {
  auto complete = degree_coupling(4, 4, [](std::size_t, std::size_t) { return true; });
  CHECK(complete.epsilon == 0.0);
  CHECK(complete.delta == 0.0);
  CHECK(complete.bound == 0.0);
  CHECK(complete.realized_failure == Rational(0));

  auto bijection = degree_coupling(5, 5, [](std::size_t i, std::size_t j) { return i == j; });
  CHECK(bijection.epsilon == 0.0);
  CHECK(bijection.delta == 0.0);
  CHECK(bijection.realized_failure == Rational(0));
}

TEST_CASE("degree coupling with one isolated vertex") {
  const std::size_t m = 6;
  // Every pair is related except row 0, which is isolated.
  auto res = degree_coupling(
      m, m, [](std::size_t i, std::size_t j) { return i != 0; });
  CHECK(res.delta == doctest::Approx(1.0 / m));
  CHECK(res.epsilon == doctest::Approx(0.0));
  CHECK(res.bound == doctest::Approx(2.0 / m));
  CHECK(static_cast<double>(res.realized_failure) <= res.bound + 1e-12);
  CHECK_THROWS_AS(degree_coupling(3, 3, [](std::size_t, std::size_t) { return false; }),
                  std::invalid_argument);
}

TEST_CASE("quantile coupling: binomial domination cases") {
  auto grow_p = quantile_coupling(IntDistribution::binomial(10, 0.2),
                                  IntDistribution::binomial(10, 0.5));
  CHECK(grow_p.dominated);
  CHECK(grow_p.coupling.failure_mass == Rational(0));
  RngStream rng(53, 0);
  for (int t = 0; t < 2000; ++t) {
    auto [x, y] = quantile_sample(IntDistribution::binomial(10, 0.2),
                                  IntDistribution::binomial(10, 0.5), rng);
    REQUIRE(x <= y);
  }

  auto same = quantile_coupling(IntDistribution::binomial(8, 0.3),
                                IntDistribution::binomial(8, 0.3));
  CHECK(same.dominated);
  for (const auto& [i, j, w] : same.coupling.entries) CHECK(i == j);  // X = Y a.s.
}

TEST_CASE("quantile coupling marginals are exact") {
  IntDistribution a = IntDistribution::binomial(12, 0.37);
  IntDistribution b = IntDistribution::binomial(30, 0.11);
  auto qc = quantile_coupling(a, b);
  auto mx = qc.coupling.marginal_x();
  auto my = qc.coupling.marginal_y();
  Rational sa = 0, sb = 0;
  for (double w : a.pmf) sa += Rational(w);
  for (double w : b.pmf) sb += Rational(w);
  for (std::size_t i = 0; i < a.pmf.size(); ++i) REQUIRE(mx[i] == Rational(a.pmf[i]) / sa);
  for (std::size_t j = 0; j < b.pmf.size(); ++j) REQUIRE(my[j] == Rational(b.pmf[j]) / sb);
}

TEST_CASE("the binomial-domination instance from the coupling construction") {
  // Bin(ceil(eps^2 ln n), n^{-eps/8}) vs Bin(ceil(n^{1-eps/8}), (1+eps/2) ln n/(2n))
  // at n = 10^4, eps = 0.3; the flag is computed, then re-derived here from
  // independently computed CDFs.
  double n = 1e4, eps = 0.3;
  std::uint64_t n1 = static_cast<std::uint64_t>(std::ceil(eps * eps * std::log(n)));
  double p1 = std::pow(n, -eps / 8.0);
  std::uint64_t n2 = static_cast<std::uint64_t>(std::ceil(std::pow(n, 1.0 - eps / 8.0)));
  double p2 = (1.0 + eps / 2.0) * std::log(n) / (2.0 * n);
  IntDistribution a = IntDistribution::binomial(n1, p1);
  IntDistribution b = IntDistribution::binomial(n2, p2);
  auto qc = quantile_coupling(a, b);
  bool dominated_oracle = true;
  for (std::int64_t v = 0; v <= static_cast<std::int64_t>(n1); ++v)
    if (a.cdf(v) < b.cdf(v) - 1e-15) dominated_oracle = false;
  CHECK(qc.dominated == dominated_oracle);
  MESSAGE("eq-coupling instance dominated: ", qc.dominated);
  CHECK(qc.dominated);  // recorded: domination holds at these parameters
}

TEST_CASE("coupling export round-trips") {
  FiniteDistribution a({"x", "y"}, {Rational(7, 10), Rational(3, 10)});
  FiniteDistribution b({"u", "v"}, {Rational(2, 5), Rational(3, 5)});
  Relation bad(2, 2, false);
  JointCoupling jc = build_optimal_coupling(a, b, bad);
  JointCoupling back = parse_joint_coupling(serialize(jc));
  CHECK(serialize(back) == serialize(jc));
}

TEST_CASE("lambert W lower branch: residuals and reference values") {
  for (double x : {-0.367879, -0.3, -0.2, -0.1, -0.05, -0.01, -1e-4, -1e-8}) {
    double w = lambert_w_lower(x);
    CHECK(w <= -1.0);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12);
  }
  // Bisection-only oracle at a few points.
  auto bisect = [](double x) {
    double lo = -60, hi = -1;
    for (int i = 0; i < 200; ++i) {
      double mid = 0.5 * (lo + hi);
      (mid * std::exp(mid) - x > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  for (double x : {-0.3, -0.15, -0.02}) {
    CHECK(lambert_w_lower(x) == doctest::Approx(bisect(x)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(lambert_w_lower(0.1), std::invalid_argument);
  CHECK_THROWS_AS(lambert_w_lower(-1.0), std::invalid_argument);
}

TEST_CASE("threshold family: reference values and shape") {
  ThresholdFunctions th;
  CHECK(th.f1(1.0) == 0.0);
  CHECK(th.f1(2.0) == doctest::Approx(0.18664).epsilon(6e-4));
  CHECK(std::abs(th.f1(2.0) - 0.18664) < 1e-4);
  // W_-1(-1/(2e)) reference from the same computation route.
  CHECK(lambert_w_lower(-1.0 / (2.0 * std::exp(1.0))) == doctest::Approx(-2.679).epsilon(1e-3));

  // f(1) = 0, strictly increasing, continuous, f < f2 on a 1000-point grid.
  CHECK(th.f(1.0) == 0.0);
  double prev = -1;
  for (int i = 0; i < 1000; ++i) {
    double x = 1.0 + 63.0 * static_cast<double>(i) / 999.0;
    double fx = th.f(x);
    CHECK(fx > prev);
    prev = fx;
    if (x > 1.0) CHECK(fx < th.f2(x));
    CHECK(th.g(x) == fx / 2.0);
  }
  // Continuity across the seam.
  CHECK(std::abs(th.f(2.1 - 1e-9) - th.f(2.1 + 1e-9)) < 1e-6);
  // f1 increases toward 1.
  CHECK(th.f1(1e6) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(th.eval("lambertW-", -0.1) == lambert_w_lower(-0.1));
  CHECK_THROWS_AS(th.eval("nope", 2.0), std::invalid_argument);
}
