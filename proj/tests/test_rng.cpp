#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "regraph/rng.hpp"
#include "stat_util.hpp"

using regraph::RngStream;

TEST_CASE("identical (seed, stream) reproduces identical draws") {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 10000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("streams are reproducible regardless of other streams' consumption") {
  RngStream burn(42, 0);
  for (int i = 0; i < 1234; ++i) burn.next_u64();
  RngStream fresh(42, 1);
  RngStream again(42, 1);
  for (int i = 0; i < 100; ++i) REQUIRE(fresh.next_u64() == again.next_u64());
}

TEST_CASE("distinct stream indices differ") {
  RngStream a(42, 0), b(42, 1);
  int same = 0;
  for (int i = 0; i < 1000; ++i)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("u01 draws pass a KS uniformity test") {
  RngStream rng(12345, 0);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = rng.u01();
  CHECK(testutil::ks_uniform_pvalue(xs) > 0.001);
}

TEST_CASE("cross-stream correlation is negligible") {
  RngStream a(999, 0), b(999, 1);
  const int kN = 1000000;
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  for (int i = 0; i < kN; ++i) {
    double x = a.u01(), y = b.u01();
    sa += x;
    sb += y;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  double n = kN;
  double cov = sab / n - (sa / n) * (sb / n);
  double corr = cov / std::sqrt((saa / n - (sa / n) * (sa / n)) * (sbb / n - (sb / n) * (sb / n)));
  CHECK(std::abs(corr) < 0.01);
}

TEST_CASE("below is unbiased over a small range") {
  RngStream rng(7, 3);
  std::vector<double> counts(7, 0.0);
  const int kN = 700000;
  for (int i = 0; i < kN; ++i) ++counts[rng.below(7)];
  std::vector<double> expected(7, kN / 7.0);
  CHECK(testutil::chi_square_pvalue(counts, expected) > 0.001);
}

TEST_CASE("binomial sampler matches mean and variance") {
  RngStream rng(11, 0);
  const int kN = 20000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < kN; ++i) {
    double v = static_cast<double>(rng.binomial(1000, 0.3));
    sum += v;
    sum2 += v * v;
  }
  double mean = sum / kN;
  double var = sum2 / kN - mean * mean;
  double expect_mean = 300.0, expect_var = 210.0;
  double se_mean = std::sqrt(expect_var / kN);
  CHECK(std::abs(mean - expect_mean) < 4 * se_mean);
  CHECK(std::abs(var - expect_var) / expect_var < 0.1);
}

TEST_CASE("subset is uniform over k-subsets") {
  RngStream rng(5, 0);
  std::map<std::string, std::size_t> counts;
  const int kN = 60000;
  for (int i = 0; i < kN; ++i) {
    auto s = rng.subset(5, 2);
    counts[std::to_string(s[0]) + "," + std::to_string(s[1])]++;
  }
  REQUIRE(counts.size() == 10);
  std::map<std::string, double> probs;
  for (const auto& [k, v] : counts) probs[k] = 0.1;
  CHECK(testutil::chi_square_vs_probs(counts, probs, kN) > 0.001);
}
