#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regraph/rng.hpp"
#include "regraph/strassen.hpp"

namespace regraph {

/// Distribution on nonnegative integers with finite support.
struct IntDistribution {
  std::int64_t lo = 0;             // value of the first pmf entry
  std::vector<double> pmf;         // pmf[k] = P(value == lo + k)

  static IntDistribution binomial(std::uint64_t n, double p);
  static IntDistribution point_mass(std::int64_t v);

  std::size_t size() const { return pmf.size(); }
  double cdf(std::int64_t v) const;
  /// Smallest v with CDF(v) >= u.
  std::int64_t quantile(double u) const;
};

struct QuantileCouplingResult {
  JointCoupling coupling;   // sparse monotone staircase, exact marginals
  bool dominated = false;   // CDF_X >= CDF_Y pointwise => P(X <= Y) = 1
};

/// Monotone (common-uniform / inverse-CDF) coupling of two integer
/// distributions. When the domination flag is set, every cell of the
/// coupling satisfies x <= y.
QuantileCouplingResult quantile_coupling(const IntDistribution& dist_x,
                                         const IntDistribution& dist_y);

/// One monotone-coupled draw: a single common uniform pushed through both
/// quantile functions.
std::pair<std::int64_t, std::int64_t> quantile_sample(const IntDistribution& dist_x,
                                                      const IntDistribution& dist_y,
                                                      RngStream& rng);

}  // namespace regraph
