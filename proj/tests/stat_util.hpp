#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace testutil {

/// Pearson chi-square p-value against the given expected counts.
inline double chi_square_pvalue(const std::vector<double>& observed,
                                const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.size() < 2)
    throw std::invalid_argument("chi_square_pvalue: bad inputs");
  double stat = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0) throw std::invalid_argument("chi_square_pvalue: nonpositive expected");
    double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Chi-square p-value of observed key counts against a probability map.
inline double chi_square_vs_probs(const std::map<std::string, std::size_t>& counts,
                                  const std::map<std::string, double>& probs,
                                  std::size_t total) {
  std::vector<double> obs, exp;
  std::size_t seen = 0;
  for (const auto& [key, p] : probs) {
    auto it = counts.find(key);
    std::size_t c = it == counts.end() ? 0 : it->second;
    seen += c;
    obs.push_back(static_cast<double>(c));
    exp.push_back(p * static_cast<double>(total));
  }
  if (seen != total) return 0.0;  // mass outside the expected support
  return chi_square_pvalue(obs, exp);
}

/// Kolmogorov-Smirnov p-value for uniformity on [0,1).
inline double ks_uniform_pvalue(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double lo = static_cast<double>(i) / n - xs[i];
    double hi = xs[i] - (static_cast<double>(i + 1) / n - 1.0 / n);
    d = std::max({d, lo + 1.0 / n, hi});
  }
  double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
  double p = 0;
  for (int k = 1; k <= 100; ++k)
    p += 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace testutil
