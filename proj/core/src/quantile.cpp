#include "regraph/quantile.hpp"

#include <cmath>
#include <stdexcept>

namespace regraph {

IntDistribution IntDistribution::binomial(std::uint64_t n, double p) {
  if (!(p >= 0.0) || !(p <= 1.0))
    throw std::invalid_argument("IntDistribution::binomial: p outside [0,1]");
  IntDistribution d;
  d.lo = 0;
  d.pmf.resize(n + 1, 0.0);
  // pmf by log-space recurrence; stable for the large-n small-p cases here.
  long double logp = std::log(static_cast<long double>(p));
  long double log1mp = std::log1p(static_cast<long double>(-p));
  if (p == 0.0) {
    d.pmf[0] = 1.0;
    return d;
  }
  if (p == 1.0) {
    d.pmf[n] = 1.0;
    return d;
  }
  long double logpmf = static_cast<long double>(n) * log1mp;  // k = 0
  for (std::uint64_t k = 0; k <= n; ++k) {
    d.pmf[k] = static_cast<double>(std::exp(logpmf));
    if (k < n)
      logpmf += std::log(static_cast<long double>(n - k)) -
                std::log(static_cast<long double>(k + 1)) + logp - log1mp;
  }
  return d;
}

IntDistribution IntDistribution::point_mass(std::int64_t v) {
  IntDistribution d;
  d.lo = v;
  d.pmf = {1.0};
  return d;
}

double IntDistribution::cdf(std::int64_t v) const {
  if (v < lo) return 0.0;
  double acc = 0.0;
  std::size_t upto = std::min<std::size_t>(pmf.size(), static_cast<std::size_t>(v - lo) + 1);
  for (std::size_t k = 0; k < upto; ++k) acc += pmf[k];
  return std::min(acc, 1.0);
}

std::int64_t IntDistribution::quantile(double u) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    acc += pmf[k];
    if (u < acc) return lo + static_cast<std::int64_t>(k);
  }
  return lo + static_cast<std::int64_t>(pmf.size()) - 1;
}

QuantileCouplingResult quantile_coupling(const IntDistribution& dist_x,
                                         const IntDistribution& dist_y) {
  QuantileCouplingResult res;
  auto& jc = res.coupling;
  jc.keys_x.reserve(dist_x.size());
  jc.keys_y.reserve(dist_y.size());
  for (std::size_t i = 0; i < dist_x.size(); ++i)
    jc.keys_x.push_back(std::to_string(dist_x.lo + static_cast<std::int64_t>(i)));
  for (std::size_t j = 0; j < dist_y.size(); ++j)
    jc.keys_y.push_back(std::to_string(dist_y.lo + static_cast<std::int64_t>(j)));

  // Exact dyadic weights, normalized by their exact sums so both sides total
  // exactly 1; staircase cells are CDF-interval overlaps, so row sums equal
  // the normalized pmf_x and column sums the normalized pmf_y exactly.
  std::vector<Rational> px, py;
  Rational sx = 0, sy = 0;
  for (double w : dist_x.pmf) {
    px.emplace_back(w);
    sx += px.back();
  }
  for (double w : dist_y.pmf) {
    py.emplace_back(w);
    sy += py.back();
  }
  if (sx == 0 || sy == 0) throw std::invalid_argument("quantile_coupling: zero mass");
  for (auto& w : px) w /= sx;
  for (auto& w : py) w /= sy;
  std::size_t i = 0, j = 0;
  Rational need_x = px.empty() ? Rational(0) : px[0];
  Rational need_y = py.empty() ? Rational(0) : py[0];
  while (i < px.size() && j < py.size()) {
    if (need_x == 0) {
      if (++i >= px.size()) break;
      need_x = px[i];
      continue;
    }
    if (need_y == 0) {
      if (++j >= py.size()) break;
      need_y = py[j];
      continue;
    }
    Rational cell = std::min(need_x, need_y);
    jc.entries.emplace_back(i, j, cell);
    need_x -= cell;
    need_y -= cell;
  }

  res.dominated = true;
  // Domination check: CDF_X(v) >= CDF_Y(v) for all v (exact partial sums).
  {
    Rational cx = 0, cy = 0;
    std::int64_t v = std::min(dist_x.lo, dist_y.lo);
    std::int64_t vmax = std::max(dist_x.lo + static_cast<std::int64_t>(dist_x.size()),
                                 dist_y.lo + static_cast<std::int64_t>(dist_y.size())) - 1;
    for (; v <= vmax; ++v) {
      std::int64_t kx = v - dist_x.lo, ky = v - dist_y.lo;
      if (kx >= 0 && kx < static_cast<std::int64_t>(px.size())) cx += px[kx];
      if (ky >= 0 && ky < static_cast<std::int64_t>(py.size())) cy += py[ky];
      if (cx < cy) {
        res.dominated = false;
        break;
      }
    }
  }

  for (const auto& [ci, cj, w] : jc.entries) {
    std::int64_t x = dist_x.lo + static_cast<std::int64_t>(ci);
    std::int64_t y = dist_y.lo + static_cast<std::int64_t>(cj);
    if (res.dominated && x > y)
      throw std::logic_error("quantile_coupling: domination violated by a cell");
    if (x > y) jc.failure_mass += w;  // mass where X > Y
  }
  return res;
}

std::pair<std::int64_t, std::int64_t> quantile_sample(const IntDistribution& dist_x,
                                                      const IntDistribution& dist_y,
                                                      RngStream& rng) {
  double u = rng.u01();
  return {dist_x.quantile(u), dist_y.quantile(u)};
}

}  // namespace regraph
