#include "regraph/rng.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace regraph {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) noexcept
    : seed_(seed), stream_(stream) {
  // Derive a per-stream key by mixing seed and stream through two rounds.
  key_ = mix64(mix64(seed + kGolden) ^ (stream * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL));
}

std::uint64_t RngStream::next_u64() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RngStream::u01() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::below(std::uint64_t n) noexcept {
  // Lemire's multiply-shift with rejection; unbiased.
  for (;;) {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    std::uint64_t lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      std::uint64_t threshold = (0 - n) % n;
      if (lo < threshold) continue;
    }
    return static_cast<std::uint64_t>(m >> 64);
  }
}

std::uint64_t RngStream::binomial(std::uint64_t n, double p) noexcept {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  if (p > 0.5) return n - binomial(n, 1.0 - p);
  // CDF inversion with the pmf recurrence. Mean np stays modest in all of
  // our uses, so the walk is short; fall back to a Bernoulli sum only if
  // the start underflows.
  double q = 1.0 - p;
  double pmf = std::pow(q, static_cast<double>(n));
  if (pmf <= 0.0) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 0; i < n; ++i) c += bernoulli(p) ? 1 : 0;
    return c;
  }
  double u = u01();
  double cdf = pmf;
  std::uint64_t k = 0;
  double ratio = p / q;
  while (u > cdf && k < n) {
    ++k;
    pmf *= ratio * static_cast<double>(n - k + 1) / static_cast<double>(k);
    cdf += pmf;
  }
  return k;
}

std::vector<std::uint64_t> RngStream::subset(std::uint64_t n, std::uint64_t k) {
  std::vector<std::uint64_t> out;
  out.reserve(k);
  std::unordered_set<std::uint64_t> seen;
  // Floyd's algorithm: uniform k-subset with exactly k insertions.
  for (std::uint64_t j = n - k; j < n; ++j) {
    std::uint64_t t = below(j + 1);
    if (seen.count(t)) t = j;
    seen.insert(t);
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace regraph
