#pragma once

#include <cstdint>
#include <vector>

namespace regraph {

/// Counter-based seeded random stream. A stream is fully identified by
/// (seed, stream index): draw k of stream i is a pure function of
/// (seed, i, k), so stream i is reproducible no matter how many draws other
/// streams have consumed. Monte Carlo trials use stream index = trial index.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform double in [0,1) with 53 random bits.
  double u01() noexcept;

  /// Uniform integer in [0, n). Unbiased (Lemire with rejection). n >= 1.
  std::uint64_t below(std::uint64_t n) noexcept;

  bool bernoulli(double p) noexcept { return u01() < p; }

  /// Exact Binomial(n, p) by CDF inversion; O(np + 1) time.
  std::uint64_t binomial(std::uint64_t n, double p) noexcept;

  /// In-place Fisher-Yates; stable across platforms (no std::shuffle).
  template <typename T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  /// Uniform k-subset of {0,...,n-1}, ascending order (Floyd's algorithm
  /// followed by a sort).
  std::vector<std::uint64_t> subset(std::uint64_t n, std::uint64_t k);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace regraph
