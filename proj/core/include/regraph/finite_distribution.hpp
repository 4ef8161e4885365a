#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "regraph/bigint.hpp"

namespace regraph {

/// Explicit probability vector over an enumerated finite outcome space,
/// keyed by canonical text keys. Weights are exact rationals and must sum
/// to exactly 1 once normalized.
class FiniteDistribution {
 public:
  FiniteDistribution() = default;
  FiniteDistribution(std::vector<std::string> keys, std::vector<Rational> probs);

  /// Builds from nonnegative integer counts (probabilities count/total).
  static FiniteDistribution from_counts(std::vector<std::string> keys,
                                        const std::vector<BigCount>& counts);
  /// Builds from doubles; every double converts exactly (dyadic rational),
  /// then the vector is normalized by its exact sum.
  static FiniteDistribution from_doubles(std::vector<std::string> keys,
                                         const std::vector<double>& weights);

  std::size_t size() const { return keys_.size(); }
  const std::vector<std::string>& keys() const { return keys_; }
  const std::vector<Rational>& probs() const { return probs_; }
  const std::string& key(std::size_t i) const { return keys_[i]; }
  const Rational& prob(std::size_t i) const { return probs_[i]; }

  std::optional<std::size_t> index_of(const std::string& key) const;
  Rational prob_of(const std::string& key) const;

  /// Exact total variation distance; outcomes are matched by key, a key
  /// missing on one side carries probability 0 there.
  Rational tv_distance(const FiniteDistribution& other) const;

  /// Restriction to the keys where keep[i] is true, renormalized.
  FiniteDistribution restricted(const std::vector<bool>& keep) const;

  /// Exact-sum check; throws if the weights do not sum to 1.
  void validate() const;

 private:
  void rebuild_index();

  std::vector<std::string> keys_;
  std::vector<Rational> probs_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace regraph
