#include "regraph/finite_distribution.hpp"

#include <stdexcept>

namespace regraph {

BigCount factorial_big(unsigned n) {
  BigCount r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigCount double_factorial_big(unsigned n) {
  BigCount r = 1;
  for (unsigned i = n; i > 1; i -= 2) r *= i;
  return r;
}

BigCount binomial_big(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigCount r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

BigCount perfect_matching_count_complete(unsigned n) {
  if (n % 2 != 0) return 0;
  return n == 0 ? BigCount(1) : double_factorial_big(n - 1);
}

FiniteDistribution::FiniteDistribution(std::vector<std::string> keys,
                                       std::vector<Rational> probs)
    : keys_(std::move(keys)), probs_(std::move(probs)) {
  if (keys_.size() != probs_.size())
    throw std::invalid_argument("FiniteDistribution: keys/probs size mismatch");
  rebuild_index();
  validate();
}

FiniteDistribution FiniteDistribution::from_counts(std::vector<std::string> keys,
                                                   const std::vector<BigCount>& counts) {
  BigCount total = 0;
  for (const auto& c : counts) total += c;
  if (total == 0) throw std::invalid_argument("FiniteDistribution: zero total count");
  std::vector<Rational> probs;
  probs.reserve(counts.size());
  for (const auto& c : counts) probs.emplace_back(Rational(c) / Rational(total));
  return FiniteDistribution(std::move(keys), std::move(probs));
}

FiniteDistribution FiniteDistribution::from_doubles(std::vector<std::string> keys,
                                                    const std::vector<double>& weights) {
  Rational total = 0;
  std::vector<Rational> probs;
  probs.reserve(weights.size());
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("FiniteDistribution: negative weight");
    Rational r(w);  // exact dyadic conversion
    probs.push_back(r);
    total += r;
  }
  if (total == 0) throw std::invalid_argument("FiniteDistribution: zero total weight");
  for (auto& p : probs) p /= total;
  return FiniteDistribution(std::move(keys), std::move(probs));
}

void FiniteDistribution::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (!index_.emplace(keys_[i], i).second)
      throw std::invalid_argument("FiniteDistribution: duplicate key " + keys_[i]);
  }
}

std::optional<std::size_t> FiniteDistribution::index_of(const std::string& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Rational FiniteDistribution::prob_of(const std::string& key) const {
  auto i = index_of(key);
  return i ? probs_[*i] : Rational(0);
}

Rational FiniteDistribution::tv_distance(const FiniteDistribution& other) const {
  Rational sum = 0;
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    Rational diff = probs_[i] - other.prob_of(keys_[i]);
    sum += diff < 0 ? -diff : diff;
  }
  for (std::size_t j = 0; j < other.keys_.size(); ++j)
    if (!index_of(other.keys_[j])) sum += other.probs_[j];
  return sum / 2;
}

FiniteDistribution FiniteDistribution::restricted(const std::vector<bool>& keep) const {
  if (keep.size() != keys_.size())
    throw std::invalid_argument("FiniteDistribution::restricted: mask size mismatch");
  std::vector<std::string> keys;
  std::vector<Rational> probs;
  Rational total = 0;
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (!keep[i]) continue;
    keys.push_back(keys_[i]);
    probs.push_back(probs_[i]);
    total += probs_[i];
  }
  if (total == 0)
    throw std::invalid_argument("FiniteDistribution::restricted: empty restriction");
  for (auto& p : probs) p /= total;
  return FiniteDistribution(std::move(keys), std::move(probs));
}

void FiniteDistribution::validate() const {
  Rational total = 0;
  for (const auto& p : probs_) {
    if (p < 0) throw std::invalid_argument("FiniteDistribution: negative probability");
    total += p;
  }
  if (total != 1) throw std::invalid_argument("FiniteDistribution: probabilities must sum to 1");
}

}  // namespace regraph
