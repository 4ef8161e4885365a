#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "regraph/finite_distribution.hpp"

namespace regraph {

/// Forbidden relation over the product of two enumerated outcome spaces.
/// bad(i,j) == true means the pair (x_i, y_j) lies in the failure event.
class Relation {
 public:
  Relation(std::size_t nx, std::size_t ny, bool initially_bad = false)
      : nx_(nx), ny_(ny), bad_(nx * ny, initially_bad) {}

  static Relation from_predicate(std::size_t nx, std::size_t ny,
                                 const std::function<bool(std::size_t, std::size_t)>& is_bad);

  /// Inequality relation: (x,y) is bad unless the keys coincide.
  static Relation inequality(const FiniteDistribution& mu_x, const FiniteDistribution& mu_y);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  bool bad(std::size_t i, std::size_t j) const { return bad_[i * ny_ + j]; }
  void set_bad(std::size_t i, std::size_t j, bool b = true) { bad_[i * ny_ + j] = b; }

 private:
  std::size_t nx_, ny_;
  std::vector<bool> bad_;
};

struct DeficiencyResult {
  Rational deficiency;              // min achievable P((X,Y) in bad)
  std::vector<std::size_t> witness; // A realizing max_A mu_X(A) - mu_Y(N(A))
};

/// Minimal unavoidable mass on the bad relation over all couplings of
/// (mu_X, mu_Y), via exact max-flow on the complement relation. The witness
/// set attains equality in the Hall-type condition.
DeficiencyResult strassen_deficiency(const FiniteDistribution& mu_x,
                                     const FiniteDistribution& mu_y,
                                     const Relation& bad);

/// Explicit joint distribution with exact marginals and a failure mass.
struct JointCoupling {
  std::vector<std::string> keys_x;
  std::vector<std::string> keys_y;
  // Sparse entries (i, j, weight); weights exact rationals.
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
  Rational failure_mass = 0;

  std::vector<Rational> marginal_x() const;
  std::vector<Rational> marginal_y() const;
  /// Throws unless row sums equal mu_X and column sums equal mu_Y exactly.
  void check_marginals(const FiniteDistribution& mu_x, const FiniteDistribution& mu_y) const;
};

/// Optimal coupling realizing the Strassen deficiency: max-flow mass on
/// allowed pairs, residual mass completed in lexicographic outcome order.
JointCoupling build_optimal_coupling(const FiniteDistribution& mu_x,
                                     const FiniteDistribution& mu_y,
                                     const Relation& bad);

struct DegreeCouplingResult {
  double epsilon = 0;
  double delta = 0;
  double bound = 0;  // 2*delta + epsilon/(1-epsilon)
  JointCoupling coupling;
  Rational realized_failure = 0;
};

/// Coupling of uniform X on S and uniform Y on T so that (X,Y) lands in the
/// bipartite relation D except with probability at most 2*delta +
/// eps/(1-eps), where eps and delta are the smallest values satisfying the
/// degree conditions deg_D(x) >= (1-eps)|D|/|S| (resp. |T|) off a delta
/// fraction of each side. `good(i,j)` marks the pairs of D.
DegreeCouplingResult degree_coupling(std::size_t s_size, std::size_t t_size,
                                     const std::function<bool(std::size_t, std::size_t)>& good);

}  // namespace regraph
