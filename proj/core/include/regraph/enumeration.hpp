#pragma once

#include <optional>
#include <vector>

#include "regraph/bigint.hpp"
#include "regraph/multigraph.hpp"

namespace regraph {

/// Bipartite degree sequence (s over side U, t over side V). Entry order is
/// irrelevant to the counts.
struct BipartiteDegreePair {
  std::vector<unsigned> s;
  std::vector<unsigned> t;

  unsigned edge_total() const;  // M = sum s = sum t; throws on mismatch
  unsigned max_degree() const;  // Delta over both sides
  /// J = sum of the s1 largest t-entries + sum of the t1 largest s-entries.
  unsigned joint_degree_bound() const;
};

/// Exact number of simple bipartite graphs with degree sequence (s,t).
/// Memoized dynamic program over the V side; desk scale M <= ~40.
BigCount exact_bipartite_count(const BipartiteDegreePair& dp, unsigned size_cap = 48);

/// Independent second oracle: the same count by a dynamic program over the
/// U side (different recursion order, separate code path).
BigCount exact_bipartite_count_alt(const BipartiteDegreePair& dp, unsigned size_cap = 48);

struct BipartiteEstimate {
  double log_value;       // log of the estimate
  double value;           // exp(log_value); may overflow to inf for large M
  double remainder_arg;   // Delta^4 / M
  bool outside_hypothesis;  // Delta^2 >= M/6
};

/// Leading term of the bipartite enumeration formula (with the exponential
/// correction, without the O(Delta^4/M) remainder), evaluated in log space.
BipartiteEstimate mckay_bipartite_estimate(const BipartiteDegreePair& dp);

/// Degree sequence g on [n] plus a simple forbidden graph X on [n].
struct AvoidanceInstance {
  std::vector<unsigned> degrees;        // g, 0-indexed internally (g[i] = deg of vertex i+1)
  std::vector<VertexPair> forbidden;    // edges of X (1-indexed, u < v)
};

/// Exact number of simple graphs with degree sequence g sharing no edge
/// with X. Backtracking; desk scale sum(g) <= ~36.
BigCount exact_avoiding_count(const AvoidanceInstance& inst, unsigned mass_cap = 44);

struct AvoidingEstimate {
  double log_value;
  double value;
  double lambda;         // lambda(g)
  double lambda_sq;      // lambda(g)^2
  double mu;             // mu(g, X)
  double delta_hat;      // Delta(g)^2 + Delta(g)*Delta(x)
  double remainder_arg;  // delta_hat^2 / M
};

/// Leading term of the avoiding-enumeration formula, log space, plus its
/// diagnostic ingredients.
AvoidingEstimate mckay_avoiding_estimate(const AvoidanceInstance& inst);

using IndexPair = std::pair<unsigned, unsigned>;  // (U index, V index), 0-based

/// Exact count of bipartite graphs with degree sequence (s,t) avoiding the
/// given U x V pairs. Plain backtracking (third, un-memoized implementation).
BigCount bipartite_count_avoiding(const std::vector<unsigned>& s,
                                  const std::vector<unsigned>& t,
                                  const std::vector<IndexPair>& forbidden);

struct ConditionalEdgeResult {
  double estimate = 0;       // main term
  double xi = 0;             // relative error argument of the estimate
  bool xi_large = false;     // xi >= 1: estimate meaningless
  std::optional<Rational> exact;  // set in exact mode
};

/// P(uv in B(s,t) | H1 contained, H2 avoided): main term plus xi, and the
/// exact conditional probability by enumeration when `exact_mode`.
/// H1, H2 are disjoint bipartite graphs given as (U,V) index pairs.
ConditionalEdgeResult conditional_edge_probability(const BipartiteDegreePair& dp,
                                                   const std::vector<IndexPair>& h1,
                                                   const std::vector<IndexPair>& h2,
                                                   IndexPair uv, bool exact_mode);

struct MatchingCountOptions {
  std::vector<VertexPair> forbidden;   // pairs no matching edge may join
  std::vector<VertexPair> must_cover;  // vertex-disjoint pairs that must be matched together
  bool parallel_edges_distinct = false;  // pairing-level counting
};

/// Number of perfect matchings of a multigraph under the constraints.
/// Recursive elimination on the lowest-degree unmatched vertex, exact
/// arithmetic; odd n yields 0.
BigCount count_perfect_matchings(const Multigraph& g, const MatchingCountOptions& opts = {},
                                 Vertex size_cap = 30);

/// Number of ordered pairs (H1, H2) of perfect matchings of K_n sharing
/// exactly k edges, exactly (n <= 12) by brute force over matchings against
/// a fixed H0 times (n-1)!! (vertex transitivity).
BigCount matching_pair_count_exact(unsigned n, unsigned k);

/// Asymptotic main term n! / (2^k k! sqrt(pi (n-2k)/2)).
double matching_pair_count_formula(unsigned n, unsigned k);

/// All perfect matchings of K_n, n even (n <= 12 intended).
std::vector<Matching> all_perfect_matchings(Vertex n);

/// All perfect matchings of a simple graph (used for uniform choice among
/// a sparse graph's matchings).
std::vector<Matching> perfect_matchings_of(const Multigraph& g, std::size_t limit = 1 << 22);

}  // namespace regraph
