#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "regraph/finite_distribution.hpp"
#include "regraph/multigraph.hpp"

namespace regraph {

/// Exact law of a micro-scale random multigraph model: the distribution over
/// canonical keys plus the multigraph behind each key.
struct ModelLaw {
  FiniteDistribution dist;
  std::vector<Multigraph> graphs;  // aligned with dist keys

  const Multigraph& graph_of(std::size_t i) const { return graphs[i]; }
};

enum class ExactModel {
  kPairing,           // P(n,d)
  kLooplessPairing,   // P*(n,d)
  kMatchingSuperpose, // M_d^+ on [n]
  kGrd,               // uniform simple d-regular
  kPairingPlusMatchings,  // P*(n,d) + M_j^+
};

struct ExactModelSpec {
  ExactModel model;
  Vertex n = 0;
  std::uint32_t d = 0;
  std::uint32_t j = 0;  // matchings added in kPairingPlusMatchings
};

/// Exact probability of every reachable multigraph, by complete enumeration
/// of the underlying labeled space (pairings / matching tuples / graphs) and
/// projection. Probabilities are exact rationals summing to 1. Throws with
/// the computed cardinality when the space exceeds `space_cap`.
ModelLaw exact_model_distribution(const ExactModelSpec& spec,
                                  std::uint64_t space_cap = 50'000'000);

/// Superposition law of two independent model laws (all pairwise sums).
ModelLaw superpose_laws(const ModelLaw& a, const ModelLaw& b);

/// Number of pairings of d*n points ((dn-1)!!) used for cap checks.
BigCount pairing_space_size(Vertex n, std::uint32_t d);

}  // namespace regraph
