#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "regraph/multigraph.hpp"
#include "regraph/pairing.hpp"
#include "regraph/rng.hpp"

namespace regraph {

/// Raised when a rejection sampler exceeds its attempt cap. Distinct from
/// invalid-argument errors: it signals parameters where the conditioning
/// event has tiny probability, not a usage bug.
class rejection_cap_error : public std::runtime_error {
 public:
  rejection_cap_error(const std::string& what, std::uint64_t attempts)
      : std::runtime_error(what), attempts_(attempts) {}
  std::uint64_t attempts() const { return attempts_; }

 private:
  std::uint64_t attempts_;
};

constexpr std::uint64_t kDefaultRejectionCap = 1'000'000;

/// Binomial random graph G(n,p): each of the C(n,2) pairs independently
/// present with probability p, multiplicity 1.
Multigraph sample_gnp(Vertex n, double p, RngStream& rng);

/// Directed counterpart: each of the n(n-1) ordered pairs independently.
Digraph sample_gnp_directed(Vertex n, double p, RngStream& rng);

/// Uniform perfect matching on [n], n even.
Matching sample_perfect_matching(Vertex n, RngStream& rng);

enum class MatchingModelMode { kSuperpose, kUnion, kSimpleConditioned };

/// Superposition / union / conditioned-simple superposition of d independent
/// uniform perfect matchings on [n]. Union mode is exactly superpose mode
/// with multiplicities capped at 1 (same draws for the same stream).
Multigraph sample_matching_model(Vertex n, std::uint32_t d, MatchingModelMode mode,
                                 RngStream& rng,
                                 std::uint64_t rejection_cap = kDefaultRejectionCap);

struct PairingCondition {
  enum Kind { kNone, kLoopless, kDisjointDoubles } kind = kNone;
  std::uint32_t doubles = 0;  // the i of disjoint-doubles(i)

  static PairingCondition none() { return {kNone, 0}; }
  static PairingCondition loopless() { return {kLoopless, 0}; }
  static PairingCondition disjoint_doubles(std::uint32_t i) { return {kDisjointDoubles, i}; }
};

/// Uniform pairing subject to the condition, by whole-object rejection.
/// disjoint-doubles(i) demands: no loops, exactly i pairs of vertices with
/// multiplicity exactly 2, no multiplicity >= 3, doubled pairs vertex-disjoint.
Pairing sample_pairing(Vertex n, std::uint32_t d, const PairingCondition& cond,
                       RngStream& rng, std::uint64_t rejection_cap = kDefaultRejectionCap);

/// Whether the projection of P satisfies the disjoint-doubles(i) profile.
bool has_disjoint_double_profile(const Multigraph& g, std::uint32_t i);

/// Uniform simple d-regular graph on [n] via the conditioned pairing model.
/// Desk scale only: rejection until G[P] is simple.
Multigraph sample_grd(Vertex n, std::uint32_t d, RngStream& rng,
                      std::uint64_t rejection_cap = kDefaultRejectionCap);

/// d-out digraph: every vertex picks an independent uniform d-subset of the
/// other vertices as out-neighbours.
Digraph sample_dout(Vertex n, std::uint32_t d, RngStream& rng);

/// Undirected d-out graph: orientations dropped, double edges simple.
Multigraph sample_dout_undirected(Vertex n, std::uint32_t d, RngStream& rng);

}  // namespace regraph
