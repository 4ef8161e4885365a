#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regraph/model_distribution.hpp"
#include "regraph/multigraph.hpp"
#include "regraph/rng.hpp"
#include "regraph/thresholds.hpp"

namespace regraph {

/// One trial of a coupling procedure: both sampled objects, the containment
/// flag, and procedure diagnostics.
struct EmbeddingReport {
  std::optional<Multigraph> inner;  // empty marker allowed (rejection filter)
  Multigraph outer;
  std::optional<Digraph> inner_directed;  // d-out trials carry the digraph too
  bool contained = false;
  bool decoupled = false;  // a stage failed; inner resampled independently
  std::map<std::string, double> diagnostics;
  std::vector<std::string> notes;
};

/// Precomputed context for the rejection-embedding filter at micro scale:
/// the exact laws of the proposal (M_d^+) and target (P*(n,d) or G(n,d))
/// at the multigraph level, the weight of every proposal outcome, and the
/// admissible set.
class RejectionFilter {
 public:
  enum class Target { kLooplessPairing, kSimpleRegular };

  RejectionFilter(Vertex n, std::uint32_t d, double fn, Target target = Target::kLooplessPairing);

  double fn() const { return fn_; }
  Vertex n() const { return n_; }
  std::uint32_t d() const { return d_; }

  /// Likelihood ratio P_proposal(G) / P_target(G); +inf when the target
  /// gives G probability zero.
  double weight_of(const std::string& key) const;
  bool in_admissible_set(const std::string& key) const;
  /// Target law restricted to the admissible set (the conditional law of an
  /// accepted output).
  const FiniteDistribution& accepted_law() const { return accepted_law_; }
  const ModelLaw& proposal_law() const { return proposal_; }
  const ModelLaw& target_law() const { return target_law_; }
  /// Mass of the admissible set under the target law.
  double admissible_target_mass() const { return admissible_mass_; }

 private:
  Vertex n_;
  std::uint32_t d_;
  double fn_;
  ModelLaw proposal_;
  ModelLaw target_law_;
  std::map<std::string, double> weights_;
  std::map<std::string, bool> admissible_;
  FiniteDistribution accepted_law_;
  double admissible_mass_ = 0;
};

/// Process-wide cache of rejection filters; the exact-law construction is
/// expensive and the filter is immutable once built.
const RejectionFilter& shared_rejection_filter(Vertex n, std::uint32_t d, double fn,
                                               RejectionFilter::Target target);

/// The accept/reject embedding: draws up to i* = floor(tau/d) independent
/// M_d^+ proposals, accepts the first admissible one with probability
/// 1/(fn * w), and returns it together with the superposition of all
/// proposals (which it is contained in). All-rejected yields the empty
/// marker, not an error.
EmbeddingReport rejection_embed(const RejectionFilter& filter, std::uint32_t tau,
                                RngStream& rng);

struct DoutOptions {
  std::uint32_t d = 1;
  double eps0 = 0.1;
  double easy_regime_boundary = 2.1;  // x at and above which the one-layer route is used
  bool keep_state = false;            // retain per-bad-vertex records (audit)
};

/// Per-bad-vertex record of the hard-regime label sampling.
struct BadVertexRecord {
  Vertex v = 0;
  std::uint64_t ell = 0;   // Bin(d+1, y/(x+y)) draw (Y-label count, with multiplicity)
  std::uint64_t t = 0;     // out-arcs into the bad side (Bin(y, p3_arrow))
  std::uint64_t u_x = 0;   // distinct labels landing on the good side
  std::uint64_t u_y = 0;   // distinct labels landing on the bad side
  std::uint64_t s = 0;     // out-degree in the oriented middle layer
  bool failed = false;
};

/// State of the three-layer construction; exposed for audits.
struct OutCouplingState {
  double p = 0, p1 = 0, p2 = 0, p3 = 0;
  double p1_arrow = 0, p3_arrow = 0;
  std::uint64_t good_count = 0, bad_count = 0;
  bool f1 = true, f2 = true, f3 = true;  // event flags; false = failed
  bool domination = false;               // binomial domination held exactly
  std::vector<BadVertexRecord> bad_records;
};

/// Coupling of the d-out digraph inside G(n,p) with p = x log n / n.
/// Easy regime (x >= 2.1): one directed exposure, minimum out-degree check,
/// per-vertex subsampling. Hard regime: the three-layer good/bad-vertex
/// construction with label sampling and binomial domination. Marginals are
/// exact in both regimes; every failure decouples (the inner object is
/// resampled independently) instead of throwing.
EmbeddingReport dout_gnp_embed(Vertex n, double p, const DoutOptions& opts, RngStream& rng,
                               OutCouplingState* state_out = nullptr);

}  // namespace regraph
