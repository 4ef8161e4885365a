#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "regraph/multigraph.hpp"
#include "regraph/rng.hpp"
#include "regraph/samplers.hpp"

namespace regraph {

struct SandwichStage {
  std::string name;
  bool attempted = false;
  bool ok = false;
  std::map<std::string, double> diagnostics;
};

struct SandwichReport {
  Vertex n = 0;
  std::uint32_t d = 0;
  double x = 0;
  double p = 0;
  std::string strategy;     // micro-even | pipeline-even | micro-odd | pipeline-odd
  std::string inner_model;  // grd | m_union (what the inner object is distributed as)
  Multigraph inner;
  Multigraph outer;
  std::vector<Matching> matchings;  // the extracted matchings, when applicable
  bool contained = false;
  bool decoupled = false;  // some stage fell back to independent sampling
  std::vector<SandwichStage> stages;
  std::vector<std::string> notes;
};

struct SandwichOptions {
  Vertex micro_threshold = 8;     // n at or below: exact-law filter route
  std::uint32_t max_copies = 64;  // cap on 2-out copies per trial
  std::uint32_t micro_rounds = 3; // target accept/reject rounds at micro scale
  double fn = 5.0;                // rejection-filter weight bound at micro scale
  std::uint64_t rejection_cap = kDefaultRejectionCap;
};

/// The matching pipeline: couples k independent 2-out copies inside
/// G(n, p) (directed exposure, symmetric completion), extracts one perfect
/// matching per copy, and returns the first `want` of them. Marginals are
/// exact; shortfalls decouple.
struct MatchingPipelineResult {
  Multigraph outer;                 // exactly G(n,p)
  std::vector<Matching> matchings;  // `want` iid uniform matchings (when !decoupled)
  std::uint32_t copies_used = 0;
  bool decoupled = false;
  bool uniform_choice = true;  // false when a matching was picked non-uniformly (n > 16)
  std::map<std::string, double> diagnostics;
};

/// `want` is the decoupling threshold (fewer successes resample fresh
/// matchings); `request` asks for additional hosted copies beyond the
/// admissible-budget default. All extracted matchings are returned.
MatchingPipelineResult matching_pipeline(Vertex n, std::uint32_t want, double p,
                                         RngStream& rng, const SandwichOptions& opts = {},
                                         std::uint32_t request = 0);

/// End-to-end sandwich trial: inner d-regular-model object, outer
/// G(n, x log n / n), per-stage containment flags. Even n runs the matching
/// pipeline (micro n additionally runs the exact-law filter so the inner is
/// a simple d-regular graph); odd n recurses on n-1 and attaches vertex n.
SandwichReport sandwich_run(Vertex n, std::uint32_t d, double x, RngStream& rng,
                            const SandwichOptions& opts = {});

}  // namespace regraph
