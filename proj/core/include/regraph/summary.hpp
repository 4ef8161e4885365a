#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "regraph/model_distribution.hpp"
#include "regraph/multigraph.hpp"
#include "regraph/rng.hpp"
#include "regraph/samplers.hpp"

namespace regraph {

/// A named multigraph sampler with its parameters; the experiment harness
/// and the summary machinery address models through this.
struct SamplerSpec {
  enum class Kind {
    kGnp,
    kPairing,
    kLooplessPairing,
    kDisjointDoubles,
    kGrd,
    kMatchingSuperpose,
    kMatchingUnion,
    kMatchingSimple,
    kDoutUndirected,
  };

  Kind kind = Kind::kGnp;
  Vertex n = 0;
  std::uint32_t d = 0;
  double p = 0;
  std::uint32_t doubles = 0;  // the i of P^(i)
  std::uint64_t rejection_cap = kDefaultRejectionCap;

  static SamplerSpec parse(const std::string& name, Vertex n, std::uint32_t d, double p,
                           std::uint32_t doubles = 0);
  std::string name() const;
  Multigraph sample(RngStream& rng) const;
};

/// Streaming mean / variance / covariance summary of named statistics over
/// independent trials. Accumulation is in trial order, so results do not
/// depend on the worker count.
struct SampleSummary {
  std::vector<std::string> statistics;
  std::uint64_t trials = 0;
  std::vector<double> mean;
  std::vector<std::vector<double>> covariance;  // sample covariance (n-1 denom)

  double variance(std::size_t i) const { return covariance[i][i]; }
  double se(std::size_t i) const;  // sqrt(variance/trials)
  std::size_t index_of(const std::string& name) const;
};

/// Statistic extractor by name; throws std::invalid_argument on an unknown
/// name. Known names: edges, edge_mass, loops, doubles, doubles_min,
/// triangles, mult3plus, simple, pm_count, pm_count_pairing.
double extract_statistic(const std::string& name, const Multigraph& g);

/// Monte Carlo summary over independent samples; trial t draws from stream
/// (rng.seed(), rng.stream() + 1 + t). `workers` = 0 picks a sensible
/// default; the result is identical for every worker count.
SampleSummary empirical_summary(const SamplerSpec& model,
                                const std::vector<std::string>& statistics,
                                std::uint64_t trials, const RngStream& rng,
                                unsigned workers = 0);

struct EmpiricalTv {
  double tv = 0;
  double bootstrap_se = 0;
};

/// Plug-in total variation between two empirical key multisets, with a
/// bootstrap standard error.
EmpiricalTv tv_distance_empirical(const std::vector<std::string>& a,
                                  const std::vector<std::string>& b, RngStream& rng,
                                  unsigned bootstrap = 200);

/// Deviation thresholds, empirical exceedance frequencies, and the exact
/// matching-count audit for a pairing-family model at micro scale.
struct ConcentrationReport {
  std::uint64_t trials = 0;
  std::vector<double> c_values;    // threshold constants swept
  std::vector<double> exceed_x;    // freq of |X - mean X| > C sqrt(log d * mean X)
  std::vector<double> exceed_w;
  double predicted_exceed_bound = 0;  // O(1/d^2) scale for comparison
  double y_mean = 0;               // per-sample exact simple matching count
  double y_se = 0;
  double y_mean_pairing = 0;       // parallel-edges-distinct variant
  double ey_oracle = -1;           // exact E Y when a model law is supplied
  double y_z = 0;                  // |y_mean - ey_oracle| / y_se
  double var_ratio_emp = 0;        // E Y^2 / (E Y)^2, empirical
  double ratio_predicted = 0;      // eq-level prediction for that ratio
  bool cover_mode = false;
  std::uint64_t cover_violations = 0;
};

ConcentrationReport concentration_report(const SamplerSpec& model, std::uint64_t trials,
                                         const RngStream& rng,
                                         const ModelLaw* exact_law = nullptr,
                                         const std::vector<double>& c_values = {1, 2, 4, 8});

/// Deterministic parallel map over trial indices: out[t] = fn(t), computed
/// with `workers` threads, results ordered by t regardless of scheduling.
void parallel_trials(std::uint64_t trials, unsigned workers,
                     const std::function<void(std::uint64_t)>& fn);

}  // namespace regraph
