#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regraph {

/// Invalid configuration or arguments: a usage error, distinct from gate
/// failures (which are reported through ResultSet::gates_passed).
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key-value experiment configuration. Seeds are mandatory; there is
/// no wall-clock seeding anywhere.
struct ExperimentConfig {
  std::string kind;  // sample | enumerate | couple | moments | sandwich | micro-study
  std::map<std::string, std::string> values;

  static ExperimentConfig from_file(const std::string& path);
  /// Flat document: '#' comments, blank lines, and "key = value" entries;
  /// the key "kind" selects the experiment.
  static ExperimentConfig from_text(const std::string& text);

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  std::string require(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::int64_t require_int(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t seed() const;    // throws usage_error when absent
  std::uint64_t trials() const;  // >= 1, default 1

  /// Canonical serialization; reproducing a run needs nothing else.
  std::string echo() const;
};

struct ResultSet {
  std::string config_echo;
  std::vector<std::string> csv_rows;  // without header
  std::string json_report;            // structured report (pretty JSON)
  bool gates_passed = true;
  std::vector<std::string> files_written;

  static const char* csv_header();  // name,n,d_or_p,trials,seed,mean,se,predicted,z
  std::string csv_text() const;
};

/// Dispatches to the module operation named by cfg.kind, writes outputs
/// under cfg["out"] (default "out"), and reports gate status.
ResultSet run_experiment(const ExperimentConfig& cfg);

}  // namespace regraph
