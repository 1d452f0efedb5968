#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace infobounds {

struct FuzzConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  std::size_t max_x = 8;        ///< M for list decoding
  std::size_t max_y = 4;        ///< |Y|
  std::size_t max_atoms = 8;    ///< n for data-processing triples
  std::size_t max_source = 10;  ///< n for source coding
};

/// Outcome of one invariant family. `worst_margin` is the smallest slack seen
/// (negative beyond tolerance means a violation).
struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();

  void record(double margin, double tolerance = 1e-9);
};

struct FuzzReport {
  FuzzConfig config;
  std::vector<SuiteResult> suites;
  /// Top-L instances whose part-b correction term came out negative (data only).
  std::size_t negative_refined_b_corrections = 0;

  std::size_t total_violations() const;
  const SuiteResult& suite(const std::string& name) const;
};

/// Runs every invariant suite on `trials` random instances. Trial t draws from
/// the substream seeded by (seed, t), so results do not depend on order.
FuzzReport run_fuzz_campaign(const FuzzConfig& config);

nlohmann::json to_json(const FuzzReport& report);

}  // namespace infobounds
