#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "curvkit/classify/detectors.hpp"

namespace curvkit {

inline constexpr const char* kEngineVersion = "curvkit 1.0.0";

struct ClassifyConfig {
  std::uint64_t seed = 0;
  int num_points = 8;
  /// Restrict compatible tensors to symmetric E.
  bool symmetric_only = false;
  /// Worker threads for classify_all; 0 means hardware concurrency.
  unsigned threads = 0;
};

struct StructureEntry {
  std::string name;
  std::string description;
  std::function<StructureVerdict(Geometry&, const ClassifyConfig&)> run;
};

/// Every registered structure, in report order.
const std::vector<StructureEntry>& structure_registry();
std::vector<std::string> structure_names();

/// Run one registered structure. Throws std::out_of_range for an unknown
/// name; detector exceptions propagate.
StructureVerdict classify_one(Geometry& geo, const std::string& name, const ClassifyConfig& config = {});

/// Signature at one admissible point drawn from config.seed.
std::pair<int, int> sample_signature(const MetricSpec& m, std::uint64_t seed);

/// One verdict per registered structure. A detector that throws yields an
/// Error verdict; the run continues.
ClassificationReport classify_all(Geometry& geo, const ClassifyConfig& config = {});
ClassificationReport classify_all(const MetricSpec& m, const ClassifyConfig& config = {});

}  // namespace curvkit
