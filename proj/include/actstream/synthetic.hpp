#pragma once

#include <cstdint>
#include <vector>

#include "actstream/dataset.hpp"
#include "actstream/kv_config.hpp"

namespace actstream {

enum class DriftKind { abrupt, gradual };

struct DriftEvent {
  int day = 0;
  DriftKind kind = DriftKind::abrupt;
  double magnitude = 0.0;
  /// Gradual only: number of days over which the change is interpolated (0 = until the last day).
  int span = 0;
};

struct GeneratorConfig {
  std::size_t dim = 0;
  int days = 0;
  int per_day_benign = 0;
  int per_day_malware = 0;
  int delay_min = 40;
  int delay_max = 40;
  std::vector<DriftEvent> drift;
  std::uint64_t seed = 0;

  // Feature activation model. A feature is "common" with probability common_fraction and
  // then activates with probability U(common_low, common_high); otherwise U(0, rare_high).
  double common_fraction = 0.1;
  double common_low = 0.1;
  double common_high = 0.5;
  double rare_high = 0.05;
  /// 0 = malware shares the benign profile, 1 = independent profile.
  double separation = 1.0;
  /// Probability that a record's label is flipped after sampling.
  double label_noise = 0.0;

  void validate() const;
};

/// Reads the flat generator config; throws ConfigError naming the offending key.
GeneratorConfig parse_generator_config(const KeyValueConfig& kv);

/// Parses `day:kind:magnitude[:span]` items separated by ';'.
std::vector<DriftEvent> parse_drift_schedule(const std::string& text);

/// Per-class activation probabilities and the drift plan derived from a config.
class ConceptModel {
 public:
  ConceptModel(const GeneratorConfig& config, std::uint64_t rng_seed);

  const std::vector<double>& benign_probabilities() const { return p_benign_; }
  std::vector<double> malware_probabilities(int day) const;
  /// Coordinates re-drawn by drift event `i`.
  const std::vector<std::size_t>& redrawn(std::size_t i) const { return plans_.at(i).indices; }

 private:
  struct Plan {
    DriftEvent event;
    std::vector<std::size_t> indices;
    std::vector<double> targets;
  };
  int days_;
  std::vector<double> p_benign_;
  std::vector<double> p_malware_;
  std::vector<Plan> plans_;
};

/// Deterministic in (config, rng_seed).
Dataset generate_synthetic(const GeneratorConfig& config, std::uint64_t rng_seed);

}  // namespace actstream
