#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "actstream/feature_vector.hpp"

namespace actstream {

/// One application in the stream.
struct Instance {
  std::string id;
  FeatureVector features;
  Label label = Label::benign;
  int release_day = 0;
  int label_day = 0;

  bool operator==(const Instance&) const = default;
};

/// All releases of one day, ordered by id.
struct StreamDay {
  int day = 0;
  std::vector<Instance> releases;

  bool operator==(const StreamDay&) const = default;
};

struct DatasetMeta {
  std::size_t dim = 0;
  std::size_t n_benign = 0;
  std::size_t n_malware = 0;
  int first_day = 0;
  int last_day = 0;
  int delay_estimate = 40;
  std::string epoch = "synthetic";

  bool operator==(const DatasetMeta&) const = default;
};

struct Dataset {
  DatasetMeta meta;
  std::vector<StreamDay> days;

  std::size_t instance_count() const;
  bool operator==(const Dataset&) const = default;
};

/// Parse or I/O failure in an instance file. `line()` is 1-based, 0 when not line-specific.
class DatasetError : public std::runtime_error {
 public:
  DatasetError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LoadOptions {
  /// Replace each malware release day by label_day - delay (clamped at 0).
  bool estimate_malware_release = false;
};

Dataset parse_dataset(std::istream& in, const LoadOptions& options = {});
Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options = {});

void write_dataset(std::ostream& out, const Dataset& dataset);

/// Groups instances into sorted StreamDays and fills meta counts/day range.
Dataset make_dataset(std::size_t dim, int delay_estimate, std::string epoch,
                     std::vector<Instance> instances);

/// label_day - delay, clamped at 0.
int estimate_release_day(int label_day, int delay);

struct SeedSplit {
  std::vector<Instance> seed;
  std::vector<StreamDay> rest;
};

/// Seed = every instance released before `seed_end_day`, in stream order.
SeedSplit split_seed(const std::vector<StreamDay>& stream, int seed_end_day);

}  // namespace actstream
