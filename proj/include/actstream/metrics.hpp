#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "actstream/feature_vector.hpp"

namespace actstream {

enum class Protocol { progressive, delayed, static_baseline, active };

std::string to_string(Protocol p);
Protocol parse_protocol(const std::string& name);

/// Malware is the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  void add(Label predicted, Label truth);
  std::size_t total() const { return tp + fp + tn + fn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& o);
  bool operator==(const ConfusionMatrix&) const = default;
};

struct Metrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double tpr = 0.0;
  double f1 = 0.0;
};

/// Standard definitions; every 0/0 ratio is 0.
Metrics metrics_from_cm(const ConfusionMatrix& cm);

struct DayRecord {
  int day = 0;
  std::size_t n_tested = 0;
  ConfusionMatrix daily;
  ConfusionMatrix cumulative;
  std::size_t drifts_so_far = 0;
  std::size_t labels_requested_so_far = 0;
  std::size_t labels_available_so_far = 0;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

struct Summary {
  std::size_t days = 0;  // days with at least one test
  MeanStd accuracy;
  MeanStd precision;
  MeanStd tpr;
  MeanStd f1;
  std::size_t streamed = 0;
  double labels_fraction = 0.0;
  std::size_t drifts = 0;
};

struct MetricSeries {
  Protocol protocol = Protocol::progressive;
  std::string model;
  std::vector<DayRecord> days;
};

/// Mean and population standard deviation of daily metrics over days with n_tested > 0.
Summary summarize(const MetricSeries& series);

/// Fixed-point with 6 decimals, never "-0.000000".
std::string format_fixed(double v, int decimals = 6);

extern const char* const kSeriesCsvHeader;

/// Series rows followed by `# key=value` trailer lines carrying protocol, model and summary.
void write_series_csv(std::ostream& out, const MetricSeries& series, const Summary& summary);

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeriesFile {
  std::string protocol;
  std::string model;
  Summary summary;
  std::size_t rows = 0;
};

/// Reads a file produced by write_series_csv; throws SchemaError on any mismatch.
SeriesFile read_series_csv(const std::filesystem::path& path);

}  // namespace actstream
