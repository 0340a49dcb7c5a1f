#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "actstream/active.hpp"
#include "actstream/kv_config.hpp"
#include "actstream/learner.hpp"
#include "actstream/metrics.hpp"

namespace actstream {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config = 2;
inline constexpr int dataset = 3;
inline constexpr int runtime = 4;
}  // namespace exit_code

struct ExperimentConfig {
  std::filesystem::path dataset;
  Protocol protocol = Protocol::progressive;
  LearnerConfig learner;
  ActiveConfig active;
  int seed_end_day = 0;
  std::filesystem::path output_dir;
  std::string name;  // output file stem
  bool estimate_malware_release = false;
  bool predictions_log = false;
};

/// Relative paths resolve against `base_dir`. Honors ACTSTREAM_SEED.
ExperimentConfig parse_experiment_config(const KeyValueConfig& kv, const std::filesystem::path& base_dir);

/// Replaces `rng_seed` from the ACTSTREAM_SEED environment variable when set.
std::optional<std::uint64_t> seed_override_from_env();

/// Writes `contents` to a sibling temp file and renames it over `path`.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

/// `generate <cfg> [-o out]`: dataset to `output`, or to `out` when output is empty.
int cmd_generate(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& output,
                 std::ostream& out, std::ostream& err);

/// `run <cfg>`: executes one protocol; the last stdout line is the RESULT summary.
int cmd_run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

/// `report <csv...>`: one row per input, in input order.
int cmd_report(const std::vector<std::filesystem::path>& inputs, const std::optional<std::filesystem::path>& output,
               std::ostream& out, std::ostream& err);

std::string result_line(const MetricSeries& series, const Summary& summary);

extern const char* const kReportCsvHeader;

}  // namespace actstream
