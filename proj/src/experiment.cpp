#include "actstream/experiment.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "actstream/dataset.hpp"
#include "actstream/protocols.hpp"
#include "actstream/synthetic.hpp"

namespace actstream {

namespace {

const std::vector<std::string> kExperimentKeys = {
    "dataset",        "protocol",       "model",         "seed_end_day",   "output_dir",
    "name",           "rng_seed",       "estimate_malware_release",        "predictions_log",
    "C",              "delta_tree",     "grace_period",  "tie_threshold",  "n_trees",
    "lambda_poisson", "subspace_size",  "warning_delta", "drift_delta",    "k",
    "knn_window",     "var_smoothing",  "theta",         "retrain_buffer_size",
    "oracle_daily_budget",              "budget_overflow", "adwin_delta",  "retrain_source"};

std::size_t non_negative(const KeyValueConfig& kv, const std::string& key, std::size_t fallback) {
  long long v = kv.get_int(key, static_cast<long long>(fallback));
  if (v < 0) throw ConfigError("config key '" + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

std::string pm(const MeanStd& m) { return format_fixed(m.mean, 3) + "±" + format_fixed(m.std, 3); }

}  // namespace

const char* const kReportCsvHeader =
    "protocol,model,days,acc_mean,acc_std,f1_mean,f1_std,prec_mean,prec_std,tpr_mean,tpr_std,labels_fraction,drifts";

std::optional<std::uint64_t> seed_override_from_env() {
  const char* v = std::getenv("ACTSTREAM_SEED");
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    unsigned long long seed = std::stoull(v, &used);
    if (v[used] != '\0') throw std::invalid_argument(v);
    return seed;
  } catch (const std::exception&) {
    throw ConfigError(std::string("ACTSTREAM_SEED must be a non-negative integer, got '") + v + "'");
  }
}

ExperimentConfig parse_experiment_config(const KeyValueConfig& kv, const std::filesystem::path& base_dir) {
  auto unknown = kv.unknown_keys(kExperimentKeys);
  if (!unknown.empty()) throw ConfigError("unknown experiment config key '" + unknown.front() + "'");

  ExperimentConfig c;
  auto resolve = [&](const std::filesystem::path& p) { return p.is_absolute() ? p : base_dir / p; };
  c.dataset = resolve(kv.require("dataset"));
  c.output_dir = resolve(kv.require("output_dir"));
  try {
    c.protocol = parse_protocol(kv.require("protocol"));
    c.learner.model = parse_model_kind(kv.require("model"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  c.seed_end_day = static_cast<int>(kv.get_int("seed_end_day"));
  c.name = kv.get("name").value_or(to_string(c.protocol) + "_" + to_string(c.learner.model));
  c.estimate_malware_release = kv.get_bool("estimate_malware_release", false);
  c.predictions_log = kv.get_bool("predictions_log", false);

  auto& l = c.learner;
  l.rng_seed = static_cast<std::uint64_t>(non_negative(kv, "rng_seed", 1));
  if (auto env = seed_override_from_env()) l.rng_seed = *env;
  l.C = kv.get_double("C", l.C);
  l.delta_tree = kv.get_double("delta_tree", l.delta_tree);
  l.grace_period = non_negative(kv, "grace_period", l.grace_period);
  l.tie_threshold = kv.get_double("tie_threshold", l.tie_threshold);
  l.n_trees = non_negative(kv, "n_trees", l.n_trees);
  l.lambda_poisson = kv.get_double("lambda_poisson", l.lambda_poisson);
  if (kv.get("subspace_size").value_or("sqrt") != "sqrt") l.subspace_size = non_negative(kv, "subspace_size", 0);
  l.warning_delta = kv.get_double("warning_delta", l.warning_delta);
  l.drift_delta = kv.get_double("drift_delta", l.drift_delta);
  l.k = non_negative(kv, "k", l.k);
  l.knn_window = non_negative(kv, "knn_window", l.knn_window);
  l.var_smoothing = kv.get_double("var_smoothing", l.var_smoothing);

  auto& a = c.active;
  a.theta = kv.get_double("theta", a.theta);
  a.retrain_buffer_size = non_negative(kv, "retrain_buffer_size", a.retrain_buffer_size);
  a.oracle_daily_budget = non_negative(kv, "oracle_daily_budget", a.oracle_daily_budget);
  a.adwin_delta = kv.get_double("adwin_delta", a.adwin_delta);
  std::string overflow = kv.get("budget_overflow").value_or("defer");
  if (overflow == "defer") {
    a.budget_overflow = BudgetOverflow::defer;
  } else if (overflow == "drop") {
    a.budget_overflow = BudgetOverflow::drop;
  } else {
    throw ConfigError("config key 'budget_overflow' must be defer or drop");
  }
  std::string source = kv.get("retrain_source").value_or("recent");
  if (source == "recent") {
    a.retrain_source = RetrainSource::recent;
  } else if (source == "seed") {
    a.retrain_source = RetrainSource::seed;
  } else {
    throw ConfigError("config key 'retrain_source' must be recent or seed");
  }

  try {
    l.validate();
    a.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

std::string result_line(const MetricSeries& series, const Summary& summary) {
  std::ostringstream line;
  line << "RESULT protocol=" << to_string(series.protocol) << " model=" << series.model
       << " acc=" << pm(summary.accuracy) << " f1=" << pm(summary.f1) << " prec=" << pm(summary.precision)
       << " tpr=" << pm(summary.tpr) << " labels=" << format_fixed(summary.labels_fraction, 3)
       << " drifts=" << summary.drifts;
  return line.str();
}

int cmd_generate(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& output,
                 std::ostream& out, std::ostream& err) {
  GeneratorConfig config;
  try {
    config = parse_generator_config(KeyValueConfig::load(config_path));
    if (auto env = seed_override_from_env()) config.seed = *env;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::config;
  }
  try {
    std::ostringstream buffer;
    write_dataset(buffer, generate_synthetic(config, config.seed));
    if (output) {
      write_file_atomically(*output, buffer.str());
    } else {
      out << buffer.str();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::runtime;
  }
  return exit_code::ok;
}

int cmd_run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = parse_experiment_config(KeyValueConfig::load(config_path), config_path.parent_path());
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::config;
  }

  Dataset dataset;
  try {
    dataset = load_dataset(config.dataset, LoadOptions{config.estimate_malware_release});
  } catch (const DatasetError& e) {
    err << "error: " << config.dataset.string() << ": " << e.what() << '\n';
    return exit_code::dataset;
  }

  try {
    SeedSplit split = split_seed(dataset.days, config.seed_end_day);
    out << "dataset " << config.dataset.filename().string() << ": dim=" << dataset.meta.dim
        << " seed=" << split.seed.size() << " streamed=" << dataset.instance_count() - split.seed.size() << '\n';

    ProtocolRun run;
    std::vector<OracleAuditEntry> audit;
    const EvalOptions eval{config.active.adwin_delta};
    switch (config.protocol) {
      case Protocol::progressive: run = run_progressive(split.rest, split.seed, config.learner, eval); break;
      case Protocol::delayed: run = run_delayed(split.rest, split.seed, config.learner, eval); break;
      case Protocol::static_baseline: run = run_static(split.rest, split.seed, config.learner, eval); break;
      case Protocol::active: {
        ActiveRun active = run_active(split.rest, split.seed, config.learner, config.active);
        run = std::move(active.run);
        audit = std::move(active.audit);
        break;
      }
    }
    Summary summary = summarize(run.series);

    std::filesystem::create_directories(config.output_dir);
    std::ostringstream csv;
    write_series_csv(csv, run.series, summary);
    auto series_path = config.output_dir / (config.name + ".csv");
    write_file_atomically(series_path, csv.str());
    out << "wrote " << series_path.string() << '\n';

    if (config.predictions_log) {
      std::ostringstream log;
      log << "id,day,pred,conf,label,label_day\n";
      for (const auto& r : run.predictions) {
        log << r.id << ',' << r.day << ',' << to_int(r.prediction.label) << ','
            << format_fixed(r.prediction.confidence) << ',' << to_int(r.label) << ',' << r.label_day << '\n';
      }
      write_file_atomically(config.output_dir / (config.name + "_predictions.csv"), log.str());
    }
    if (config.protocol == Protocol::active) {
      std::ostringstream log;
      log << "day,id,confidence,action\n";
      for (const auto& a : audit)
        log << a.day << ',' << a.id << ',' << format_fixed(a.confidence) << ',' << to_string(a.action) << '\n';
      write_file_atomically(config.output_dir / (config.name + "_oracle.csv"), log.str());
    }
    out << result_line(run.series, summary) << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::runtime;
  }
  return exit_code::ok;
}

int cmd_report(const std::vector<std::filesystem::path>& inputs, const std::optional<std::filesystem::path>& output,
               std::ostream& out, std::ostream& err) {
  if (inputs.empty()) {
    err << "error: report needs at least one series CSV\n";
    return exit_code::config;
  }
  std::ostringstream table;
  table << kReportCsvHeader << '\n';
  try {
    for (const auto& path : inputs) {
      SeriesFile f = read_series_csv(path);
      const Summary& s = f.summary;
      table << f.protocol << ',' << f.model << ',' << s.days << ',' << format_fixed(s.accuracy.mean) << ','
            << format_fixed(s.accuracy.std) << ',' << format_fixed(s.f1.mean) << ',' << format_fixed(s.f1.std) << ','
            << format_fixed(s.precision.mean) << ',' << format_fixed(s.precision.std) << ','
            << format_fixed(s.tpr.mean) << ',' << format_fixed(s.tpr.std) << ','
            << format_fixed(s.labels_fraction) << ',' << s.drifts << '\n';
    }
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::dataset;
  }
  try {
    if (output) {
      write_file_atomically(*output, table.str());
    } else {
      out << table.str();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::runtime;
  }
  return exit_code::ok;
}

}  // namespace actstream
