#include "actstream/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>

namespace actstream {

namespace {

double draw_activation(const GeneratorConfig& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < c.common_fraction) return c.common_low + (c.common_high - c.common_low) * unit(rng);
  return c.rare_high * unit(rng);
}

void require_range(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError("config key '" + key + "' " + what);
}

}  // namespace

void GeneratorConfig::validate() const {
  require_range(dim > 0, "dim", "must be positive");
  require_range(days > 0, "days", "must be positive");
  require_range(per_day_benign >= 0, "per_day_benign", "must be non-negative");
  require_range(per_day_malware >= 0, "per_day_malware", "must be non-negative");
  require_range(delay_min >= 0, "delay_min", "must be non-negative");
  require_range(delay_max >= delay_min, "delay_max", "must be >= delay_min");
  for (const auto& e : drift) {
    require_range(e.day >= 0 && e.day < days, "drift", "day " + std::to_string(e.day) + " outside [0, days)");
    require_range(e.magnitude >= 0.0 && e.magnitude <= 1.0, "drift", "magnitude must lie in [0, 1]");
    require_range(e.span >= 0, "drift", "span must be non-negative");
  }
  require_range(common_fraction >= 0 && common_fraction <= 1, "common_fraction", "must lie in [0, 1]");
  require_range(0 <= common_low && common_low <= common_high && common_high <= 1, "common_high",
                "needs 0 <= common_low <= common_high <= 1");
  require_range(rare_high >= 0 && rare_high <= 1, "rare_high", "must lie in [0, 1]");
  require_range(separation >= 0 && separation <= 1, "separation", "must lie in [0, 1]");
  require_range(label_noise >= 0 && label_noise <= 1, "label_noise", "must lie in [0, 1]");
}

std::vector<DriftEvent> parse_drift_schedule(const std::string& text) {
  std::vector<DriftEvent> out;
  std::stringstream items(text);
  std::string item;
  while (std::getline(items, item, ';')) {
    if (item.empty()) continue;
    std::vector<std::string> parts;
    std::stringstream fields(item);
    std::string f;
    while (std::getline(fields, f, ':')) parts.push_back(f);
    if (parts.size() != 3 && parts.size() != 4)
      throw ConfigError("config key 'drift': expected day:kind:magnitude[:span], got '" + item + "'");
    DriftEvent e;
    try {
      e.day = std::stoi(parts[0]);
      e.magnitude = std::stod(parts[2]);
      if (parts.size() == 4) e.span = std::stoi(parts[3]);
    } catch (const std::exception&) {
      throw ConfigError("config key 'drift': malformed number in '" + item + "'");
    }
    if (parts[1] == "abrupt") {
      e.kind = DriftKind::abrupt;
    } else if (parts[1] == "gradual") {
      e.kind = DriftKind::gradual;
    } else {
      throw ConfigError("config key 'drift': unknown kind '" + parts[1] + "'");
    }
    out.push_back(e);
  }
  return out;
}

GeneratorConfig parse_generator_config(const KeyValueConfig& kv) {
  GeneratorConfig c;
  c.dim = static_cast<std::size_t>(kv.get_int("dim"));
  c.days = static_cast<int>(kv.get_int("days"));
  c.per_day_benign = static_cast<int>(kv.get_int("per_day_benign"));
  c.per_day_malware = static_cast<int>(kv.get_int("per_day_malware"));
  c.delay_min = static_cast<int>(kv.get_int("delay_min"));
  c.delay_max = static_cast<int>(kv.get_int("delay_max"));
  c.drift = parse_drift_schedule(kv.get("drift").value_or(""));
  c.seed = static_cast<std::uint64_t>(kv.get_int("seed"));
  c.common_fraction = kv.get_double("common_fraction", c.common_fraction);
  c.common_low = kv.get_double("common_low", c.common_low);
  c.common_high = kv.get_double("common_high", c.common_high);
  c.rare_high = kv.get_double("rare_high", c.rare_high);
  c.separation = kv.get_double("separation", c.separation);
  c.label_noise = kv.get_double("label_noise", c.label_noise);
  auto unknown = kv.unknown_keys({"dim", "days", "per_day_benign", "per_day_malware", "delay_min", "delay_max",
                                  "drift", "seed", "common_fraction", "common_low", "common_high", "rare_high",
                                  "separation", "label_noise"});
  if (!unknown.empty()) throw ConfigError("unknown generator config key '" + unknown.front() + "'");
  c.validate();
  return c;
}

ConceptModel::ConceptModel(const GeneratorConfig& config, std::uint64_t rng_seed) : days_(config.days) {
  config.validate();
  std::mt19937_64 rng(rng_seed);
  const std::size_t d = config.dim;
  p_benign_.resize(d);
  p_malware_.resize(d);
  for (std::size_t j = 0; j < d; ++j) p_benign_[j] = draw_activation(config, rng);
  for (std::size_t j = 0; j < d; ++j) {
    double fresh = draw_activation(config, rng);
    p_malware_[j] = (1.0 - config.separation) * p_benign_[j] + config.separation * fresh;
  }

  std::vector<std::size_t> order(d);
  for (const auto& e : config.drift) {
    Plan plan;
    plan.event = e;
    if (plan.event.kind == DriftKind::gradual && plan.event.span == 0) plan.event.span = std::max(1, days_ - e.day);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto count = static_cast<std::size_t>(std::llround(e.magnitude * static_cast<double>(d)));
    // Partial Fisher-Yates: the first `count` entries are a uniform sample without replacement.
    for (std::size_t i = 0; i < count; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, d - 1);
      std::swap(order[i], order[pick(rng)]);
    }
    plan.indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(count));
    std::sort(plan.indices.begin(), plan.indices.end());
    plan.targets.reserve(count);
    for (std::size_t i = 0; i < count; ++i) plan.targets.push_back(draw_activation(config, rng));
    plans_.push_back(std::move(plan));
  }
}

std::vector<double> ConceptModel::malware_probabilities(int day) const {
  std::vector<double> p = p_malware_;
  for (const auto& plan : plans_) {
    double w = 0.0;
    if (plan.event.kind == DriftKind::abrupt) {
      w = day >= plan.event.day ? 1.0 : 0.0;
    } else {
      w = std::clamp(static_cast<double>(day - plan.event.day) / plan.event.span, 0.0, 1.0);
    }
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < plan.indices.size(); ++i) {
      double& v = p[plan.indices[i]];
      v = (1.0 - w) * v + w * plan.targets[i];
    }
  }
  return p;
}

Dataset generate_synthetic(const GeneratorConfig& config, std::uint64_t rng_seed) {
  ConceptModel model(config, rng_seed);
  // Separate stream so the concept draw does not depend on the sample sizes.
  std::mt19937_64 rng(rng_seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> delay(config.delay_min, config.delay_max);

  std::vector<Instance> instances;
  instances.reserve(static_cast<std::size_t>(config.days) * (config.per_day_benign + config.per_day_malware));
  std::size_t next_id = 0;
  char id_buf[32];
  for (int day = 0; day < config.days; ++day) {
    std::vector<double> p_malware = model.malware_probabilities(day);
    std::vector<Label> classes(static_cast<std::size_t>(config.per_day_benign), Label::benign);
    classes.insert(classes.end(), static_cast<std::size_t>(config.per_day_malware), Label::malware);
    std::shuffle(classes.begin(), classes.end(), rng);
    for (Label cls : classes) {
      const auto& p = cls == Label::malware ? p_malware : model.benign_probabilities();
      std::vector<FeatureIndex> active;
      for (std::size_t j = 0; j < config.dim; ++j) {
        if (unit(rng) < p[j]) active.push_back(static_cast<FeatureIndex>(j));
      }
      Instance inst;
      std::snprintf(id_buf, sizeof id_buf, "s%08zu", next_id++);
      inst.id = id_buf;
      inst.features = FeatureVector(config.dim, std::move(active));
      inst.label = cls;
      if (config.label_noise > 0.0 && unit(rng) < config.label_noise)
        inst.label = cls == Label::malware ? Label::benign : Label::malware;
      inst.release_day = day;
      inst.label_day = day + delay(rng);
      instances.push_back(std::move(inst));
    }
  }
  int delay_estimate = (config.delay_min + config.delay_max) / 2;
  return make_dataset(config.dim, delay_estimate, "synthetic", std::move(instances));
}

}  // namespace actstream
