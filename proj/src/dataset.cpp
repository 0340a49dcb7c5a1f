#include "actstream/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string_view>

namespace actstream {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

void parse_header(std::string_view line, std::size_t& dim, int& delay) {
  if (line.empty() || line.front() != '#') throw DatasetError(1, "expected header '#dim=<d>,delay=<D>'");
  bool have_dim = false;
  bool have_delay = false;
  for (auto field : split(line.substr(1), ',')) {
    auto eq = field.find('=');
    if (eq == std::string_view::npos) throw DatasetError(1, "malformed header field");
    auto key = field.substr(0, eq);
    auto value = field.substr(eq + 1);
    if (key == "dim") {
      if (!parse_number(value, dim) || dim == 0) throw DatasetError(1, "invalid dim");
      have_dim = true;
    } else if (key == "delay") {
      if (!parse_number(value, delay) || delay < 0) throw DatasetError(1, "invalid delay");
      have_delay = true;
    } else {
      throw DatasetError(1, "unknown header key '" + std::string(key) + "'");
    }
  }
  if (!have_dim || !have_delay) throw DatasetError(1, "header must define dim and delay");
}

Instance parse_record(std::string_view line, std::size_t line_no, std::size_t dim) {
  auto fields = split(line, ',');
  if (fields.size() != 5)
    throw DatasetError(line_no, "expected 5 comma-separated fields, got " + std::to_string(fields.size()));
  Instance inst;
  inst.id = std::string(fields[0]);
  if (inst.id.empty()) throw DatasetError(line_no, "empty id");
  if (!parse_number(fields[1], inst.release_day) || inst.release_day < 0)
    throw DatasetError(line_no, "invalid release_day");
  if (!parse_number(fields[2], inst.label_day) || inst.label_day < 0)
    throw DatasetError(line_no, "invalid label_day");
  if (inst.label_day < inst.release_day) throw DatasetError(line_no, "label_day precedes release_day");
  int label = 0;
  if (!parse_number(fields[3], label) || (label != 0 && label != 1))
    throw DatasetError(line_no, "label must be 0 or 1");
  inst.label = static_cast<Label>(label);

  std::vector<FeatureIndex> active;
  if (fields[4] != "-" && !fields[4].empty()) {
    for (auto tok : split(fields[4], ':')) {
      FeatureIndex j = 0;
      if (!parse_number(tok, j)) throw DatasetError(line_no, "invalid feature index '" + std::string(tok) + "'");
      if (j >= dim)
        throw DatasetError(line_no, "feature index " + std::to_string(j) + " >= dim " + std::to_string(dim));
      if (!active.empty() && j <= active.back())
        throw DatasetError(line_no, "feature indices must be strictly ascending");
      active.push_back(j);
    }
  }
  inst.features = FeatureVector(dim, std::move(active));
  return inst;
}

}  // namespace

DatasetError::DatasetError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::size_t Dataset::instance_count() const {
  std::size_t n = 0;
  for (const auto& d : days) n += d.releases.size();
  return n;
}

int estimate_release_day(int label_day, int delay) {
  if (delay < 0) throw std::invalid_argument("delay must be non-negative");
  return std::max(0, label_day - delay);
}

Dataset make_dataset(std::size_t dim, int delay_estimate, std::string epoch, std::vector<Instance> instances) {
  Dataset ds;
  ds.meta.dim = dim;
  ds.meta.delay_estimate = delay_estimate;
  ds.meta.epoch = std::move(epoch);
  std::map<int, std::vector<Instance>> by_day;
  for (auto& inst : instances) {
    if (inst.label == Label::malware) {
      ++ds.meta.n_malware;
    } else {
      ++ds.meta.n_benign;
    }
    by_day[inst.release_day].push_back(std::move(inst));
  }
  for (auto& [day, releases] : by_day) {
    std::sort(releases.begin(), releases.end(), [](const Instance& a, const Instance& b) { return a.id < b.id; });
    ds.days.push_back(StreamDay{day, std::move(releases)});
  }
  if (!ds.days.empty()) {
    ds.meta.first_day = ds.days.front().day;
    ds.meta.last_day = ds.days.back().day;
  }
  return ds;
}

Dataset parse_dataset(std::istream& in, const LoadOptions& options) {
  std::string line;
  std::size_t dim = 0;
  int delay = 0;
  if (!std::getline(in, line)) throw DatasetError(1, "missing header");
  parse_header(line, dim, delay);
  std::string epoch = "synthetic";
  if (!std::getline(in, line)) throw DatasetError(2, "missing epoch header");
  if (line.rfind("#epoch=", 0) != 0) throw DatasetError(2, "expected '#epoch=<date>'");
  epoch = line.substr(7);

  std::vector<Instance> instances;
  std::set<std::string> ids;
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Instance inst = parse_record(line, line_no, dim);
    if (!ids.insert(inst.id).second) throw DatasetError(line_no, "duplicate id '" + inst.id + "'");
    if (options.estimate_malware_release && inst.label == Label::malware)
      inst.release_day = estimate_release_day(inst.label_day, delay);
    instances.push_back(std::move(inst));
  }
  return make_dataset(dim, delay, std::move(epoch), std::move(instances));
}

Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DatasetError(0, "cannot open dataset '" + path.string() + "'");
  return parse_dataset(in, options);
}

void write_dataset(std::ostream& out, const Dataset& dataset) {
  out << "#dim=" << dataset.meta.dim << ",delay=" << dataset.meta.delay_estimate << '\n';
  out << "#epoch=" << dataset.meta.epoch << '\n';
  for (const auto& day : dataset.days) {
    for (const auto& inst : day.releases) {
      out << inst.id << ',' << inst.release_day << ',' << inst.label_day << ',' << to_int(inst.label) << ',';
      auto active = inst.features.active();
      if (active.empty()) {
        out << '-';
      } else {
        for (std::size_t i = 0; i < active.size(); ++i) {
          if (i > 0) out << ':';
          out << active[i];
        }
      }
      out << '\n';
    }
  }
}

SeedSplit split_seed(const std::vector<StreamDay>& stream, int seed_end_day) {
  SeedSplit out;
  for (const auto& day : stream) {
    if (day.day < seed_end_day) {
      out.seed.insert(out.seed.end(), day.releases.begin(), day.releases.end());
    } else {
      out.rest.push_back(day);
    }
  }
  return out;
}

}  // namespace actstream
