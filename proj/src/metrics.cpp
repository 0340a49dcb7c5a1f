#include "actstream/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace actstream {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

MeanStd mean_std(const std::vector<double>& v) {
  MeanStd out;
  if (v.empty()) return out;
  double sum = 0.0;
  for (double x : v) sum += x;
  out.mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(ss / static_cast<double>(v.size()));
  return out;
}

constexpr int kSeriesColumns = 13;

}  // namespace

const char* const kSeriesCsvHeader =
    "day,n_tested,acc,prec,tpr,f1,cum_acc,cum_prec,cum_tpr,cum_f1,drifts,labels_requested,labels_available";

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::progressive: return "progressive";
    case Protocol::delayed: return "delayed";
    case Protocol::static_baseline: return "static";
    case Protocol::active: return "active";
  }
  return "unknown";
}

Protocol parse_protocol(const std::string& name) {
  for (Protocol p : {Protocol::progressive, Protocol::delayed, Protocol::static_baseline, Protocol::active}) {
    if (to_string(p) == name) return p;
  }
  throw std::invalid_argument("unknown protocol '" + name + "' (expected progressive, delayed, static or active)");
}

void ConfusionMatrix::add(Label predicted, Label truth) {
  if (truth == Label::malware) {
    predicted == Label::malware ? ++tp : ++fn;
  } else {
    predicted == Label::malware ? ++fp : ++tn;
  }
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& o) {
  tp += o.tp;
  fp += o.fp;
  tn += o.tn;
  fn += o.fn;
  return *this;
}

Metrics metrics_from_cm(const ConfusionMatrix& cm) {
  Metrics m;
  m.accuracy = ratio(cm.tp + cm.tn, cm.total());
  m.precision = ratio(cm.tp, cm.tp + cm.fp);
  m.tpr = ratio(cm.tp, cm.tp + cm.fn);
  m.f1 = m.precision + m.tpr == 0.0 ? 0.0 : 2.0 * m.precision * m.tpr / (m.precision + m.tpr);
  return m;
}

Summary summarize(const MetricSeries& series) {
  Summary s;
  std::vector<double> acc, prec, tpr, f1;
  for (const auto& d : series.days) {
    s.streamed += d.n_tested;
    if (d.n_tested == 0) continue;
    Metrics m = metrics_from_cm(d.daily);
    acc.push_back(m.accuracy);
    prec.push_back(m.precision);
    tpr.push_back(m.tpr);
    f1.push_back(m.f1);
  }
  s.days = acc.size();
  s.accuracy = mean_std(acc);
  s.precision = mean_std(prec);
  s.tpr = mean_std(tpr);
  s.f1 = mean_std(f1);
  if (!series.days.empty()) {
    s.drifts = series.days.back().drifts_so_far;
    s.labels_fraction = ratio(series.days.back().labels_requested_so_far, s.streamed);
  }
  return s;
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void write_series_csv(std::ostream& out, const MetricSeries& series, const Summary& summary) {
  out << kSeriesCsvHeader << '\n';
  for (const auto& d : series.days) {
    Metrics daily = metrics_from_cm(d.daily);
    Metrics cum = metrics_from_cm(d.cumulative);
    out << d.day << ',' << d.n_tested << ',' << format_fixed(daily.accuracy) << ',' << format_fixed(daily.precision)
        << ',' << format_fixed(daily.tpr) << ',' << format_fixed(daily.f1) << ',' << format_fixed(cum.accuracy) << ','
        << format_fixed(cum.precision) << ',' << format_fixed(cum.tpr) << ',' << format_fixed(cum.f1) << ','
        << d.drifts_so_far << ',' << d.labels_requested_so_far << ',' << d.labels_available_so_far << '\n';
  }
  out << "# protocol=" << to_string(series.protocol) << '\n';
  out << "# model=" << series.model << '\n';
  out << "# days=" << summary.days << '\n';
  auto pair = [&](const char* name, const MeanStd& m) {
    out << "# " << name << "_mean=" << format_fixed(m.mean) << '\n';
    out << "# " << name << "_std=" << format_fixed(m.std) << '\n';
  };
  pair("acc", summary.accuracy);
  pair("prec", summary.precision);
  pair("tpr", summary.tpr);
  pair("f1", summary.f1);
  out << "# streamed=" << summary.streamed << '\n';
  out << "# labels_fraction=" << format_fixed(summary.labels_fraction) << '\n';
  out << "# drifts=" << summary.drifts << '\n';
}

SeriesFile read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open series '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line != kSeriesCsvHeader)
    throw SchemaError(path.string() + ": header does not match the series schema");

  SeriesFile file;
  std::map<std::string, std::string> trailer;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw SchemaError(path.string() + ": malformed trailer line");
      trailer[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    if (!trailer.empty()) throw SchemaError(path.string() + ": data row after trailer");
    int commas = 0;
    for (char ch : line) commas += ch == ',';
    if (commas != kSeriesColumns - 1) throw SchemaError(path.string() + ": row with wrong column count");
    ++file.rows;
  }

  auto field = [&](const std::string& key) -> const std::string& {
    auto it = trailer.find(key);
    if (it == trailer.end()) throw SchemaError(path.string() + ": missing trailer key '" + key + "'");
    return it->second;
  };
  auto number = [&](const std::string& key) {
    try {
      return std::stod(field(key));
    } catch (const std::invalid_argument&) {
      throw SchemaError(path.string() + ": non-numeric trailer value for '" + key + "'");
    }
  };
  file.protocol = field("protocol");
  file.model = field("model");
  file.summary.days = static_cast<std::size_t>(number("days"));
  file.summary.accuracy = {number("acc_mean"), number("acc_std")};
  file.summary.precision = {number("prec_mean"), number("prec_std")};
  file.summary.tpr = {number("tpr_mean"), number("tpr_std")};
  file.summary.f1 = {number("f1_mean"), number("f1_std")};
  file.summary.streamed = static_cast<std::size_t>(number("streamed"));
  file.summary.labels_fraction = number("labels_fraction");
  file.summary.drifts = static_cast<std::size_t>(number("drifts"));
  return file;
}

}  // namespace actstream
