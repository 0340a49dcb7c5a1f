// Acceptance suite: one PASS/FAIL line per criterion; exit status is non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "actstream/active.hpp"
#include "actstream/adwin.hpp"
#include "actstream/gaussian_nb.hpp"
#include "actstream/knn.hpp"
#include "actstream/passive_aggressive.hpp"
#include "actstream/protocols.hpp"
#include "actstream/synthetic.hpp"

using namespace actstream;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

FeatureVector random_vector(std::mt19937_64& rng, std::size_t dim, double p) {
  std::bernoulli_distribution on(p);
  std::vector<FeatureIndex> active;
  for (std::size_t j = 0; j < dim; ++j)
    if (on(rng)) active.push_back(static_cast<FeatureIndex>(j));
  return FeatureVector(dim, std::move(active));
}

FeatureVector sparse_vector(std::mt19937_64& rng, std::size_t dim, std::size_t max_active) {
  std::uniform_int_distribution<std::size_t> count(1, max_active);
  std::uniform_int_distribution<FeatureIndex> index(0, static_cast<FeatureIndex>(dim - 1));
  std::set<FeatureIndex> s;
  std::size_t n = count(rng);
  while (s.size() < n) s.insert(index(rng));
  return FeatureVector(dim, std::vector<FeatureIndex>(s.begin(), s.end()));
}

Label coin_label(std::mt19937_64& rng) { return std::bernoulli_distribution(0.5)(rng) ? Label::malware : Label::benign; }

// ---------------------------------------------------------------------------

Outcome knn_oracle() {
  const std::size_t dim = 30;
  LearnerConfig cfg;
  cfg.model = ModelKind::knn;
  cfg.k = 5;
  cfg.knn_window = 200;
  KNearestNeighbours knn(cfg, dim);
  std::vector<std::pair<std::vector<int>, Label>> buffer;
  std::mt19937_64 rng(2024);
  std::size_t mismatches = 0;
  for (int q = 0; q < 1000; ++q) {
    FeatureVector x = random_vector(rng, dim, 0.25);
    std::vector<int> dense(dim, 0);
    for (FeatureIndex j : x.active()) dense[j] = 1;

    Prediction want{Label::benign, 0.0};
    if (!buffer.empty()) {
      std::vector<std::tuple<int, std::size_t, Label>> d;
      for (std::size_t i = 0; i < buffer.size(); ++i) {
        int dist = 0;
        for (std::size_t j = 0; j < dim; ++j) dist += (dense[j] - buffer[i].first[j]) * (dense[j] - buffer[i].first[j]);
        d.emplace_back(dist, buffer.size() - i, buffer[i].second);
      }
      std::sort(d.begin(), d.end());
      std::size_t k = std::min<std::size_t>(5, d.size());
      int votes[2] = {0, 0};
      double sums[2] = {0, 0};
      for (std::size_t i = 0; i < k; ++i) {
        int c = std::get<2>(d[i]) == Label::malware;
        ++votes[c];
        sums[c] += std::sqrt(std::get<0>(d[i]));
      }
      int win = votes[1] != votes[0] ? (votes[1] > votes[0]) : (sums[1] < sums[0]);
      want = {win ? Label::malware : Label::benign, static_cast<double>(votes[win]) / static_cast<double>(k)};
    }
    Prediction got = knn.predict(x);
    if (got.label != want.label || got.confidence != want.confidence) ++mismatches;

    Label y = coin_label(rng);
    knn.learn(x, y);
    buffer.emplace_back(dense, y);
    if (buffer.size() > cfg.knn_window) buffer.erase(buffer.begin());
  }
  return {mismatches == 0, "knn mismatches=" + std::to_string(mismatches) + "/1000"};
}

Outcome gnb_oracle() {
  const std::size_t dim = 40;
  GaussianNaiveBayes nb({}, dim);
  std::array<std::vector<FeatureVector>, 2> seen;
  std::mt19937_64 rng(77);
  for (int i = 0; i < 10000; ++i) {
    Label y = coin_label(rng);
    FeatureVector x = random_vector(rng, dim, y == Label::malware ? 0.3 : 0.1);
    nb.learn(x, y);
    seen[to_int(y)].push_back(x);
    if (i % 3 == 0) nb.predict(random_vector(rng, dim, 0.2));
  }
  double worst = 0.0;
  for (Label c : {Label::benign, Label::malware}) {
    const auto& rows = seen[to_int(c)];
    const double n = static_cast<double>(rows.size());
    for (FeatureIndex j = 0; j < dim; ++j) {
      double mean = 0;
      for (const auto& r : rows) mean += r.contains(j);
      mean /= n;
      double ss = 0;
      for (const auto& r : rows) ss += (r.contains(j) - mean) * (r.contains(j) - mean);
      double var = ss / n;
      worst = std::max(worst, std::abs(nb.mean(c, j) - mean) / std::max(std::abs(mean), 1e-300));
      worst = std::max(worst, std::abs(nb.variance(c, j) - var) / std::max(std::abs(var), 1e-300));
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "gnb max rel err=%.2e", worst);
  return {worst <= 1e-9, buf};
}

Outcome pa_oracle() {
  const std::size_t dim = 50;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cdist(0.05, 5.0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    LearnerConfig cfg;
    cfg.C = cdist(rng);
    PassiveAggressive pa(cfg, dim);
    // Random prior state via a few updates, then check one update against the closed form.
    int warmup = static_cast<int>(rng() % 6);
    for (int i = 0; i < warmup; ++i) pa.learn(sparse_vector(rng, dim, 8), coin_label(rng));
    FeatureVector x = sparse_vector(rng, dim, 8);
    Label y = coin_label(rng);
    std::vector<double> w = pa.weights();
    double b = pa.bias();
    double ys = y == Label::malware ? 1.0 : -1.0;
    double m = b;
    for (FeatureIndex j : x.active()) m += w[j];
    double loss = std::max(0.0, 1.0 - ys * m);
    double tau = std::min(cfg.C, loss / (static_cast<double>(x.nnz()) + 1.0));
    pa.learn(x, y);
    for (std::size_t j = 0; j < dim; ++j) {
      double want = w[j] + (x.contains(static_cast<FeatureIndex>(j)) ? tau * ys : 0.0);
      worst = std::max(worst, std::abs(pa.weights()[j] - want));
    }
    worst = std::max(worst, std::abs(pa.bias() - (b + tau * ys)));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "pa max abs err=%.2e", worst);
  return {worst <= 1e-12, buf};
}

Outcome oracle_equivalences() {
  Outcome parts[] = {knn_oracle(), gnb_oracle(), pa_oracle()};
  Outcome out{true, ""};
  for (const auto& p : parts) {
    out.pass = out.pass && p.pass;
    out.detail += (out.detail.empty() ? "" : "; ") + p.detail;
  }
  return out;
}

Outcome bound_values() {
  double h = hoeffding_bound(1.0, 1e-7, 1000);
  double e = epsilon_cut(1000, 1000, 0.001);
  double h_direct = std::sqrt(1.0 * std::log(1.0 / 1e-7) / (2.0 * 1000));
  double e_direct = std::sqrt(std::log(4.0 / 0.001) / (2.0 * (1.0 / (1.0 / 1000 + 1.0 / 1000))));
  bool pass = std::abs(h - 0.089772) <= 1e-5 && std::abs(h - h_direct) <= 1e-5 && std::abs(e - e_direct) <= 1e-5;
  char buf[160];
  std::snprintf(buf, sizeof buf, "hoeffding=%.7f (direct %.7f) eps_cut=%.7f (direct %.7f)", h, h_direct, e, e_direct);
  return {pass, buf};
}

Outcome adwin_behaviour() {
  std::size_t false_alarms = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    std::mt19937_64 rng(1000 + s);
    std::bernoulli_distribution coin(0.3);
    Adwin a;
    for (int i = 0; i < 10000; ++i) {
      if (a.insert(coin(rng) ? 1.0 : 0.0).drift) {
        ++false_alarms;
        break;
      }
    }
  }
  std::size_t detected = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    std::mt19937_64 rng(5000 + s);
    std::bernoulli_distribution before(0.2), after(0.8);
    Adwin a;
    bool early = false;
    for (int i = 0; i < 1000; ++i) early = a.insert(before(rng) ? 1.0 : 0.0).drift || early;
    bool hit = false;
    for (int i = 0; i < 300 && !hit; ++i) hit = a.insert(after(rng) ? 1.0 : 0.0).drift;
    detected += hit && !early;
  }
  double rate = static_cast<double>(false_alarms) / 200.0;
  char buf[96];
  std::snprintf(buf, sizeof buf, "false-drift rate=%.3f detected=%zu/100", rate, detected);
  return {rate <= 0.05 && detected >= 95, buf};
}

double mean_daily_accuracy(const MetricSeries& s, int from_day) {
  double sum = 0;
  int n = 0;
  for (const auto& d : s.days) {
    if (d.day < from_day || d.n_tested == 0) continue;
    sum += metrics_from_cm(d.daily).accuracy;
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

// Desk-scale stream: chained gradual drift across the whole stream plus one abrupt drift.
GeneratorConfig pattern_stream() {
  GeneratorConfig g;
  g.dim = 500;
  g.days = 200;
  g.per_day_benign = 50;
  g.per_day_malware = 50;
  g.delay_min = g.delay_max = 40;
  g.drift = parse_drift_schedule("0:gradual:1.0:67;67:gradual:1.0:67;134:gradual:1.0:66;110:abrupt:1.0");
  g.common_fraction = 0.2;
  g.separation = 0.1;
  g.label_noise = 0.02;
  return g;
}

Outcome drift_pattern() {
  const GeneratorConfig g = pattern_stream();
  int ok_a = 0, ok_b = 0, ok_c = 0;
  double gap_sum = 0, recovery_sum = 0, labels_sum = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Dataset ds = generate_synthetic(g, seed);
    SeedSplit split = split_seed(ds.days, 15);
    LearnerConfig lc;
    ActiveConfig ac;
    ac.theta = 0.8;
    ac.retrain_buffer_size = 2000;
    ProtocolRun p = run_progressive(split.rest, split.seed, lc);
    ProtocolRun d = run_delayed(split.rest, split.seed, lc);
    ProtocolRun st = run_static(split.rest, split.seed, lc);
    ActiveRun a = run_active(split.rest, split.seed, lc, ac);

    double P = mean_daily_accuracy(p.series, 0), D = mean_daily_accuracy(d.series, 0);
    double A = mean_daily_accuracy(a.run.series, 0);
    double labels = summarize(a.run.series).labels_fraction;
    int tail = split.rest.back().day - 49;
    double S50 = mean_daily_accuracy(st.series, tail);
    bool c = S50 < mean_daily_accuracy(p.series, tail) && S50 < mean_daily_accuracy(d.series, tail) &&
             S50 < mean_daily_accuracy(a.run.series, tail);

    ok_a += P - D >= 0.03;
    ok_b += A - D >= 0.5 * (P - D) && labels <= 0.5;
    ok_c += c;
    gap_sum += P - D;
    recovery_sum += (A - D) / (P - D);
    labels_sum += labels;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "(a) %d/10 (b) %d/10 (c) %d/10; mean gap=%.4f mean recovery=%.2f mean labels=%.3f", ok_a, ok_b,
                ok_c, gap_sum / 10, recovery_sum / 10, labels_sum / 10);
  return {ok_a >= 6 && ok_b >= 6 && ok_c >= 6, buf};
}

// Zero delays and confidences that never reach 1.0 make every release a granted request.
Outcome protocol_identity() {
  std::mt19937_64 rng(31);
  std::vector<Instance> all;
  for (int day = 0; day < 30; ++day) {
    for (int i = 0; i < 6; ++i) {
      Label y = coin_label(rng);
      std::vector<FeatureIndex> active = {2};
      if (y == Label::malware) active.insert(active.begin(), 0);
      if (std::bernoulli_distribution(0.3)(rng)) active.push_back(5);
      char id[16];
      std::snprintf(id, sizeof id, "e%04d", day * 6 + i);
      all.push_back(Instance{id, FeatureVector(8, active), y, day, day});
    }
  }
  Dataset ds = make_dataset(8, 0, "synthetic", all);
  SeedSplit split = split_seed(ds.days, 3);
  ActiveConfig ac;
  ac.theta = 1.0;
  ac.oracle_daily_budget = 0;
  bool pass = true;
  std::string detail;
  // KNN and Hoeffding leaves reach confidence 1.0 on agreeing neighbourhoods, so only the
  // margin- and posterior-based models satisfy the fixture's precondition.
  for (ModelKind kind : {ModelKind::pa, ModelKind::gnb}) {
    LearnerConfig lc;
    lc.model = kind;
    lc.var_smoothing = 0.05;
    ActiveRun a = run_active(split.rest, split.seed, lc, ac);
    ProtocolRun p = run_progressive(split.rest, split.seed, lc);
    bool below_one = std::all_of(a.run.predictions.begin(), a.run.predictions.end(),
                                 [](const PredictionRecord& r) { return r.prediction.confidence < 1.0; });
    std::multiset<std::string> ta, tp;
    for (const auto& t : a.run.training) ta.insert(t.id);
    for (const auto& t : p.training) tp.insert(t.id);
    pass = pass && below_one && ta == tp && !tp.empty();
    detail += (detail.empty() ? "" : "; ") + to_string(kind) + ": trained " + std::to_string(ta.size()) + " vs " +
              std::to_string(tp.size()) + (below_one ? "" : " (confidence hit 1.0)");
  }
  return {pass, detail};
}

Outcome consistency_suite() {
  GeneratorConfig g;
  g.dim = 120;
  g.days = 60;
  g.per_day_benign = 12;
  g.per_day_malware = 8;
  g.delay_min = 0;
  g.delay_max = 15;
  g.drift = parse_drift_schedule("0:gradual:0.5;30:abrupt:0.7");
  std::vector<std::string> failures;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Dataset ds = generate_synthetic(g, seed);
    std::ostringstream d1, d2;
    write_dataset(d1, ds);
    write_dataset(d2, generate_synthetic(g, seed));
    if (d1.str() != d2.str()) failures.push_back("generator bytes");
    SeedSplit split = split_seed(ds.days, 8);
    std::map<std::string, int> label_day;
    for (const auto& day : split.rest)
      for (const auto& inst : day.releases) label_day[inst.id] = inst.label_day;

    for (ModelKind kind : {ModelKind::pa, ModelKind::htree, ModelKind::arf, ModelKind::knn, ModelKind::gnb}) {
      LearnerConfig lc;
      lc.model = kind;
      lc.grace_period = 50;
      ActiveConfig ac;
      ac.oracle_daily_budget = 6;
      auto check = [&](const std::string& tag, const ProtocolRun& run, const ProtocolRun& again, bool delayed) {
        if (run.series.days.empty() || run.series.days.back().cumulative != confusion_from_log(run.predictions))
          failures.push_back(tag + " cumulative");
        std::ostringstream a, b;
        write_series_csv(a, run.series, summarize(run.series));
        write_series_csv(b, again.series, summarize(again.series));
        if (a.str() != b.str() || run.model->snapshot() != again.model->snapshot())
          failures.push_back(tag + " determinism");
        if (!delayed) return;
        std::set<std::string> once;
        for (const auto& t : run.training)
          if (t.day < label_day.at(t.id) || !once.insert(t.id).second) failures.push_back(tag + " availability");
      };
      const std::string m = to_string(kind);
      check(m + "/progressive", run_progressive(split.rest, split.seed, lc),
            run_progressive(split.rest, split.seed, lc), false);
      check(m + "/delayed", run_delayed(split.rest, split.seed, lc), run_delayed(split.rest, split.seed, lc), true);
      check(m + "/static", run_static(split.rest, split.seed, lc), run_static(split.rest, split.seed, lc), false);
      ActiveRun a = run_active(split.rest, split.seed, lc, ac);
      ActiveRun b = run_active(split.rest, split.seed, lc, ac);
      check(m + "/active", a.run, b.run, true);
      std::map<int, std::size_t> grants;
      for (const auto& e : a.audit)
        if (e.action == OracleAuditEntry::Action::granted && ++grants[e.day] > ac.oracle_daily_budget)
          failures.push_back(m + "/active budget");
    }
  }
  std::string detail = failures.empty() ? "3 streams x 5 models x 4 protocols consistent" : failures.front();
  if (failures.size() > 1) detail += " (+" + std::to_string(failures.size() - 1) + " more)";
  return {failures.empty(), detail};
}

Outcome throughput() {
  const std::size_t dim = 134207;
  std::mt19937_64 rng(9);
  std::vector<std::pair<FeatureVector, Label>> data;
  for (int i = 0; i < 20000; ++i) data.emplace_back(sparse_vector(rng, dim, 100), coin_label(rng));
  PassiveAggressive pa({}, dim);
  const int rounds = 5;
  auto start = std::chrono::steady_clock::now();
  std::size_t sink = 0;
  for (int r = 0; r < rounds; ++r) {
    for (const auto& [x, y] : data) {
      sink += pa.predict(x).label == y;
      pa.learn(x, y);
    }
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double rate = static_cast<double>(data.size() * rounds) / seconds;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.0f instances/s (%zu correct)", rate, sink);
  return {rate >= 10000.0, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalences (knn, gnb, pa)", oracle_equivalences},
      {"hoeffding bound and eps_cut values", bound_values},
      {"adwin false alarms and detection delay", adwin_behaviour},
      {"drift pattern: progressive > delayed, active recovery, static decline", drift_pattern},
      {"protocol identity: active(theta=1, no delay) == progressive", protocol_identity},
      {"conservation and consistency suite", consistency_suite},
      {"pa throughput at dim 134207", throughput},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o = fn();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %s :: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), s);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
