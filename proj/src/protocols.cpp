#include "actstream/protocols.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace actstream {

MetricRecorder::MetricRecorder(Protocol protocol, std::string model) {
  series_.protocol = protocol;
  series_.model = std::move(model);
}

void MetricRecorder::begin_day(int day) {
  if (!series_.days.empty() && day <= series_.days.back().day)
    throw std::logic_error("stream days must be strictly increasing");
  current_ = DayRecord{};
  current_.day = day;
}

void MetricRecorder::record(const Instance& inst, const Prediction& p) {
  current_.daily.add(p.label, inst.label);
  cumulative_.add(p.label, inst.label);
  ++current_.n_tested;
  ++streamed_;
  predictions_.push_back({inst.id, current_.day, p, inst.label, inst.label_day});
}

void MetricRecorder::end_day(std::size_t drifts, std::size_t labels_requested, std::size_t labels_available) {
  current_.cumulative = cumulative_;
  current_.drifts_so_far = drifts;
  current_.labels_requested_so_far = labels_requested;
  current_.labels_available_so_far = labels_available;
  series_.days.push_back(current_);
}

std::unique_ptr<Learner> train_seed_model(const std::vector<Instance>& seed, const LearnerConfig& config) {
  if (seed.empty()) throw std::invalid_argument("seed set is empty; choose a later seed_end_day");
  auto learner = make_learner(config, seed.front().features.dim());
  for (const auto& inst : seed) learner->learn(inst.features, inst.label);
  return learner;
}

ConfusionMatrix confusion_from_log(const std::vector<PredictionRecord>& log) {
  ConfusionMatrix cm;
  for (const auto& r : log) cm.add(r.prediction.label, r.label);
  return cm;
}

ProtocolRun run_progressive(const std::vector<StreamDay>& stream, const std::vector<Instance>& seed,
                            const LearnerConfig& config, const EvalOptions& options) {
  ProtocolRun run;
  auto learner = train_seed_model(seed, config);
  run.seed_model_digest = learner->digest();
  MetricRecorder recorder(Protocol::progressive, to_string(config.model));
  Adwin detector(options.adwin_delta);
  std::size_t drifts = 0;

  for (const auto& day : stream) {
    recorder.begin_day(day.day);
    for (const auto& inst : day.releases) {
      Prediction p = learner->predict(inst.features);
      recorder.record(inst, p);
      learner->learn(inst.features, inst.label);
      run.training.push_back({inst.id, day.day, inst.release_day});
      if (detector.insert(p.label == inst.label ? 0.0 : 1.0).drift) ++drifts;
    }
    recorder.end_day(drifts, recorder.streamed(), recorder.streamed());
  }
  run.series = std::move(recorder.series());
  run.predictions = std::move(recorder.predictions());
  run.model = std::move(learner);
  return run;
}

ProtocolRun run_delayed(const std::vector<StreamDay>& stream, const std::vector<Instance>& seed,
                        const LearnerConfig& config, const EvalOptions& options) {
  ProtocolRun run;
  auto learner = train_seed_model(seed, config);
  run.seed_model_digest = learner->digest();
  MetricRecorder recorder(Protocol::delayed, to_string(config.model));
  Adwin detector(options.adwin_delta);
  std::size_t drifts = 0;
  std::size_t trained = 0;

  struct Pending {
    const Instance* inst;
    Label predicted;
  };
  std::map<std::pair<int, std::string>, Pending> pending;

  auto train_available = [&](int today) {
    while (!pending.empty() && pending.begin()->first.first <= today) {
      const Pending item = pending.begin()->second;
      pending.erase(pending.begin());
      learner->learn(item.inst->features, item.inst->label);
      run.training.push_back({item.inst->id, today, item.inst->label_day});
      ++trained;
      if (detector.insert(item.predicted == item.inst->label ? 0.0 : 1.0).drift) ++drifts;
    }
  };

  for (const auto& day : stream) {
    train_available(day.day);
    recorder.begin_day(day.day);
    for (const auto& inst : day.releases) {
      Prediction p = learner->predict(inst.features);
      recorder.record(inst, p);
      pending.emplace(std::make_pair(inst.label_day, inst.id), Pending{&inst, p.label});
    }
    recorder.end_day(drifts, recorder.streamed(), trained);
  }
  // Labels that arrive on the final day are still learned; later ones never are.
  if (!stream.empty()) {
    train_available(stream.back().day);
    if (!recorder.series().days.empty()) {
      auto& last = recorder.series().days.back();
      last.drifts_so_far = drifts;
      last.labels_available_so_far = trained;
    }
  }
  run.series = std::move(recorder.series());
  run.predictions = std::move(recorder.predictions());
  run.model = std::move(learner);
  return run;
}

ProtocolRun run_static(const std::vector<StreamDay>& stream, const std::vector<Instance>& seed,
                       const LearnerConfig& config, const EvalOptions& options) {
  ProtocolRun run;
  auto learner = train_seed_model(seed, config);
  run.seed_model_digest = learner->digest();
  MetricRecorder recorder(Protocol::static_baseline, to_string(config.model));
  Adwin detector(options.adwin_delta);
  std::size_t drifts = 0;

  for (const auto& day : stream) {
    recorder.begin_day(day.day);
    for (const auto& inst : day.releases) {
      Prediction p = learner->predict(inst.features);
      recorder.record(inst, p);
      if (detector.insert(p.label == inst.label ? 0.0 : 1.0).drift) ++drifts;
    }
    recorder.end_day(drifts, 0, 0);
  }
  run.series = std::move(recorder.series());
  run.predictions = std::move(recorder.predictions());
  run.model = std::move(learner);
  return run;
}

}  // namespace actstream
