#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "actstream/adwin.hpp"
#include "actstream/dataset.hpp"
#include "actstream/learner.hpp"
#include "actstream/metrics.hpp"

namespace actstream {

struct PredictionRecord {
  std::string id;
  int day = 0;
  Prediction prediction;
  Label label = Label::benign;
  int label_day = 0;
};

/// A post-seed training step: instance `id` was learned on `day`; its label became
/// usable on `available_day`.
struct TrainEvent {
  std::string id;
  int day = 0;
  int available_day = 0;
};

struct ProtocolRun {
  MetricSeries series;
  std::vector<PredictionRecord> predictions;
  std::vector<TrainEvent> training;
  std::uint64_t seed_model_digest = 0;
  std::unique_ptr<Learner> model;
};

struct EvalOptions {
  /// Delta of the passive ADWIN that counts drifts on the error stream.
  double adwin_delta = 0.002;
};

/// Accumulates daily and cumulative confusion matrices plus the prediction log.
class MetricRecorder {
 public:
  MetricRecorder(Protocol protocol, std::string model);

  void begin_day(int day);
  void record(const Instance& inst, const Prediction& p);
  void end_day(std::size_t drifts, std::size_t labels_requested, std::size_t labels_available);

  std::size_t streamed() const { return streamed_; }
  MetricSeries& series() { return series_; }
  std::vector<PredictionRecord>& predictions() { return predictions_; }

 private:
  MetricSeries series_;
  std::vector<PredictionRecord> predictions_;
  DayRecord current_;
  ConfusionMatrix cumulative_;
  std::size_t streamed_ = 0;
};

/// Blank learner trained once over the seed in the given order. Throws on an empty seed.
std::unique_ptr<Learner> train_seed_model(const std::vector<Instance>& seed, const LearnerConfig& config);

/// Test-then-train on every instance as soon as it is released.
ProtocolRun run_progressive(const std::vector<StreamDay>& stream, const std::vector<Instance>& seed,
                            const LearnerConfig& config, const EvalOptions& options = {});

/// Test at release; train at the start of the first stream day on or after label_day.
ProtocolRun run_delayed(const std::vector<StreamDay>& stream, const std::vector<Instance>& seed,
                        const LearnerConfig& config, const EvalOptions& options = {});

/// Seed-only model, never updated.
ProtocolRun run_static(const std::vector<StreamDay>& stream, const std::vector<Instance>& seed,
                       const LearnerConfig& config, const EvalOptions& options = {});

/// Confusion matrix rebuilt from scratch from a prediction log.
ConfusionMatrix confusion_from_log(const std::vector<PredictionRecord>& log);

}  // namespace actstream
