#include "actstream/active.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>

namespace actstream {

std::string to_string(OracleAuditEntry::Action a) {
  switch (a) {
    case OracleAuditEntry::Action::granted: return "granted";
    case OracleAuditEntry::Action::deferred: return "deferred";
    case OracleAuditEntry::Action::dropped: return "dropped";
  }
  return "unknown";
}

void ActiveConfig::validate() const {
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument("theta must lie in [0, 1]");
  if (!(adwin_delta > 0.0 && adwin_delta < 1.0)) throw std::invalid_argument("adwin_delta must lie in (0, 1)");
}

bool LabelOracle::Order::operator()(const LabelRequest& a, const LabelRequest& b) const {
  if (a.confidence != b.confidence) return a.confidence < b.confidence;
  return a.instance->id < b.instance->id;
}

LabelOracle::LabelOracle(std::size_t daily_budget, BudgetOverflow overflow)
    : daily_budget_(daily_budget), overflow_(overflow) {}

void LabelOracle::submit(const LabelRequest& request) {
  if (request.instance == nullptr) throw std::invalid_argument("label request without instance");
  incoming_.insert(request);
}

std::vector<LabelRequest> LabelOracle::tick(int day) {
  today_spent_ = 0;
  std::vector<LabelRequest> granted;
  std::set<LabelRequest, Order> still_deferred;
  auto serve = [&](std::set<LabelRequest, Order>& queue) {
    for (const auto& r : queue) {
      if (daily_budget_ == 0 || today_spent_ < daily_budget_) {
        ++today_spent_;
        granted.push_back(r);
        audit_.push_back({day, r.instance->id, r.confidence, OracleAuditEntry::Action::granted});
      } else if (overflow_ == BudgetOverflow::defer) {
        still_deferred.insert(r);
        audit_.push_back({day, r.instance->id, r.confidence, OracleAuditEntry::Action::deferred});
      } else {
        audit_.push_back({day, r.instance->id, r.confidence, OracleAuditEntry::Action::dropped});
      }
    }
    queue.clear();
  };
  serve(deferred_);
  serve(incoming_);
  deferred_ = std::move(still_deferred);
  return granted;
}

void RetrainBuffer::push(const FeatureVector& x, Label y) {
  if (capacity_ == 0) return;
  items_.emplace_back(x, y);
  while (items_.size() > capacity_) items_.pop_front();
}

ActiveController::ActiveController(const std::vector<Instance>& seed, const LearnerConfig& learner_config,
                                   const ActiveConfig& config)
    : seed_(seed),
      learner_config_(learner_config),
      config_(config),
      learner_(train_seed_model(seed, learner_config)),
      detector_(config.adwin_delta),
      oracle_(config.oracle_daily_budget, config.budget_overflow),
      buffer_(config.retrain_buffer_size == 0 ? seed.size() : config.retrain_buffer_size) {
  config_.validate();
  seed_digest_ = learner_->digest();
}

Prediction ActiveController::step_release(const Instance& inst, int day, MetricRecorder& recorder) {
  Prediction p = learner_->predict(inst.features);
  recorder.record(inst, p);
  if (p.confidence < config_.theta) {
    release_predictions_[inst.id] = p.label;
    oracle_.submit({&inst, p.confidence, day});
    ++requested_;
  }
  return p;
}

void ActiveController::oracle_tick(int day) {
  for (const auto& grant : oracle_.tick(day)) {
    const int trainable = std::max(day, grant.instance->label_day);
    scheduled_.emplace(std::make_pair(trainable, grant.instance->id), grant.instance);
  }
}

void ActiveController::process_arrivals(int day) {
  while (!scheduled_.empty() && scheduled_.begin()->first.first <= day) {
    auto it = scheduled_.begin();
    const int available = it->first.first;
    const Instance* inst = it->second;
    scheduled_.erase(it);
    on_label_arrival(*inst, day, available);
  }
}

void ActiveController::on_label_arrival(const Instance& inst, int day, int available_day) {
  if (day < available_day) throw std::logic_error("label for '" + inst.id + "' used before it is available");
  if (!arrived_ids_.insert(inst.id).second) throw std::logic_error("label for '" + inst.id + "' arrived twice");
  auto pred = release_predictions_.find(inst.id);
  if (pred == release_predictions_.end()) throw std::logic_error("label for '" + inst.id + "' was never requested");

  learner_->learn(inst.features, inst.label);
  training_.push_back({inst.id, day, available_day});
  ++arrived_;
  buffer_.push(inst.features, inst.label);
  const double error = pred->second == inst.label ? 0.0 : 1.0;
  release_predictions_.erase(pred);
  if (detector_.insert(error).drift) {
    ++drifts_;
    retrain();
  }
}

void ActiveController::retrain() {
  learner_ = make_learner(learner_config_, learner_->dim());
  if (config_.retrain_source == RetrainSource::seed) {
    for (const auto& inst : seed_) learner_->learn(inst.features, inst.label);
  } else {
    if (buffer_.size() == 0) std::cerr << "warning: retrain with an empty buffer leaves a blank model\n";
    for (const auto& [x, y] : buffer_.items()) learner_->learn(x, y);
  }
  detector_.reset();
  ++retrains_;
}

ActiveRun run_active(const std::vector<StreamDay>& stream, const std::vector<Instance>& seed,
                     const LearnerConfig& learner_config, const ActiveConfig& active_config) {
  ActiveController ctrl(seed, learner_config, active_config);
  MetricRecorder recorder(Protocol::active, to_string(learner_config.model));

  for (const auto& day : stream) {
    ctrl.process_arrivals(day.day);
    recorder.begin_day(day.day);
    for (const auto& inst : day.releases) ctrl.step_release(inst, day.day, recorder);
    ctrl.oracle_tick(day.day);
    recorder.end_day(ctrl.drifts(), ctrl.labels_requested(), ctrl.labels_arrived());
  }
  if (!stream.empty()) {
    ctrl.process_arrivals(stream.back().day);
    if (!recorder.series().days.empty()) {
      auto& last = recorder.series().days.back();
      last.drifts_so_far = ctrl.drifts();
      last.labels_available_so_far = ctrl.labels_arrived();
    }
  }

  ActiveRun out;
  out.run.series = std::move(recorder.series());
  out.run.predictions = std::move(recorder.predictions());
  out.run.training = ctrl.training();
  out.run.seed_model_digest = ctrl.seed_model_digest();
  out.audit = ctrl.oracle().audit_log();
  out.retrains = ctrl.retrains();
  out.run.model = ctrl.release_learner();
  return out;
}

}  // namespace actstream
