#pragma once

#include <deque>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "actstream/adwin.hpp"
#include "actstream/dataset.hpp"
#include "actstream/learner.hpp"
#include "actstream/protocols.hpp"

namespace actstream {

enum class BudgetOverflow { defer, drop };
enum class RetrainSource { recent, seed };

struct ActiveConfig {
  double theta = 0.8;
  std::size_t retrain_buffer_size = 0;    // 0 selects the seed size
  std::size_t oracle_daily_budget = 500;  // 0 = unlimited
  BudgetOverflow budget_overflow = BudgetOverflow::defer;
  double adwin_delta = 0.002;
  RetrainSource retrain_source = RetrainSource::recent;

  void validate() const;
};

struct LabelRequest {
  const Instance* instance = nullptr;
  double confidence = 0.0;
  int submitted_day = 0;
};

struct OracleAuditEntry {
  enum class Action { granted, deferred, dropped };
  int day = 0;
  std::string id;
  double confidence = 0.0;
  Action action = Action::granted;
};

std::string to_string(OracleAuditEntry::Action a);

/// Daily-budgeted label source. Each tick grants carried-over requests first, then the
/// day's new ones, each group lowest confidence first (ties by id).
class LabelOracle {
 public:
  LabelOracle(std::size_t daily_budget, BudgetOverflow overflow);

  void submit(const LabelRequest& request);
  std::vector<LabelRequest> tick(int day);

  std::size_t today_spent() const { return today_spent_; }
  std::size_t daily_budget() const { return daily_budget_; }
  std::size_t deferred_count() const { return deferred_.size(); }
  const std::vector<OracleAuditEntry>& audit_log() const { return audit_; }

 private:
  struct Order {
    bool operator()(const LabelRequest& a, const LabelRequest& b) const;
  };

  std::size_t daily_budget_;
  BudgetOverflow overflow_;
  std::size_t today_spent_ = 0;
  std::set<LabelRequest, Order> deferred_;
  std::set<LabelRequest, Order> incoming_;
  std::vector<OracleAuditEntry> audit_;
};

/// Most recently labelled instances, oldest first.
class RetrainBuffer {
 public:
  explicit RetrainBuffer(std::size_t capacity) : capacity_(capacity) {}

  void push(const FeatureVector& x, Label y);
  std::size_t size() const { return items_.size(); }
  std::size_t capacity() const { return capacity_; }
  const std::deque<std::pair<FeatureVector, Label>>& items() const { return items_; }

 private:
  std::size_t capacity_;
  std::deque<std::pair<FeatureVector, Label>> items_;
};

/// Confidence-gated learning loop: request labels for low-confidence releases, learn
/// when they arrive, watch the labelled error stream with ADWIN and rebuild the model
/// from recent labels when it drifts.
class ActiveController {
 public:
  ActiveController(const std::vector<Instance>& seed, const LearnerConfig& learner_config,
                   const ActiveConfig& config);

  /// Predicts, scores and, when confidence < theta, submits a label request.
  Prediction step_release(const Instance& inst, int day, MetricRecorder& recorder);
  /// Grants today's label requests; they become trainable at max(day, label_day).
  void oracle_tick(int day);
  /// Learns every granted label whose trainable day is <= day, in (trainable day, id) order.
  void process_arrivals(int day);
  void on_label_arrival(const Instance& inst, int day, int available_day);
  void retrain();

  const Learner& learner() const { return *learner_; }
  const LabelOracle& oracle() const { return oracle_; }
  const RetrainBuffer& buffer() const { return buffer_; }
  const Adwin& detector() const { return detector_; }
  std::size_t drifts() const { return drifts_; }
  std::size_t retrains() const { return retrains_; }
  std::size_t labels_requested() const { return requested_; }
  std::size_t labels_arrived() const { return arrived_; }
  std::uint64_t seed_model_digest() const { return seed_digest_; }
  const std::vector<TrainEvent>& training() const { return training_; }
  std::unique_ptr<Learner> release_learner() { return std::move(learner_); }

 private:
  const std::vector<Instance>& seed_;
  LearnerConfig learner_config_;
  ActiveConfig config_;
  std::unique_ptr<Learner> learner_;
  std::uint64_t seed_digest_ = 0;
  Adwin detector_;
  LabelOracle oracle_;
  RetrainBuffer buffer_;

  // id -> prediction made at release
  std::map<std::string, Label> release_predictions_;
  std::map<std::pair<int, std::string>, const Instance*> scheduled_;
  std::set<std::string> arrived_ids_;
  std::vector<TrainEvent> training_;
  std::size_t drifts_ = 0;
  std::size_t retrains_ = 0;
  std::size_t requested_ = 0;
  std::size_t arrived_ = 0;
};

struct ActiveRun {
  ProtocolRun run;
  std::vector<OracleAuditEntry> audit;
  std::size_t retrains = 0;
};

/// Per day: learn arrived labels, test and gate the releases, then run the oracle.
/// Labels that become trainable on the final day are learned after it.
ActiveRun run_active(const std::vector<StreamDay>& stream, const std::vector<Instance>& seed,
                     const LearnerConfig& learner_config, const ActiveConfig& active_config);

}  // namespace actstream
