#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include "actstream/feature_vector.hpp"

namespace actstream {

enum class ModelKind { pa, htree, arf, knn, gnb };

std::string to_string(ModelKind kind);
/// Accepts the short names used in experiment configs: pa, htree, arf, knn, gnb.
ModelKind parse_model_kind(const std::string& name);

/// A predicted class and the model's confidence in that class, in [0, 1].
struct Prediction {
  Label label = Label::benign;
  double confidence = 0.0;
};

struct LearnerConfig {
  ModelKind model = ModelKind::pa;
  double C = 1.0;                  // passive-aggressive aggressiveness
  double delta_tree = 1e-7;        // Hoeffding split confidence
  std::size_t grace_period = 200;
  double tie_threshold = 0.05;
  std::size_t n_trees = 10;
  double lambda_poisson = 6.0;
  std::size_t subspace_size = 0;   // 0 selects round(sqrt(dim))
  double warning_delta = 1e-2;
  double drift_delta = 1e-3;
  std::size_t k = 5;
  std::size_t knn_window = 1000;
  double var_smoothing = 1e-9;
  std::uint64_t rng_seed = 1;

  /// Throws std::invalid_argument on out-of-range hyperparameters.
  void validate() const;
};

/// Incremental binary classifier. predict() never mutates state.
class Learner {
 public:
  Learner(const LearnerConfig& config, std::size_t dim);
  virtual ~Learner() = default;

  Prediction predict(const FeatureVector& x) const {
    check_dim(dim_, x);
    return do_predict(x);
  }
  void learn(const FeatureVector& x, Label y) {
    check_dim(dim_, x);
    do_learn(x, y);
  }

  const LearnerConfig& config() const { return config_; }
  std::size_t dim() const { return dim_; }
  virtual std::unique_ptr<Learner> clone() const = 0;

  /// Versioned text snapshot; load_learner() restores an identical state.
  void save(std::ostream& out) const;
  std::string snapshot() const;
  /// FNV-1a hash of the snapshot, for cheap state comparisons.
  std::uint64_t digest() const;

 protected:
  virtual Prediction do_predict(const FeatureVector& x) const = 0;
  virtual void do_learn(const FeatureVector& x, Label y) = 0;
  virtual void save_state(std::ostream& out) const = 0;
  virtual void load_state(std::istream& in) = 0;

 private:
  friend std::unique_ptr<Learner> load_learner(std::istream& in);

  LearnerConfig config_;
  std::size_t dim_;
};

/// Blank model for `config` over `dim` features.
std::unique_ptr<Learner> make_learner(const LearnerConfig& config, std::size_t dim);
std::unique_ptr<Learner> load_learner(std::istream& in);

/// Hoeffding radius sqrt(range^2 ln(1/delta) / (2n)).
double hoeffding_bound(double range, double delta, std::size_t n);

}  // namespace actstream
