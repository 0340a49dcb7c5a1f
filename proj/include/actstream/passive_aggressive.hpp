#pragma once

#include <vector>

#include "actstream/learner.hpp"

namespace actstream {

/// PA-I linear classifier; the bias is an always-on feature.
class PassiveAggressive final : public Learner {
 public:
  PassiveAggressive(const LearnerConfig& config, std::size_t dim);

  double margin(const FeatureVector& x) const;
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<PassiveAggressive>(*this); }

  /// Maps |margin| to [0, 1) via 2 * (sigmoid(|m|) - 0.5).
  static double confidence_from_margin(double m);

 protected:
  Prediction do_predict(const FeatureVector& x) const override;
  void do_learn(const FeatureVector& x, Label y) override;
  void save_state(std::ostream& out) const override;
  void load_state(std::istream& in) override;

 private:
  std::vector<double> weights_;
  double bias_ = 0.0;
};

}  // namespace actstream
