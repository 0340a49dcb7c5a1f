#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "actstream/learner.hpp"

namespace actstream {

/// Gaussian naive Bayes over binary features.
///
/// For 0/1 inputs the per-class count of activations is a sufficient statistic:
/// mean = k/n and population variance = k(n-k)/n^2 follow exactly from integers,
/// so the one-pass update is exact. Scoring sums the log-density of the all-zero
/// vector (cached per class, refreshed lazily after learning) and corrects only
/// the active coordinates.
class GaussianNaiveBayes final : public Learner {
 public:
  GaussianNaiveBayes(const LearnerConfig& config, std::size_t dim);

  std::uint64_t class_count(Label c) const { return classes_[to_int(c)].n; }
  double mean(Label c, FeatureIndex j) const;
  double variance(Label c, FeatureIndex j) const;
  /// Log joint density log P(c) + sum_j log N(x_j; mean, variance + var_smoothing).
  double log_joint(Label c, const FeatureVector& x) const;
  std::unique_ptr<Learner> clone() const override { return std::make_unique<GaussianNaiveBayes>(*this); }

 protected:
  Prediction do_predict(const FeatureVector& x) const override;
  void do_learn(const FeatureVector& x, Label y) override;
  void save_state(std::ostream& out) const override;
  void load_state(std::istream& in) override;

 private:
  struct ClassStats {
    std::uint64_t n = 0;
    std::vector<std::uint32_t> active;   // activations per feature
    std::vector<FeatureIndex> support;   // features with active > 0
    mutable double zero_log_density = 0.0;
    mutable bool dirty = true;
  };

  double log_density(const ClassStats& s, FeatureIndex j, double x) const;
  double zero_log_density(const ClassStats& s) const;

  std::array<ClassStats, 2> classes_;
};

}  // namespace actstream
