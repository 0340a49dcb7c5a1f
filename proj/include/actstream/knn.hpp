#pragma once

#include <cstdint>
#include <deque>

#include "actstream/learner.hpp"

namespace actstream {

/// k-nearest-neighbour vote over a sliding window of the most recent training instances.
///
/// Neighbours are ranked by Euclidean distance, equal distances by recency (newer first).
/// A vote tie goes to the label whose voters have the smaller total distance, then to benign.
class KNearestNeighbours final : public Learner {
 public:
  struct Stored {
    FeatureVector x;
    Label y;
    std::uint64_t seq;  // arrival number, larger = newer
  };

  KNearestNeighbours(const LearnerConfig& config, std::size_t dim);

  const std::deque<Stored>& window() const { return window_; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<KNearestNeighbours>(*this); }

 protected:
  Prediction do_predict(const FeatureVector& x) const override;
  void do_learn(const FeatureVector& x, Label y) override;
  void save_state(std::ostream& out) const override;
  void load_state(std::istream& in) override;

 private:
  std::deque<Stored> window_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace actstream
