#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "actstream/learner.hpp"

namespace actstream {

struct HoeffdingTreeParams {
  double delta = 1e-7;
  std::size_t grace_period = 200;
  double tie_threshold = 0.05;
};

/// VFDT-style tree over binary features. Each internal node tests one feature
/// (absent -> left, present -> right); leaves predict their majority class.
class HoeffdingTree {
 public:
  using ClassCounts = std::array<std::uint64_t, 2>;

  struct Node {
    std::int64_t feature = -1;  // -1 for leaves
    std::int32_t absent = -1;
    std::int32_t present = -1;
    ClassCounts counts{0, 0};
    std::uint64_t seen_at_last_attempt = 0;
    // Leaf only: per feature, class counts of instances where the feature was active.
    std::unordered_map<FeatureIndex, ClassCounts> active_counts;

    bool is_leaf() const { return feature < 0; }
    std::uint64_t total() const { return counts[0] + counts[1]; }
  };

  struct SplitRecord {
    FeatureIndex feature;
    std::uint64_t n;
    double best_gain;
    double second_gain;
    double epsilon;
  };

  explicit HoeffdingTree(HoeffdingTreeParams params = {});

  Prediction predict(const FeatureVector& x) const;
  void learn(const FeatureVector& x, Label y);

  std::size_t leaf_count() const;
  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<SplitRecord>& split_log() const { return splits_; }
  const HoeffdingTreeParams& params() const { return params_; }
  bool empty() const { return nodes_.front().total() == 0 && nodes_.front().is_leaf(); }

  void save(std::ostream& out) const;
  static HoeffdingTree load(std::istream& in);

 private:
  std::size_t leaf_for(const FeatureVector& x) const;
  void attempt_split(std::size_t leaf);

  HoeffdingTreeParams params_;
  std::vector<Node> nodes_;
  std::vector<SplitRecord> splits_;
};

/// Information gain of splitting `parent` into (present, parent - present), in bits.
double binary_split_gain(const HoeffdingTree::ClassCounts& parent, const HoeffdingTree::ClassCounts& present);

class HoeffdingTreeLearner final : public Learner {
 public:
  HoeffdingTreeLearner(const LearnerConfig& config, std::size_t dim);

  const HoeffdingTree& tree() const { return tree_; }
  std::unique_ptr<Learner> clone() const override { return std::make_unique<HoeffdingTreeLearner>(*this); }

 protected:
  Prediction do_predict(const FeatureVector& x) const override { return tree_.predict(x); }
  void do_learn(const FeatureVector& x, Label y) override { tree_.learn(x, y); }
  void save_state(std::ostream& out) const override { tree_.save(out); }
  void load_state(std::istream& in) override { tree_ = HoeffdingTree::load(in); }

 private:
  HoeffdingTree tree_;
};

}  // namespace actstream
