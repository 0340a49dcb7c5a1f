#pragma once

#include <optional>
#include <random>
#include <vector>

#include "actstream/adwin.hpp"
#include "actstream/hoeffding_tree.hpp"
#include "actstream/learner.hpp"

namespace actstream {

/// Online-bagged Hoeffding trees, each over a fixed random feature subspace, with
/// per-tree ADWIN warning/drift detectors on the tree's own prequential error.
class AdaptiveRandomForest final : public Learner {
 public:
  struct SubspaceTree {
    std::vector<FeatureIndex> subspace;  // sorted
    HoeffdingTree tree;
  };

  struct Member {
    SubspaceTree active;
    std::optional<SubspaceTree> background;
    Adwin warning;
    Adwin drift;
    std::size_t replacements = 0;
  };

  AdaptiveRandomForest(const LearnerConfig& config, std::size_t dim);

  const std::vector<Member>& members() const { return members_; }
  std::size_t subspace_size() const { return subspace_size_; }
  std::size_t total_replacements() const;
  std::unique_ptr<Learner> clone() const override { return std::make_unique<AdaptiveRandomForest>(*this); }

 protected:
  Prediction do_predict(const FeatureVector& x) const override;
  void do_learn(const FeatureVector& x, Label y) override;
  void save_state(std::ostream& out) const override;
  void load_state(std::istream& in) override;

 private:
  SubspaceTree fresh_tree();

  std::size_t subspace_size_;
  std::mt19937_64 rng_;
  std::vector<Member> members_;
};

}  // namespace actstream
