#include "actstream/hoeffding_tree.hpp"

#include <algorithm>
#include <cmath>

#include "serialization.hpp"

namespace actstream {

namespace {

double entropy(std::uint64_t a, std::uint64_t b) {
  const double n = static_cast<double>(a + b);
  if (n == 0.0) return 0.0;
  double h = 0.0;
  for (std::uint64_t c : {a, b}) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double binary_split_gain(const HoeffdingTree::ClassCounts& parent, const HoeffdingTree::ClassCounts& present) {
  const std::uint64_t n = parent[0] + parent[1];
  if (n == 0) return 0.0;
  const std::uint64_t absent0 = parent[0] - present[0];
  const std::uint64_t absent1 = parent[1] - present[1];
  const double n_present = static_cast<double>(present[0] + present[1]);
  const double n_absent = static_cast<double>(absent0 + absent1);
  const double children = (n_present * entropy(present[0], present[1]) + n_absent * entropy(absent0, absent1)) /
                          static_cast<double>(n);
  return entropy(parent[0], parent[1]) - children;
}

HoeffdingTree::HoeffdingTree(HoeffdingTreeParams params) : params_(params), nodes_(1) {}

std::size_t HoeffdingTree::leaf_for(const FeatureVector& x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const Node& node = nodes_[i];
    i = static_cast<std::size_t>(x.contains(static_cast<FeatureIndex>(node.feature)) ? node.present : node.absent);
  }
  return i;
}

Prediction HoeffdingTree::predict(const FeatureVector& x) const {
  const Node& leaf = nodes_[leaf_for(x)];
  const std::uint64_t total = leaf.total();
  if (total == 0) return {Label::benign, 0.5};
  const Label label = leaf.counts[1] > leaf.counts[0] ? Label::malware : Label::benign;
  return {label, static_cast<double>(leaf.counts[to_int(label)]) / static_cast<double>(total)};
}

void HoeffdingTree::learn(const FeatureVector& x, Label y) {
  const std::size_t i = leaf_for(x);
  Node& leaf = nodes_[i];
  const int c = to_int(y);
  ++leaf.counts[c];
  for (FeatureIndex j : x.active()) ++leaf.active_counts[j][c];
  if (leaf.total() - leaf.seen_at_last_attempt >= params_.grace_period) {
    leaf.seen_at_last_attempt = leaf.total();
    attempt_split(i);
  }
}

void HoeffdingTree::attempt_split(std::size_t leaf_index) {
  const Node& leaf = nodes_[leaf_index];
  if (leaf.counts[0] == 0 || leaf.counts[1] == 0) return;

  // Null split (gain 0) is always a candidate, so second_gain starts at 0.
  double best_gain = 0.0;
  double second_gain = 0.0;
  std::int64_t best_feature = -1;
  for (const auto& [j, present] : leaf.active_counts) {
    double g = binary_split_gain(leaf.counts, present);
    const bool better = g > best_gain || (g == best_gain && best_feature >= 0 && j < best_feature);
    if (better) {
      second_gain = std::max(second_gain, best_gain);
      best_gain = g;
      best_feature = j;
    } else if (g > second_gain) {
      second_gain = g;
    }
  }
  if (best_feature < 0 || best_gain <= 0.0) return;

  const std::uint64_t n = leaf.total();
  const double eps = hoeffding_bound(1.0, params_.delta, n);
  if (!(best_gain - second_gain > eps || eps < params_.tie_threshold)) return;

  const ClassCounts present = leaf.active_counts.at(static_cast<FeatureIndex>(best_feature));
  Node absent_child;
  absent_child.counts = {leaf.counts[0] - present[0], leaf.counts[1] - present[1]};
  absent_child.seen_at_last_attempt = absent_child.total();
  Node present_child;
  present_child.counts = present;
  present_child.seen_at_last_attempt = present_child.total();

  splits_.push_back({static_cast<FeatureIndex>(best_feature), n, best_gain, second_gain, eps});
  const auto absent_index = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(std::move(absent_child));
  nodes_.push_back(std::move(present_child));
  Node& split = nodes_[leaf_index];
  split.feature = best_feature;
  split.absent = absent_index;
  split.present = absent_index + 1;
  split.active_counts.clear();
}

std::size_t HoeffdingTree::leaf_count() const {
  return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

void HoeffdingTree::save(std::ostream& out) const {
  detail::write_double(out, params_.delta, ' ');
  out << params_.grace_period << ' ';
  detail::write_double(out, params_.tie_threshold);
  out << nodes_.size() << '\n';
  for (const Node& node : nodes_) {
    out << node.feature << ' ' << node.absent << ' ' << node.present << ' ' << node.counts[0] << ' '
        << node.counts[1] << ' ' << node.seen_at_last_attempt << ' ' << node.active_counts.size();
    std::vector<FeatureIndex> keys;
    keys.reserve(node.active_counts.size());
    for (const auto& kv : node.active_counts) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (FeatureIndex j : keys) {
      const auto& c = node.active_counts.at(j);
      out << ' ' << j << ' ' << c[0] << ' ' << c[1];
    }
    out << '\n';
  }
  out << splits_.size() << '\n';
  for (const auto& s : splits_) {
    out << s.feature << ' ' << s.n << ' ';
    detail::write_double(out, s.best_gain, ' ');
    detail::write_double(out, s.second_gain, ' ');
    detail::write_double(out, s.epsilon);
  }
}

HoeffdingTree HoeffdingTree::load(std::istream& in) {
  HoeffdingTreeParams p;
  p.delta = detail::read_double(in);
  p.grace_period = detail::read_size(in);
  p.tie_threshold = detail::read_double(in);
  HoeffdingTree tree(p);
  tree.nodes_.resize(detail::read_size(in));
  for (Node& node : tree.nodes_) {
    in >> node.feature >> node.absent >> node.present >> node.counts[0] >> node.counts[1] >>
        node.seen_at_last_attempt;
    std::size_t n = detail::read_size(in);
    for (std::size_t i = 0; i < n; ++i) {
      FeatureIndex j = 0;
      ClassCounts c{};
      in >> j >> c[0] >> c[1];
      node.active_counts[j] = c;
    }
  }
  std::size_t n_splits = detail::read_size(in);
  for (std::size_t i = 0; i < n_splits; ++i) {
    SplitRecord s{};
    in >> s.feature >> s.n;
    s.best_gain = detail::read_double(in);
    s.second_gain = detail::read_double(in);
    s.epsilon = detail::read_double(in);
    tree.splits_.push_back(s);
  }
  if (!in) throw std::runtime_error("truncated tree snapshot");
  return tree;
}

HoeffdingTreeLearner::HoeffdingTreeLearner(const LearnerConfig& config, std::size_t dim)
    : Learner(config, dim), tree_({config.delta_tree, config.grace_period, config.tie_threshold}) {}

}  // namespace actstream
