#include "actstream/adaptive_random_forest.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "serialization.hpp"

namespace actstream {

namespace {

std::size_t resolve_subspace(std::size_t requested, std::size_t dim) {
  std::size_t s = requested == 0 ? static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(dim))))
                                 : requested;
  return std::clamp<std::size_t>(s, 1, dim);
}

void learn_weighted(AdaptiveRandomForest::SubspaceTree& t, const FeatureVector& x, Label y, int weight) {
  if (weight <= 0) return;
  FeatureVector projected = x.project(t.subspace);
  for (int i = 0; i < weight; ++i) t.tree.learn(projected, y);
}

void save_subspace_tree(std::ostream& out, const AdaptiveRandomForest::SubspaceTree& t) {
  out << t.subspace.size();
  for (FeatureIndex j : t.subspace) out << ' ' << j;
  out << '\n';
  t.tree.save(out);
}

AdaptiveRandomForest::SubspaceTree load_subspace_tree(std::istream& in) {
  AdaptiveRandomForest::SubspaceTree t;
  std::size_t n = detail::read_size(in);
  t.subspace.resize(n);
  for (auto& j : t.subspace) in >> j;
  t.tree = HoeffdingTree::load(in);
  return t;
}

}  // namespace

AdaptiveRandomForest::AdaptiveRandomForest(const LearnerConfig& config, std::size_t dim)
    : Learner(config, dim), subspace_size_(resolve_subspace(config.subspace_size, dim)), rng_(config.rng_seed) {
  members_.reserve(config.n_trees);
  for (std::size_t i = 0; i < config.n_trees; ++i) {
    members_.push_back(Member{fresh_tree(), std::nullopt, Adwin(config.warning_delta), Adwin(config.drift_delta), 0});
  }
}

AdaptiveRandomForest::SubspaceTree AdaptiveRandomForest::fresh_tree() {
  // Floyd's algorithm: uniform sample of subspace_size_ indices without replacement.
  std::set<FeatureIndex> chosen;
  const std::size_t d = dim();
  for (std::size_t j = d - subspace_size_; j < d; ++j) {
    std::uniform_int_distribution<std::size_t> pick(0, j);
    auto t = static_cast<FeatureIndex>(pick(rng_));
    if (!chosen.insert(t).second) chosen.insert(static_cast<FeatureIndex>(j));
  }
  const auto& c = config();
  return SubspaceTree{{chosen.begin(), chosen.end()}, HoeffdingTree({c.delta_tree, c.grace_period, c.tie_threshold})};
}

std::size_t AdaptiveRandomForest::total_replacements() const {
  std::size_t n = 0;
  for (const auto& m : members_) n += m.replacements;
  return n;
}

Prediction AdaptiveRandomForest::do_predict(const FeatureVector& x) const {
  bool all_blank = true;
  std::size_t malware_votes = 0;
  for (const auto& m : members_) {
    all_blank = all_blank && m.active.tree.empty();
    if (m.active.tree.predict(x).label == Label::malware) ++malware_votes;
  }
  if (all_blank) return {Label::benign, 0.5};
  const std::size_t n = members_.size();
  const std::size_t benign_votes = n - malware_votes;
  const Label label = malware_votes > benign_votes ? Label::malware : Label::benign;
  const std::size_t agree = label == Label::malware ? malware_votes : benign_votes;
  return {label, static_cast<double>(agree) / static_cast<double>(n)};
}

void AdaptiveRandomForest::do_learn(const FeatureVector& x, Label y) {
  std::poisson_distribution<int> poisson(config().lambda_poisson);
  for (auto& m : members_) {
    const double error = m.active.tree.predict(x).label == y ? 0.0 : 1.0;
    const int weight = poisson(rng_);
    learn_weighted(m.active, x, y, weight);
    if (m.background) learn_weighted(*m.background, x, y, weight);

    if (m.warning.insert(error).drift) {
      m.background = fresh_tree();
      m.warning.reset();
    }
    if (m.drift.insert(error).drift) {
      m.active = m.background ? std::move(*m.background) : fresh_tree();
      m.background.reset();
      m.warning.reset();
      m.drift.reset();
      ++m.replacements;
    }
  }
}

void AdaptiveRandomForest::save_state(std::ostream& out) const {
  out << subspace_size_ << '\n';
  detail::write_rng(out, rng_);
  out << members_.size() << '\n';
  for (const auto& m : members_) {
    out << m.replacements << ' ' << (m.background ? 1 : 0) << '\n';
    save_subspace_tree(out, m.active);
    if (m.background) save_subspace_tree(out, *m.background);
    m.warning.save(out);
    out << '\n';
    m.drift.save(out);
    out << '\n';
  }
}

void AdaptiveRandomForest::load_state(std::istream& in) {
  subspace_size_ = detail::read_size(in);
  detail::read_rng(in, rng_);
  std::size_t n = detail::read_size(in);
  members_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    Member m{SubspaceTree{{}, HoeffdingTree()}, std::nullopt, Adwin(), Adwin(), 0};
    m.replacements = detail::read_size(in);
    bool has_background = detail::read_size(in) != 0;
    m.active = load_subspace_tree(in);
    if (has_background) m.background = load_subspace_tree(in);
    m.warning = Adwin::load(in);
    m.drift = Adwin::load(in);
    members_.push_back(std::move(m));
  }
}

}  // namespace actstream
