#include "actstream/knn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "serialization.hpp"

namespace actstream {

KNearestNeighbours::KNearestNeighbours(const LearnerConfig& config, std::size_t dim) : Learner(config, dim) {}

Prediction KNearestNeighbours::do_predict(const FeatureVector& x) const {
  if (window_.empty()) return {Label::benign, 0.0};

  struct Candidate {
    std::size_t sq_dist;
    std::uint64_t seq;
    Label y;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(window_.size());
  for (const auto& s : window_) candidates.push_back({x.squared_distance(s.x), s.seq, s.y});

  const std::size_t k = std::min(config().k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k), candidates.end(),
                    [](const Candidate& a, const Candidate& b) {
                      return a.sq_dist != b.sq_dist ? a.sq_dist < b.sq_dist : a.seq > b.seq;
                    });

  std::size_t votes[2] = {0, 0};
  double distance_sum[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < k; ++i) {
    const int c = to_int(candidates[i].y);
    ++votes[c];
    distance_sum[c] += std::sqrt(static_cast<double>(candidates[i].sq_dist));
  }
  Label label = Label::benign;
  if (votes[1] > votes[0] || (votes[1] == votes[0] && distance_sum[1] < distance_sum[0])) label = Label::malware;
  return {label, static_cast<double>(votes[to_int(label)]) / static_cast<double>(k)};
}

void KNearestNeighbours::do_learn(const FeatureVector& x, Label y) {
  window_.push_back({x, y, next_seq_++});
  while (window_.size() > config().knn_window) window_.pop_front();
}

void KNearestNeighbours::save_state(std::ostream& out) const {
  out << next_seq_ << ' ' << window_.size() << '\n';
  for (const auto& s : window_) {
    out << s.seq << ' ' << to_int(s.y) << ' ' << s.x.nnz();
    for (FeatureIndex j : s.x.active()) out << ' ' << j;
    out << '\n';
  }
}

void KNearestNeighbours::load_state(std::istream& in) {
  next_seq_ = detail::read_size(in);
  std::size_t n = detail::read_size(in);
  window_.clear();
  for (std::size_t i = 0; i < n; ++i) {
    Stored s{};
    int y = 0;
    std::size_t nnz = 0;
    in >> s.seq >> y >> nnz;
    std::vector<FeatureIndex> active(nnz);
    for (auto& j : active) in >> j;
    if (!in) throw std::runtime_error("truncated knn snapshot");
    s.y = label_from_int(y);
    s.x = FeatureVector(dim(), std::move(active));
    window_.push_back(std::move(s));
  }
}

}  // namespace actstream
