#include "actstream/feature_vector.hpp"

#include <algorithm>

namespace actstream {

Label label_from_int(int v) {
  if (v != 0 && v != 1) throw std::invalid_argument("label must be 0 or 1, got " + std::to_string(v));
  return static_cast<Label>(v);
}

FeatureVector::FeatureVector(std::size_t dim, std::vector<FeatureIndex> active)
    : dim_(dim), active_(std::move(active)) {
  if (dim_ == 0) throw std::invalid_argument("feature dimensionality must be positive");
  for (std::size_t i = 0; i < active_.size(); ++i) {
    if (active_[i] >= dim_)
      throw std::invalid_argument("feature index " + std::to_string(active_[i]) +
                                  " out of range for dim " + std::to_string(dim_));
    if (i > 0 && active_[i] <= active_[i - 1])
      throw std::invalid_argument("feature indices must be strictly increasing");
  }
}

bool FeatureVector::contains(FeatureIndex j) const {
  return std::binary_search(active_.begin(), active_.end(), j);
}

std::size_t FeatureVector::overlap(const FeatureVector& other) const {
  std::size_t n = 0;
  auto a = active_.begin();
  auto b = other.active_.begin();
  while (a != active_.end() && b != other.active_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++n;
      ++a;
      ++b;
    }
  }
  return n;
}

std::size_t FeatureVector::squared_distance(const FeatureVector& other) const {
  return active_.size() + other.active_.size() - 2 * overlap(other);
}

FeatureVector FeatureVector::project(std::span<const FeatureIndex> subspace) const {
  FeatureVector out;
  out.dim_ = dim_;
  for (FeatureIndex j : active_) {
    if (std::binary_search(subspace.begin(), subspace.end(), j)) out.active_.push_back(j);
  }
  return out;
}

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t got)
    : std::invalid_argument("dimensionality mismatch: expected " + std::to_string(expected) +
                            ", got " + std::to_string(got)) {}

}  // namespace actstream
