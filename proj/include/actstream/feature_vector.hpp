#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace actstream {

using FeatureIndex = std::uint32_t;

enum class Label : std::uint8_t { benign = 0, malware = 1 };

inline int to_int(Label y) { return static_cast<int>(y); }
Label label_from_int(int v);

/// Sparse binary feature vector: the sorted list of active feature indices.
class FeatureVector {
 public:
  FeatureVector() = default;

  /// Throws std::invalid_argument unless indices are strictly increasing and < dim.
  FeatureVector(std::size_t dim, std::vector<FeatureIndex> active);

  std::size_t dim() const { return dim_; }
  std::span<const FeatureIndex> active() const { return active_; }
  std::size_t nnz() const { return active_.size(); }
  /// Binary features, so this is also the number of active indices.
  double squared_norm() const { return static_cast<double>(active_.size()); }
  bool contains(FeatureIndex j) const;

  /// Size of the intersection of two active sets (linear merge).
  std::size_t overlap(const FeatureVector& other) const;
  /// Squared Euclidean distance between two binary vectors.
  std::size_t squared_distance(const FeatureVector& other) const;

  /// Keeps only indices present in `subspace` (sorted ascending).
  FeatureVector project(std::span<const FeatureIndex> subspace) const;

  bool operator==(const FeatureVector&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<FeatureIndex> active_;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got);
};

inline void check_dim(std::size_t expected, const FeatureVector& x) {
  if (x.dim() != expected) throw DimensionMismatch(expected, x.dim());
}

}  // namespace actstream
