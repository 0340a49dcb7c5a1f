#pragma once

#include <cstddef>
#include <deque>
#include <iosfwd>
#include <vector>

namespace actstream {

/// Threshold on |mean(W0) - mean(W1)| for sub-windows of sizes n0 and n1:
/// sqrt(ln(4/delta_prime) / (2m)) with m = 1 / (1/n0 + 1/n1).
double epsilon_cut(double n0, double n1, double delta_prime);

struct AdwinResult {
  bool drift = false;
  std::size_t n_drops = 0;
};

/// Adaptive sliding window over values in [0, 1], stored as an exponential histogram.
class Adwin {
 public:
  static constexpr std::size_t kMaxBucketsPerRow = 5;

  struct Bucket {
    double sum = 0.0;
    double variance = 0.0;  // sum of squared deviations inside the bucket
    std::size_t count = 0;
    bool operator==(const Bucket&) const = default;
  };

  explicit Adwin(double delta = 0.002);

  /// Throws std::invalid_argument when x is outside [0, 1].
  AdwinResult insert(double x);

  double mean() const { return width_ == 0 ? 0.0 : total_ / static_cast<double>(width_); }
  std::size_t width() const { return width_; }
  double total() const { return total_; }
  double delta() const { return delta_; }
  void reset() { *this = Adwin(delta_); }

  /// Row i holds buckets of capacity 2^i, oldest first.
  const std::vector<std::deque<Bucket>>& rows() const { return rows_; }
  std::size_t bucket_count() const;

  void save(std::ostream& out) const;
  static Adwin load(std::istream& in);

  bool operator==(const Adwin&) const = default;

 private:
  void compress();
  bool drop_oldest_if_cut();

  double delta_;
  std::vector<std::deque<Bucket>> rows_;
  std::size_t width_ = 0;
  double total_ = 0.0;
};

}  // namespace actstream
