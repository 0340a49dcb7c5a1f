#include "actstream/adwin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "serialization.hpp"

namespace actstream {

double epsilon_cut(double n0, double n1, double delta_prime) {
  if (!(n0 >= 1.0) || !(n1 >= 1.0)) throw std::invalid_argument("epsilon_cut: sub-window sizes must be >= 1");
  if (!(delta_prime > 0.0 && delta_prime < 1.0)) throw std::invalid_argument("epsilon_cut: delta' must lie in (0, 1)");
  double m = 1.0 / (1.0 / n0 + 1.0 / n1);
  return std::sqrt(std::log(4.0 / delta_prime) / (2.0 * m));
}

Adwin::Adwin(double delta) : delta_(delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("ADWIN delta must lie in (0, 1)");
}

std::size_t Adwin::bucket_count() const {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.size();
  return n;
}

AdwinResult Adwin::insert(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("ADWIN input must lie in [0, 1]");
  if (rows_.empty()) rows_.emplace_back();
  rows_[0].push_back(Bucket{x, 0.0, 1});
  ++width_;
  total_ += x;
  compress();

  AdwinResult result;
  while (drop_oldest_if_cut()) ++result.n_drops;
  result.drift = result.n_drops > 0;
  return result;
}

void Adwin::compress() {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() <= kMaxBucketsPerRow) break;
    Bucket a = rows_[r].front();
    rows_[r].pop_front();
    Bucket b = rows_[r].front();
    rows_[r].pop_front();
    double na = static_cast<double>(a.count);
    double nb = static_cast<double>(b.count);
    double diff = a.sum / na - b.sum / nb;
    Bucket merged{a.sum + b.sum, a.variance + b.variance + na * nb / (na + nb) * diff * diff, a.count + b.count};
    if (r + 1 == rows_.size()) rows_.emplace_back();
    rows_[r + 1].push_back(merged);
  }
}

// Scans cut points from the oldest end; drops the oldest bucket when any cut fires.
bool Adwin::drop_oldest_if_cut() {
  if (bucket_count() < 2) return false;
  const double delta_prime = delta_ / static_cast<double>(width_);
  std::size_t n0 = 0;
  double sum0 = 0.0;
  std::size_t seen = 0;
  const std::size_t total_buckets = bucket_count();
  bool cut = false;
  for (std::size_t r = rows_.size(); r-- > 0 && !cut;) {
    for (const Bucket& b : rows_[r]) {
      n0 += b.count;
      sum0 += b.sum;
      if (++seen == total_buckets) break;
      std::size_t n1 = width_ - n0;
      double mu0 = sum0 / static_cast<double>(n0);
      double mu1 = (total_ - sum0) / static_cast<double>(n1);
      if (std::abs(mu0 - mu1) > epsilon_cut(static_cast<double>(n0), static_cast<double>(n1), delta_prime)) {
        cut = true;
        break;
      }
    }
  }
  if (!cut) return false;

  auto& oldest_row = rows_.back();
  const Bucket& oldest = oldest_row.front();
  width_ -= oldest.count;
  total_ -= oldest.sum;
  oldest_row.pop_front();
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
  if (width_ == 0) total_ = 0.0;
  return true;
}

void Adwin::save(std::ostream& out) const {
  detail::write_double(out, delta_);
  out << rows_.size() << '\n';
  for (const auto& row : rows_) {
    out << row.size();
    for (const auto& b : row) {
      out << ' ';
      detail::write_double(out, b.sum, ' ');
      detail::write_double(out, b.variance, ' ');
      out << b.count;
    }
    out << '\n';
  }
  out << width_ << ' ';
  detail::write_double(out, total_);
}

Adwin Adwin::load(std::istream& in) {
  Adwin a(detail::read_double(in));
  std::size_t n_rows = detail::read_size(in);
  a.rows_.resize(n_rows);
  for (auto& row : a.rows_) {
    std::size_t n = detail::read_size(in);
    for (std::size_t i = 0; i < n; ++i) {
      Bucket b;
      b.sum = detail::read_double(in);
      b.variance = detail::read_double(in);
      b.count = detail::read_size(in);
      row.push_back(b);
    }
  }
  a.width_ = detail::read_size(in);
  a.total_ = detail::read_double(in);
  return a;
}

}  // namespace actstream
