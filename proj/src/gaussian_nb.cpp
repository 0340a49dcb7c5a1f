#include "actstream/gaussian_nb.hpp"

#include <cmath>
#include <numbers>

#include "serialization.hpp"

namespace actstream {

GaussianNaiveBayes::GaussianNaiveBayes(const LearnerConfig& config, std::size_t dim) : Learner(config, dim) {
  for (auto& s : classes_) s.active.assign(dim, 0);
}

double GaussianNaiveBayes::mean(Label c, FeatureIndex j) const {
  const auto& s = classes_[to_int(c)];
  return s.n == 0 ? 0.0 : static_cast<double>(s.active.at(j)) / static_cast<double>(s.n);
}

double GaussianNaiveBayes::variance(Label c, FeatureIndex j) const {
  const auto& s = classes_[to_int(c)];
  if (s.n == 0) return 0.0;
  const double n = static_cast<double>(s.n);
  const double k = static_cast<double>(s.active.at(j));
  return k * (n - k) / (n * n);
}

double GaussianNaiveBayes::log_density(const ClassStats& s, FeatureIndex j, double x) const {
  const double n = static_cast<double>(s.n);
  const double k = static_cast<double>(s.active[j]);
  const double mu = k / n;
  const double var = k * (n - k) / (n * n) + config().var_smoothing;
  const double diff = x - mu;
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - diff * diff / (2.0 * var);
}

double GaussianNaiveBayes::zero_log_density(const ClassStats& s) const {
  if (!s.dirty) return s.zero_log_density;
  // Features never active in the class have mean 0 and variance var_smoothing.
  const double unseen = -0.5 * std::log(2.0 * std::numbers::pi * config().var_smoothing);
  double total = unseen * static_cast<double>(dim() - s.support.size());
  for (FeatureIndex j : s.support) total += log_density(s, j, 0.0);
  s.zero_log_density = total;
  s.dirty = false;
  return total;
}

double GaussianNaiveBayes::log_joint(Label c, const FeatureVector& x) const {
  const auto& s = classes_[to_int(c)];
  const double total_n = static_cast<double>(classes_[0].n + classes_[1].n);
  double lj = std::log(static_cast<double>(s.n) / total_n) + zero_log_density(s);
  for (FeatureIndex j : x.active()) lj += log_density(s, j, 1.0) - log_density(s, j, 0.0);
  return lj;
}

Prediction GaussianNaiveBayes::do_predict(const FeatureVector& x) const {
  const bool has0 = classes_[0].n > 0;
  const bool has1 = classes_[1].n > 0;
  if (!has0 && !has1) return {Label::benign, 0.5};
  if (!has1) return {Label::benign, 1.0};
  if (!has0) return {Label::malware, 1.0};
  const double l0 = log_joint(Label::benign, x);
  const double l1 = log_joint(Label::malware, x);
  // P(malware | x) = 1 / (1 + exp(l0 - l1))
  const double p1 = 1.0 / (1.0 + std::exp(l0 - l1));
  if (p1 > 0.5) return {Label::malware, p1};
  return {Label::benign, 1.0 - p1};
}

void GaussianNaiveBayes::do_learn(const FeatureVector& x, Label y) {
  auto& s = classes_[to_int(y)];
  ++s.n;
  for (FeatureIndex j : x.active()) {
    if (s.active[j]++ == 0) s.support.push_back(j);
  }
  s.dirty = true;
}

void GaussianNaiveBayes::save_state(std::ostream& out) const {
  for (const auto& s : classes_) {
    out << s.n << ' ' << s.support.size();
    for (FeatureIndex j : s.support) out << ' ' << j << ' ' << s.active[j];
    out << '\n';
  }
}

void GaussianNaiveBayes::load_state(std::istream& in) {
  for (auto& s : classes_) {
    s.n = detail::read_size(in);
    std::size_t m = detail::read_size(in);
    s.support.clear();
    for (std::size_t i = 0; i < m; ++i) {
      FeatureIndex j = static_cast<FeatureIndex>(detail::read_size(in));
      s.active.at(j) = static_cast<std::uint32_t>(detail::read_size(in));
      s.support.push_back(j);
    }
    s.dirty = true;
  }
}

}  // namespace actstream
