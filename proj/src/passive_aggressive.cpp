#include "actstream/passive_aggressive.hpp"

#include <algorithm>
#include <cmath>

#include "serialization.hpp"

namespace actstream {

PassiveAggressive::PassiveAggressive(const LearnerConfig& config, std::size_t dim)
    : Learner(config, dim), weights_(dim, 0.0) {}

double PassiveAggressive::margin(const FeatureVector& x) const {
  double m = bias_;
  for (FeatureIndex j : x.active()) m += weights_[j];
  return m;
}

double PassiveAggressive::confidence_from_margin(double m) {
  // 2 * (1 / (1 + e^-|m|) - 0.5) == tanh(|m| / 2)
  return std::tanh(std::abs(m) / 2.0);
}

Prediction PassiveAggressive::do_predict(const FeatureVector& x) const {
  double m = margin(x);
  return {m > 0.0 ? Label::malware : Label::benign, confidence_from_margin(m)};
}

void PassiveAggressive::do_learn(const FeatureVector& x, Label y) {
  const double sign = y == Label::malware ? 1.0 : -1.0;
  const double loss = std::max(0.0, 1.0 - sign * margin(x));
  if (loss == 0.0) return;
  const double tau = std::min(config().C, loss / (x.squared_norm() + 1.0));
  const double step = tau * sign;
  for (FeatureIndex j : x.active()) weights_[j] += step;
  bias_ += step;
}

void PassiveAggressive::save_state(std::ostream& out) const {
  detail::write_double(out, bias_);
  std::size_t nonzero = std::count_if(weights_.begin(), weights_.end(), [](double w) { return w != 0.0; });
  out << nonzero << '\n';
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (weights_[j] == 0.0) continue;
    out << j << ' ';
    detail::write_double(out, weights_[j]);
  }
}

void PassiveAggressive::load_state(std::istream& in) {
  bias_ = detail::read_double(in);
  std::size_t nonzero = detail::read_size(in);
  for (std::size_t i = 0; i < nonzero; ++i) {
    std::size_t j = detail::read_size(in);
    weights_.at(j) = detail::read_double(in);
  }
}

}  // namespace actstream
