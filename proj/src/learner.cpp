#include "actstream/learner.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "actstream/adaptive_random_forest.hpp"
#include "actstream/gaussian_nb.hpp"
#include "actstream/hoeffding_tree.hpp"
#include "actstream/knn.hpp"
#include "actstream/passive_aggressive.hpp"
#include "serialization.hpp"

namespace actstream {

namespace {

constexpr const char* kSnapshotMagic = "actstream-model";
constexpr int kSnapshotVersion = 1;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::pa: return "pa";
    case ModelKind::htree: return "htree";
    case ModelKind::arf: return "arf";
    case ModelKind::knn: return "knn";
    case ModelKind::gnb: return "gnb";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  for (ModelKind k : {ModelKind::pa, ModelKind::htree, ModelKind::arf, ModelKind::knn, ModelKind::gnb}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown model '" + name + "' (expected pa, htree, arf, knn or gnb)");
}

void LearnerConfig::validate() const {
  require(C > 0.0, "C must be positive");
  require(delta_tree > 0.0 && delta_tree < 1.0, "delta_tree must lie in (0, 1)");
  require(grace_period >= 1, "grace_period must be >= 1");
  require(tie_threshold >= 0.0, "tie_threshold must be non-negative");
  require(n_trees >= 1, "n_trees must be >= 1");
  require(lambda_poisson > 0.0, "lambda_poisson must be positive");
  require(warning_delta > 0.0 && warning_delta < 1.0, "warning_delta must lie in (0, 1)");
  require(drift_delta > 0.0 && drift_delta < 1.0, "drift_delta must lie in (0, 1)");
  require(k >= 1, "k must be >= 1");
  require(k <= knn_window, "k must not exceed knn_window");
  require(var_smoothing > 0.0, "var_smoothing must be positive");
}

Learner::Learner(const LearnerConfig& config, std::size_t dim) : config_(config), dim_(dim) {
  config_.validate();
  if (dim_ == 0) throw std::invalid_argument("learner dimensionality must be positive");
}

void Learner::save(std::ostream& out) const {
  const auto& c = config_;
  out << kSnapshotMagic << ' ' << kSnapshotVersion << '\n';
  out << to_string(c.model) << ' ' << dim_ << '\n';
  detail::write_double(out, c.C, ' ');
  detail::write_double(out, c.delta_tree, ' ');
  out << c.grace_period << ' ';
  detail::write_double(out, c.tie_threshold, ' ');
  out << c.n_trees << ' ';
  detail::write_double(out, c.lambda_poisson, ' ');
  out << c.subspace_size << ' ';
  detail::write_double(out, c.warning_delta, ' ');
  detail::write_double(out, c.drift_delta, ' ');
  out << c.k << ' ' << c.knn_window << ' ';
  detail::write_double(out, c.var_smoothing, ' ');
  out << c.rng_seed << '\n';
  save_state(out);
}

std::string Learner::snapshot() const {
  std::ostringstream out;
  save(out);
  return out.str();
}

std::uint64_t Learner::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : snapshot()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::unique_ptr<Learner> make_learner(const LearnerConfig& config, std::size_t dim) {
  switch (config.model) {
    case ModelKind::pa: return std::make_unique<PassiveAggressive>(config, dim);
    case ModelKind::htree: return std::make_unique<HoeffdingTreeLearner>(config, dim);
    case ModelKind::arf: return std::make_unique<AdaptiveRandomForest>(config, dim);
    case ModelKind::knn: return std::make_unique<KNearestNeighbours>(config, dim);
    case ModelKind::gnb: return std::make_unique<GaussianNaiveBayes>(config, dim);
  }
  throw std::invalid_argument("unknown model kind");
}

std::unique_ptr<Learner> load_learner(std::istream& in) {
  detail::expect(in, kSnapshotMagic);
  if (detail::read_size(in) != kSnapshotVersion) throw std::runtime_error("unsupported model snapshot version");
  LearnerConfig c;
  c.model = parse_model_kind(detail::read_token(in));
  std::size_t dim = detail::read_size(in);
  c.C = detail::read_double(in);
  c.delta_tree = detail::read_double(in);
  c.grace_period = detail::read_size(in);
  c.tie_threshold = detail::read_double(in);
  c.n_trees = detail::read_size(in);
  c.lambda_poisson = detail::read_double(in);
  c.subspace_size = detail::read_size(in);
  c.warning_delta = detail::read_double(in);
  c.drift_delta = detail::read_double(in);
  c.k = detail::read_size(in);
  c.knn_window = detail::read_size(in);
  c.var_smoothing = detail::read_double(in);
  c.rng_seed = detail::read_size(in);
  auto learner = make_learner(c, dim);
  learner->load_state(in);
  return learner;
}

double hoeffding_bound(double range, double delta, std::size_t n) {
  if (!(range > 0.0)) throw std::invalid_argument("hoeffding_bound: range must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("hoeffding_bound: delta must lie in (0, 1)");
  if (n == 0) throw std::invalid_argument("hoeffding_bound: n must be >= 1");
  return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace actstream
