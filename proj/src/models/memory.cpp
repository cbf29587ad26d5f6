#include "inflnet/models/memory.hpp"

#include <cmath>
#include <limits>

#include "inflnet/data/supervised.hpp"

namespace inflnet::models {

Vector trailing_inflation(const data::PreparedDataset& ds, Index window) {
  if (window < 1) throw ValidationError("inflation window must be positive");
  const Index T = ds.target.size();
  Vector out = Vector::Constant(T, std::numeric_limits<double>::quiet_NaN());
  for (Index t = window - 1; t < T; ++t) out(t) = ds.target.segment(t - window + 1, window).sum();
  return out;
}

double pearson(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  if (a.size() != b.size() || a.size() < 2) throw ShapeError("correlation needs two aligned series of length >= 2");
  const Vector da = a.array() - a.mean();
  const Vector db = b.array() - b.mean();
  const double denom = std::sqrt(da.squaredNorm() * db.squaredNorm());
  if (denom == 0.0) return 0.0;
  return da.dot(db) / denom;
}

InternalMemory extract_internal_memory(const Network& net, const Vector& params, const data::PreparedDataset& ds,
                                       Index horizon) {
  if (!has_lstm(net.spec().kind)) {
    throw ValidationError(std::string(kind_name(net.spec().kind)) + " has no internal memory");
  }
  const auto set = data::build_supervised(ds, net.spec().predictors(), horizon);
  InternalMemory out;
  out.origins = set.origins;
  out.memory = net.memory(params, set.inputs).transpose();

  const Vector trailing = trailing_inflation(ds, 12);
  out.reference.resize(set.rows());
  for (Index r = 0; r < set.rows(); ++r) out.reference(r) = trailing(set.origins[static_cast<std::size_t>(r)]);

  std::vector<Index> keep;
  for (Index r = 0; r < set.rows(); ++r) {
    if (std::isfinite(out.reference(r))) keep.push_back(r);
  }
  out.correlations = Vector::Zero(out.memory.rows());
  if (keep.size() >= 2) {
    const Vector ref = out.reference(keep);
    for (Index j = 0; j < out.memory.rows(); ++j) {
      const Vector comp = out.memory.row(j).transpose()(keep);
      out.correlations(j) = pearson(comp, ref);
    }
  }
  return out;
}

std::size_t select_by_validation(const std::vector<Candidate>& candidates) {
  if (candidates.empty()) throw ValidationError("model selection needs at least one trained instance");
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    const auto& b = candidates[best];
    if (c.validation_rmse < b.validation_rmse || (c.validation_rmse == b.validation_rmse && c.seed < b.seed)) best = i;
  }
  return best;
}

}  // namespace inflnet::models
