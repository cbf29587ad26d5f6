#include "inflnet/eval/importance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace inflnet::eval {

std::vector<double> perturbation_gains(const BatchPredictor& predict, const Matrix& inputs,
                                       const data::InputLayout& layout, const std::vector<Index>& columns,
                                       const Vector& sd, const ImportanceOptions& options) {
  if (inputs.rows() == 0) throw ValidationError("importance needs at least one input row");
  const Vector base = predict(inputs);
  std::vector<double> gains;
  gains.reserve(columns.size());
  for (Index col : columns) {
    auto positions = layout.positions(col);
    if (positions.empty()) throw ValidationError("column " + std::to_string(col) + " is not an input of the model");
    if (options.last_lag_only) positions.resize(1);
    Matrix shocked = inputs;
    const double shift = options.shock_sd * sd(col);
    for (Index pos : positions) shocked.col(pos).array() += shift;
    const Vector moved = predict(shocked);
    gains.push_back((moved - base).squaredNorm() / static_cast<double>(base.size()));
  }
  return gains;
}

std::vector<data::EconomicGroup> ImportanceTable::ranking() const {
  std::vector<data::EconomicGroup> out;
  const auto all = data::all_groups();
  for (std::size_t g = 0; g < all.size(); ++g) {
    if (group_members[g] > 0) out.push_back(all[g]);
  }
  std::stable_sort(out.begin(), out.end(), [this](auto a, auto b) {
    return group_gains[static_cast<std::size_t>(a)] > group_gains[static_cast<std::size_t>(b)];
  });
  return out;
}

ImportanceTable variable_importance(const std::vector<TrainedModel>& members, const data::PreparedDataset& ds,
                                    Index horizon, const ImportanceOptions& options,
                                    std::optional<Index> first_target, std::optional<Index> end_target) {
  if (members.empty()) throw ValidationError("importance needs at least one trained member");
  const auto spec = members.front().net.spec();
  const auto layout = data::make_layout(ds, spec.predictors());
  const Index first = first_target.value_or(ds.splits.test_begin());
  const Index end = end_target.value_or(ds.splits.test_end);
  const auto set = data::build_supervised(ds, spec.predictors(), horizon, first - horizon, end - 1 - horizon);

  ImportanceTable table;
  table.horizon = horizon;
  if (options.variables.empty()) {
    table.columns = layout.columns();
  } else {
    for (const auto& name : options.variables) {
      const auto it = std::find(ds.names.begin(), ds.names.end(), name);
      if (it == ds.names.end()) throw ValidationError("unknown variable '" + name + "'");
      const Index col = it - ds.names.begin();
      if (!layout.uses(col)) throw ValidationError("variable '" + name + "' is not an input of " + spec.to_string());
      table.columns.push_back(col);
    }
  }

  const Index in_end = ds.splits.in_sample_end();
  Vector sd(ds.cols());
  for (Index j = 0; j < ds.cols(); ++j) {
    const auto col = ds.matrix.col(j).head(in_end);
    sd(j) = std::sqrt((col.array() - col.mean()).square().sum() / static_cast<double>(in_end - 1));
  }

  const auto scaling = ds.target_scaling;
  BatchPredictor predict = [&members, scaling](const Matrix& x) {
    Vector mean = Vector::Zero(x.rows());
    for (const auto& m : members) mean += m.net.predict(m.params, x);
    mean /= static_cast<double>(members.size());
    for (Index i = 0; i < mean.size(); ++i) mean(i) = scaling.from_model(mean(i));
    return mean;
  };
  table.gains = perturbation_gains(predict, set.inputs, layout, table.columns, sd, options);

  std::array<double, 8> sums{};
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    const Index col = table.columns[i];
    const auto group = ds.groups[static_cast<std::size_t>(col)];
    table.variables.push_back(ds.names[static_cast<std::size_t>(col)]);
    table.groups.push_back(group);
    sums[static_cast<std::size_t>(group)] += table.gains[i];
    table.group_members[static_cast<std::size_t>(group)] += 1;
  }
  for (std::size_t g = 0; g < 8; ++g) {
    table.group_gains[g] = table.group_members[g] > 0 ? sums[g] / static_cast<double>(table.group_members[g])
                                                      : std::numeric_limits<double>::quiet_NaN();
  }
  return table;
}

}  // namespace inflnet::eval
