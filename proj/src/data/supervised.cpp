#include "inflnet/data/supervised.hpp"

#include <algorithm>
#include <string>

namespace inflnet::data {

std::string_view predictor_label(PredictorChoice choice) {
  switch (choice) {
    case PredictorChoice::CpiOnly: return "cpi_only";
    case PredictorChoice::Pool: return "pool";
    case PredictorChoice::All: return "all";
    case PredictorChoice::Composite: return "composite";
  }
  return "?";
}

Index InputLayout::width() const {
  Index w = 0;
  for (const auto& b : blocks) w += b.size();
  return w;
}

Index InputLayout::max_lags() const {
  Index l = 0;
  for (const auto& b : blocks) l = std::max(l, b.lags);
  return l;
}

std::vector<Index> InputLayout::positions(Index column) const {
  std::vector<Index> out;
  for (const auto& b : blocks) {
    auto it = std::find(b.columns.begin(), b.columns.end(), column);
    if (it == b.columns.end()) continue;
    const auto k = static_cast<Index>(it - b.columns.begin());
    for (Index lag = 0; lag < b.lags; ++lag) out.push_back(b.position(lag, k));
  }
  return out;
}

bool InputLayout::uses(Index column) const {
  return std::any_of(blocks.begin(), blocks.end(), [column](const InputBlock& b) {
    return std::find(b.columns.begin(), b.columns.end(), column) != b.columns.end();
  });
}

std::vector<Index> InputLayout::columns() const {
  std::vector<Index> out;
  for (const auto& b : blocks) {
    for (Index c : b.columns) {
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  }
  return out;
}

InputLayout make_layout(const PreparedDataset& ds, const PredictorSpec& spec) {
  if (spec.lags < 1) throw ValidationError("lag depth must be at least 1");
  InputLayout layout;
  auto add = [&layout](const std::vector<Index>& cols, Index lags) {
    if (cols.empty()) throw ValidationError("predictor block has no columns");
    InputBlock b;
    b.columns = cols;
    b.lags = lags;
    b.offset = layout.width();
    layout.blocks.push_back(std::move(b));
  };
  switch (spec.choice) {
    case PredictorChoice::CpiOnly: add(ds.w_columns, spec.lags); break;
    case PredictorChoice::Pool: add(ds.z_columns, spec.lags); break;
    case PredictorChoice::All:
      add(ds.z_columns, spec.lags);
      add(ds.w_columns, spec.lags);
      break;
    case PredictorChoice::Composite:
      if (spec.lags_w < 1) throw ValidationError("composite predictors need a w-block lag depth");
      add(ds.z_columns, spec.lags);
      add(ds.w_columns, spec.lags_w);
      break;
  }
  return layout;
}

Vector input_row(const Matrix& panel, const InputLayout& layout, Index origin) {
  if (origin - layout.max_lags() + 1 < 0 || origin >= panel.rows()) {
    throw ValidationError("origin " + std::to_string(origin) + " lacks " + std::to_string(layout.max_lags()) +
                          " rows of history");
  }
  Vector x(layout.width());
  for (const auto& b : layout.blocks) {
    for (Index lag = 0; lag < b.lags; ++lag) {
      for (Index k = 0; k < b.width(); ++k) {
        x(b.position(lag, k)) = panel(origin - lag, b.columns[static_cast<std::size_t>(k)]);
      }
    }
  }
  return x;
}

SupervisedSet build_supervised(const PreparedDataset& ds, const PredictorSpec& spec, Index horizon,
                               Index first_origin, Index last_origin) {
  if (horizon < 1) throw ValidationError("horizon must be at least 1");
  SupervisedSet set;
  set.horizon = horizon;
  set.layout = make_layout(ds, spec);
  const Index min_origin = set.layout.max_lags() - 1;
  const Index max_origin = ds.rows() - 1 - horizon;
  first_origin = std::max(first_origin, min_origin);
  last_origin = std::min(last_origin, max_origin);
  if (last_origin < first_origin) {
    throw ValidationError("insufficient history: need " + std::to_string(set.layout.max_lags()) +
                          " lags and horizon " + std::to_string(horizon) + " within " + std::to_string(ds.rows()) +
                          " rows");
  }
  const Index n = last_origin - first_origin + 1;
  set.inputs.resize(n, set.layout.width());
  set.targets.resize(n);
  set.origins.resize(static_cast<std::size_t>(n));
  for (Index r = 0; r < n; ++r) {
    const Index t = first_origin + r;
    set.inputs.row(r) = input_row(ds.matrix, set.layout, t).transpose();
    set.targets(r) = ds.target_scaling.to_model(ds.target(t + horizon));
    set.origins[static_cast<std::size_t>(r)] = t;
  }
  return set;
}

SupervisedSet build_supervised(const PreparedDataset& ds, const PredictorSpec& spec, Index horizon) {
  return build_supervised(ds, spec, horizon, 0, ds.rows());
}

SupervisedSet SupervisedSet::subset(Index begin, Index end) const {
  SupervisedSet out;
  out.horizon = horizon;
  out.layout = layout;
  out.inputs = inputs.middleRows(begin, end - begin);
  out.targets = targets.segment(begin, end - begin);
  out.origins.assign(origins.begin() + begin, origins.begin() + end);
  return out;
}

}  // namespace inflnet::data
