#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "inflnet/data/dataset.hpp"
#include "inflnet/data/supervised.hpp"
#include "inflnet/eval/rolling.hpp"

namespace inflnet::eval {

struct ImportanceOptions {
  double shock_sd = 3.0;
  bool last_lag_only = false;  // shock only the most recent lag of the variable
  std::vector<std::string> variables;  // empty: every variable the model consumes
};

// Maps a batch of flattened input rows to predictions.
using BatchPredictor = std::function<Vector(const Matrix&)>;

// Gain of each panel column the layout uses: the mean squared deviation
// between predictions on inputs shifted by shock_sd * sd(column) and the
// baseline predictions. `sd` is indexed by panel column.
std::vector<double> perturbation_gains(const BatchPredictor& predict, const Matrix& inputs,
                                       const data::InputLayout& layout, const std::vector<Index>& columns,
                                       const Vector& sd, const ImportanceOptions& options = {});

struct ImportanceTable {
  Index horizon = 1;
  std::vector<Index> columns;
  std::vector<std::string> variables;
  std::vector<data::EconomicGroup> groups;
  std::vector<double> gains;
  std::array<double, 8> group_gains{};   // NaN for groups with no shocked member
  std::array<Index, 8> group_members{};

  // Groups ordered by decreasing gain, skipping empty ones.
  std::vector<data::EconomicGroup> ranking() const;
};

// Ensemble importance: members are averaged into one prediction series over
// the target rows [first_target, end_target) (default: the test window), and
// every variable the model consumes is shocked in turn. The shock size is the
// in-sample SD of the normalized column.
ImportanceTable variable_importance(const std::vector<TrainedModel>& members, const data::PreparedDataset& ds,
                                    Index horizon, const ImportanceOptions& options = {},
                                    std::optional<Index> first_target = std::nullopt,
                                    std::optional<Index> end_target = std::nullopt);

}  // namespace inflnet::eval
