#pragma once

#include <string_view>
#include <vector>

#include "inflnet/common.hpp"
#include "inflnet/data/dataset.hpp"

namespace inflnet::data {

enum class PredictorChoice { CpiOnly, Pool, All, Composite };

std::string_view predictor_label(PredictorChoice choice);

struct PredictorSpec {
  PredictorChoice choice = PredictorChoice::CpiOnly;
  Index lags = 1;    // every block; for Composite, the z block
  Index lags_w = 0;  // Composite only: lags of the w block
};

// One contiguous group of columns in a flattened input row. Lag 0 (the
// origin) comes first, then lag 1, and so on; within a lag the panel columns
// keep the order of `columns`.
struct InputBlock {
  std::vector<Index> columns;
  Index lags = 0;
  Index offset = 0;

  Index width() const { return static_cast<Index>(columns.size()); }
  Index size() const { return width() * lags; }
  Index position(Index lag, Index k) const { return offset + lag * width() + k; }
};

struct InputLayout {
  std::vector<InputBlock> blocks;

  Index width() const;
  Index max_lags() const;
  // Positions in the flat row holding panel column `column`, one per lag.
  std::vector<Index> positions(Index column) const;
  bool uses(Index column) const;
  std::vector<Index> columns() const;
};

InputLayout make_layout(const PreparedDataset& ds, const PredictorSpec& spec);

struct SupervisedSet {
  Matrix inputs;               // rows x width
  Vector targets;              // in model units (see TargetScaling)
  std::vector<Index> origins;  // panel row of each x_t
  Index horizon = 1;
  InputLayout layout;

  Index rows() const { return inputs.rows(); }
  Index width() const { return inputs.cols(); }
  SupervisedSet subset(Index begin, Index end) const;
};

// Every usable origin t (enough history, target t + h inside the panel).
SupervisedSet build_supervised(const PreparedDataset& ds, const PredictorSpec& spec, Index horizon);

// Origins restricted to [first_origin, last_origin].
SupervisedSet build_supervised(const PreparedDataset& ds, const PredictorSpec& spec, Index horizon,
                               Index first_origin, Index last_origin);

// A single flattened row at origin t. Reads panel rows t - lags + 1 .. t only.
Vector input_row(const Matrix& panel, const InputLayout& layout, Index origin);

}  // namespace inflnet::data
