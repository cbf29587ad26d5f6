#pragma once

#include <cstdint>
#include <vector>

#include "inflnet/data/dataset.hpp"
#include "inflnet/models/network.hpp"

namespace inflnet::models {

struct InternalMemory {
  std::vector<Index> origins;   // panel row t of each window t-L+1..t
  Matrix memory;                // p x windows
  Vector reference;             // inflation series the components are compared with
  Vector correlations;          // one per memory component
};

// Trailing `window`-month inflation sum_{j<window} pi_{t-j} in raw log
// units; NaN where the window does not fit.
Vector trailing_inflation(const data::PreparedDataset& ds, Index window = 12);

// Runs the cell over every window t = L-1 .. T'-1-h from a zero state and
// correlates each memory component with the trailing 12-month inflation rate
// at the same date.
InternalMemory extract_internal_memory(const Network& net, const Vector& params, const data::PreparedDataset& ds,
                                       Index horizon);

double pearson(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b);

struct Candidate {
  std::uint64_t seed = 0;
  double validation_rmse = 0.0;
};

// Index of the candidate with the lowest validation RMSE; ties go to the
// lowest seed.
std::size_t select_by_validation(const std::vector<Candidate>& candidates);

}  // namespace inflnet::models
