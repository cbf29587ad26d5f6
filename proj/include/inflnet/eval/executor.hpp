#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <vector>

namespace inflnet::eval {

// Worker count from the INFLNET_WORKERS environment variable, else the
// hardware concurrency, else 1.
std::size_t default_workers();

struct TaskFailure {
  std::size_t index = 0;
  std::string message;
};

// Runs task(i) for i in [0, count) on up to `workers` threads pulling from a
// shared counter. Exceptions are caught per task and returned sorted by
// index; the remaining tasks still run.
std::vector<TaskFailure> parallel_for(std::size_t count, std::size_t workers,
                                      const std::function<void(std::size_t)>& task);

// Same, but rethrows the first failure (by index) after every task finished.
void parallel_for_or_throw(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task);

}  // namespace inflnet::eval
