#include "inflnet/eval/executor.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "inflnet/common.hpp"

namespace inflnet::eval {

std::size_t default_workers() {
  if (const char* env = std::getenv("INFLNET_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("INFLNET_WORKERS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<TaskFailure> parallel_for(std::size_t count, std::size_t workers,
                                      const std::function<void(std::size_t)>& task) {
  std::vector<TaskFailure> failures;
  std::mutex failures_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        task(i);
      } catch (const std::exception& e) {
        std::lock_guard lock(failures_mutex);
        failures.push_back({i, e.what()});
      } catch (...) {
        std::lock_guard lock(failures_mutex);
        failures.push_back({i, "unknown exception"});
      }
    }
  };
  const std::size_t n = std::min(std::max<std::size_t>(workers, 1), std::max<std::size_t>(count, 1));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n);
    for (std::size_t t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  std::sort(failures.begin(), failures.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  return failures;
}

void parallel_for_or_throw(std::size_t count, std::size_t workers, const std::function<void(std::size_t)>& task) {
  const auto failures = parallel_for(count, workers, task);
  if (!failures.empty()) {
    throw Error("task " + std::to_string(failures.front().index) + " failed: " + failures.front().message);
  }
}

}  // namespace inflnet::eval
