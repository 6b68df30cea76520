#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "fracprop/error.hpp"
#include "fracprop/parallel.hpp"

namespace fracprop {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Range: return "range";
    case ErrorKind::UnwrapResolution: return "unwrap-resolution";
    case ErrorKind::InconsistentBranch: return "inconsistent-branch";
    case ErrorKind::SemistabilityViolation: return "semistability-violation";
    case ErrorKind::InsufficientData: return "insufficient-data";
    case ErrorKind::DegenerateSymbol: return "degenerate-symbol";
    case ErrorKind::InconsistentPair: return "inconsistent-pair";
    case ErrorKind::ModelMismatch: return "model-mismatch";
  }
  return "unknown";
}

unsigned thread_budget() {
  unsigned budget = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRACPROP_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) budget = std::min(budget, static_cast<unsigned>(cap));
  }
  return budget;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_lock;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard guard(failure_lock);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fracprop
