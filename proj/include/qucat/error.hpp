#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qucat {

/// Thrown when an operation's precondition does not hold for its input.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a search budget or a truncation cap is exceeded. Never
/// silently truncated.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidInput(what);
}

/// Upper bound on the number of search nodes an exhaustive enumeration may
/// visit. The default can be overridden with QUCAT_BUDGET.
struct Budget {
  std::uint64_t max_nodes = default_nodes();

  static std::uint64_t default_nodes() {
    if (const char* env = std::getenv("QUCAT_BUDGET")) {
      char* end = nullptr;
      auto v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return v;
    }
    return 50'000'000ULL;
  }
};

class BudgetCounter {
 public:
  BudgetCounter(Budget b, std::string stage) : budget_(b), stage_(std::move(stage)) {}

  void tick() {
    if (++used_ > budget_.max_nodes)
      throw ResourceError(stage_ + ": search budget of " + std::to_string(budget_.max_nodes) +
                          " nodes exceeded");
  }
  std::uint64_t used() const { return used_; }

 private:
  Budget budget_;
  std::string stage_;
  std::uint64_t used_ = 0;
};

}  // namespace qucat
