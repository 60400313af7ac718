#ifndef BTSTRATA_COMMON_HPP
#define BTSTRATA_COMMON_HPP

#include <atomic>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace bts {

// Raised when a verdict would depend on digits inside the precision guard band.
class precision_error : public std::runtime_error {
 public:
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an enumeration exceeds its configured work budget.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a computation contradicts a law the library is built on.
// Always a bug, never ignorable.
class invariant_error : public std::logic_error {
 public:
  explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

// Shared work counter for long enumerations.  Decremented in inner loops;
// throws once exhausted.  A default-constructed budget is effectively
// unlimited.
class Budget {
 public:
  Budget() : limit_(std::numeric_limits<std::uint64_t>::max()) {}
  explicit Budget(std::uint64_t limit) : limit_(limit) {}

  void charge(std::uint64_t units = 1) const {
    if (used_.fetch_add(units, std::memory_order_relaxed) + units > limit_)
      throw budget_error("enumeration budget exceeded (limit " +
                         std::to_string(limit_) + " units)");
  }
  std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  mutable std::atomic<std::uint64_t> used_{0};
};

}  // namespace bts

#endif
