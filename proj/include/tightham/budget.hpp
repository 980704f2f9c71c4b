#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

namespace tightham {

struct SearchBudget {
  std::uint64_t max_nodes = std::uint64_t{1} << 40;
  std::optional<double> time_limit;  // seconds
};

// Counts expanded nodes; the clock is consulted every 2^12 nodes.
class BudgetMeter {
 public:
  explicit BudgetMeter(const SearchBudget& budget);

  // Records one node; false once the budget is spent (and stays false).
  bool tick() {
    if (exhausted_) return false;
    ++nodes_;
    if (nodes_ > budget_.max_nodes) {
      exhausted_ = true;
    } else if (budget_.time_limit && (nodes_ & 0xfff) == 0) {
      check_clock();
    }
    return !exhausted_;
  }
  std::uint64_t nodes() const { return nodes_; }
  bool exhausted() const { return exhausted_; }

 private:
  void check_clock();

  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

}  // namespace tightham
