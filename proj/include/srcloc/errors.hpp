#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace srcloc {

/// Raised when an estimator is asked to localize from a sample that
/// contains no alarmed sensor, so no location information exists.
class NoAlarmError : public std::runtime_error {
 public:
  explicit NoAlarmError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when feature selection finds no sensor above the lowest
/// relevance threshold (all alarm counts fall below floor(M/4)).
class NoFeaturesError : public std::runtime_error {
 public:
  explicit NoFeaturesError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a neighborhood collection is empty (every sample was
/// dropped), so hitting-set based estimation has nothing to work on.
class EmptyCollectionError : public std::runtime_error {
 public:
  explicit EmptyCollectionError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the exact hitting-set solver when the node budget runs out.
/// Carries the best (greedy) solution found so callers can fall back.
class SolverBudgetError : public std::runtime_error {
 public:
  SolverBudgetError(const std::string& what, std::vector<int> incumbent,
                    std::uint64_t nodes_explored)
      : std::runtime_error(what),
        incumbent_(std::move(incumbent)),
        nodes_explored_(nodes_explored) {}

  const std::vector<int>& incumbent() const { return incumbent_; }
  std::uint64_t nodes_explored() const { return nodes_explored_; }

 private:
  std::vector<int> incumbent_;
  std::uint64_t nodes_explored_;
};

}  // namespace srcloc
