#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srcloc/estimate.hpp"
#include "srcloc/sim.hpp"

namespace srcloc {

/// Alarmed-sensor subsets collected from a dataset, one per sample that
/// alarmed at all. Duplicates are kept; all-quiet samples are dropped and
/// counted so callers can report data loss.
struct NeighborhoodCollection {
  std::vector<std::vector<int>> subsets;
  int dropped_samples = 0;
};

NeighborhoodCollection build_collection(const BinaryDataSet& data);

/// Result of a hitting-set solve. Members are sorted ascending. optimal
/// is true only for a completed exact solve (minimum cardinality proven).
struct HittingSet {
  std::vector<int> members;
  bool optimal = false;
};

struct SolverOptions {
  std::uint64_t node_budget = 10'000'000;
};

enum class SolverKind {
  kAuto,    // exact when the instance is small enough, greedy otherwise
  kExact,
  kGreedy,
};

/// True iff members intersects every subset.
bool is_hitting_set(const std::vector<std::vector<int>>& subsets,
                    const std::vector<int>& members);

/// True iff members hits every subset and no proper subset of it does.
bool is_minimal_hitting_set(const std::vector<std::vector<int>>& subsets,
                            const std::vector<int>& members);

/// Exact minimum hitting set via iterative-deepening branch and bound.
/// Among all minimum-cardinality solutions, returns the one whose sorted
/// member sequence is lexicographically smallest. Throws SolverBudgetError
/// (carrying the greedy incumbent) if the node budget is exhausted.
HittingSet minimum_hitting_set(const NeighborhoodCollection& collection,
                               const SolverOptions& options = {});

/// Greedy minimal hitting set: repeatedly pick the element covering the
/// most uncovered subsets (ties to the lowest index), then drop redundant
/// members. Minimal by construction, not necessarily minimum.
HittingSet minimal_hitting_set(const NeighborhoodCollection& collection);

/// Policy front end. kAuto runs the exact solver on instances with at
/// most 64 distinct elements and 5000 subsets, and falls back to greedy
/// on larger instances or when the exact solver runs out of budget.
HittingSet solve_hitting_set(const NeighborhoodCollection& collection,
                             SolverKind kind = SolverKind::kAuto,
                             const SolverOptions& options = {});

/// Location estimate: centroid of the solved hitting set's sensors.
/// Throws EmptyCollectionError when the collection has no subsets.
LocationEstimate hs_estimate(const NeighborhoodCollection& collection,
                             const SensorField& field,
                             SolverKind kind = SolverKind::kAuto,
                             const SolverOptions& options = {});
LocationEstimate hs_estimate(const NeighborhoodCollection& collection,
                             std::span<const Point> positions,
                             SolverKind kind = SolverKind::kAuto,
                             const SolverOptions& options = {});

/// Smallest sample count M guaranteeing that, with probability at least
/// 1 - delta, no sensor is hit by a fault in every one of M samples, for
/// d sensors of interest: M >= (ln delta - ln d) / ln p_f. Returns 1 when
/// p_f is 0.
int sample_bound(double delta, int d, double p_f);

/// Same bound with d replaced by k_sources * d, covering the union of the
/// per-source sensor groups.
int multi_sample_bound(double delta, int k_sources, int d, double p_f);

}  // namespace srcloc
