#pragma once

#include <array>
#include <span>
#include <vector>

#include "srcloc/estimate.hpp"
#include "srcloc/sim.hpp"

namespace srcloc {

/// Per-sensor alarm counts: counts[n] = number of samples where sensor n
/// reported 1.
std::vector<int> count_alarms(const BinaryDataSet& data);

/// Relevance bands over alarm counts for m samples:
///   B: counts >= floor(3m/4)
///   C: floor(m/2) <= counts < floor(3m/4)
///   D: floor(m/4) <= counts < floor(m/2)
/// Sensors below floor(m/4) are excluded entirely.
struct FeatureGroups {
  std::vector<int> b;
  std::vector<int> c;
  std::vector<int> d;
  std::array<double, 3> weights{1.0, 1.0, 1.0};
};

FeatureGroups select_features(const std::vector<int>& counts, int m);

/// Sensors above the lowest band threshold, i.e. B + C + D combined:
/// {n : counts[n] >= floor(m/4)}.
std::vector<int> relevance_pool(const std::vector<int>& counts, int m);

/// Weighted mean of the per-group centroids. Empty groups are skipped and
/// the weight sum is renormalized over the non-empty ones; with all three
/// groups non-empty and unit weights this is the plain mean of the three
/// centroids. Throws NoFeaturesError when every group is empty, and
/// std::invalid_argument for negative or all-zero effective weights.
LocationEstimate weighted_centroid(const FeatureGroups& groups,
                                   std::span<const Point> positions);
LocationEstimate weighted_centroid(const FeatureGroups& groups,
                                   const SensorField& field);

/// Full feature-selection pipeline: count, band, weighted centroid.
/// Runs in O(MN).
LocationEstimate fs_estimate(const BinaryDataSet& data,
                             std::span<const Point> positions,
                             const std::array<double, 3>& weights = {1.0, 1.0, 1.0});
LocationEstimate fs_estimate(const BinaryDataSet& data, const SensorField& field,
                             const std::array<double, 3>& weights = {1.0, 1.0, 1.0});

/// ML refinement: grid-search maximum likelihood restricted to the
/// relevance pool's columns, ignoring sensors that alarmed in fewer than
/// a quarter of the samples. Throws NoFeaturesError on an empty pool.
LocationEstimate fs_ml_estimate(const BinaryDataSet& data, const SensorField& field,
                                const PropagationParams& prop,
                                const SensingParams& sensing, const GridSpec& grid,
                                double assumed_c = 3000.0);

}  // namespace srcloc
