#include "srcloc/feature_selection.hpp"

#include <stdexcept>

#include "srcloc/baselines.hpp"
#include "srcloc/errors.hpp"

namespace srcloc {

std::vector<int> count_alarms(const BinaryDataSet& data) {
  std::vector<int> counts(static_cast<std::size_t>(data.sensor_count()), 0);
  for (int t = 0; t < data.sample_count(); ++t) {
    for (int n = 0; n < data.sensor_count(); ++n) {
      counts[static_cast<std::size_t>(n)] += data.at(t, n);
    }
  }
  return counts;
}

FeatureGroups select_features(const std::vector<int>& counts, int m) {
  if (m < 1) throw std::invalid_argument("select_features: m must be >= 1");
  const long long b_lo = 3LL * m / 4;
  const long long c_lo = m / 2;
  const long long d_lo = m / 4;
  FeatureGroups groups;
  for (std::size_t n = 0; n < counts.size(); ++n) {
    const long long cnt = counts[n];
    if (cnt < 0 || cnt > m) {
      throw std::invalid_argument("select_features: counts must lie in [0, m]");
    }
    if (cnt >= b_lo) {
      groups.b.push_back(static_cast<int>(n));
    } else if (cnt >= c_lo) {
      groups.c.push_back(static_cast<int>(n));
    } else if (cnt >= d_lo) {
      groups.d.push_back(static_cast<int>(n));
    }
  }
  return groups;
}

std::vector<int> relevance_pool(const std::vector<int>& counts, int m) {
  if (m < 1) throw std::invalid_argument("relevance_pool: m must be >= 1");
  const long long d_lo = m / 4;
  std::vector<int> pool;
  for (std::size_t n = 0; n < counts.size(); ++n) {
    if (counts[n] >= d_lo) pool.push_back(static_cast<int>(n));
  }
  return pool;
}

namespace {

struct GroupCentroid {
  double weight;
  double x;
  double y;
};

GroupCentroid group_centroid(const std::vector<int>& group, double weight,
                             std::span<const Point> positions) {
  double sx = 0.0, sy = 0.0;
  for (int n : group) {
    if (n < 0 || static_cast<std::size_t>(n) >= positions.size()) {
      throw std::invalid_argument("weighted_centroid: group index outside the field");
    }
    sx += positions[static_cast<std::size_t>(n)].x;
    sy += positions[static_cast<std::size_t>(n)].y;
  }
  const double k = static_cast<double>(group.size());
  return {weight, sx / k, sy / k};
}

}  // namespace

LocationEstimate weighted_centroid(const FeatureGroups& groups,
                                   std::span<const Point> positions) {
  for (double w : groups.weights) {
    if (!(w >= 0.0)) {
      throw std::invalid_argument("weighted_centroid: weights must be non-negative");
    }
  }
  std::vector<GroupCentroid> parts;
  if (!groups.b.empty()) parts.push_back(group_centroid(groups.b, groups.weights[0], positions));
  if (!groups.c.empty()) parts.push_back(group_centroid(groups.c, groups.weights[1], positions));
  if (!groups.d.empty()) parts.push_back(group_centroid(groups.d, groups.weights[2], positions));
  if (parts.empty()) {
    throw NoFeaturesError("weighted_centroid: all relevance groups are empty");
  }
  double weight_sum = 0.0;
  double x = 0.0, y = 0.0;
  for (const GroupCentroid& part : parts) {
    weight_sum += part.weight;
    x += part.weight * part.x;
    y += part.weight * part.y;
  }
  if (!(weight_sum > 0.0)) {
    throw std::invalid_argument(
        "weighted_centroid: weights of non-empty groups must sum to a positive value");
  }
  return {x / weight_sum, y / weight_sum};
}

LocationEstimate weighted_centroid(const FeatureGroups& groups,
                                   const SensorField& field) {
  return weighted_centroid(groups, field.positions());
}

LocationEstimate fs_estimate(const BinaryDataSet& data,
                             std::span<const Point> positions,
                             const std::array<double, 3>& weights) {
  if (data.sensor_count() != static_cast<int>(positions.size())) {
    throw std::invalid_argument("fs_estimate: dataset and field sizes differ");
  }
  FeatureGroups groups = select_features(count_alarms(data), data.sample_count());
  groups.weights = weights;
  return weighted_centroid(groups, positions);
}

LocationEstimate fs_estimate(const BinaryDataSet& data, const SensorField& field,
                             const std::array<double, 3>& weights) {
  return fs_estimate(data, field.positions(), weights);
}

LocationEstimate fs_ml_estimate(const BinaryDataSet& data, const SensorField& field,
                                const PropagationParams& prop,
                                const SensingParams& sensing, const GridSpec& grid,
                                double assumed_c) {
  if (data.sensor_count() != field.size()) {
    throw std::invalid_argument("fs_ml_estimate: dataset and field sizes differ");
  }
  const std::vector<int> pool =
      relevance_pool(count_alarms(data), data.sample_count());
  if (pool.empty()) {
    throw NoFeaturesError("fs_ml_estimate: no sensor clears the relevance threshold");
  }
  return restricted_ml_estimate(data, field.positions(), pool, prop, sensing, 0.0,
                                grid, assumed_c);
}

}  // namespace srcloc
