#include "srcloc/multi_source.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "srcloc/errors.hpp"
#include "srcloc/feature_selection.hpp"

namespace srcloc {

double connection_distance(double c1, double c2, const PropagationParams& prop) {
  if (!(c1 > 0.0) || !(c2 > 0.0)) {
    throw std::invalid_argument("connection_distance: signals must be positive");
  }
  const double inv = 1.0 / (prop.alpha + 1.0);
  const double sum = std::pow(c1, inv) + std::pow(c2, inv);
  return std::pow(prop.gamma, -1.0 / prop.alpha) *
         std::pow(sum, (prop.alpha + 1.0) / prop.alpha);
}

namespace {

int nearest_center(Point p, std::span<const Point> centers) {
  int best = 0;
  double best_d2 = squared_distance(p, centers[0]);
  for (std::size_t j = 1; j < centers.size(); ++j) {
    const double d2 = squared_distance(p, centers[j]);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(j);
    }
  }
  return best;
}

std::vector<int> cluster_sizes(const std::vector<int>& assignment, int k) {
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (int a : assignment) ++sizes[static_cast<std::size_t>(a)];
  return sizes;
}

/// Moves one point into each empty cluster: the point farthest from the
/// largest cluster's reference position (ties to the lowest ids). The
/// reference is that cluster's center when available, else its mean.
void repair_empty_clusters(std::vector<int>& assignment, int k,
                           std::span<const Point> points,
                           const std::vector<Point>* centers) {
  std::vector<int> sizes = cluster_sizes(assignment, k);
  for (int j = 0; j < k; ++j) {
    while (sizes[static_cast<std::size_t>(j)] == 0) {
      int largest = 0;
      for (int c = 1; c < k; ++c) {
        if (sizes[static_cast<std::size_t>(c)] > sizes[static_cast<std::size_t>(largest)]) {
          largest = c;
        }
      }
      Point ref{0.0, 0.0};
      if (centers != nullptr) {
        ref = (*centers)[static_cast<std::size_t>(largest)];
      } else {
        int count = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
          if (assignment[i] == largest) {
            ref.x += points[i].x;
            ref.y += points[i].y;
            ++count;
          }
        }
        ref.x /= count;
        ref.y /= count;
      }
      int steal = -1;
      double steal_d2 = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (assignment[i] != largest) continue;
        const double d2 = squared_distance(points[i], ref);
        if (d2 > steal_d2) {
          steal_d2 = d2;
          steal = static_cast<int>(i);
        }
      }
      assignment[static_cast<std::size_t>(steal)] = j;
      --sizes[static_cast<std::size_t>(largest)];
      ++sizes[static_cast<std::size_t>(j)];
    }
  }
}

std::vector<Point> recompute_centers(const std::vector<int>& assignment, int k,
                                     std::span<const Point> points) {
  std::vector<Point> centers(static_cast<std::size_t>(k), Point{0.0, 0.0});
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::size_t j = static_cast<std::size_t>(assignment[i]);
    centers[j].x += points[i].x;
    centers[j].y += points[i].y;
    ++sizes[j];
  }
  for (std::size_t j = 0; j < centers.size(); ++j) {
    centers[j].x /= sizes[j];
    centers[j].y /= sizes[j];
  }
  return centers;
}

}  // namespace

ClusterAssignment kmeans_clusters(std::span<const Point> points, int k,
                                  RngSeed seed, int max_iters) {
  if (k < 1) throw std::invalid_argument("kmeans_clusters: k must be >= 1");
  if (static_cast<int>(points.size()) < k) {
    throw std::invalid_argument("kmeans_clusters: fewer points than clusters");
  }
  if (max_iters < 1) throw std::invalid_argument("kmeans_clusters: max_iters must be >= 1");

  StreamRng rng(derive_key(seed.master, StreamTag::kKmeans));
  std::vector<int> picked;
  while (static_cast<int>(picked.size()) < k) {
    const int idx = static_cast<int>(rng.next_below(points.size()));
    if (std::find(picked.begin(), picked.end(), idx) == picked.end()) {
      picked.push_back(idx);
    }
  }
  std::vector<Point> centers;
  centers.reserve(static_cast<std::size_t>(k));
  for (int idx : picked) centers.push_back(points[static_cast<std::size_t>(idx)]);

  std::vector<int> assignment(points.size(), 0);
  for (int iter = 0; iter < max_iters; ++iter) {
    std::vector<int> next(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      next[i] = nearest_center(points[i], centers);
    }
    repair_empty_clusters(next, k, points, &centers);
    const bool stable = (next == assignment) && iter > 0;
    assignment = std::move(next);
    centers = recompute_centers(assignment, k, points);
    if (stable) break;
  }
  return {std::move(assignment), std::move(centers)};
}

ClusterAssignment cluster_sensors(const BinaryDataSet& data,
                                  const SensorField& field, int k, RngSeed seed,
                                  int max_iters) {
  if (data.sensor_count() != field.size()) {
    throw std::invalid_argument("cluster_sensors: dataset and field sizes differ");
  }
  if (field.size() < k) {
    throw std::invalid_argument("cluster_sensors: fewer sensors than clusters");
  }
  const std::vector<int> pool =
      relevance_pool(count_alarms(data), data.sample_count());
  std::vector<Point> pool_points;
  if (static_cast<int>(pool.size()) >= k) {
    pool_points.reserve(pool.size());
    for (int n : pool) pool_points.push_back(field.position(n));
  } else {
    // Too few frequently-alarmed sensors to seed k clusters; cluster the
    // whole field instead of failing the trial.
    pool_points.assign(field.positions().begin(), field.positions().end());
  }
  const ClusterAssignment seeded = kmeans_clusters(pool_points, k, seed, max_iters);

  ClusterAssignment result;
  result.centers = seeded.centers;
  result.assignment.resize(static_cast<std::size_t>(field.size()));
  for (int n = 0; n < field.size(); ++n) {
    result.assignment[static_cast<std::size_t>(n)] =
        nearest_center(field.position(n), result.centers);
  }
  repair_empty_clusters(result.assignment, k, field.positions(), &result.centers);
  return result;
}

MultiEstimate per_cluster_localize(const BinaryDataSet& data,
                                   const SensorField& field,
                                   const ClusterAssignment& clusters,
                                   const MultiParams& params) {
  if (data.sensor_count() != field.size()) {
    throw std::invalid_argument("per_cluster_localize: dataset and field sizes differ");
  }
  if (clusters.assignment.size() != static_cast<std::size_t>(field.size())) {
    throw std::invalid_argument("per_cluster_localize: assignment does not cover the field");
  }
  const int k = static_cast<int>(clusters.centers.size());
  for (int a : clusters.assignment) {
    if (a < 0 || a >= k) {
      throw std::invalid_argument("per_cluster_localize: cluster id out of range");
    }
  }

  MultiEstimate result;
  result.iterations = 1;
  result.converged = false;
  for (int j = 0; j < k; ++j) {
    std::vector<int> cols;
    for (int n = 0; n < field.size(); ++n) {
      if (clusters.assignment[static_cast<std::size_t>(n)] == j) cols.push_back(n);
    }
    const Point fallback_center = clusters.centers[static_cast<std::size_t>(j)];
    if (cols.empty()) {
      result.locations.push_back({fallback_center.x, fallback_center.y});
      result.fallback.push_back(1);
      continue;
    }
    BinaryDataSet sub(data.sample_count(), static_cast<int>(cols.size()));
    std::vector<Point> sub_positions;
    sub_positions.reserve(cols.size());
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      sub_positions.push_back(field.position(cols[ci]));
      for (int t = 0; t < data.sample_count(); ++t) {
        sub.set(t, static_cast<int>(ci), data.at(t, cols[ci]));
      }
    }
    try {
      LocationEstimate est{};
      if (params.method == ClusterMethod::kHittingSet) {
        const NeighborhoodCollection collection = build_collection(sub);
        est = hs_estimate(collection, sub_positions, params.solver,
                          params.solver_options);
      } else {
        est = fs_estimate(sub, sub_positions, params.weights);
      }
      result.locations.push_back(est);
      result.fallback.push_back(0);
    } catch (const EmptyCollectionError&) {
      result.locations.push_back({fallback_center.x, fallback_center.y});
      result.fallback.push_back(1);
    } catch (const NoFeaturesError&) {
      result.locations.push_back({fallback_center.x, fallback_center.y});
      result.fallback.push_back(1);
    }
  }
  return result;
}

MultiEstimate iterative_localize(const BinaryDataSet& data,
                                 const SensorField& field, int k,
                                 const MultiParams& params, RngSeed seed,
                                 int max_rounds) {
  if (k < 1) throw std::invalid_argument("iterative_localize: k must be >= 1");
  if (field.size() < k) {
    throw std::invalid_argument("iterative_localize: fewer sensors than clusters");
  }
  if (max_rounds < 0) {
    throw std::invalid_argument("iterative_localize: max_rounds must be >= 0");
  }

  StreamRng rng(derive_key(seed.master, StreamTag::kAssign));
  std::vector<int> assignment(static_cast<std::size_t>(field.size()));
  for (auto& a : assignment) {
    a = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
  }
  repair_empty_clusters(assignment, k, field.positions(), nullptr);

  auto localize = [&](const std::vector<int>& assign) {
    ClusterAssignment clusters;
    clusters.assignment = assign;
    clusters.centers = recompute_centers(assign, k, field.positions());
    return per_cluster_localize(data, field, clusters, params);
  };

  MultiEstimate current = localize(assignment);
  current.iterations = 0;
  current.converged = false;

  for (int round = 1; round <= max_rounds; ++round) {
    std::vector<Point> estimate_points;
    estimate_points.reserve(current.locations.size());
    for (const LocationEstimate& e : current.locations) estimate_points.push_back(e.point());

    std::vector<int> next(assignment.size());
    for (std::size_t n = 0; n < next.size(); ++n) {
      next[n] = nearest_center(field.position(static_cast<int>(n)), estimate_points);
    }
    repair_empty_clusters(next, k, field.positions(), &estimate_points);

    if (next == assignment) {
      current.iterations = round;
      current.converged = true;
      return current;
    }
    assignment = std::move(next);
    current = localize(assignment);
    current.iterations = round;
    current.converged = false;
  }
  return current;
}

}  // namespace srcloc
