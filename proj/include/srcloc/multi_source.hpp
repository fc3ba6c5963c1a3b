#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "srcloc/estimate.hpp"
#include "srcloc/hitting_set.hpp"
#include "srcloc/rng.hpp"
#include "srcloc/sim.hpp"

namespace srcloc {

/// Largest distance at which the regions of influence of two sources with
/// emitted signals c1, c2 still touch:
///   L = gamma^(-1/alpha) (c1^(1/(alpha+1)) + c2^(1/(alpha+1)))^((alpha+1)/alpha)
double connection_distance(double c1, double c2, const PropagationParams& prop);

/// Disjoint partition of a point set into k clusters.
struct ClusterAssignment {
  std::vector<int> assignment;  // cluster id in [0, k) per point
  std::vector<Point> centers;   // k cluster centers
};

/// Lloyd's k-means. Centers are seeded by drawing k distinct points
/// uniformly; an empty cluster is repaired by stealing the point farthest
/// from the largest cluster's center. Deterministic in the seed.
ClusterAssignment kmeans_clusters(std::span<const Point> points, int k,
                                  RngSeed seed, int max_iters = 100);

/// Clusters the sensor field for multi-source localization: k-means runs
/// on the relevance pool (sensors alarmed in at least a quarter of the
/// samples), then every sensor is assigned to its nearest center, so the
/// assignment covers the whole field. Falls back to clustering all sensor
/// positions when the pool has fewer than k members.
ClusterAssignment cluster_sensors(const BinaryDataSet& data,
                                  const SensorField& field, int k, RngSeed seed,
                                  int max_iters = 100);

enum class ClusterMethod {
  kHittingSet,
  kFeatureSelection,
};

struct MultiParams {
  ClusterMethod method = ClusterMethod::kHittingSet;
  SolverKind solver = SolverKind::kAuto;
  SolverOptions solver_options{};
  std::array<double, 3> weights{1.0, 1.0, 1.0};
};

struct MultiEstimate {
  std::vector<LocationEstimate> locations;  // one per cluster
  std::vector<std::uint8_t> fallback;       // 1 where the cluster center stood in
  int iterations = 0;
  bool converged = false;
};

/// Runs the chosen single-source estimator per cluster on the dataset
/// restricted to that cluster's sensor columns. A cluster whose
/// restriction has no alarms (or no features) gets its cluster center as
/// a flagged fallback instead of aborting.
MultiEstimate per_cluster_localize(const BinaryDataSet& data,
                                   const SensorField& field,
                                   const ClusterAssignment& clusters,
                                   const MultiParams& params);

/// Iterative refinement: random initial assignment (no empty cluster),
/// localize per cluster, reassign every sensor to the nearest estimate,
/// repeat until the assignment stops changing or max_rounds is spent.
MultiEstimate iterative_localize(const BinaryDataSet& data,
                                 const SensorField& field, int k,
                                 const MultiParams& params, RngSeed seed,
                                 int max_rounds = 25);

}  // namespace srcloc
