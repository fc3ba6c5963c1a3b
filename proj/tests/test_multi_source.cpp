#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "srcloc/feature_selection.hpp"
#include "srcloc/hitting_set.hpp"
#include "srcloc/multi_source.hpp"
#include "srcloc/rng.hpp"
#include "srcloc/sim.hpp"

using namespace srcloc;

namespace {

BinaryDataSet random_dataset(int m, int n, std::uint64_t key, double ones_rate) {
  BinaryDataSet data(m, n);
  StreamRng rng(derive_key(key, StreamTag::kFuzz));
  for (int t = 0; t < m; ++t) {
    for (int j = 0; j < n; ++j) {
      data.set(t, j, rng.next_bernoulli(ones_rate) ? 1 : 0);
    }
  }
  return data;
}

}  // namespace

TEST_CASE("connection_distance matches the closed form") {
  const PropagationParams prop;  // alpha = 2, gamma = 1
  const double connected = connection_distance(3000.0, 3000.0, prop);
  // (2 * 3000^(1/3))^(3/2) = sqrt(24000)
  CHECK(std::abs(connected - std::sqrt(24000.0)) <= 1e-9 * connected);

  // Equal signals at gamma = 1 collapse to 2^((a+1)/a) * c^(1/a).
  const PropagationParams cubic(3.0, 1.0);
  const double expected = std::pow(2.0, 4.0 / 3.0) * std::pow(16.0, 1.0 / 3.0);
  CHECK(connection_distance(16.0, 16.0, cubic) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("connection_distance symmetry and monotonicity") {
  const PropagationParams prop;
  CHECK(connection_distance(1000.0, 3000.0, prop) ==
        connection_distance(3000.0, 1000.0, prop));
  CHECK(connection_distance(1000.0, 3000.0, prop) <
        connection_distance(3000.0, 3000.0, prop));
  CHECK(connection_distance(3000.0, 3000.0, prop) <
        connection_distance(9000.0, 3000.0, prop));

  // gamma scales distances by gamma^(-1/alpha).
  const PropagationParams dense(2.0, 4.0);
  CHECK(connection_distance(3000.0, 3000.0, dense) ==
        0.5 * connection_distance(3000.0, 3000.0, prop));

  CHECK_THROWS_AS(connection_distance(0.0, 10.0, prop), std::invalid_argument);
  CHECK_THROWS_AS(connection_distance(10.0, -1.0, prop), std::invalid_argument);
}

TEST_CASE("kmeans separates two tight groups") {
  std::vector<Point> pts{{18, 18}, {19, 21}, {21, 19}, {22, 22}, {20, 17}, {17, 20}};
  const std::size_t half = pts.size();
  for (std::size_t i = 0; i < half; ++i) {
    pts.push_back({pts[i].x + 50.0, pts[i].y + 50.0});
  }
  const ClusterAssignment clusters = kmeans_clusters(pts, 2, RngSeed{7});
  REQUIRE(clusters.centers.size() == 2);

  std::vector<Point> sorted = clusters.centers;
  std::sort(sorted.begin(), sorted.end(), [](Point a, Point b) { return a.x < b.x; });
  CHECK(distance(sorted[0], {19.5, 19.5}) <= 2.0);
  CHECK(distance(sorted[1], {69.5, 69.5}) <= 2.0);

  // The two halves end up in different clusters, uniformly.
  for (std::size_t i = 1; i < half; ++i) {
    CHECK(clusters.assignment[i] == clusters.assignment[0]);
    CHECK(clusters.assignment[half + i] == clusters.assignment[half]);
  }
  CHECK(clusters.assignment[0] != clusters.assignment[half]);

  // At convergence every point sits with its nearest center.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int a = clusters.assignment[i];
    for (std::size_t j = 0; j < clusters.centers.size(); ++j) {
      CHECK(squared_distance(pts[i], clusters.centers[static_cast<std::size_t>(a)]) <=
            squared_distance(pts[i], clusters.centers[j]));
    }
  }
}

TEST_CASE("kmeans with one cluster returns the mean") {
  const std::vector<Point> pts{{0, 0}, {4, 0}, {8, 12}};
  const ClusterAssignment clusters = kmeans_clusters(pts, 1, RngSeed{3});
  CHECK(clusters.assignment == std::vector<int>{0, 0, 0});
  CHECK(clusters.centers[0].x == 4.0);
  CHECK(clusters.centers[0].y == 4.0);
}

TEST_CASE("kmeans is deterministic in the seed") {
  std::vector<Point> pts;
  StreamRng rng(derive_key(0x5EEDu, StreamTag::kFuzz));
  for (int i = 0; i < 40; ++i) {
    pts.push_back({100.0 * rng.next_unit(), 100.0 * rng.next_unit()});
  }
  const ClusterAssignment a = kmeans_clusters(pts, 4, RngSeed{99});
  const ClusterAssignment b = kmeans_clusters(pts, 4, RngSeed{99});
  CHECK(a.assignment == b.assignment);
  REQUIRE(a.centers.size() == b.centers.size());
  for (std::size_t j = 0; j < a.centers.size(); ++j) {
    CHECK(a.centers[j].x == b.centers[j].x);
    CHECK(a.centers[j].y == b.centers[j].y);
  }
}

TEST_CASE("kmeans repairs empty clusters on degenerate input") {
  const std::vector<Point> pts{{10, 10}, {10, 10}, {10, 10}, {10, 10}, {10, 10}};
  const ClusterAssignment clusters = kmeans_clusters(pts, 2, RngSeed{1});
  std::vector<int> sizes(2, 0);
  for (int a : clusters.assignment) {
    REQUIRE(a >= 0);
    REQUIRE(a < 2);
    ++sizes[static_cast<std::size_t>(a)];
  }
  CHECK(sizes[0] > 0);
  CHECK(sizes[1] > 0);
}

TEST_CASE("kmeans validates its inputs") {
  const std::vector<Point> pts{{0, 0}, {1, 1}};
  CHECK_THROWS_AS(kmeans_clusters(pts, 0, RngSeed{1}), std::invalid_argument);
  CHECK_THROWS_AS(kmeans_clusters(pts, 3, RngSeed{1}), std::invalid_argument);
  CHECK_THROWS_AS(kmeans_clusters(pts, 1, RngSeed{1}, 0), std::invalid_argument);
}

TEST_CASE("cluster_sensors assigns every sensor to a live cluster") {
  const SensorField field = deploy_sensors(30, AreaBounds(100.0, 100.0), RngSeed{42});
  const BinaryDataSet data = random_dataset(8, 30, 0xABCu, 0.5);
  const ClusterAssignment clusters = cluster_sensors(data, field, 3, RngSeed{17});
  REQUIRE(clusters.assignment.size() == 30);
  REQUIRE(clusters.centers.size() == 3);
  std::vector<int> sizes(3, 0);
  for (int a : clusters.assignment) {
    REQUIRE(a >= 0);
    REQUIRE(a < 3);
    ++sizes[static_cast<std::size_t>(a)];
  }
  for (int s : sizes) CHECK(s > 0);
}

TEST_CASE("cluster_sensors falls back to the whole field when the pool is thin") {
  const SensorField field = deploy_sensors(20, AreaBounds(100.0, 100.0), RngSeed{43});
  const BinaryDataSet quiet(8, 20);
  REQUIRE(relevance_pool(count_alarms(quiet), 8).empty());
  const ClusterAssignment clusters = cluster_sensors(quiet, field, 2, RngSeed{18});
  CHECK(clusters.assignment.size() == 20);
  CHECK(clusters.centers.size() == 2);
}

TEST_CASE("cluster_sensors validates its inputs") {
  const SensorField field = deploy_sensors(5, AreaBounds(100.0, 100.0), RngSeed{44});
  const BinaryDataSet data = random_dataset(4, 6, 0xD1u, 0.5);
  CHECK_THROWS_AS(cluster_sensors(data, field, 2, RngSeed{1}), std::invalid_argument);
  const BinaryDataSet small = random_dataset(4, 5, 0xD2u, 0.5);
  CHECK_THROWS_AS(cluster_sensors(small, field, 6, RngSeed{1}), std::invalid_argument);
}

TEST_CASE("one cluster reproduces the single-source estimators exactly") {
  const SensorField field = deploy_sensors(40, AreaBounds(100.0, 100.0), RngSeed{77});
  const std::vector<SourceSpec> sources{{{50.0, 50.0}, 3000.0}};
  const PropagationParams prop;
  const SensingParams sensing(3000.0, 5.0, 1.0);
  const BinaryDataSet data =
      generate_dataset(field, sources, prop, sensing, FaultParams{0.1}, 10, RngSeed{7});
  REQUIRE_FALSE(build_collection(data).subsets.empty());

  ClusterAssignment whole;
  whole.assignment.assign(40, 0);
  whole.centers = {{50.0, 50.0}};

  SUBCASE("hitting set") {
    MultiParams params;
    params.method = ClusterMethod::kHittingSet;
    const MultiEstimate multi = per_cluster_localize(data, field, whole, params);
    REQUIRE(multi.locations.size() == 1);
    CHECK(multi.fallback == std::vector<std::uint8_t>{0});
    const LocationEstimate single = hs_estimate(build_collection(data), field);
    CHECK(multi.locations[0].x == single.x);
    CHECK(multi.locations[0].y == single.y);
  }
  SUBCASE("feature selection with pass-through weights") {
    MultiParams params;
    params.method = ClusterMethod::kFeatureSelection;
    params.weights = {2.0, 1.0, 1.0};
    const MultiEstimate multi = per_cluster_localize(data, field, whole, params);
    REQUIRE(multi.locations.size() == 1);
    const LocationEstimate single = fs_estimate(data, field, {2.0, 1.0, 1.0});
    CHECK(multi.locations[0].x == single.x);
    CHECK(multi.locations[0].y == single.y);
  }
}

TEST_CASE("per-cluster estimates follow cluster relabeling") {
  const SensorField field = deploy_sensors(24, AreaBounds(100.0, 100.0), RngSeed{78});
  const BinaryDataSet data = random_dataset(8, 24, 0xE1u, 0.4);
  ClusterAssignment clusters;
  clusters.centers = {{25.0, 25.0}, {75.0, 75.0}};
  clusters.assignment.resize(24);
  for (int n = 0; n < 24; ++n) {
    clusters.assignment[static_cast<std::size_t>(n)] =
        field.position(n).x < 50.0 ? 0 : 1;
  }

  ClusterAssignment swapped;
  swapped.centers = {clusters.centers[1], clusters.centers[0]};
  swapped.assignment.resize(24);
  for (int n = 0; n < 24; ++n) {
    swapped.assignment[static_cast<std::size_t>(n)] =
        1 - clusters.assignment[static_cast<std::size_t>(n)];
  }

  MultiParams params;
  params.method = ClusterMethod::kFeatureSelection;
  const MultiEstimate a = per_cluster_localize(data, field, clusters, params);
  const MultiEstimate b = per_cluster_localize(data, field, swapped, params);
  REQUIRE(a.locations.size() == 2);
  REQUIRE(b.locations.size() == 2);
  CHECK(a.locations[0].x == b.locations[1].x);
  CHECK(a.locations[0].y == b.locations[1].y);
  CHECK(a.locations[1].x == b.locations[0].x);
  CHECK(a.locations[1].y == b.locations[0].y);
  CHECK(a.fallback[0] == b.fallback[1]);
  CHECK(a.fallback[1] == b.fallback[0]);
}

TEST_CASE("a cluster without alarms falls back to its center") {
  const std::vector<Point> pts{{10, 10}, {12, 10}, {80, 80}, {82, 80}};
  const SensorField field(pts, AreaBounds(100.0, 100.0));
  BinaryDataSet data(6, 4);
  for (int t = 0; t < 6; ++t) {
    data.set(t, 0, 1);
    data.set(t, 1, 1);
  }
  ClusterAssignment clusters;
  clusters.assignment = {0, 0, 1, 1};
  clusters.centers = {{11.0, 10.0}, {81.0, 80.0}};

  for (ClusterMethod method : {ClusterMethod::kHittingSet, ClusterMethod::kFeatureSelection}) {
    MultiParams params;
    params.method = method;
    const MultiEstimate multi = per_cluster_localize(data, field, clusters, params);
    REQUIRE(multi.locations.size() == 2);
    CHECK(multi.fallback == std::vector<std::uint8_t>{0, 1});
    CHECK(multi.locations[1].x == 81.0);
    CHECK(multi.locations[1].y == 80.0);
    // HS hits the six identical {0, 1} rows with sensor 0 alone; FS keeps
    // both sensors in the top band and averages them.
    const double expected_x = method == ClusterMethod::kHittingSet ? 10.0 : 11.0;
    CHECK(multi.locations[0].x == expected_x);
    CHECK(multi.locations[0].y == 10.0);
  }
}

TEST_CASE("per_cluster_localize validates the assignment") {
  const SensorField field = deploy_sensors(6, AreaBounds(100.0, 100.0), RngSeed{79});
  const BinaryDataSet data = random_dataset(4, 6, 0xE2u, 0.5);
  MultiParams params;

  ClusterAssignment short_assignment;
  short_assignment.assignment = {0, 0, 0};
  short_assignment.centers = {{50.0, 50.0}};
  CHECK_THROWS_AS(per_cluster_localize(data, field, short_assignment, params),
                  std::invalid_argument);

  ClusterAssignment bad_id;
  bad_id.assignment = {0, 0, 0, 0, 0, 2};
  bad_id.centers = {{50.0, 50.0}};
  CHECK_THROWS_AS(per_cluster_localize(data, field, bad_id, params),
                  std::invalid_argument);
}

TEST_CASE("iterative refinement with one cluster converges immediately") {
  const SensorField field = deploy_sensors(40, AreaBounds(100.0, 100.0), RngSeed{80});
  const std::vector<SourceSpec> sources{{{42.0, 58.0}, 3000.0}};
  const PropagationParams prop;
  const SensingParams sensing(3000.0, 5.0, 1.0);
  const BinaryDataSet data =
      generate_dataset(field, sources, prop, sensing, FaultParams{0.1}, 12, RngSeed{8});
  REQUIRE_FALSE(build_collection(data).subsets.empty());
  MultiParams params;
  params.method = ClusterMethod::kHittingSet;

  const MultiEstimate multi = iterative_localize(data, field, 1, params, RngSeed{5});
  CHECK(multi.converged);
  CHECK(multi.iterations == 1);
  REQUIRE(multi.locations.size() == 1);
  const LocationEstimate single = hs_estimate(build_collection(data), field);
  CHECK(multi.locations[0].x == single.x);
  CHECK(multi.locations[0].y == single.y);
}

TEST_CASE("iterative refinement stops at the round budget") {
  const SensorField field = deploy_sensors(20, AreaBounds(100.0, 100.0), RngSeed{81});
  const BinaryDataSet data = random_dataset(6, 20, 0xE3u, 0.4);
  MultiParams params;
  params.method = ClusterMethod::kFeatureSelection;
  const MultiEstimate multi = iterative_localize(data, field, 2, params, RngSeed{6}, 0);
  CHECK_FALSE(multi.converged);
  CHECK(multi.iterations == 0);
  CHECK(multi.locations.size() == 2);
}

TEST_CASE("iterative refinement is deterministic") {
  const SensorField field = deploy_sensors(30, AreaBounds(100.0, 100.0), RngSeed{82});
  const BinaryDataSet data = random_dataset(10, 30, 0xE4u, 0.35);
  MultiParams params;
  params.method = ClusterMethod::kFeatureSelection;
  const MultiEstimate a = iterative_localize(data, field, 2, params, RngSeed{9});
  const MultiEstimate b = iterative_localize(data, field, 2, params, RngSeed{9});
  CHECK(a.converged == b.converged);
  CHECK(a.iterations == b.iterations);
  REQUIRE(a.locations.size() == b.locations.size());
  for (std::size_t j = 0; j < a.locations.size(); ++j) {
    CHECK(a.locations[j].x == b.locations[j].x);
    CHECK(a.locations[j].y == b.locations[j].y);
  }
}

TEST_CASE("iterative refinement resolves two separated sources") {
  const AreaBounds bounds(100.0, 100.0);
  const SensorField field = deploy_sensors(200, bounds, RngSeed{2025});
  const std::vector<SourceSpec> sources{{{25.0, 25.0}, 3000.0}, {{75.0, 75.0}, 3000.0}};
  const PropagationParams prop;
  const SensingParams clean(3000.0, 5.0, 0.0);
  const BinaryDataSet data =
      generate_dataset(field, sources, prop, clean, FaultParams{0.0}, 8, RngSeed{11});
  MultiParams params;
  params.method = ClusterMethod::kFeatureSelection;

  const MultiEstimate multi = iterative_localize(data, field, 2, params, RngSeed{11});
  REQUIRE(multi.locations.size() == 2);
  CHECK(multi.converged);
  for (const SourceSpec& source : sources) {
    double best = 1e9;
    for (const LocationEstimate& e : multi.locations) {
      best = std::min(best, distance(e.point(), source.location));
    }
    CHECK(best <= 8.0);
  }
}

TEST_CASE("iterative_localize validates its inputs") {
  const SensorField field = deploy_sensors(4, AreaBounds(100.0, 100.0), RngSeed{83});
  const BinaryDataSet data = random_dataset(4, 4, 0xE5u, 0.5);
  MultiParams params;
  CHECK_THROWS_AS(iterative_localize(data, field, 0, params, RngSeed{1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(iterative_localize(data, field, 5, params, RngSeed{1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(iterative_localize(data, field, 2, params, RngSeed{1}, -1),
                  std::invalid_argument);
}
