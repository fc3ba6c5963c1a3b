#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "srcloc/estimate.hpp"
#include "srcloc/geometry.hpp"
#include "srcloc/hitting_set.hpp"
#include "srcloc/sim.hpp"

namespace srcloc {

enum class EstimatorId { kCe, kMl, kFtml, kSnap, kHs, kFs, kFsMl };

std::string estimator_name(EstimatorId id);
EstimatorId parse_estimator(const std::string& name);
std::vector<EstimatorId> parse_estimator_list(const std::string& csv);

enum class SweepAxis { kThreshold, kFaultProb, kSamples, kSensors, kVariance, kDistance };

std::string sweep_axis_name(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

enum class Placement { kUniform, kFixed, kDistancePair };

/// Declarative description of one Monte Carlo experiment: a sweep over a
/// single axis, a set of estimators, and everything the simulator needs.
struct ExperimentConfig {
  // World
  double area_width = 100.0;
  double area_height = 100.0;
  int n_sensors = 200;
  int m_samples = 100;
  int k_sources = 1;
  Placement placement = Placement::kUniform;
  std::vector<Point> fixed_sources;  // used when placement == kFixed
  double pair_distance = 40.0;       // used when placement == kDistancePair
  double emitted_signal = 3000.0;
  double alpha = 2.0;
  double gamma = 1.0;
  double v_max = 3000.0;
  double threshold = 5.0;
  double noise_sigma = 1.0;
  double p_f = 0.1;
  bool fixed_field = false;  // one shared field for all trials

  // Estimators and their knobs
  std::vector<EstimatorId> estimators;
  double cell_size = 1.0;
  std::array<double, 3> weights{1.0, 1.0, 1.0};
  double ftml_pf_offset = 0.0;  // FTML assumes p_f + offset (clamped to [0, 0.5))
  double snap_roi_scale = 1.0;  // SNAP assumes scale * true ROI radius
  SolverKind solver = SolverKind::kAuto;
  std::uint64_t solver_node_budget = 10'000'000;
  bool multi_iterative = false;  // k >= 2: iterative refinement instead of k-means
  int multi_max_rounds = 25;
  int kmeans_max_iters = 100;

  // Sweep
  SweepAxis sweep_axis = SweepAxis::kFaultProb;
  std::vector<double> sweep_values;

  // Sample-bound presets compute a formula instead of simulating.
  bool bound_only = false;
  double bound_delta = 0.1;
  int bound_d = 10;

  // Execution
  int trials = 100;
  std::uint64_t master_seed = 1;
  int threads = 0;  // 0 = hardware concurrency
};

/// Throws std::invalid_argument describing every problem found.
void validate_config(const ExperimentConfig& config);

struct SweepRow {
  double sweep_value = 0.0;
  std::string estimator;
  double avg_rms = 0.0;
  int trials = 0;   // trials included in the average
  int flagged = 0;  // trials excluded (estimator raised an error)
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Per-trial errors backing each row, in row order; NaN marks a flagged
/// trial. Useful for tests; not part of the CSV.
struct SweepDetail {
  std::vector<std::vector<double>> per_trial;
};

/// Average error over B trials x K sources: the mean Euclidean distance
/// between matched estimates and truths.
double rms_error(std::span<const LocationEstimate> estimates,
                 std::span<const Point> truths);

/// Knobs for a one-shot estimator run on an existing dataset.
struct SingleRunOptions {
  PropagationParams prop{};
  SensingParams sensing{};
  double assumed_c = 3000.0;     // source amplitude the estimator assumes
  double assumed_p_f = 0.0;      // ftml's assumed flip probability
  double snap_roi_radius = 0.0;  // <= 0: derived from assumed_c and threshold
  double cell_size = 1.0;
  std::array<double, 3> weights{1.0, 1.0, 1.0};
  SolverKind solver = SolverKind::kAuto;
  std::uint64_t node_budget = 10'000'000;
};

/// Runs one named estimator on a dataset. The per-sample estimators (ce,
/// snap) return the mean of their per-sample estimates here; the sweep
/// harness instead averages per-sample errors, which is not the same
/// quantity. Module errors (no alarms, no features, empty collection)
/// propagate to the caller.
LocationEstimate run_estimator(EstimatorId id, const BinaryDataSet& data,
                               const SensorField& field,
                               const SingleRunOptions& options = {});

SweepResult run_sweep(const ExperimentConfig& config, SweepDetail* detail = nullptr);

/// Named experiment configurations reproducing the study's figures.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// CSV rendering: header sweep_value,estimator,avg_rms,trials,flagged;
/// rows sorted by (sweep value, estimator name); decimals with six
/// fractional digits. Byte-stable for a fixed seed.
std::string to_csv(const SweepResult& result);
void write_csv(const SweepResult& result, const std::filesystem::path& path);

/// Plain-text key=value config document ('#' starts a comment). Unknown
/// keys raise std::invalid_argument.
ExperimentConfig parse_config_text(const std::string& text,
                                   const ExperimentConfig& base = {});
ExperimentConfig parse_config_file(const std::filesystem::path& path,
                                   const ExperimentConfig& base = {});
void apply_config_entry(ExperimentConfig& config, const std::string& key,
                        const std::string& value);

}  // namespace srcloc
