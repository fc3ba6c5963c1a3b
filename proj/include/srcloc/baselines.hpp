#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srcloc/estimate.hpp"
#include "srcloc/sim.hpp"

namespace srcloc {

/// Centroid estimator: arithmetic mean of the alarmed sensors' positions
/// in one sample. Throws NoAlarmError when the row is all zeros.
LocationEstimate centroid_estimate(std::span<const std::uint8_t> row,
                                   std::span<const Point> positions);
LocationEstimate centroid_estimate(std::span<const std::uint8_t> row,
                                   const SensorField& field);

/// Probability that a sensor alarms when the source sits at the candidate
/// location and emits assumed_c: Q((T - s(candidate))/sigma). Requires
/// noise_sigma > 0; the noise-free pipeline has no alarm randomness.
double alarm_probability(Point candidate, Point sensor,
                         const PropagationParams& prop,
                         const SensingParams& sensing, double assumed_c);

/// Binary-decision log likelihood of the whole dataset under a candidate
/// source location. Tail terms are evaluated in the log domain, so a far
/// sensor's false negative keeps its full penalty (on the order of -z^2/2)
/// without the tail probability underflowing to log(0). A candidate
/// exactly on a quiet sensor yields -inf: a quiet sample there is a
/// zero-probability event, not an underflow.
double log_likelihood(const BinaryDataSet& data, std::span<const Point> positions,
                      Point candidate, const PropagationParams& prop,
                      const SensingParams& sensing, double assumed_c);
double log_likelihood(const BinaryDataSet& data, const SensorField& field,
                      Point candidate, const PropagationParams& prop,
                      const SensingParams& sensing, double assumed_c);

/// Grid-search maximum likelihood: argmax of log_likelihood over the grid
/// cell centers; ties go to the lowest cell index (row-major).
LocationEstimate ml_estimate(const BinaryDataSet& data, const SensorField& field,
                             const PropagationParams& prop,
                             const SensingParams& sensing, const GridSpec& grid,
                             double assumed_c = 3000.0);

/// Fault-tolerant ML: the alarm probability is marginalized over the
/// symmetric flip channel, q' = (1 - p_f) q + p_f (1 - q). With
/// p_f_assumed = 0 this is bit-identical to ml_estimate.
LocationEstimate ftml_estimate(const BinaryDataSet& data, const SensorField& field,
                               const PropagationParams& prop,
                               const SensingParams& sensing, double p_f_assumed,
                               const GridSpec& grid, double assumed_c = 3000.0);

/// Likelihood grid argmax over a subset of sensor columns: the shared
/// core behind ml_estimate, ftml_estimate, and the feature-selection ML
/// refinement. Column indices must be valid for the dataset.
LocationEstimate restricted_ml_estimate(const BinaryDataSet& data,
                                        std::span<const Point> positions,
                                        std::span<const int> columns,
                                        const PropagationParams& prop,
                                        const SensingParams& sensing,
                                        double p_f_assumed, const GridSpec& grid,
                                        double assumed_c = 3000.0);

/// SNAP score matrix for one sample: each alarmed sensor adds +1 and each
/// quiet sensor adds -1 to every cell whose center lies within the
/// assumed ROI radius of it. Row-major, one entry per grid cell.
std::vector<int> snap_scores(std::span<const std::uint8_t> row,
                             std::span<const Point> positions,
                             double roi_radius_assumed, const GridSpec& grid);

/// SNAP estimate for one sample: center of the highest-scoring cell, ties
/// to the lowest cell index.
LocationEstimate snap_estimate(std::span<const std::uint8_t> row,
                               std::span<const Point> positions,
                               double roi_radius_assumed, const GridSpec& grid);
LocationEstimate snap_estimate(std::span<const std::uint8_t> row,
                               const SensorField& field,
                               double roi_radius_assumed, const GridSpec& grid);

}  // namespace srcloc
