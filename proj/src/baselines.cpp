#include "srcloc/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "srcloc/errors.hpp"

namespace srcloc {

namespace {

// log Q(z) for the standard normal upper tail, finite for every finite z.
// erfc underflows to 0 once z passes about 37, which deep in-range sensors
// reach easily, so the far tail switches to the asymptotic expansion
// Q(z) ~ phi(z)/z * (1 - 1/z^2 + 3/z^4); at the switch point the series
// truncation error is already below 1e-7 in the log.
double log_normal_upper_tail(double z) {
  constexpr double kSwitch = 30.0;
  constexpr double kHalfLog2Pi = 0.91893853320467274178;
  if (z > kSwitch) {
    const double z2 = z * z;
    return -0.5 * z2 - std::log(z) - kHalfLog2Pi +
           std::log1p(-1.0 / z2 + 3.0 / (z2 * z2));
  }
  if (z < -kSwitch) {
    const double z2 = z * z;
    const double upper = -0.5 * z2 - std::log(-z) - kHalfLog2Pi +
                         std::log1p(-1.0 / z2 + 3.0 / (z2 * z2));
    return std::log1p(-std::exp(upper));
  }
  return std::log(0.5 * std::erfc(z / std::sqrt(2.0)));
}

struct LogBernoulli {
  double log_alarm;
  double log_quiet;
};

// Per-sensor log probabilities of the alarm and quiet events for a
// hypothesized source, evaluated in the log domain so that far sensors
// keep their full false-negative penalty instead of underflowing.
LogBernoulli log_alarm_terms(Point candidate, Point sensor,
                             const PropagationParams& prop,
                             const SensingParams& sensing, double assumed_c) {
  const SourceSpec hypo(candidate, assumed_c);
  const double s = attenuated_signal(hypo, sensor, prop);
  if (std::isinf(s)) {
    // Candidate exactly on the sensor: an alarm is certain, so a quiet
    // sample has probability zero and the cell loses the argmax honestly.
    return {0.0, -std::numeric_limits<double>::infinity()};
  }
  const double z = (sensing.threshold - s) / sensing.noise_sigma;
  return {log_normal_upper_tail(z), log_normal_upper_tail(-z)};
}

std::vector<int> all_columns(int n) {
  std::vector<int> cols(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = i;
  return cols;
}

}  // namespace

// Argmax of the collapsed per-sensor form
// sum_n [cnt_n log q'_n + (m - cnt_n) log(1 - q'_n)] over the given
// columns; p_f_assumed = 0 reduces q' to q exactly, which is what makes
// the fault-tolerant variant bit-identical to plain ML at zero assumed
// fault rate.
LocationEstimate restricted_ml_estimate(const BinaryDataSet& data,
                                        std::span<const Point> positions,
                                        std::span<const int> columns,
                                        const PropagationParams& prop,
                                        const SensingParams& sensing,
                                        double p_f_assumed, const GridSpec& grid,
                                        double assumed_c) {
  if (!(sensing.noise_sigma > 0.0)) {
    throw std::invalid_argument("likelihood estimators need noise_sigma > 0");
  }
  if (!(assumed_c > 0.0)) {
    throw std::invalid_argument("likelihood estimators need assumed_c > 0");
  }
  for (int c : columns) {
    if (c < 0 || c >= data.sensor_count()) {
      throw std::invalid_argument("restricted_ml_estimate: column index out of range");
    }
  }
  const int m = data.sample_count();
  std::vector<int> counts(columns.size(), 0);
  for (int t = 0; t < m; ++t) {
    for (std::size_t ci = 0; ci < columns.size(); ++ci) {
      counts[ci] += data.at(t, columns[ci]);
    }
  }

  double best = -std::numeric_limits<double>::infinity();
  int best_index = 0;
  const int cells = grid.cell_count();
  for (int idx = 0; idx < cells; ++idx) {
    const Point cand = grid.center(idx);
    double ll = 0.0;
    for (std::size_t ci = 0; ci < columns.size(); ++ci) {
      const Point pos = positions[static_cast<std::size_t>(columns[ci])];
      double log_alarm, log_quiet;
      if (p_f_assumed == 0.0) {
        const LogBernoulli lb = log_alarm_terms(cand, pos, prop, sensing, assumed_c);
        log_alarm = lb.log_alarm;
        log_quiet = lb.log_quiet;
      } else {
        // The assumed fault rate bounds the marginal alarm probability
        // away from 0 and 1, so plain evaluation stays finite even when
        // the underlying tail probability underflows.
        const double q = alarm_probability(cand, pos, prop, sensing, assumed_c);
        const double q_marg = (1.0 - p_f_assumed) * q + p_f_assumed * (1.0 - q);
        log_alarm = std::log(q_marg);
        log_quiet = std::log1p(-q_marg);
      }
      if (counts[ci] > 0) ll += counts[ci] * log_alarm;
      if (counts[ci] < m) ll += (m - counts[ci]) * log_quiet;
    }
    if (ll > best) {
      best = ll;
      best_index = idx;
    }
  }
  const Point p = grid.center(best_index);
  return {p.x, p.y};
}

LocationEstimate centroid_estimate(std::span<const std::uint8_t> row,
                                   std::span<const Point> positions) {
  if (row.size() != positions.size()) {
    throw std::invalid_argument("centroid_estimate: row and field sizes differ");
  }
  double sx = 0.0, sy = 0.0;
  int alarmed = 0;
  for (std::size_t n = 0; n < row.size(); ++n) {
    if (row[n]) {
      sx += positions[n].x;
      sy += positions[n].y;
      ++alarmed;
    }
  }
  if (alarmed == 0) throw NoAlarmError("centroid_estimate: no alarmed sensor in sample");
  return {sx / alarmed, sy / alarmed};
}

LocationEstimate centroid_estimate(std::span<const std::uint8_t> row,
                                   const SensorField& field) {
  return centroid_estimate(row, field.positions());
}

double alarm_probability(Point candidate, Point sensor,
                         const PropagationParams& prop,
                         const SensingParams& sensing, double assumed_c) {
  if (!(sensing.noise_sigma > 0.0)) {
    throw std::invalid_argument("alarm_probability: noise_sigma must be > 0");
  }
  if (!(assumed_c > 0.0)) {
    throw std::invalid_argument("alarm_probability: assumed_c must be > 0");
  }
  const SourceSpec hypo(candidate, assumed_c);
  const double s = attenuated_signal(hypo, sensor, prop);
  if (std::isinf(s)) return 1.0;
  const double x = (sensing.threshold - s) / sensing.noise_sigma;
  return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double log_likelihood(const BinaryDataSet& data, std::span<const Point> positions,
                      Point candidate, const PropagationParams& prop,
                      const SensingParams& sensing, double assumed_c) {
  if (data.sensor_count() != static_cast<int>(positions.size())) {
    throw std::invalid_argument("log_likelihood: dataset and field sizes differ");
  }
  if (!(sensing.noise_sigma > 0.0)) {
    throw std::invalid_argument("log_likelihood: noise_sigma must be > 0");
  }
  if (!(assumed_c > 0.0)) {
    throw std::invalid_argument("log_likelihood: assumed_c must be > 0");
  }
  const int m = data.sample_count();
  double total = 0.0;
  for (int n = 0; n < data.sensor_count(); ++n) {
    int count = 0;
    for (int t = 0; t < m; ++t) count += data.at(t, n);
    const LogBernoulli lb = log_alarm_terms(
        candidate, positions[static_cast<std::size_t>(n)], prop, sensing, assumed_c);
    if (count > 0) total += count * lb.log_alarm;
    if (count < m) total += (m - count) * lb.log_quiet;
  }
  return total;
}

double log_likelihood(const BinaryDataSet& data, const SensorField& field,
                      Point candidate, const PropagationParams& prop,
                      const SensingParams& sensing, double assumed_c) {
  return log_likelihood(data, field.positions(), candidate, prop, sensing, assumed_c);
}

LocationEstimate ml_estimate(const BinaryDataSet& data, const SensorField& field,
                             const PropagationParams& prop,
                             const SensingParams& sensing, const GridSpec& grid,
                             double assumed_c) {
  if (data.sensor_count() != field.size()) {
    throw std::invalid_argument("ml_estimate: dataset and field sizes differ");
  }
  const std::vector<int> cols = all_columns(field.size());
  return restricted_ml_estimate(data, field.positions(), cols, prop, sensing,
                                0.0, grid, assumed_c);
}

LocationEstimate ftml_estimate(const BinaryDataSet& data, const SensorField& field,
                               const PropagationParams& prop,
                               const SensingParams& sensing, double p_f_assumed,
                               const GridSpec& grid, double assumed_c) {
  if (data.sensor_count() != field.size()) {
    throw std::invalid_argument("ftml_estimate: dataset and field sizes differ");
  }
  if (!(p_f_assumed >= 0.0 && p_f_assumed < 0.5)) {
    throw std::invalid_argument("ftml_estimate: p_f_assumed must lie in [0, 0.5)");
  }
  const std::vector<int> cols = all_columns(field.size());
  return restricted_ml_estimate(data, field.positions(), cols, prop, sensing,
                                p_f_assumed, grid, assumed_c);
}

std::vector<int> snap_scores(std::span<const std::uint8_t> row,
                             std::span<const Point> positions,
                             double roi_radius_assumed, const GridSpec& grid) {
  if (row.size() != positions.size()) {
    throw std::invalid_argument("snap_scores: row and field sizes differ");
  }
  if (!(roi_radius_assumed > 0.0)) {
    throw std::invalid_argument("snap_scores: roi radius must be > 0");
  }
  std::vector<int> scores(static_cast<std::size_t>(grid.cell_count()), 0);
  const double r2 = roi_radius_assumed * roi_radius_assumed;
  const double cell = grid.cell_size();
  for (std::size_t n = 0; n < row.size(); ++n) {
    const Point pos = positions[n];
    const int contribution = row[n] ? 1 : -1;
    const int col_lo = std::max(0, static_cast<int>((pos.x - roi_radius_assumed) / cell));
    const int col_hi = std::min(grid.cols() - 1,
                                static_cast<int>((pos.x + roi_radius_assumed) / cell));
    const int row_lo = std::max(0, static_cast<int>((pos.y - roi_radius_assumed) / cell));
    const int row_hi = std::min(grid.rows() - 1,
                                static_cast<int>((pos.y + roi_radius_assumed) / cell));
    for (int gr = row_lo; gr <= row_hi; ++gr) {
      for (int gc = col_lo; gc <= col_hi; ++gc) {
        if (squared_distance(grid.center(gc, gr), pos) <= r2) {
          scores[static_cast<std::size_t>(gr * grid.cols() + gc)] += contribution;
        }
      }
    }
  }
  return scores;
}

LocationEstimate snap_estimate(std::span<const std::uint8_t> row,
                               std::span<const Point> positions,
                               double roi_radius_assumed, const GridSpec& grid) {
  const std::vector<int> scores = snap_scores(row, positions, roi_radius_assumed, grid);
  int best_index = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[static_cast<std::size_t>(best_index)]) {
      best_index = static_cast<int>(i);
    }
  }
  const Point p = grid.center(best_index);
  return {p.x, p.y};
}

LocationEstimate snap_estimate(std::span<const std::uint8_t> row,
                               const SensorField& field, double roi_radius_assumed,
                               const GridSpec& grid) {
  return snap_estimate(row, field.positions(), roi_radius_assumed, grid);
}

}  // namespace srcloc
