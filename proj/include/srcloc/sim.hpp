#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "srcloc/geometry.hpp"
#include "srcloc/rng.hpp"

namespace srcloc {

/// Isotropic power-law attenuation: a source emitting c is sensed at
/// distance r with amplitude gamma * c / r^alpha.
struct PropagationParams {
  double alpha = 2.0;
  double gamma = 1.0;

  PropagationParams() = default;
  PropagationParams(double alpha_, double gamma_);
};

/// Sensing front end: additive Gaussian noise with deviation noise_sigma,
/// output clipped at v_max, local alarm decision at threshold.
struct SensingParams {
  double v_max = 3000.0;
  double threshold = 5.0;
  double noise_sigma = 1.0;

  SensingParams() = default;
  SensingParams(double v_max_, double threshold_, double noise_sigma_);
};

/// Symmetric bit-flip channel applied to each local decision.
struct FaultParams {
  double p_f = 0.0;

  FaultParams() = default;
  explicit FaultParams(double p_f_);
};

/// A point source with its emitted signal amplitude.
struct SourceSpec {
  Point location;
  double emitted_signal = 3000.0;

  SourceSpec() = default;
  SourceSpec(Point location_, double emitted_signal_);
};

/// Immutable set of sensor positions inside a deployment area.
class SensorField {
 public:
  SensorField(std::vector<Point> positions, AreaBounds bounds);

  int size() const { return static_cast<int>(positions_.size()); }
  Point position(int n) const { return positions_[static_cast<std::size_t>(n)]; }
  std::span<const Point> positions() const { return positions_; }
  const AreaBounds& bounds() const { return bounds_; }

 private:
  std::vector<Point> positions_;
  AreaBounds bounds_;
};

/// M x N matrix of binary sensor reports, row t = one synchronous sample.
class BinaryDataSet {
 public:
  BinaryDataSet(int sample_count, int sensor_count);
  BinaryDataSet(int sample_count, int sensor_count, std::vector<std::uint8_t> bits);

  int sample_count() const { return sample_count_; }
  int sensor_count() const { return sensor_count_; }

  std::uint8_t at(int t, int n) const {
    return bits_[static_cast<std::size_t>(t) * sensor_count_ + n];
  }
  void set(int t, int n, std::uint8_t v) {
    bits_[static_cast<std::size_t>(t) * sensor_count_ + n] = v;
  }
  std::span<const std::uint8_t> row(int t) const {
    return {bits_.data() + static_cast<std::size_t>(t) * sensor_count_,
            static_cast<std::size_t>(sensor_count_)};
  }

 private:
  int sample_count_;
  int sensor_count_;
  std::vector<std::uint8_t> bits_;
};

/// Scatters n sensors independently and uniformly over the area. Position
/// i depends only on (seed, i), so growing n keeps the existing sensors.
SensorField deploy_sensors(int n, const AreaBounds& bounds, RngSeed seed);

/// Attenuated amplitude of one source at a sensor position. A sensor
/// exactly at the source sees +infinity; measure() clips it to v_max.
double attenuated_signal(const SourceSpec& source, Point sensor,
                         const PropagationParams& prop);

/// Radius within which the noise-free attenuated signal reaches the alarm
/// threshold: (gamma c / threshold)^(1/alpha).
double roi_radius(double emitted_signal, double threshold,
                  const PropagationParams& prop);

/// One analog measurement: superposed source signals plus the supplied
/// noise value, clipped at v_max.
double measure(std::span<const SourceSpec> sources, Point sensor,
               const PropagationParams& prop, const SensingParams& sensing,
               double noise);

/// Local alarm decision: 1 iff the measurement reaches the threshold.
int quantize(double measurement, double threshold);

/// Passes one bit through the symmetric flip channel.
int fault_channel(int bit, const FaultParams& fault, StreamRng& rng);

/// Generates m synchronous samples of the whole field. Noise and fault
/// draws for entry (t, n) come from their own streams keyed by (t, n), so
/// datasets with different m or n agree on the overlapping entries.
BinaryDataSet generate_dataset(const SensorField& field,
                               std::span<const SourceSpec> sources,
                               const PropagationParams& prop,
                               const SensingParams& sensing,
                               const FaultParams& fault, int m, RngSeed seed);

/// Sensors whose noise-free signal from the source reaches the threshold;
/// identical to the alarmed set of a noise-free fault-free sample.
std::vector<int> true_neighborhood(const SensorField& field,
                                   const SourceSpec& source,
                                   const PropagationParams& prop,
                                   double threshold);

}  // namespace srcloc
