#include "srcloc/sim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace srcloc {

PropagationParams::PropagationParams(double alpha_, double gamma_)
    : alpha(alpha_), gamma(gamma_) {
  if (!(alpha > 0.0)) throw std::invalid_argument("PropagationParams: alpha must be positive");
  if (!(gamma > 0.0)) throw std::invalid_argument("PropagationParams: gamma must be positive");
}

SensingParams::SensingParams(double v_max_, double threshold_, double noise_sigma_)
    : v_max(v_max_), threshold(threshold_), noise_sigma(noise_sigma_) {
  if (!(v_max > 0.0)) throw std::invalid_argument("SensingParams: v_max must be positive");
  if (!(threshold > 0.0)) throw std::invalid_argument("SensingParams: threshold must be positive");
  if (threshold > v_max) throw std::invalid_argument("SensingParams: threshold cannot exceed v_max");
  if (noise_sigma < 0.0) throw std::invalid_argument("SensingParams: noise_sigma cannot be negative");
}

FaultParams::FaultParams(double p_f_) : p_f(p_f_) {
  if (!(p_f >= 0.0 && p_f < 0.5)) {
    throw std::invalid_argument("FaultParams: p_f must lie in [0, 0.5)");
  }
}

SourceSpec::SourceSpec(Point location_, double emitted_signal_)
    : location(location_), emitted_signal(emitted_signal_) {
  if (!(emitted_signal > 0.0)) {
    throw std::invalid_argument("SourceSpec: emitted_signal must be positive");
  }
}

SensorField::SensorField(std::vector<Point> positions, AreaBounds bounds)
    : positions_(std::move(positions)), bounds_(bounds) {
  if (positions_.empty()) throw std::invalid_argument("SensorField: needs at least one sensor");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!bounds_.contains(positions_[i])) {
      throw std::invalid_argument("SensorField: sensor " + std::to_string(i) +
                                  " lies outside the deployment area");
    }
  }
}

BinaryDataSet::BinaryDataSet(int sample_count, int sensor_count)
    : sample_count_(sample_count), sensor_count_(sensor_count) {
  if (sample_count < 1) throw std::invalid_argument("BinaryDataSet: sample_count must be >= 1");
  if (sensor_count < 1) throw std::invalid_argument("BinaryDataSet: sensor_count must be >= 1");
  bits_.assign(static_cast<std::size_t>(sample_count) * sensor_count, 0);
}

BinaryDataSet::BinaryDataSet(int sample_count, int sensor_count,
                             std::vector<std::uint8_t> bits)
    : BinaryDataSet(sample_count, sensor_count) {
  if (bits.size() != bits_.size()) {
    throw std::invalid_argument("BinaryDataSet: bit vector has wrong length");
  }
  for (std::uint8_t b : bits) {
    if (b > 1) throw std::invalid_argument("BinaryDataSet: entries must be 0 or 1");
  }
  bits_ = std::move(bits);
}

SensorField deploy_sensors(int n, const AreaBounds& bounds, RngSeed seed) {
  if (n < 1) throw std::invalid_argument("deploy_sensors: n must be >= 1");
  std::vector<Point> positions;
  positions.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    StreamRng rng(derive_key(seed.master, StreamTag::kDeploy, static_cast<std::uint64_t>(i)));
    const double x = rng.next_unit() * bounds.width();
    const double y = rng.next_unit() * bounds.height();
    positions.push_back({x, y});
  }
  return SensorField(std::move(positions), bounds);
}

double attenuated_signal(const SourceSpec& source, Point sensor,
                         const PropagationParams& prop) {
  const double d2 = squared_distance(source.location, sensor);
  if (d2 == 0.0) return std::numeric_limits<double>::infinity();
  // alpha == 2 is by far the common case; skip the pow() round trip.
  const double r_alpha = (prop.alpha == 2.0) ? d2 : std::pow(std::sqrt(d2), prop.alpha);
  return prop.gamma * source.emitted_signal / r_alpha;
}

double roi_radius(double emitted_signal, double threshold,
                  const PropagationParams& prop) {
  if (!(emitted_signal > 0.0)) throw std::invalid_argument("roi_radius: emitted_signal must be positive");
  if (!(threshold > 0.0)) throw std::invalid_argument("roi_radius: threshold must be positive");
  return std::pow(prop.gamma * emitted_signal / threshold, 1.0 / prop.alpha);
}

double measure(std::span<const SourceSpec> sources, Point sensor,
               const PropagationParams& prop, const SensingParams& sensing,
               double noise) {
  double superposed = noise;
  for (const SourceSpec& s : sources) {
    superposed += attenuated_signal(s, sensor, prop);
  }
  return std::min(sensing.v_max, superposed);
}

int quantize(double measurement, double threshold) {
  return measurement >= threshold ? 1 : 0;
}

int fault_channel(int bit, const FaultParams& fault, StreamRng& rng) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("fault_channel: bit must be 0 or 1");
  return rng.next_bernoulli(fault.p_f) ? 1 - bit : bit;
}

BinaryDataSet generate_dataset(const SensorField& field,
                               std::span<const SourceSpec> sources,
                               const PropagationParams& prop,
                               const SensingParams& sensing,
                               const FaultParams& fault, int m, RngSeed seed) {
  if (m < 1) throw std::invalid_argument("generate_dataset: m must be >= 1");
  const int n = field.size();
  BinaryDataSet data(m, n);
  for (int t = 0; t < m; ++t) {
    for (int i = 0; i < n; ++i) {
      double noise = 0.0;
      if (sensing.noise_sigma > 0.0) {
        StreamRng noise_rng(derive_key(seed.master, StreamTag::kNoise,
                                       static_cast<std::uint64_t>(t),
                                       static_cast<std::uint64_t>(i)));
        noise = sensing.noise_sigma * noise_rng.next_gaussian();
      }
      const double z = measure(sources, field.position(i), prop, sensing, noise);
      int bit = quantize(z, sensing.threshold);
      if (fault.p_f > 0.0) {
        StreamRng fault_rng(derive_key(seed.master, StreamTag::kFault,
                                       static_cast<std::uint64_t>(t),
                                       static_cast<std::uint64_t>(i)));
        bit = fault_channel(bit, fault, fault_rng);
      }
      data.set(t, i, static_cast<std::uint8_t>(bit));
    }
  }
  return data;
}

std::vector<int> true_neighborhood(const SensorField& field,
                                   const SourceSpec& source,
                                   const PropagationParams& prop,
                                   double threshold) {
  if (!(threshold > 0.0)) throw std::invalid_argument("true_neighborhood: threshold must be positive");
  std::vector<int> members;
  for (int i = 0; i < field.size(); ++i) {
    // Same expression as the noise-free sensing pipeline, so this set is
    // bit-for-bit the alarmed set of a clean sample (not merely within
    // rounding of the r <= roi_radius form).
    if (attenuated_signal(source, field.position(i), prop) >= threshold) {
      members.push_back(i);
    }
  }
  return members;
}

}  // namespace srcloc
