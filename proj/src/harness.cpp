#include "srcloc/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "srcloc/baselines.hpp"
#include "srcloc/errors.hpp"
#include "srcloc/feature_selection.hpp"
#include "srcloc/multi_source.hpp"

namespace srcloc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// FTML's assumed fault probability must stay strictly below 1/2 or the
// marginal alarm probability stops being informative.
constexpr double kMaxAssumedFault = 0.4999999999;

const std::pair<EstimatorId, const char*> kEstimatorNames[] = {
    {EstimatorId::kCe, "ce"},     {EstimatorId::kMl, "ml"},
    {EstimatorId::kFtml, "ftml"}, {EstimatorId::kSnap, "snap"},
    {EstimatorId::kHs, "hs"},     {EstimatorId::kFs, "fs"},
    {EstimatorId::kFsMl, "fsml"},
};

const std::pair<SweepAxis, const char*> kAxisNames[] = {
    {SweepAxis::kThreshold, "threshold"}, {SweepAxis::kFaultProb, "pf"},
    {SweepAxis::kSamples, "m"},           {SweepAxis::kSensors, "n"},
    {SweepAxis::kVariance, "variance"},   {SweepAxis::kDistance, "distance"},
};

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double_value(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": expected a number, got '" + value + "'");
  }
  if (pos != value.size()) {
    throw std::invalid_argument(key + ": trailing characters in '" + value + "'");
  }
  return v;
}

long long parse_int_value(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": expected an integer, got '" + value + "'");
  }
  if (pos != value.size()) {
    throw std::invalid_argument(key + ": trailing characters in '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": expected an unsigned integer, got '" +
                                value + "'");
  }
  if (pos != value.size() || (!value.empty() && value[0] == '-')) {
    throw std::invalid_argument(key + ": bad unsigned integer '" + value + "'");
  }
  return v;
}

bool parse_bool_value(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw std::invalid_argument(key + ": expected a boolean, got '" + value + "'");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const std::string& tok : split(value, ',')) {
    if (tok.empty()) throw std::invalid_argument(key + ": empty list entry");
    out.push_back(parse_double_value(key, tok));
  }
  if (out.empty()) throw std::invalid_argument(key + ": empty list");
  return out;
}

SolverKind parse_solver_value(const std::string& value) {
  if (value == "auto") return SolverKind::kAuto;
  if (value == "exact") return SolverKind::kExact;
  if (value == "greedy") return SolverKind::kGreedy;
  throw std::invalid_argument("solver: expected auto|exact|greedy, got '" + value + "'");
}

Placement parse_placement_value(const std::string& value) {
  if (value == "uniform") return Placement::kUniform;
  if (value == "fixed") return Placement::kFixed;
  if (value == "pair") return Placement::kDistancePair;
  throw std::invalid_argument("placement: expected uniform|fixed|pair, got '" +
                              value + "'");
}

bool is_positive_integer(double v) {
  return v >= 1.0 && v == std::floor(v) && v <= 1e9;
}

bool uses_likelihood(const std::vector<EstimatorId>& estimators) {
  for (EstimatorId id : estimators) {
    if (id == EstimatorId::kMl || id == EstimatorId::kFtml ||
        id == EstimatorId::kFsMl) {
      return true;
    }
  }
  return false;
}

// One sweep value's concrete world parameters.
struct TrialSetting {
  int n = 0;
  int m = 0;
  double p_f = 0.0;
  double threshold = 0.0;
  double sigma = 0.0;
  double pair_distance = 0.0;
};

TrialSetting apply_sweep_value(const ExperimentConfig& c, double value) {
  TrialSetting t;
  t.n = c.n_sensors;
  t.m = c.m_samples;
  t.p_f = c.p_f;
  t.threshold = c.threshold;
  t.sigma = c.noise_sigma;
  t.pair_distance = c.pair_distance;
  switch (c.sweep_axis) {
    case SweepAxis::kThreshold:
      t.threshold = value;
      break;
    case SweepAxis::kFaultProb:
      t.p_f = value;
      break;
    case SweepAxis::kSamples:
      t.m = static_cast<int>(std::llround(value));
      break;
    case SweepAxis::kSensors:
      t.n = static_cast<int>(std::llround(value));
      break;
    case SweepAxis::kVariance:
      t.sigma = std::sqrt(value);
      break;
    case SweepAxis::kDistance:
      t.pair_distance = value;
      break;
  }
  return t;
}

std::vector<SourceSpec> place_sources(const ExperimentConfig& c,
                                      const TrialSetting& t,
                                      const AreaBounds& area,
                                      std::uint64_t world) {
  std::vector<SourceSpec> out;
  out.reserve(static_cast<std::size_t>(c.k_sources));
  switch (c.placement) {
    case Placement::kFixed:
      for (const Point& p : c.fixed_sources) out.emplace_back(p, c.emitted_signal);
      return out;
    case Placement::kUniform:
      for (int j = 0; j < c.k_sources; ++j) {
        StreamRng rng(derive_key(world, StreamTag::kPlace,
                                 static_cast<std::uint64_t>(j)));
        Point p{rng.next_unit() * area.width(), rng.next_unit() * area.height()};
        out.emplace_back(p, c.emitted_signal);
      }
      return out;
    case Placement::kDistancePair: {
      StreamRng rng(derive_key(world, StreamTag::kPlace));
      constexpr double kTwoPi = 6.283185307179586476925286766559;
      for (int attempt = 0; attempt < 1000000; ++attempt) {
        Point a{rng.next_unit() * area.width(), rng.next_unit() * area.height()};
        const double angle = rng.next_unit() * kTwoPi;
        Point b{a.x + t.pair_distance * std::cos(angle),
                a.y + t.pair_distance * std::sin(angle)};
        if (area.contains(b)) {
          out.emplace_back(a, c.emitted_signal);
          out.emplace_back(b, c.emitted_signal);
          return out;
        }
      }
      throw std::runtime_error("place_sources: no valid pair placement found");
    }
  }
  throw std::logic_error("place_sources: unknown placement");
}

// Smallest mean estimate-to-truth distance over all matchings. K is tiny
// (the config validator caps it at 8), so full enumeration is fine.
double matched_mean_error(const std::vector<LocationEstimate>& estimates,
                          const std::vector<Point>& truths) {
  std::vector<int> perm(truths.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (std::size_t i = 0; i < estimates.size(); ++i) {
      sum += distance(estimates[i].point(), truths[static_cast<std::size_t>(perm[i])]);
    }
    best = std::min(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(estimates.size());
}

double evaluate_single_source(EstimatorId id, const BinaryDataSet& data,
                              const SensorField& field, Point truth,
                              const ExperimentConfig& c, const TrialSetting& t,
                              const PropagationParams& prop,
                              const SensingParams& sensing, const GridSpec& grid) {
  switch (id) {
    case EstimatorId::kCe: {
      double sum = 0.0;
      int used = 0;
      for (int s = 0; s < data.sample_count(); ++s) {
        try {
          sum += estimate_error(centroid_estimate(data.row(s), field), truth);
          ++used;
        } catch (const NoAlarmError&) {
          // all-quiet samples carry no location information
        }
      }
      return used > 0 ? sum / used : kNan;
    }
    case EstimatorId::kMl:
      return estimate_error(
          ml_estimate(data, field, prop, sensing, grid, c.emitted_signal), truth);
    case EstimatorId::kFtml: {
      const double assumed =
          std::clamp(t.p_f + c.ftml_pf_offset, 0.0, kMaxAssumedFault);
      return estimate_error(ftml_estimate(data, field, prop, sensing, assumed,
                                          grid, c.emitted_signal),
                            truth);
    }
    case EstimatorId::kSnap: {
      const double radius =
          c.snap_roi_scale * roi_radius(c.emitted_signal, t.threshold, prop);
      double sum = 0.0;
      for (int s = 0; s < data.sample_count(); ++s) {
        sum += estimate_error(snap_estimate(data.row(s), field, radius, grid), truth);
      }
      return sum / data.sample_count();
    }
    case EstimatorId::kHs: {
      try {
        const NeighborhoodCollection coll = build_collection(data);
        return estimate_error(
            hs_estimate(coll, field, c.solver, SolverOptions{c.solver_node_budget}),
            truth);
      } catch (const EmptyCollectionError&) {
        return kNan;
      } catch (const SolverBudgetError&) {
        return kNan;
      }
    }
    case EstimatorId::kFs: {
      try {
        return estimate_error(fs_estimate(data, field, c.weights), truth);
      } catch (const NoFeaturesError&) {
        return kNan;
      }
    }
    case EstimatorId::kFsMl: {
      try {
        return estimate_error(
            fs_ml_estimate(data, field, prop, sensing, grid, c.emitted_signal),
            truth);
      } catch (const NoFeaturesError&) {
        return kNan;
      }
    }
  }
  throw std::logic_error("evaluate_single_source: unknown estimator");
}

double evaluate_multi_source(EstimatorId id, const BinaryDataSet& data,
                             const SensorField& field,
                             const std::vector<Point>& truths,
                             const ExperimentConfig& c, std::uint64_t world,
                             std::optional<ClusterAssignment>& shared_clusters) {
  MultiParams params;
  params.method = id == EstimatorId::kHs ? ClusterMethod::kHittingSet
                                         : ClusterMethod::kFeatureSelection;
  params.solver = c.solver;
  params.solver_options = SolverOptions{c.solver_node_budget};
  params.weights = c.weights;

  MultiEstimate est;
  if (c.multi_iterative) {
    est = iterative_localize(data, field, c.k_sources, params,
                             RngSeed{derive_key(world, StreamTag::kAssign)},
                             c.multi_max_rounds);
  } else {
    if (!shared_clusters) {
      shared_clusters =
          cluster_sensors(data, field, c.k_sources,
                          RngSeed{derive_key(world, StreamTag::kKmeans)},
                          c.kmeans_max_iters);
    }
    est = per_cluster_localize(data, field, *shared_clusters, params);
  }
  return matched_mean_error(est.locations, truths);
}

int resolve_threads(int configured, int trials) {
  int t = configured > 0 ? configured
                         : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  return std::min(t, trials);
}

}  // namespace

std::string estimator_name(EstimatorId id) {
  for (const auto& [eid, name] : kEstimatorNames) {
    if (eid == id) return name;
  }
  throw std::logic_error("estimator_name: unknown estimator id");
}

EstimatorId parse_estimator(const std::string& name) {
  for (const auto& [eid, ename] : kEstimatorNames) {
    if (name == ename) return eid;
  }
  throw std::invalid_argument("unknown estimator '" + name +
                              "' (known: ce, ml, ftml, snap, hs, fs, fsml)");
}

std::vector<EstimatorId> parse_estimator_list(const std::string& csv) {
  std::vector<EstimatorId> out;
  for (const std::string& tok : split(csv, ',')) {
    if (tok.empty()) throw std::invalid_argument("estimators: empty list entry");
    out.push_back(parse_estimator(tok));
  }
  if (out.empty()) throw std::invalid_argument("estimators: empty list");
  return out;
}

std::string sweep_axis_name(SweepAxis axis) {
  for (const auto& [a, name] : kAxisNames) {
    if (a == axis) return name;
  }
  throw std::logic_error("sweep_axis_name: unknown axis");
}

SweepAxis parse_sweep_axis(const std::string& name) {
  for (const auto& [a, aname] : kAxisNames) {
    if (name == aname) return a;
  }
  throw std::invalid_argument("unknown sweep axis '" + name +
                              "' (known: threshold, pf, m, n, variance, distance)");
}

void validate_config(const ExperimentConfig& c) {
  std::vector<std::string> problems;
  auto bad = [&problems](std::string msg) { problems.push_back(std::move(msg)); };
  auto finish = [&problems]() {
    if (problems.empty()) return;
    std::string msg = "invalid config: ";
    for (std::size_t i = 0; i < problems.size(); ++i) {
      if (i > 0) msg += "; ";
      msg += problems[i];
    }
    throw std::invalid_argument(msg);
  };

  if (!(c.area_width > 0.0) || !(c.area_height > 0.0)) {
    bad("area dimensions must be positive");
  }
  if (c.trials < 1) bad("trials must be at least 1");
  if (c.threads < 0) bad("threads must be non-negative");
  if (c.sweep_values.empty()) bad("sweep_values must not be empty");

  if (c.bound_only) {
    if (c.sweep_axis != SweepAxis::kFaultProb) {
      bad("bound computations sweep the fault probability");
    }
    if (!(c.bound_delta > 0.0 && c.bound_delta < 1.0)) {
      bad("bound_delta must lie in (0, 1)");
    }
    if (c.bound_d < 1) bad("bound_d must be at least 1");
    if (c.k_sources < 1) bad("k_sources must be at least 1");
    for (double v : c.sweep_values) {
      if (!(v >= 0.0 && v < 1.0)) {
        bad("bound sweep values must lie in [0, 1)");
        break;
      }
    }
    finish();
    return;
  }

  if (c.n_sensors < 1) bad("n_sensors must be at least 1");
  if (c.m_samples < 1) bad("m_samples must be at least 1");
  if (c.k_sources < 1) bad("k_sources must be at least 1");
  if (c.k_sources > 8) bad("k_sources above 8 is not supported");
  if (!(c.emitted_signal > 0.0)) bad("emitted_signal must be positive");
  if (!(c.alpha > 0.0)) bad("alpha must be positive");
  if (!(c.gamma > 0.0)) bad("gamma must be positive");
  if (!(c.v_max > 0.0)) bad("v_max must be positive");
  if (!(c.threshold > 0.0) || c.threshold > c.v_max) {
    bad("threshold must lie in (0, v_max]");
  }
  if (!(c.noise_sigma >= 0.0)) bad("noise_sigma must be non-negative");
  if (!(c.p_f >= 0.0 && c.p_f < 0.5)) bad("p_f must lie in [0, 0.5)");
  if (!(c.cell_size > 0.0)) bad("cell_size must be positive");
  if (!(c.snap_roi_scale > 0.0)) bad("snap_roi_scale must be positive");
  bool weight_ok = true;
  for (double w : c.weights) weight_ok = weight_ok && w >= 0.0;
  if (!weight_ok) bad("weights must be non-negative");
  if (weight_ok && c.weights[0] + c.weights[1] + c.weights[2] <= 0.0) {
    bad("at least one weight must be positive");
  }
  if (c.estimators.empty()) bad("estimators must not be empty");
  if (c.multi_max_rounds < 0) bad("multi_max_rounds must be non-negative");
  if (c.kmeans_max_iters < 1) bad("kmeans_max_iters must be at least 1");
  if (c.solver_node_budget < 1) bad("solver_node_budget must be at least 1");

  if (c.k_sources >= 2) {
    for (EstimatorId id : c.estimators) {
      if (id != EstimatorId::kHs && id != EstimatorId::kFs) {
        bad("only hs and fs support multiple sources");
        break;
      }
    }
    if (c.sweep_axis != SweepAxis::kSensors && c.n_sensors < c.k_sources) {
      bad("n_sensors must be at least k_sources");
    }
  }

  if (c.placement == Placement::kFixed) {
    if (static_cast<int>(c.fixed_sources.size()) != c.k_sources) {
      bad("fixed placement needs exactly k_sources locations");
    } else if (c.area_width > 0.0 && c.area_height > 0.0) {
      const AreaBounds area(c.area_width, c.area_height);
      for (const Point& p : c.fixed_sources) {
        if (!area.contains(p)) {
          bad("fixed source locations must lie inside the area");
          break;
        }
      }
    }
  }
  if (c.placement == Placement::kDistancePair && c.k_sources != 2) {
    bad("pair placement requires exactly 2 sources");
  }
  if (c.placement == Placement::kDistancePair &&
      c.sweep_axis != SweepAxis::kDistance && !(c.pair_distance > 0.0)) {
    bad("pair_distance must be positive");
  }
  if (c.sweep_axis == SweepAxis::kDistance &&
      c.placement != Placement::kDistancePair) {
    bad("distance sweeps require pair placement");
  }

  switch (c.sweep_axis) {
    case SweepAxis::kThreshold:
      for (double v : c.sweep_values) {
        if (!(v > 0.0) || v > c.v_max) {
          bad("threshold sweep values must lie in (0, v_max]");
          break;
        }
      }
      break;
    case SweepAxis::kFaultProb:
      for (double v : c.sweep_values) {
        if (!(v >= 0.0 && v < 0.5)) {
          bad("fault probability sweep values must lie in [0, 0.5)");
          break;
        }
      }
      break;
    case SweepAxis::kSamples:
      for (double v : c.sweep_values) {
        if (!is_positive_integer(v)) {
          bad("sample count sweep values must be positive integers");
          break;
        }
      }
      break;
    case SweepAxis::kSensors:
      for (double v : c.sweep_values) {
        if (!is_positive_integer(v) || v < c.k_sources) {
          bad("sensor count sweep values must be integers >= k_sources");
          break;
        }
      }
      break;
    case SweepAxis::kVariance:
      for (double v : c.sweep_values) {
        if (!(v >= 0.0)) {
          bad("variance sweep values must be non-negative");
          break;
        }
      }
      break;
    case SweepAxis::kDistance:
      for (double v : c.sweep_values) {
        if (!(v > 0.0)) {
          bad("distance sweep values must be positive");
          break;
        }
      }
      break;
  }

  if (uses_likelihood(c.estimators)) {
    if (c.sweep_axis == SweepAxis::kVariance) {
      for (double v : c.sweep_values) {
        if (!(v > 0.0)) {
          bad("likelihood estimators need positive noise variance");
          break;
        }
      }
    } else if (!(c.noise_sigma > 0.0)) {
      bad("likelihood estimators need noise_sigma > 0");
    }
  }

  finish();
}

double rms_error(std::span<const LocationEstimate> estimates,
                 std::span<const Point> truths) {
  if (estimates.size() != truths.size() || estimates.empty()) {
    throw std::invalid_argument("rms_error: estimate and truth counts must match");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    sum += distance(estimates[i].point(), truths[i]);
  }
  return sum / static_cast<double>(estimates.size());
}

LocationEstimate run_estimator(EstimatorId id, const BinaryDataSet& data,
                               const SensorField& field,
                               const SingleRunOptions& o) {
  const GridSpec grid(field.bounds(), o.cell_size);
  switch (id) {
    case EstimatorId::kCe: {
      double sx = 0.0;
      double sy = 0.0;
      int used = 0;
      for (int t = 0; t < data.sample_count(); ++t) {
        try {
          const LocationEstimate e = centroid_estimate(data.row(t), field);
          sx += e.x;
          sy += e.y;
          ++used;
        } catch (const NoAlarmError&) {
        }
      }
      if (used == 0) {
        throw NoAlarmError("run_estimator: no sample contains an alarm");
      }
      return {sx / used, sy / used};
    }
    case EstimatorId::kMl:
      return ml_estimate(data, field, o.prop, o.sensing, grid, o.assumed_c);
    case EstimatorId::kFtml:
      return ftml_estimate(data, field, o.prop, o.sensing,
                           std::clamp(o.assumed_p_f, 0.0, kMaxAssumedFault), grid,
                           o.assumed_c);
    case EstimatorId::kSnap: {
      const double radius =
          o.snap_roi_radius > 0.0
              ? o.snap_roi_radius
              : roi_radius(o.assumed_c, o.sensing.threshold, o.prop);
      double sx = 0.0;
      double sy = 0.0;
      for (int t = 0; t < data.sample_count(); ++t) {
        const LocationEstimate e = snap_estimate(data.row(t), field, radius, grid);
        sx += e.x;
        sy += e.y;
      }
      return {sx / data.sample_count(), sy / data.sample_count()};
    }
    case EstimatorId::kHs:
      return hs_estimate(build_collection(data), field, o.solver,
                         SolverOptions{o.node_budget});
    case EstimatorId::kFs:
      return fs_estimate(data, field, o.weights);
    case EstimatorId::kFsMl:
      return fs_ml_estimate(data, field, o.prop, o.sensing, grid, o.assumed_c);
  }
  throw std::logic_error("run_estimator: unknown estimator");
}

SweepResult run_sweep(const ExperimentConfig& config, SweepDetail* detail) {
  validate_config(config);

  std::vector<SweepRow> rows;
  std::vector<std::vector<double>> per_trial;

  if (config.bound_only) {
    for (double value : config.sweep_values) {
      const int m = config.k_sources > 1
                        ? multi_sample_bound(config.bound_delta, config.k_sources,
                                             config.bound_d, value)
                        : sample_bound(config.bound_delta, config.bound_d, value);
      SweepRow row;
      row.sweep_value = value;
      row.estimator = "bound";
      row.avg_rms = static_cast<double>(m);
      row.trials = config.trials;
      row.flagged = 0;
      rows.push_back(std::move(row));
      per_trial.emplace_back(static_cast<std::size_t>(config.trials),
                             static_cast<double>(m));
    }
  } else {
    const AreaBounds area(config.area_width, config.area_height);
    const PropagationParams prop(config.alpha, config.gamma);
    const int b_trials = config.trials;
    const std::size_t n_est = config.estimators.size();

    for (double value : config.sweep_values) {
      const TrialSetting setting = apply_sweep_value(config, value);
      const SensingParams sensing(config.v_max, setting.threshold, setting.sigma);
      const FaultParams fault(setting.p_f);
      const GridSpec grid(area, config.cell_size);

      // The shared field key ignores the trial index so every trial (and
      // every sweep value, via prefix-stable deployment) sees one field.
      std::optional<SensorField> shared_field;
      if (config.fixed_field) {
        shared_field.emplace(deploy_sensors(
            setting.n, area,
            RngSeed{derive_key(config.master_seed, StreamTag::kField)}));
      }

      std::vector<std::vector<double>> errs(
          n_est, std::vector<double>(static_cast<std::size_t>(b_trials), kNan));

      auto run_trial = [&](int b) {
        const std::uint64_t world = derive_key(config.master_seed, StreamTag::kTrial,
                                               static_cast<std::uint64_t>(b));
        std::optional<SensorField> own_field;
        if (!shared_field) {
          own_field.emplace(deploy_sensors(
              setting.n, area, RngSeed{derive_key(world, StreamTag::kField)}));
        }
        const SensorField& field = shared_field ? *shared_field : *own_field;

        const std::vector<SourceSpec> sources =
            place_sources(config, setting, area, world);
        const BinaryDataSet data =
            generate_dataset(field, sources, prop, sensing, fault, setting.m,
                             RngSeed{derive_key(world, StreamTag::kData)});

        if (config.k_sources == 1) {
          const Point truth = sources[0].location;
          for (std::size_t e = 0; e < n_est; ++e) {
            errs[e][static_cast<std::size_t>(b)] =
                evaluate_single_source(config.estimators[e], data, field, truth,
                                       config, setting, prop, sensing, grid);
          }
        } else {
          std::vector<Point> truths;
          truths.reserve(sources.size());
          for (const SourceSpec& s : sources) truths.push_back(s.location);
          std::optional<ClusterAssignment> shared_clusters;
          for (std::size_t e = 0; e < n_est; ++e) {
            errs[e][static_cast<std::size_t>(b)] =
                evaluate_multi_source(config.estimators[e], data, field, truths,
                                      config, world, shared_clusters);
          }
        }
      };

      const int n_threads = resolve_threads(config.threads, b_trials);
      if (n_threads <= 1) {
        for (int b = 0; b < b_trials; ++b) run_trial(b);
      } else {
        // Trials land in preallocated slots and the averaging below walks
        // them in trial order, so thread count never changes the bytes.
        std::vector<std::exception_ptr> failures(
            static_cast<std::size_t>(b_trials));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int w = 0; w < n_threads; ++w) {
          pool.emplace_back([&, w]() {
            for (int b = w; b < b_trials; b += n_threads) {
              try {
                run_trial(b);
              } catch (...) {
                failures[static_cast<std::size_t>(b)] = std::current_exception();
              }
            }
          });
        }
        for (std::thread& th : pool) th.join();
        for (const std::exception_ptr& ep : failures) {
          if (ep) std::rethrow_exception(ep);
        }
      }

      for (std::size_t e = 0; e < n_est; ++e) {
        double sum = 0.0;
        int used = 0;
        for (double err : errs[e]) {
          if (!std::isnan(err)) {
            sum += err;
            ++used;
          }
        }
        SweepRow row;
        row.sweep_value = value;
        row.estimator = estimator_name(config.estimators[e]);
        row.avg_rms = used > 0 ? sum / used : kNan;
        row.trials = used;
        row.flagged = b_trials - used;
        rows.push_back(std::move(row));
        per_trial.push_back(std::move(errs[e]));
      }
    }
  }

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&rows](std::size_t a, std::size_t b) {
                     if (rows[a].sweep_value != rows[b].sweep_value) {
                       return rows[a].sweep_value < rows[b].sweep_value;
                     }
                     return rows[a].estimator < rows[b].estimator;
                   });

  SweepResult result;
  result.rows.reserve(rows.size());
  for (std::size_t i : order) result.rows.push_back(std::move(rows[i]));
  if (detail) {
    detail->per_trial.clear();
    detail->per_trial.reserve(per_trial.size());
    for (std::size_t i : order) detail->per_trial.push_back(std::move(per_trial[i]));
  }
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::string out = "sweep_value,estimator,avg_rms,trials,flagged\n";
  char buf[192];
  for (const SweepRow& row : result.rows) {
    std::snprintf(buf, sizeof buf, "%.6f,%s,%.6f,%d,%d\n", row.sweep_value,
                  row.estimator.c_str(), row.avg_rms, row.trials, row.flagged);
    out += buf;
  }
  return out;
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_csv: cannot open " + path.string());
  }
  out << to_csv(result);
  if (!out) {
    throw std::runtime_error("write_csv: write failed for " + path.string());
  }
}

void apply_config_entry(ExperimentConfig& c, const std::string& key,
                        const std::string& value) {
  if (key == "area_width") {
    c.area_width = parse_double_value(key, value);
  } else if (key == "area_height") {
    c.area_height = parse_double_value(key, value);
  } else if (key == "n_sensors") {
    c.n_sensors = static_cast<int>(parse_int_value(key, value));
  } else if (key == "m_samples") {
    c.m_samples = static_cast<int>(parse_int_value(key, value));
  } else if (key == "k_sources") {
    c.k_sources = static_cast<int>(parse_int_value(key, value));
  } else if (key == "placement") {
    c.placement = parse_placement_value(value);
  } else if (key == "sources") {
    std::vector<Point> sources;
    for (const std::string& pair : split(value, ';')) {
      if (pair.empty()) continue;
      const std::vector<std::string> xy = split(pair, ',');
      if (xy.size() != 2) {
        throw std::invalid_argument("sources: expected x,y pairs separated by ';'");
      }
      sources.push_back(
          {parse_double_value(key, xy[0]), parse_double_value(key, xy[1])});
    }
    c.fixed_sources = std::move(sources);
  } else if (key == "pair_distance") {
    c.pair_distance = parse_double_value(key, value);
  } else if (key == "emitted_signal") {
    c.emitted_signal = parse_double_value(key, value);
  } else if (key == "alpha") {
    c.alpha = parse_double_value(key, value);
  } else if (key == "gamma") {
    c.gamma = parse_double_value(key, value);
  } else if (key == "v_max") {
    c.v_max = parse_double_value(key, value);
  } else if (key == "threshold") {
    c.threshold = parse_double_value(key, value);
  } else if (key == "noise_sigma") {
    c.noise_sigma = parse_double_value(key, value);
  } else if (key == "p_f") {
    c.p_f = parse_double_value(key, value);
  } else if (key == "fixed_field") {
    c.fixed_field = parse_bool_value(key, value);
  } else if (key == "estimators") {
    c.estimators = parse_estimator_list(value);
  } else if (key == "cell_size") {
    c.cell_size = parse_double_value(key, value);
  } else if (key == "weights") {
    const std::vector<double> w = parse_double_list(key, value);
    if (w.size() != 3) throw std::invalid_argument("weights: expected 3 values");
    c.weights = {w[0], w[1], w[2]};
  } else if (key == "ftml_pf_offset") {
    c.ftml_pf_offset = parse_double_value(key, value);
  } else if (key == "snap_roi_scale") {
    c.snap_roi_scale = parse_double_value(key, value);
  } else if (key == "solver") {
    c.solver = parse_solver_value(value);
  } else if (key == "node_budget") {
    c.solver_node_budget = parse_u64_value(key, value);
  } else if (key == "multi_iterative") {
    c.multi_iterative = parse_bool_value(key, value);
  } else if (key == "multi_max_rounds") {
    c.multi_max_rounds = static_cast<int>(parse_int_value(key, value));
  } else if (key == "kmeans_max_iters") {
    c.kmeans_max_iters = static_cast<int>(parse_int_value(key, value));
  } else if (key == "sweep_axis") {
    c.sweep_axis = parse_sweep_axis(value);
  } else if (key == "sweep_values") {
    c.sweep_values = parse_double_list(key, value);
  } else if (key == "bound_only") {
    c.bound_only = parse_bool_value(key, value);
  } else if (key == "bound_delta") {
    c.bound_delta = parse_double_value(key, value);
  } else if (key == "bound_d") {
    c.bound_d = static_cast<int>(parse_int_value(key, value));
  } else if (key == "trials") {
    c.trials = static_cast<int>(parse_int_value(key, value));
  } else if (key == "seed") {
    c.master_seed = parse_u64_value(key, value);
  } else if (key == "threads") {
    c.threads = static_cast<int>(parse_int_value(key, value));
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const ExperimentConfig& base) {
  ExperimentConfig c = base;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    }
    try {
      apply_config_entry(c, key, value);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
  }
  return c;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path,
                                   const ExperimentConfig& base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("parse_config_file: cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), base);
}

}  // namespace srcloc
