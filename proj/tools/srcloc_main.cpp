// Command line front end: simulate fields and datasets, run a single
// estimator on saved files, execute sweeps and figure presets, and print
// sample-complexity bounds.

#include <cstdio>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "srcloc/baselines.hpp"
#include "srcloc/dataset_io.hpp"
#include "srcloc/errors.hpp"
#include "srcloc/feature_selection.hpp"
#include "srcloc/harness.hpp"
#include "srcloc/hitting_set.hpp"
#include "srcloc/multi_source.hpp"
#include "srcloc/rng.hpp"
#include "srcloc/sim.hpp"

namespace {

using namespace srcloc;

Point parse_point(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("expected x,y but got '" + text + "'");
  }
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

// Key=value overrides shared by the sweep and preset subcommands. Every
// config key gets a long-form flag; values reuse the config file parser.
struct Overrides {
  std::vector<std::pair<std::string, std::string>> entries;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
  static const std::pair<const char*, const char*> kFlags[] = {
      {"--area-width", "area_width"},
      {"--area-height", "area_height"},
      {"--n-sensors", "n_sensors"},
      {"--m-samples", "m_samples"},
      {"--k-sources", "k_sources"},
      {"--placement", "placement"},
      {"--sources", "sources"},
      {"--pair-distance", "pair_distance"},
      {"--emitted-signal", "emitted_signal"},
      {"--alpha", "alpha"},
      {"--gamma", "gamma"},
      {"--v-max", "v_max"},
      {"--threshold", "threshold"},
      {"--noise-sigma", "noise_sigma"},
      {"--pf", "p_f"},
      {"--fixed-field", "fixed_field"},
      {"--estimators", "estimators"},
      {"--cell-size", "cell_size"},
      {"--weights", "weights"},
      {"--ftml-pf-offset", "ftml_pf_offset"},
      {"--snap-roi-scale", "snap_roi_scale"},
      {"--solver", "solver"},
      {"--node-budget", "node_budget"},
      {"--multi-iterative", "multi_iterative"},
      {"--multi-max-rounds", "multi_max_rounds"},
      {"--kmeans-max-iters", "kmeans_max_iters"},
      {"--sweep-axis", "sweep_axis"},
      {"--sweep-values", "sweep_values"},
      {"--bound-only", "bound_only"},
      {"--bound-delta", "bound_delta"},
      {"--bound-d", "bound_d"},
      {"--trials", "trials"},
      {"--seed", "seed"},
      {"--threads", "threads"},
  };
  for (const auto& [flag, key] : kFlags) {
    const std::string key_name = key;
    cmd->add_option_function<std::string>(
        flag,
        [&ov, key_name](const std::string& value) {
          ov.entries.emplace_back(key_name, value);
        },
        std::string("config key ") + key_name);
  }
}

void apply_overrides(ExperimentConfig& config, const Overrides& ov) {
  for (const auto& [key, value] : ov.entries) {
    apply_config_entry(config, key, value);
  }
}

void emit_result(const SweepResult& result, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(to_csv(result).c_str(), stdout);
  } else {
    write_csv(result, out_path);
    std::printf("wrote %s (%zu rows)\n", out_path.c_str(), result.rows.size());
  }
}

int run_simulate(const std::string& field_in, const std::string& field_out,
                 const std::string& data_out, int n, int k, int m, double width,
                 double height, double pf, double threshold, double sigma,
                 double v_max, double alpha, double gamma, double signal,
                 const std::vector<std::string>& source_args,
                 std::uint64_t seed) {
  const AreaBounds area(width, height);
  const SensorField field =
      field_in.empty()
          ? deploy_sensors(n, area, RngSeed{derive_key(seed, StreamTag::kField)})
          : read_field(field_in, area);

  std::vector<SourceSpec> sources;
  if (!source_args.empty()) {
    for (const std::string& arg : source_args) {
      sources.emplace_back(parse_point(arg), signal);
    }
  } else {
    for (int j = 0; j < k; ++j) {
      StreamRng rng(derive_key(seed, StreamTag::kPlace,
                               static_cast<std::uint64_t>(j)));
      sources.emplace_back(
          Point{rng.next_unit() * width, rng.next_unit() * height}, signal);
    }
  }

  const PropagationParams prop(alpha, gamma);
  const SensingParams sensing(v_max, threshold, sigma);
  const FaultParams fault(pf);
  const BinaryDataSet data =
      generate_dataset(field, sources, prop, sensing, fault, m,
                       RngSeed{derive_key(seed, StreamTag::kData)});

  for (std::size_t j = 0; j < sources.size(); ++j) {
    std::printf("source %zu %.6f %.6f\n", j, sources[j].location.x,
                sources[j].location.y);
  }
  if (field_in.empty()) {
    write_field(field_out, field);
    std::printf("wrote %s (%d sensors)\n", field_out.c_str(), field.size());
  }
  write_dataset(data_out, data);
  std::printf("wrote %s (%d samples x %d sensors)\n", data_out.c_str(),
              data.sample_count(), data.sensor_count());
  return 0;
}

int run_estimate(const std::string& estimator, const std::string& data_path,
                 const std::string& field_path, double width, double height,
                 double threshold, double sigma, double v_max, double alpha,
                 double gamma, double signal, double cell_size,
                 double assumed_pf, double roi_radius_flag, double roi_scale,
                 const std::string& weights_arg, const std::string& solver_arg,
                 std::uint64_t node_budget, const std::string& truth_arg,
                 const std::string& dump_collection) {
  const AreaBounds area(width, height);
  const SensorField field = read_field(field_path, area);
  const BinaryDataSet data = read_dataset(data_path);
  if (data.sensor_count() != field.size()) {
    throw std::invalid_argument("dataset has " +
                                std::to_string(data.sensor_count()) +
                                " sensors but the field has " +
                                std::to_string(field.size()));
  }

  ExperimentConfig knobs;  // reuse the config parsers for list-valued flags
  apply_config_entry(knobs, "weights", weights_arg);
  apply_config_entry(knobs, "solver", solver_arg);

  SingleRunOptions opts;
  opts.prop = PropagationParams(alpha, gamma);
  opts.sensing = SensingParams(v_max, threshold, sigma);
  opts.assumed_c = signal;
  opts.assumed_p_f = assumed_pf;
  opts.snap_roi_radius = roi_radius_flag > 0.0
                             ? roi_radius_flag
                             : roi_scale * roi_radius(signal, threshold, opts.prop);
  opts.cell_size = cell_size;
  opts.weights = knobs.weights;
  opts.solver = knobs.solver;
  opts.node_budget = node_budget;

  const EstimatorId id = parse_estimator(estimator);
  if (!dump_collection.empty()) {
    write_collection(dump_collection, build_collection(data).subsets);
    std::printf("wrote %s\n", dump_collection.c_str());
  }
  const LocationEstimate est = run_estimator(id, data, field, opts);
  std::printf("%s %.6f %.6f\n", estimator.c_str(), est.x, est.y);
  if (!truth_arg.empty()) {
    const Point truth = parse_point(truth_arg);
    std::printf("error %.6f\n", estimate_error(est, truth));
  }
  return 0;
}

int run_bound(double delta, int d, int k, const std::vector<double>& pf_values,
              const std::string& out_path) {
  ExperimentConfig config;
  config.bound_only = true;
  config.sweep_axis = SweepAxis::kFaultProb;
  config.sweep_values = pf_values;
  config.bound_delta = delta;
  config.bound_d = d;
  config.k_sources = k;
  config.trials = 1;
  config.estimators.clear();
  const SweepResult result = run_sweep(config);
  if (out_path.empty()) {
    for (const SweepRow& row : result.rows) {
      std::printf("pf %.6f m %d\n", row.sweep_value,
                  static_cast<int>(row.avg_rms));
    }
  } else {
    emit_result(result, out_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized source localization: simulator, estimators, sweeps"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate a field and dataset");
  std::string sim_field_in, sim_field_out = "field.txt", sim_data_out = "dataset.txt";
  int sim_n = 200, sim_k = 1, sim_m = 100;
  double sim_w = 100.0, sim_h = 100.0, sim_pf = 0.1, sim_t = 5.0, sim_sigma = 1.0;
  double sim_vmax = 3000.0, sim_alpha = 2.0, sim_gamma = 1.0, sim_c = 3000.0;
  std::vector<std::string> sim_sources;
  std::uint64_t sim_seed = 1;
  sim->add_option("--field-in", sim_field_in, "reuse an existing field file");
  sim->add_option("--field-out", sim_field_out, "field output path");
  sim->add_option("--data-out", sim_data_out, "dataset output path");
  sim->add_option("--n-sensors", sim_n, "sensors to deploy");
  sim->add_option("--k-sources", sim_k, "sources to place uniformly");
  sim->add_option("--m-samples", sim_m, "samples to generate");
  sim->add_option("--width", sim_w, "area width");
  sim->add_option("--height", sim_h, "area height");
  sim->add_option("--pf", sim_pf, "fault probability");
  sim->add_option("--threshold", sim_t, "alarm threshold");
  sim->add_option("--noise-sigma", sim_sigma, "noise standard deviation");
  sim->add_option("--v-max", sim_vmax, "sensor saturation value");
  sim->add_option("--alpha", sim_alpha, "attenuation exponent");
  sim->add_option("--gamma", sim_gamma, "attenuation gain");
  sim->add_option("--emitted-signal", sim_c, "source signal amplitude");
  sim->add_option("--source", sim_sources, "fixed source as x,y (repeatable)");
  sim->add_option("--seed", sim_seed, "master seed");

  // estimate
  auto* est = app.add_subcommand("estimate", "run one estimator on saved files");
  std::string est_name, est_data, est_field, est_truth, est_dump;
  std::string est_weights = "1,1,1", est_solver = "auto";
  double est_w = 100.0, est_h = 100.0, est_t = 5.0, est_sigma = 1.0;
  double est_vmax = 3000.0, est_alpha = 2.0, est_gamma = 1.0, est_c = 3000.0;
  double est_cell = 1.0, est_pf = 0.0, est_roi = 0.0, est_roi_scale = 1.0;
  std::uint64_t est_budget = 10000000;
  est->add_option("--estimator", est_name, "ce|ml|ftml|snap|hs|fs|fsml")->required();
  est->add_option("--data", est_data, "dataset file")->required();
  est->add_option("--field", est_field, "field file")->required();
  est->add_option("--width", est_w, "area width");
  est->add_option("--height", est_h, "area height");
  est->add_option("--threshold", est_t, "alarm threshold");
  est->add_option("--noise-sigma", est_sigma, "noise standard deviation");
  est->add_option("--v-max", est_vmax, "sensor saturation value");
  est->add_option("--alpha", est_alpha, "attenuation exponent");
  est->add_option("--gamma", est_gamma, "attenuation gain");
  est->add_option("--emitted-signal", est_c, "assumed source amplitude");
  est->add_option("--cell-size", est_cell, "candidate grid cell size");
  est->add_option("--assumed-pf", est_pf, "fault probability assumed by ftml");
  est->add_option("--roi-radius", est_roi, "explicit ROI radius for snap");
  est->add_option("--roi-scale", est_roi_scale, "ROI scale for snap");
  est->add_option("--weights", est_weights, "fs band weights w1,w2,w3");
  est->add_option("--solver", est_solver, "hitting set solver: auto|exact|greedy");
  est->add_option("--node-budget", est_budget, "exact solver node budget");
  est->add_option("--truth", est_truth, "true source as x,y; prints the error");
  est->add_option("--dump-collection", est_dump,
                  "write the alarmed-subset collection to this path");

  // sweep
  auto* swp = app.add_subcommand("sweep", "run an experiment sweep to CSV");
  std::string swp_config, swp_preset, swp_out;
  Overrides swp_ov;
  swp->add_option("--config", swp_config, "key=value config file");
  swp->add_option("--preset", swp_preset, "start from a named preset");
  swp->add_option("--out", swp_out, "CSV output path (default stdout)");
  add_override_flags(swp, swp_ov);

  // preset
  auto* pre = app.add_subcommand("preset", "run a named figure preset");
  std::string pre_name, pre_out, pre_config;
  bool pre_list = false;
  Overrides pre_ov;
  pre->add_option("name", pre_name, "preset id");
  pre->add_flag("--list", pre_list, "list preset ids and exit");
  pre->add_option("--config", pre_config, "key=value overrides file");
  pre->add_option("--out", pre_out, "CSV output path (default stdout)");
  add_override_flags(pre, pre_ov);

  // bound
  auto* bnd = app.add_subcommand("bound", "sample-complexity bound calculator");
  double bnd_delta = 0.1;
  int bnd_d = 10, bnd_k = 1;
  std::vector<double> bnd_pf;
  std::string bnd_out;
  bnd->add_option("--delta", bnd_delta, "failure probability budget");
  bnd->add_option("--d", bnd_d, "neighborhood degree");
  bnd->add_option("--k", bnd_k, "source count");
  bnd->add_option("--pf", bnd_pf, "fault probabilities (repeatable)")->required();
  bnd->add_option("--out", bnd_out, "CSV output path (default plain text)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return run_simulate(sim_field_in, sim_field_out, sim_data_out, sim_n, sim_k,
                          sim_m, sim_w, sim_h, sim_pf, sim_t, sim_sigma, sim_vmax,
                          sim_alpha, sim_gamma, sim_c, sim_sources, sim_seed);
    }
    if (est->parsed()) {
      return run_estimate(est_name, est_data, est_field, est_w, est_h, est_t,
                          est_sigma, est_vmax, est_alpha, est_gamma, est_c,
                          est_cell, est_pf, est_roi, est_roi_scale, est_weights,
                          est_solver, est_budget, est_truth, est_dump);
    }
    if (swp->parsed()) {
      srcloc::ExperimentConfig config;
      if (!swp_preset.empty()) config = srcloc::preset(swp_preset);
      if (!swp_config.empty()) config = srcloc::parse_config_file(swp_config, config);
      apply_overrides(config, swp_ov);
      emit_result(srcloc::run_sweep(config), swp_out);
      return 0;
    }
    if (pre->parsed()) {
      if (pre_list) {
        for (const std::string& id : srcloc::preset_names()) {
          std::printf("%s\n", id.c_str());
        }
        return 0;
      }
      if (pre_name.empty()) {
        throw std::invalid_argument("preset: name required (or --list)");
      }
      srcloc::ExperimentConfig config = srcloc::preset(pre_name);
      if (!pre_config.empty()) config = srcloc::parse_config_file(pre_config, config);
      apply_overrides(config, pre_ov);
      emit_result(srcloc::run_sweep(config), pre_out);
      return 0;
    }
    if (bnd->parsed()) {
      return run_bound(bnd_delta, bnd_d, bnd_k, bnd_pf, bnd_out);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
