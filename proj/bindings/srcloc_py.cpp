// Python bindings for the main operations: simulation, the estimators,
// hitting-set solving, sample bounds, and the sweep harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "srcloc/baselines.hpp"
#include "srcloc/harness.hpp"
#include "srcloc/hitting_set.hpp"
#include "srcloc/multi_source.hpp"
#include "srcloc/rng.hpp"
#include "srcloc/sim.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using namespace srcloc;

using PointList = std::vector<std::pair<double, double>>;

SensorField make_field(const PointList& positions, double width, double height) {
  std::vector<Point> pts;
  pts.reserve(positions.size());
  for (const auto& [x, y] : positions) pts.push_back({x, y});
  return SensorField(std::move(pts), AreaBounds(width, height));
}

BinaryDataSet make_dataset(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows[0].empty()) {
    throw std::invalid_argument("dataset must have at least one sample and sensor");
  }
  const int m = static_cast<int>(rows.size());
  const int n = static_cast<int>(rows[0].size());
  BinaryDataSet data(m, n);
  for (int t = 0; t < m; ++t) {
    if (static_cast<int>(rows[static_cast<std::size_t>(t)].size()) != n) {
      throw std::invalid_argument("dataset rows must all have the same length");
    }
    for (int j = 0; j < n; ++j) {
      const int v = rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
      if (v != 0 && v != 1) {
        throw std::invalid_argument("dataset entries must be 0 or 1");
      }
      data.set(t, j, static_cast<std::uint8_t>(v));
    }
  }
  return data;
}

}  // namespace

PYBIND11_MODULE(srcloc, m) {
  m.doc() = "decentralized source localization under a sensor fault model";

  m.def("sample_bound", &sample_bound, "delta"_a, "d"_a, "p_f"_a,
        "Smallest sample count M with success probability at least 1 - delta "
        "for a neighborhood of degree d under fault probability p_f.");
  m.def("multi_sample_bound", &multi_sample_bound, "delta"_a, "k_sources"_a,
        "d"_a, "p_f"_a, "Sample bound with d replaced by k_sources * d.");

  m.def(
      "roi_radius",
      [](double emitted_signal, double threshold, double alpha, double gamma) {
        return roi_radius(emitted_signal, threshold,
                          PropagationParams(alpha, gamma));
      },
      "emitted_signal"_a, "threshold"_a, "alpha"_a = 2.0, "gamma"_a = 1.0,
      "Radius where the noise-free signal equals the alarm threshold.");

  m.def(
      "connection_distance",
      [](double c1, double c2, double alpha, double gamma) {
        return connection_distance(c1, c2, PropagationParams(alpha, gamma));
      },
      "c1"_a, "c2"_a, "alpha"_a = 2.0, "gamma"_a = 1.0,
      "Largest distance at which two sources' regions of influence touch.");

  m.def(
      "deploy",
      [](int n, double width, double height, std::uint64_t seed) {
        const SensorField field =
            deploy_sensors(n, AreaBounds(width, height), RngSeed{seed});
        PointList out;
        out.reserve(static_cast<std::size_t>(field.size()));
        for (const Point& p : field.positions()) out.emplace_back(p.x, p.y);
        return out;
      },
      "n"_a, "width"_a = 100.0, "height"_a = 100.0, "seed"_a = 1,
      "Uniform sensor deployment; position i depends only on (seed, i).");

  m.def(
      "simulate",
      [](const PointList& positions,
         const std::vector<std::tuple<double, double, double>>& sources, int m,
         std::uint64_t seed, double width, double height, double alpha,
         double gamma, double v_max, double threshold, double noise_sigma,
         double p_f) {
        const SensorField field = make_field(positions, width, height);
        std::vector<SourceSpec> specs;
        specs.reserve(sources.size());
        for (const auto& [x, y, c] : sources) specs.emplace_back(Point{x, y}, c);
        const BinaryDataSet data = generate_dataset(
            field, specs, PropagationParams(alpha, gamma),
            SensingParams(v_max, threshold, noise_sigma), FaultParams(p_f), m,
            RngSeed{seed});
        std::vector<std::vector<int>> rows(
            static_cast<std::size_t>(data.sample_count()),
            std::vector<int>(static_cast<std::size_t>(data.sensor_count())));
        for (int t = 0; t < data.sample_count(); ++t) {
          for (int j = 0; j < data.sensor_count(); ++j) {
            rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] =
                data.at(t, j);
          }
        }
        return rows;
      },
      "positions"_a, "sources"_a, "m"_a, "seed"_a = 1, "width"_a = 100.0,
      "height"_a = 100.0, "alpha"_a = 2.0, "gamma"_a = 1.0, "v_max"_a = 3000.0,
      "threshold"_a = 5.0, "noise_sigma"_a = 1.0, "p_f"_a = 0.0,
      "Binary M x N dataset for sources as (x, y, emitted_signal) tuples.");

  m.def(
      "true_neighborhood",
      [](const PointList& positions, double source_x, double source_y,
         double emitted_signal, double threshold, double width, double height,
         double alpha, double gamma) {
        const SensorField field = make_field(positions, width, height);
        return true_neighborhood(field,
                                 SourceSpec({source_x, source_y}, emitted_signal),
                                 PropagationParams(alpha, gamma), threshold);
      },
      "positions"_a, "source_x"_a, "source_y"_a, "emitted_signal"_a = 3000.0,
      "threshold"_a = 5.0, "width"_a = 100.0, "height"_a = 100.0,
      "alpha"_a = 2.0, "gamma"_a = 1.0,
      "Sensors whose noise-free signal reaches the threshold.");

  m.def(
      "estimate",
      [](const std::string& estimator, const std::vector<std::vector<int>>& data,
         const PointList& positions, double width, double height,
         double threshold, double noise_sigma, double v_max, double alpha,
         double gamma, double assumed_c, double assumed_pf, double roi_radius_in,
         double roi_scale, double cell_size, std::array<double, 3> weights,
         const std::string& solver, std::uint64_t node_budget) {
        const SensorField field = make_field(positions, width, height);
        const BinaryDataSet ds = make_dataset(data);
        if (ds.sensor_count() != field.size()) {
          throw std::invalid_argument(
              "dataset sensor count does not match the position count");
        }
        ExperimentConfig knobs;
        apply_config_entry(knobs, "solver", solver);
        SingleRunOptions o;
        o.prop = PropagationParams(alpha, gamma);
        o.sensing = SensingParams(v_max, threshold, noise_sigma);
        o.assumed_c = assumed_c;
        o.assumed_p_f = assumed_pf;
        o.snap_roi_radius =
            roi_radius_in > 0.0
                ? roi_radius_in
                : roi_scale * roi_radius(assumed_c, threshold, o.prop);
        o.cell_size = cell_size;
        o.weights = weights;
        o.solver = knobs.solver;
        o.node_budget = node_budget;
        const LocationEstimate e =
            run_estimator(parse_estimator(estimator), ds, field, o);
        return std::make_pair(e.x, e.y);
      },
      "estimator"_a, "data"_a, "positions"_a, "width"_a = 100.0,
      "height"_a = 100.0, "threshold"_a = 5.0, "noise_sigma"_a = 1.0,
      "v_max"_a = 3000.0, "alpha"_a = 2.0, "gamma"_a = 1.0,
      "assumed_c"_a = 3000.0, "assumed_pf"_a = 0.0, "roi_radius"_a = 0.0,
      "roi_scale"_a = 1.0, "cell_size"_a = 1.0,
      "weights"_a = std::array<double, 3>{1.0, 1.0, 1.0}, "solver"_a = "auto",
      "node_budget"_a = std::uint64_t{10000000},
      "Run one estimator (ce|ml|ftml|snap|hs|fs|fsml) on a dataset.");

  m.def(
      "minimum_hitting_set",
      [](const std::vector<std::vector<int>>& subsets, std::uint64_t node_budget) {
        NeighborhoodCollection collection;
        collection.subsets = subsets;
        const HittingSet hs =
            minimum_hitting_set(collection, SolverOptions{node_budget});
        return std::make_pair(hs.members, hs.optimal);
      },
      "subsets"_a, "node_budget"_a = std::uint64_t{10000000},
      "Exact minimum hitting set; returns (members, optimal).");

  m.def(
      "greedy_hitting_set",
      [](const std::vector<std::vector<int>>& subsets) {
        NeighborhoodCollection collection;
        collection.subsets = subsets;
        return minimal_hitting_set(collection).members;
      },
      "subsets"_a, "Greedy minimal hitting set (not necessarily minimum).");

  m.def("preset_names", &preset_names, "Known figure preset ids.");

  m.def(
      "run_preset",
      [](const std::string& name, const std::string& overrides) {
        ExperimentConfig config = preset(name);
        if (!overrides.empty()) config = parse_config_text(overrides, config);
        return to_csv(run_sweep(config));
      },
      "name"_a, "overrides"_a = "",
      "Run a figure preset (optionally overridden by key=value lines) and "
      "return the CSV text.");

  m.def(
      "run_config",
      [](const std::string& text) {
        return to_csv(run_sweep(parse_config_text(text)));
      },
      "config"_a, "Run a key=value experiment config and return the CSV text.");
}
