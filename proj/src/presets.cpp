#include <stdexcept>
#include <string>
#include <vector>

#include "srcloc/harness.hpp"

namespace srcloc {

namespace {

// Shared grids for the study's sweep figures. The exact axis ticks are a
// reading of the published plots, so every preset stays overridable.
std::vector<double> fault_grid() {
  return {0.0, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
}

ExperimentConfig single_source_base() {
  ExperimentConfig c;
  c.estimators = {EstimatorId::kCe, EstimatorId::kMl, EstimatorId::kFs,
                  EstimatorId::kHs};
  return c;
}

ExperimentConfig comparison_base(int n_sensors) {
  // Appendix-style comparison runs: small sample budget, the alternative
  // estimators need likelihood or ROI knowledge supplied via knobs.
  ExperimentConfig c;
  c.sweep_axis = SweepAxis::kFaultProb;
  c.sweep_values = fault_grid();
  c.m_samples = 20;
  c.n_sensors = n_sensors;
  return c;
}

}  // namespace

ExperimentConfig preset(const std::string& name) {
  if (name == "fig3") {
    ExperimentConfig c;
    c.bound_only = true;
    c.sweep_axis = SweepAxis::kFaultProb;
    c.sweep_values = {0.1, 0.2, 0.3, 0.4, 0.5};
    c.bound_delta = 0.1;
    c.bound_d = 10;
    c.trials = 1;
    c.estimators.clear();
    return c;
  }
  if (name == "fig4a" || name == "fig4b") {
    ExperimentConfig c = single_source_base();
    c.sweep_axis = SweepAxis::kThreshold;
    c.sweep_values = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    c.p_f = 0.1;
    c.m_samples = name == "fig4a" ? 50 : 100;
    c.n_sensors = name == "fig4a" ? 150 : 200;
    return c;
  }
  if (name == "fig5a" || name == "fig5b") {
    ExperimentConfig c = single_source_base();
    c.sweep_axis = SweepAxis::kFaultProb;
    c.sweep_values = fault_grid();
    c.m_samples = 100;
    c.n_sensors = name == "fig5a" ? 150 : 200;
    return c;
  }
  if (name == "fig6") {
    ExperimentConfig c = single_source_base();
    c.sweep_axis = SweepAxis::kSamples;
    c.sweep_values = {25, 50, 100, 150, 200};
    c.p_f = 0.2;
    c.n_sensors = 200;
    return c;
  }
  if (name == "fig7") {
    ExperimentConfig c = single_source_base();
    c.sweep_axis = SweepAxis::kSensors;
    c.sweep_values = {50, 100, 150, 200};
    c.p_f = 0.1;
    c.m_samples = 200;
    return c;
  }
  if (name == "fig8a" || name == "fig8b") {
    ExperimentConfig c = single_source_base();
    c.sweep_axis = SweepAxis::kVariance;
    c.sweep_values = {1, 2, 4, 6, 9};
    c.p_f = name == "fig8a" ? 0.0 : 0.2;
    c.m_samples = 50;
    c.n_sensors = 200;
    return c;
  }
  if (name == "fig9") {
    ExperimentConfig c;
    c.estimators = {EstimatorId::kHs, EstimatorId::kFs};
    c.k_sources = 2;
    c.placement = Placement::kUniform;
    c.sweep_axis = SweepAxis::kFaultProb;
    c.sweep_values = fault_grid();
    c.m_samples = 50;
    c.n_sensors = 200;
    return c;
  }
  if (name == "fig10") {
    ExperimentConfig c;
    c.estimators = {EstimatorId::kHs, EstimatorId::kFs};
    c.k_sources = 2;
    c.placement = Placement::kDistancePair;
    c.sweep_axis = SweepAxis::kDistance;
    c.sweep_values = {20, 40, 60, 80};
    c.p_f = 0.2;
    c.m_samples = 50;
    c.n_sensors = 200;
    return c;
  }
  if (name == "figA1a" || name == "figA1b") {
    ExperimentConfig c = single_source_base();
    c.sweep_axis = SweepAxis::kFaultProb;
    c.sweep_values = fault_grid();
    c.m_samples = name == "figA1a" ? 10 : 20;
    c.n_sensors = 200;
    return c;
  }
  if (name == "figB1") {
    ExperimentConfig c = comparison_base(50);
    c.estimators = {EstimatorId::kHs, EstimatorId::kFs, EstimatorId::kFtml,
                    EstimatorId::kSnap};
    c.ftml_pf_offset = 0.05;
    c.snap_roi_scale = 1.2;
    return c;
  }
  if (name == "figB2a" || name == "figB2b") {
    ExperimentConfig c = comparison_base(name == "figB2a" ? 50 : 100);
    c.estimators = {EstimatorId::kFsMl, EstimatorId::kFtml, EstimatorId::kSnap};
    c.ftml_pf_offset = 0.05;
    c.snap_roi_scale = 1.2;
    return c;
  }
  if (name == "mlmod-a" || name == "mlmod-b") {
    ExperimentConfig c = comparison_base(name == "mlmod-a" ? 50 : 100);
    c.estimators = {EstimatorId::kFsMl, EstimatorId::kFtml, EstimatorId::kSnap};
    return c;
  }

  std::string known;
  for (const std::string& id : preset_names()) {
    if (!known.empty()) known += ", ";
    known += id;
  }
  throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
}

std::vector<std::string> preset_names() {
  return {"fig3",  "fig4a",  "fig4b",  "fig5a",  "fig5b",  "fig6",
          "fig7",  "fig8a",  "fig8b",  "fig9",   "fig10",  "figA1a",
          "figA1b", "figB1",  "figB2a", "figB2b", "mlmod-a", "mlmod-b"};
}

}  // namespace srcloc
