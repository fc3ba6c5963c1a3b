#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "srcloc/harness.hpp"

using namespace srcloc;

namespace {

const std::vector<double> kFaultGrid{0.0,  0.05, 0.10, 0.15, 0.20,
                                     0.25, 0.30, 0.35, 0.40};

const std::vector<EstimatorId> kSingleSourceSet{EstimatorId::kCe, EstimatorId::kMl,
                                                EstimatorId::kFs, EstimatorId::kHs};

const std::vector<EstimatorId> kMultiSet{EstimatorId::kHs, EstimatorId::kFs};

const std::vector<EstimatorId> kMlVariantSet{EstimatorId::kFsMl, EstimatorId::kFtml,
                                             EstimatorId::kSnap};

}  // namespace

TEST_CASE("preset catalogue is stable") {
  CHECK(preset_names() ==
        std::vector<std::string>{"fig3", "fig4a", "fig4b", "fig5a", "fig5b",
                                 "fig6", "fig7", "fig8a", "fig8b", "fig9",
                                 "fig10", "figA1a", "figA1b", "figB1", "figB2a",
                                 "figB2b", "mlmod-a", "mlmod-b"});
}

TEST_CASE("every preset passes validation") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    CHECK_NOTHROW(validate_config(preset(name)));
  }
}

TEST_CASE("unknown presets list the catalogue") {
  try {
    preset("fig99");
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("unknown preset 'fig99'") != std::string::npos);
    for (const std::string& name : preset_names()) {
      CAPTURE(name);
      CHECK(msg.find(name) != std::string::npos);
    }
  }
}

TEST_CASE("sample-bound preset") {
  const ExperimentConfig c = preset("fig3");
  CHECK(c.bound_only);
  CHECK(c.sweep_axis == SweepAxis::kFaultProb);
  CHECK(c.sweep_values == std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5});
  CHECK(c.bound_delta == 0.1);
  CHECK(c.bound_d == 10);
  CHECK(c.trials == 1);
  CHECK(c.estimators.empty());
}

TEST_CASE("threshold sweep presets") {
  const ExperimentConfig a = preset("fig4a");
  CHECK(a.sweep_axis == SweepAxis::kThreshold);
  CHECK(a.sweep_values == std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  CHECK(a.p_f == 0.1);
  CHECK(a.m_samples == 50);
  CHECK(a.n_sensors == 150);
  CHECK(a.estimators == kSingleSourceSet);

  const ExperimentConfig b = preset("fig4b");
  CHECK(b.m_samples == 100);
  CHECK(b.n_sensors == 200);
}

TEST_CASE("fault sweep presets") {
  const ExperimentConfig a = preset("fig5a");
  CHECK(a.sweep_axis == SweepAxis::kFaultProb);
  CHECK(a.sweep_values == kFaultGrid);
  CHECK(a.m_samples == 100);
  CHECK(a.n_sensors == 150);
  CHECK(a.estimators == kSingleSourceSet);

  const ExperimentConfig b = preset("fig5b");
  CHECK(b.n_sensors == 200);
  CHECK(b.m_samples == 100);
}

TEST_CASE("sample count sweep preset") {
  const ExperimentConfig c = preset("fig6");
  CHECK(c.sweep_axis == SweepAxis::kSamples);
  CHECK(c.sweep_values == std::vector<double>{25, 50, 100, 150, 200});
  CHECK(c.p_f == 0.2);
  CHECK(c.n_sensors == 200);
  CHECK(c.estimators == kSingleSourceSet);
}

TEST_CASE("sensor count sweep preset") {
  const ExperimentConfig c = preset("fig7");
  CHECK(c.sweep_axis == SweepAxis::kSensors);
  CHECK(c.sweep_values == std::vector<double>{50, 100, 150, 200});
  CHECK(c.p_f == 0.1);
  CHECK(c.m_samples == 200);
}

TEST_CASE("noise variance sweep presets") {
  const ExperimentConfig a = preset("fig8a");
  CHECK(a.sweep_axis == SweepAxis::kVariance);
  CHECK(a.sweep_values == std::vector<double>{1, 2, 4, 6, 9});
  CHECK(a.p_f == 0.0);
  CHECK(a.m_samples == 50);
  CHECK(a.n_sensors == 200);

  const ExperimentConfig b = preset("fig8b");
  CHECK(b.p_f == 0.2);
}

TEST_CASE("two source presets") {
  const ExperimentConfig grid = preset("fig9");
  CHECK(grid.k_sources == 2);
  CHECK(grid.placement == Placement::kUniform);
  CHECK(grid.sweep_axis == SweepAxis::kFaultProb);
  CHECK(grid.sweep_values == kFaultGrid);
  CHECK(grid.m_samples == 50);
  CHECK(grid.n_sensors == 200);
  CHECK(grid.estimators == kMultiSet);

  const ExperimentConfig pair = preset("fig10");
  CHECK(pair.k_sources == 2);
  CHECK(pair.placement == Placement::kDistancePair);
  CHECK(pair.sweep_axis == SweepAxis::kDistance);
  CHECK(pair.sweep_values == std::vector<double>{20, 40, 60, 80});
  CHECK(pair.p_f == 0.2);
  CHECK(pair.m_samples == 50);
  CHECK(pair.n_sensors == 200);
  CHECK(pair.estimators == kMultiSet);
}

TEST_CASE("small sample budget presets") {
  const ExperimentConfig a = preset("figA1a");
  CHECK(a.sweep_axis == SweepAxis::kFaultProb);
  CHECK(a.sweep_values == kFaultGrid);
  CHECK(a.m_samples == 10);
  CHECK(a.n_sensors == 200);
  CHECK(a.estimators == kSingleSourceSet);

  const ExperimentConfig b = preset("figA1b");
  CHECK(b.m_samples == 20);
}

TEST_CASE("alternative estimator comparison presets") {
  const ExperimentConfig b1 = preset("figB1");
  CHECK(b1.estimators == std::vector<EstimatorId>{EstimatorId::kHs, EstimatorId::kFs,
                                                  EstimatorId::kFtml,
                                                  EstimatorId::kSnap});
  CHECK(b1.sweep_axis == SweepAxis::kFaultProb);
  CHECK(b1.sweep_values == kFaultGrid);
  CHECK(b1.m_samples == 20);
  CHECK(b1.n_sensors == 50);
  CHECK(b1.ftml_pf_offset == 0.05);
  CHECK(b1.snap_roi_scale == 1.2);

  const ExperimentConfig b2a = preset("figB2a");
  CHECK(b2a.estimators == kMlVariantSet);
  CHECK(b2a.n_sensors == 50);
  CHECK(b2a.m_samples == 20);
  CHECK(b2a.ftml_pf_offset == 0.05);
  CHECK(b2a.snap_roi_scale == 1.2);

  const ExperimentConfig b2b = preset("figB2b");
  CHECK(b2b.n_sensors == 100);

  const ExperimentConfig ma = preset("mlmod-a");
  CHECK(ma.estimators == kMlVariantSet);
  CHECK(ma.n_sensors == 50);
  CHECK(ma.ftml_pf_offset == 0.0);
  CHECK(ma.snap_roi_scale == 1.0);

  const ExperimentConfig mb = preset("mlmod-b");
  CHECK(mb.n_sensors == 100);
}

TEST_CASE("presets keep the shared execution defaults") {
  for (const std::string& name : preset_names()) {
    CAPTURE(name);
    const ExperimentConfig c = preset(name);
    if (name != "fig3") CHECK(c.trials == 100);
    CHECK(c.master_seed == 1);
    CHECK(c.threads == 0);
    CHECK(c.area_width == 100.0);
    CHECK(c.area_height == 100.0);
    CHECK(c.emitted_signal == 3000.0);
    CHECK(c.v_max == 3000.0);
    CHECK(c.threshold == 5.0);
    CHECK(c.cell_size == 1.0);
  }
}
