#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "lclt/calibration.hpp"
#include "lclt/harness.hpp"

using namespace lclt;

TEST(Fingerprint, KnownValues) {
  // FNV-1a 64 reference values
  EXPECT_EQ(calibration::fingerprint(""), "cbf29ce484222325");
  EXPECT_EQ(calibration::fingerprint("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(calibration::fingerprint("foobar"), "85944171f73967e8");
}

TEST(FrozenFile, MatchesCompiledConstantsAndGrid) {
  const auto file = calibration::load(LCLT_CALIBRATION_FILE);
  EXPECT_EQ(file.constants, calibration::frozen());
  EXPECT_EQ(file.fingerprint,
            calibration::fingerprint(harness::describe(harness::default_calibration_plans())))
      << "calibration grid changed; rerun `lclt calibrate --out data/calibration.json`";
  EXPECT_THROW(calibration::constant("no_such_key"), std::out_of_range);
}

TEST(FrozenFile, SaveLoadRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "lclt_calibration_roundtrip.json";
  calibration::CalibrationFile f{"0123456789abcdef", "test grid", {{"a", 0.125}, {"b", 3.0}}};
  calibration::save(path, f);
  const auto g = calibration::load(path);
  EXPECT_EQ(g.fingerprint, f.fingerprint);
  EXPECT_EQ(g.grid, f.grid);
  EXPECT_EQ(g.constants, f.constants);
  std::filesystem::remove(path);
}

TEST(FrozenFile, MissingOrMalformed) {
  EXPECT_ANY_THROW(calibration::load("/nonexistent/calibration.json"));
  const auto path = std::filesystem::temp_directory_path() / "lclt_calibration_bad.json";
  std::ofstream(path) << "{\"constants\": 3}";
  EXPECT_ANY_THROW(calibration::load(path));
  std::filesystem::remove(path);
}

TEST(FrozenConstants, CoverTheCalibrationGrid) {
  // every usable record of the grid the constants were fitted on lies in its band
  std::vector<harness::ComparisonRecord> all;
  for (const auto& plan : harness::default_calibration_plans()) {
    for (auto& r : harness::run_sweep(plan)) all.push_back(std::move(r));
  }
  std::size_t checked = 0;
  for (const auto& r : all) {
    if (!r.within_band) continue;
    ++checked;
    EXPECT_TRUE(*r.within_band) << r.estimator << " n=" << r.n << " x=" << r.x << " y=" << r.y
                                << " err=" << *r.rel_error << " band=" << *r.band;
  }
  EXPECT_GT(checked, 500u);
  EXPECT_EQ(harness::calibrate_constants(all), calibration::frozen());
}
