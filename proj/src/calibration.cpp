#include "lclt/calibration.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lclt::calibration {

const Table& frozen() {
  // Produced by `lclt calibrate` over the default grid (n <= 2^20) and rounded up
  // to three significant digits. Keep in sync with data/calibration.json.
  static const Table table = {
      {kLclt1dSublinear, 0.502},
      {kLclt1dLinearInterior, 0.333},
      {kLclt1dNearBoundary, 0.245},
      {kLclt1dTruncated, 0.513},
      {kLawlerLimic, 0.25},
      {kBaseline1d, 0.25},
      {kBaseline2d, 0.5},
      {kRegular2d, 0.135},
      {kRegular2dTruncated, 0.135},
      {kIrregular2d, 0.964},
  };
  return table;
}

double constant(const std::string& key) { return frozen().at(key); }

CalibrationFile load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open calibration file " + path.string());
  const nlohmann::json j = nlohmann::json::parse(in);
  CalibrationFile f;
  f.fingerprint = j.at("fingerprint").get<std::string>();
  f.grid = j.at("grid").get<std::string>();
  f.constants = j.at("constants").get<Table>();
  return f;
}

void save(const std::filesystem::path& path, const CalibrationFile& file) {
  nlohmann::json j;
  j["fingerprint"] = file.fingerprint;
  j["grid"] = file.grid;
  j["constants"] = file.constants;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write calibration file " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string fingerprint(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lclt::calibration
