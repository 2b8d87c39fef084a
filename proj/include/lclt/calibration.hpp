#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace lclt::calibration {

// Keys of the frozen constants. Each multiplies the band shape of one estimator.
inline constexpr const char* kLclt1dSublinear = "lclt_1d.sublinear";
inline constexpr const char* kLclt1dLinearInterior = "lclt_1d.linear_interior";
inline constexpr const char* kLclt1dNearBoundary = "lclt_1d.near_boundary";
inline constexpr const char* kLclt1dTruncated = "lclt_1d_truncated";
inline constexpr const char* kLawlerLimic = "lawler_limic";
inline constexpr const char* kBaseline1d = "baseline_1d";
inline constexpr const char* kBaseline2d = "baseline_2d";
inline constexpr const char* kRegular2d = "lclt_2d_regular";
inline constexpr const char* kRegular2dTruncated = "lclt_2d_truncated";
inline constexpr const char* kIrregular2d = "lclt_2d_irregular";

using Table = std::map<std::string, double>;

/// The constants compiled into the library; mirrors data/calibration.json.
const Table& frozen();

/// frozen().at(key); throws std::out_of_range on an unknown key.
double constant(const std::string& key);

struct CalibrationFile {
  std::string fingerprint;
  std::string grid;
  Table constants;
};

CalibrationFile load(const std::filesystem::path& path);
void save(const std::filesystem::path& path, const CalibrationFile& file);

/// FNV-1a 64-bit hash rendered as 16 hex digits; used to fingerprint grids.
std::string fingerprint(const std::string& text);

}  // namespace lclt::calibration
