#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fowt/timeseries.hpp"

namespace fowt {

/// Shortest text that reads back to the same double; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_number(double v);

/// Provenance written as '#' comment lines at the top of every output file.
struct OutputHeader {
  std::string config_hash;
  std::string parameter_set;
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> extra;
};

/// Comma-separated writer; column headers are "name [unit]".
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const OutputHeader& header);
  void columns(const std::vector<std::pair<std::string, std::string>>& names_units);
  void row(const std::vector<std::string>& cells);
  void row(const std::vector<double>& values);
  void close();

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

/// A channel written to a CSV file with its display unit and scale
/// (file value = SI value * scale).
struct ColumnSpec {
  std::string channel;
  std::string unit;
  double scale{1.0};
};

/// Display units for simulation channels: angles in deg, speeds in rpm.
ColumnSpec display_column(const Channel& c);

void write_timeseries(const std::filesystem::path& path, const TimeSeries& ts, const OutputHeader& header,
                      Eigen::Index decimation = 1);

/// Reads a file written by write_timeseries (or any CSV with a "t [s]" first
/// column). Values are converted back to SI for the known display units.
TimeSeries read_timeseries(const std::filesystem::path& path);

}  // namespace fowt
