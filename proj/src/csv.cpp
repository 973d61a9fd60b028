#include "fowt/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

#include "fowt/errors.hpp"
#include "fowt/units.hpp"
#include "fowt/version.hpp"

namespace fowt {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const OutputHeader& header) : path_(path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw ConfigError("cannot write " + path.string());
  out_ << "# tool = " << kToolName << " " << kVersion << "\n";
  out_ << "# config_hash = " << header.config_hash << "\n";
  out_ << "# parameter_set = " << header.parameter_set << "\n";
  out_ << "# seed = " << (header.seed ? std::to_string(*header.seed) : std::string("none")) << "\n";
  for (const auto& [k, v] : header.extra) out_ << "# " << k << " = " << v << "\n";
}

void CsvWriter::columns(const std::vector<std::pair<std::string, std::string>>& names_units) {
  for (std::size_t i = 0; i < names_units.size(); ++i) {
    if (i) out_ << ',';
    out_ << names_units[i].first << " [" << names_units[i].second << "]";
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      out_ << '"';
      for (char ch : c) {
        if (ch == '"') out_ << '"';
        out_ << ch;
      }
      out_ << '"';
    } else {
      out_ << c;
    }
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ',';
    out_ << format_number(values[i]);
  }
  out_ << "\n";
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw ConfigError("failed writing " + path_.string());
}

namespace {

struct DisplayUnit {
  const char* si;
  const char* shown;
  double scale;
};

constexpr double kDeg = 180.0 / 3.14159265358979323846;
const std::array<DisplayUnit, 2> kDisplay = {{
    {"rad", "deg", kDeg},
    {"rad/s", "deg/s", kDeg},
}};

}  // namespace

ColumnSpec display_column(const Channel& c) {
  if (c.name == "omega") return {c.name, "rpm", units::rad_s_to_rpm(1.0)};
  for (const auto& d : kDisplay)
    if (c.unit == d.si) return {c.name, d.shown, d.scale};
  return {c.name, c.unit, 1.0};
}

void write_timeseries(const std::filesystem::path& path, const TimeSeries& ts, const OutputHeader& header,
                      Eigen::Index decimation) {
  if (decimation < 1) throw InvalidArgument("decimation must be >= 1");
  CsvWriter w(path, header);
  std::vector<std::pair<std::string, std::string>> cols{{"t", "s"}};
  std::vector<ColumnSpec> specs;
  for (const auto& c : ts.channels()) {
    specs.push_back(display_column(c));
    cols.emplace_back(specs.back().channel, specs.back().unit);
  }
  w.columns(cols);
  std::vector<double> row(cols.size());
  for (Eigen::Index i = 0; i < ts.size(); i += decimation) {
    row[0] = ts.time(i);
    for (std::size_t k = 0; k < specs.size(); ++k) row[k + 1] = ts.channels()[k].values(i) * specs[k].scale;
    w.row(row);
  }
  w.close();
}

TimeSeries read_timeseries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  std::vector<std::pair<std::string, std::string>> cols;
  std::vector<std::vector<double>> data;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cols.empty()) {
      for (const auto& c : cells) {
        const auto open = c.find('[');
        const auto close = c.find(']');
        std::string name = c.substr(0, open);
        while (!name.empty() && name.back() == ' ') name.pop_back();
        std::string unit = open != std::string::npos && close != std::string::npos ? c.substr(open + 1, close - open - 1) : "";
        cols.emplace_back(name, unit);
      }
      data.resize(cols.size());
      continue;
    }
    if (cells.size() != cols.size()) throw ConfigError("ragged row in " + path.string());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      double v = 0.0;
      const auto res = std::from_chars(cells[k].data(), cells[k].data() + cells[k].size(), v);
      if (res.ec != std::errc()) {
        if (cells[k] == "nan") v = std::nan("");
        else throw ConfigError("non-numeric cell '" + cells[k] + "' in " + path.string());
      }
      data[k].push_back(v);
    }
  }
  if (cols.size() < 2 || data[0].size() < 2) throw ConfigError("time series file needs a time column and two rows: " + path.string());
  if (cols[0].first != "t") throw ConfigError("first column must be t [s]: " + path.string());
  const double dt = data[0][1] - data[0][0];
  TimeSeries ts(dt, data[0][0]);
  for (std::size_t k = 1; k < cols.size(); ++k) {
    double scale = 1.0;
    std::string unit = cols[k].second;
    if (unit == "deg") {
      scale = 1.0 / kDeg;
      unit = "rad";
    } else if (unit == "deg/s") {
      scale = 1.0 / kDeg;
      unit = "rad/s";
    } else if (unit == "rpm") {
      scale = units::rpm_to_rad_s(1.0);
      unit = "rad/s";
    }
    Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(data[k].data(), Eigen::Index(data[k].size())) * scale;
    ts.add(cols[k].first, unit, std::move(v));
  }
  return ts;
}

}  // namespace fowt
