#include "rydlv/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "rydlv/errors.hpp"

namespace rydlv::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_table(std::ostream& os, std::string_view header, const std::vector<std::string>& comments,
                 const std::vector<std::vector<double>>& rows) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << header << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_double(row[i]);
    }
    os << '\n';
  }
}

void write_trajectory(std::ostream& os, const Trajectory& traj,
                      const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << kTrajectoryHeader << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << format_double(traj.times[i]) << ',' << format_double(traj.states[i].x) << ','
       << format_double(traj.states[i].y) << '\n';
  }
}

void write_waveform(std::ostream& os, const TransmissionWaveform& w,
                    const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "# " << c << '\n';
  os << kWaveformHeader << '\n';
  for (std::size_t i = 0; i < w.size(); ++i) {
    os << format_double(w.times[i]) << ',' << format_double(w.values[i]) << '\n';
  }
}

namespace {

[[noreturn]] void fail(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& what) {
  throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                    what);
}

/// Rows of a numeric CSV with the given header; column count fixed by it.
std::vector<std::vector<double>> read_numeric(std::istream& is, std::string_view header,
                                              const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  bool seen_header = false;
  std::size_t columns = 1;
  for (char c : header) columns += (c == ',');

  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      fail(source, line_no, line.size(), "carriage return found; lines must end with LF only");
    }
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      if (line != header) {
        fail(source, line_no, 1, "expected header '" + std::string(header) + "', got '" + line + "'");
      }
      seen_header = true;
      continue;
    }
    std::vector<double> row;
    std::size_t pos = 0;
    for (std::size_t col = 0; col < columns; ++col) {
      const std::size_t end = line.find(',', pos);
      const bool last = col + 1 == columns;
      if (!last && end == std::string::npos) {
        fail(source, line_no, line.size() + 1,
             "expected " + std::to_string(columns) + " columns, found " + std::to_string(col + 1));
      }
      if (last && end != std::string::npos) {
        fail(source, line_no, end + 1, "too many columns");
      }
      const std::size_t stop = last ? line.size() : end;
      const std::string_view field(line.data() + pos, stop - pos);
      double v = 0.0;
      const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size() ||
          !std::isfinite(v)) {
        fail(source, line_no, pos + 1, "invalid number '" + std::string(field) + "'");
      }
      if (col == 0 && !rows.empty() && !(v > rows.back()[0])) {
        fail(source, line_no, pos + 1, "time stamps must be strictly increasing");
      }
      row.push_back(v);
      pos = stop + 1;
    }
    rows.push_back(std::move(row));
  }
  if (!seen_header) fail(source, line_no + 1, 1, "missing header line");
  return rows;
}

}  // namespace

Trajectory read_trajectory(std::istream& is, const std::string& source) {
  Trajectory t;
  for (auto& row : read_numeric(is, kTrajectoryHeader, source)) {
    t.times.push_back(row[0]);
    t.states.push_back({row[1], row[2]});
  }
  return t;
}

TransmissionWaveform read_waveform(std::istream& is, const std::string& source) {
  TransmissionWaveform w;
  for (auto& row : read_numeric(is, kWaveformHeader, source)) {
    w.times.push_back(row[0]);
    w.values.push_back(row[1]);
  }
  return w;
}

std::string peek_header(std::istream& is) {
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.front() != '#') return line;
  }
  return {};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace rydlv::io
