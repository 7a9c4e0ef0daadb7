#pragma once

// Plain-text CSV files: one header line, '.' decimal point, LF line endings.
// Lines starting with '#' are comments (provenance) and are skipped on read.
// Numbers are written in shortest round-trip form, so reading back yields the
// identical doubles.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rydlv/lv_core.hpp"
#include "rydlv/observables.hpp"

namespace rydlv::io {

inline constexpr std::string_view kTrajectoryHeader = "t_ms,x,y";
inline constexpr std::string_view kWaveformHeader = "t_ms,transmission";

std::string format_double(double v);

/// Writes comment lines, the header and one row per entry of `rows`.
void write_table(std::ostream& os, std::string_view header, const std::vector<std::string>& comments,
                 const std::vector<std::vector<double>>& rows);

void write_trajectory(std::ostream& os, const Trajectory& traj,
                      const std::vector<std::string>& comments = {});
void write_waveform(std::ostream& os, const TransmissionWaveform& w,
                    const std::vector<std::string>& comments = {});

/// Throw ConfigError with a "source:line:column" diagnostic on malformed
/// content, including non-increasing time stamps.
Trajectory read_trajectory(std::istream& is, const std::string& source = "<input>");
TransmissionWaveform read_waveform(std::istream& is, const std::string& source = "<input>");

/// Header line of a CSV file (first non-comment line), or empty.
std::string peek_header(std::istream& is);

/// Whole-file helpers; throw IoError.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace rydlv::io
