// File formats.
//
//   features  headerless CSV, one feature vector per row, '.' decimal point
//   times     headerless CSV "start,end" in seconds, aligned with features
//   RTTM      SPEAKER <file> 1 <start> <dur> <NA> <NA> <label> <NA> <NA>
//
// RTTM onsets and durations are written with two decimals. Feature and
// time values are written in shortest round-trip form.

#ifndef TIC_IO_HPP_
#define TIC_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tic/core.hpp"

namespace tic {

Matrix parse_feature_csv(std::istream& in);
std::vector<TimeSpan> parse_times_csv(std::istream& in);
Timeline parse_rttm(std::istream& in);

FeatureSequence load_features(const std::filesystem::path& path,
                              const std::optional<std::filesystem::path>& times_path = {});
std::vector<TimeSpan> load_times(const std::filesystem::path& path);
Timeline load_timeline_rttm(const std::filesystem::path& path);

void write_features_csv(const Matrix& data, std::ostream& out);
void write_times_csv(const std::vector<TimeSpan>& times, std::ostream& out);
void write_rttm(const Timeline& timeline, std::ostream& out);

void save_features(const Matrix& data, const std::filesystem::path& path);
void save_times(const std::vector<TimeSpan>& times, const std::filesystem::path& path);
void write_timeline_rttm(const Timeline& timeline, const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace tic

#endif  // TIC_IO_HPP_
