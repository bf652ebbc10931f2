#include "tic/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

namespace tic {
namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string at_line(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

double parse_number(std::string_view cell, std::size_t line) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto* first = cell.data();
  const auto* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last) {
    throw DataError(at_line(line, "cannot parse '" + std::string(cell) + "' as a number"));
  }
  if (!std::isfinite(v)) throw DataError(at_line(line, "non-finite value"));
  return v;
}

std::vector<double> split_csv_numbers(std::string_view line, std::size_t lineno) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    out.push_back(parse_number(line.substr(pos, comma - pos), lineno));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

Matrix parse_feature_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto row = split_csv_numbers(line, lineno);
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError(at_line(lineno, "expected " + std::to_string(rows.front().size()) +
                                          " columns, found " + std::to_string(row.size())));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("no feature rows");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

std::vector<TimeSpan> parse_times_csv(std::istream& in) {
  std::vector<TimeSpan> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto v = split_csv_numbers(line, lineno);
    if (v.size() != 2) throw DataError(at_line(lineno, "expected 'start,end'"));
    if (!(v[1] > v[0])) throw DataError(at_line(lineno, "end must be greater than start"));
    if (!out.empty() && v[0] < out.back().end)
      throw DataError(at_line(lineno, "rows must be sorted and non-overlapping"));
    out.push_back({v[0], v[1]});
  }
  if (out.empty()) throw DataError("no time rows");
  return out;
}

Timeline parse_rttm(std::istream& in) {
  std::vector<Segment> segments;
  std::string file_id;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string tok; fields >> tok;) f.push_back(tok);
    if (f.size() < 9) throw DataError(at_line(lineno, "RTTM line has too few fields"));
    if (f[0] != "SPEAKER") throw DataError(at_line(lineno, "unsupported RTTM type '" + f[0] + "'"));
    if (file_id.empty()) {
      file_id = f[1];
    } else if (f[1] != file_id) {
      throw DataError(at_line(lineno, "file id '" + f[1] + "' differs from '" + file_id + "'"));
    }
    const double start = parse_number(f[3], lineno);
    const double dur = parse_number(f[4], lineno);
    if (!(dur > 0.0)) throw DataError(at_line(lineno, "duration must be positive"));
    if (start < 0.0) throw DataError(at_line(lineno, "onset must be nonnegative"));
    segments.push_back({start, start + dur, f[7]});
  }
  if (file_id.empty()) return Timeline({}, "session");
  return Timeline(std::move(segments), file_id);
}

FeatureSequence load_features(const std::filesystem::path& path,
                              const std::optional<std::filesystem::path>& times_path) {
  auto in = open_for_read(path);
  Matrix m = [&] {
    try {
      return parse_feature_csv(in);
    } catch (const DataError& e) {
      throw DataError(path.string() + ": " + e.what());
    }
  }();
  if (!times_path) return FeatureSequence(std::move(m));
  return FeatureSequence(std::move(m), load_times(*times_path));
}

std::vector<TimeSpan> load_times(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  try {
    return parse_times_csv(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

Timeline load_timeline_rttm(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  try {
    return parse_rttm(in);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_features_csv(const Matrix& data, std::ostream& out) {
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
      if (c) out << ',';
      out << format_double(data(r, c));
    }
    out << '\n';
  }
}

void write_times_csv(const std::vector<TimeSpan>& times, std::ostream& out) {
  for (const auto& t : times) out << format_double(t.start) << ',' << format_double(t.end) << '\n';
}

void write_rttm(const Timeline& timeline, std::ostream& out) {
  for (const auto& s : timeline.segments()) {
    if (s.label.find_first_of(" \t\r\n") != std::string::npos)
      throw DataError("RTTM label '" + s.label + "' contains whitespace");
  }
  if (timeline.file_id().find_first_of(" \t\r\n") != std::string::npos)
    throw DataError("RTTM file id '" + timeline.file_id() + "' contains whitespace");
  for (const auto& s : timeline.segments()) {
    out << "SPEAKER " << timeline.file_id() << " 1 " << fixed2(s.start) << ' '
        << fixed2(s.end - s.start) << " <NA> <NA> " << s.label << " <NA> <NA>\n";
  }
}

void save_features(const Matrix& data, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_features_csv(data, out);
  finish_write(out, path);
}

void save_times(const std::vector<TimeSpan>& times, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_times_csv(times, out);
  finish_write(out, path);
}

void write_timeline_rttm(const Timeline& timeline, const std::filesystem::path& path) {
  std::ostringstream buf;
  write_rttm(timeline, buf);  // validate before touching the file
  auto out = open_for_write(path);
  out << buf.str();
  finish_write(out, path);
}

}  // namespace tic
