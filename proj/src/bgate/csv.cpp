#include "bgate/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace bgate {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

long long parse_count(const std::string& token, long line) {
  long long value = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    fail(ErrorCode::DataError, "line " + std::to_string(line) + ": bad count '" + token + "'");
  }
  if (value < 0) {
    fail(ErrorCode::DataError,
         "line " + std::to_string(line) + ": count must be nonnegative, got '" + token + "'");
  }
  return value;
}

double parse_frequency(const std::string& token, long line) {
  double value = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    fail(ErrorCode::DataError, "line " + std::to_string(line) + ": bad frequency '" + token + "'");
  }
  if (!(value >= 0.0 && value <= 1.0)) {
    fail(ErrorCode::DataError,
         "line " + std::to_string(line) + ": frequency outside [0,1]: '" + token + "'");
  }
  return value;
}

}  // namespace

EmpiricalRSF ingest_csv_stream(std::istream& in, const BuildOptions& options,
                               const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) {
    fail(ErrorCode::DataError, origin + ": empty file");
  }
  line = strip_cr(line);
  bool counts;
  if (line == kCountHeader) {
    counts = true;
  } else if (line == kFrequencyHeader) {
    counts = false;
  } else {
    fail(ErrorCode::DataError, origin + ": unknown header '" + line + "'");
  }
  std::vector<CountRecord> count_records;
  std::vector<FrequencyRecord> freq_records;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto cols = split_row(line);
    if (cols.size() != 4) {
      fail(ErrorCode::DataError, origin + ": line " + std::to_string(line_no) + ": expected 4 columns, got " +
                                     std::to_string(cols.size()));
    }
    try {
      parse_temperature(cols[0]);
    } catch (const Error& e) {
      fail(ErrorCode::DataError, origin + ": line " + std::to_string(line_no) + ": " + e.what());
    }
    if (cols[1].empty() || cols[2].empty()) {
      fail(ErrorCode::DataError,
           origin + ": line " + std::to_string(line_no) + ": empty menu or state id");
    }
    if (counts) {
      count_records.push_back({cols[0], cols[1], cols[2], parse_count(cols[3], line_no), line_no});
    } else {
      freq_records.push_back({cols[0], cols[1], cols[2], parse_frequency(cols[3], line_no), line_no});
    }
  }
  try {
    return counts ? EmpiricalRSF::from_counts(count_records, options)
                  : EmpiricalRSF::from_frequencies(freq_records);
  } catch (const Error& e) {
    fail(e.code(), origin + ": " + e.what());
  }
}

EmpiricalRSF ingest_csv(const std::string& path, const BuildOptions& options) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::IoError, "cannot open '" + path + "'");
  }
  return ingest_csv_stream(in, options, path);
}

std::string render_csv(const EmpiricalRSF& rsf, bool exact) {
  std::ostringstream out;
  if (exact) {
    out << kFrequencyHeader << "\n";
    for (const auto& rec : rsf.emit_frequency_records()) {
      out << rec.t_token << ',' << rec.menu_id << ',' << rec.state << ','
          << format_number(rec.freq) << "\n";
    }
  } else {
    out << kCountHeader << "\n";
    for (const auto& rec : rsf.emit_records()) {
      out << rec.t_token << ',' << rec.menu_id << ',' << rec.state << ',' << rec.count << "\n";
    }
  }
  return out.str();
}

void export_csv(const EmpiricalRSF& rsf, const std::string& path, bool exact) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::IoError, "cannot write '" + path + "'");
  }
  out << render_csv(rsf, exact);
  if (!out) {
    fail(ErrorCode::IoError, "failed writing '" + path + "'");
  }
}

}  // namespace bgate
