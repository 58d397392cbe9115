#include "bgate/types.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

namespace bgate {

Menu make_menu(std::string id, std::vector<StateId> members) {
  if (members.empty()) {
    fail(ErrorCode::InvalidArgument, "menu '" + id + "' has no members");
  }
  std::sort(members.begin(), members.end());
  auto dup = std::adjacent_find(members.begin(), members.end());
  if (dup != members.end()) {
    fail(ErrorCode::InvalidArgument, "menu '" + id + "' lists state '" + *dup + "' twice");
  }
  return Menu{std::move(id), std::move(members)};
}

std::string format_temperature(double t) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), t);
  return std::string(buf, res.ptr);
}

double parse_temperature(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value)) {
    fail(ErrorCode::DataError, "bad temperature token '" + token + "'");
  }
  if (!(value > 0.0)) {
    fail(ErrorCode::DataError, "temperature must be positive, got '" + token + "'");
  }
  return value;
}

TemperatureGrid TemperatureGrid::from_values(const std::vector<double>& values) {
  std::vector<std::string> tokens;
  tokens.reserve(values.size());
  for (double v : values) tokens.push_back(format_temperature(v));
  return from_tokens(tokens);
}

TemperatureGrid TemperatureGrid::from_tokens(const std::vector<std::string>& tokens) {
  std::map<std::string, double> seen;
  for (const auto& tok : tokens) {
    seen.emplace(tok, parse_temperature(tok));
  }
  std::vector<Temperature> entries;
  entries.reserve(seen.size());
  for (const auto& [key, value] : seen) entries.push_back({key, value});
  std::sort(entries.begin(), entries.end(),
            [](const Temperature& a, const Temperature& b) { return a.value < b.value; });
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].value == entries[i - 1].value) {
      fail(ErrorCode::DataError, "temperature tokens '" + entries[i - 1].key + "' and '" +
                                     entries[i].key + "' denote the same grid point");
    }
  }
  TemperatureGrid grid;
  grid.entries_ = std::move(entries);
  return grid;
}

std::vector<double> TemperatureGrid::values() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.value);
  return out;
}

std::optional<std::size_t> TemperatureGrid::index_of_value(double t) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].value == t) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> TemperatureGrid::index_of_key(const std::string& key) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].key == key) return i;
  }
  return std::nullopt;
}

}  // namespace bgate
