#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bgate/common.hpp"

namespace bgate {

struct State {
  StateId id;
  std::optional<std::vector<double>> coords;  // needed only by the convexity layer
};

struct Menu {
  std::string id;
  std::vector<StateId> members;  // sorted, unique, nonempty
};

// Canonicalizes member order; rejects empty menus and duplicate members.
Menu make_menu(std::string id, std::vector<StateId> members);

// Temperatures are keyed by the exact decimal token they were written with,
// so distinct input tokens never merge silently. Distinct tokens that parse
// to the same double are rejected instead.
struct Temperature {
  std::string key;
  double value = 0.0;
};

std::string format_temperature(double t);  // shortest round-trip token
double parse_temperature(const std::string& token);

class TemperatureGrid {
 public:
  TemperatureGrid() = default;
  // Values must be positive; entries are sorted and deduplicated by token.
  static TemperatureGrid from_values(const std::vector<double>& values);
  static TemperatureGrid from_tokens(const std::vector<std::string>& tokens);

  std::size_t size() const { return entries_.size(); }
  const Temperature& at(std::size_t i) const { return entries_[i]; }
  const std::vector<Temperature>& entries() const { return entries_; }
  std::vector<double> values() const;

  std::optional<std::size_t> index_of_value(double t) const;
  std::optional<std::size_t> index_of_key(const std::string& key) const;

 private:
  std::vector<Temperature> entries_;  // ascending by value
};

}  // namespace bgate
