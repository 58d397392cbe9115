#pragma once

// EmpiricalRSF: tabulated conditional frequencies p_t(a|A) over a temperature
// grid and a menu family, with multinomial standard errors, plus the derived
// per-pair odds curves.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bgate/types.hpp"

namespace bgate {

// Standard error assigned to exactly-known frequencies, so statistical tests
// reduce to near-exact identities on exact families.
inline constexpr double kStderrFloor = 1e-12;

struct CountRecord {
  std::string t_token;
  std::string menu_id;
  StateId state;
  long long count = 0;
  long line = -1;  // provenance for error messages; -1 when not from a file
};

struct FrequencyRecord {
  std::string t_token;
  std::string menu_id;
  StateId state;
  double freq = 0.0;
  long line = -1;
};

struct BuildOptions {
  bool jeffreys = false;  // add 1/2 to every cell of every group
};

struct Cell {
  long long raw_count = 0;   // as ingested (counts mode only)
  double count = 0.0;        // effective count after smoothing
  double freq = 0.0;
  double se = 0.0;
};

enum class OddsClass { IncreasingToInf, ConstantOne, DecreasingToZero, Unclassified };

const char* odds_class_name(OddsClass cls);

struct OddsSample {
  double t = 0.0;     // temperature
  double v = 0.0;     // inverse temperature, the logw axis
  double r = 0.0;     // odds p_t(a,b)/p_t(b,a)
  double logw = 0.0;  // ln r_{1/v}(a,b) = ln r at temperature t = 1/v
  double se = 0.0;    // delta-method sd of logw
  double n_a = 0.0;   // effective cell counts (0 on exact data)
  double n_b = 0.0;
};

struct OddsCurve {
  StateId a;
  StateId b;
  std::vector<OddsSample> samples;  // ascending temperature
  std::vector<double> dropped;      // temperatures excluded for a zero cell
  OddsClass cls = OddsClass::Unclassified;

  // Samples ordered by ascending inverse temperature v.
  std::vector<OddsSample> by_inverse_temperature() const;
};

class EmpiricalRSF {
 public:
  // Normalizes each (t, menu) group; menu membership is inferred from the
  // states appearing in the group and must agree across temperatures.
  static EmpiricalRSF from_counts(const std::vector<CountRecord>& records,
                                  const BuildOptions& options = {});

  // Exactly-known frequencies; stderr floored at kStderrFloor. Group sums
  // must be 1 within 1e-9.
  static EmpiricalRSF from_frequencies(const std::vector<FrequencyRecord>& records);

  bool exact() const { return exact_; }
  bool smoothed() const { return smoothed_; }

  const TemperatureGrid& grid() const { return grid_; }
  const std::vector<Menu>& menus() const { return menus_; }
  const std::vector<StateId>& states() const { return states_; }

  std::optional<std::size_t> menu_index(const std::string& menu_id) const;
  bool observed(std::size_t t_idx, std::size_t menu_idx) const;
  double total(std::size_t t_idx, std::size_t menu_idx) const;
  const Cell* find_cell(std::size_t t_idx, std::size_t menu_idx, const StateId& state) const;

  // (freq, stderr); (0, 0) when the state is outside the menu. Throws
  // LookupError when the (t, menu) pair was never observed.
  std::pair<double, double> frequency(double t, const std::string& menu_id,
                                      const StateId& state) const;

  // Sum of p_t(b|A) over b in B; requires B to be a subset of the menu.
  double conditional_frequency(double t, const std::vector<StateId>& subset,
                               const std::string& menu_id) const;

  // Index of the menu whose member set is exactly {a, b} ({a} when a == b).
  std::optional<std::size_t> binary_menu_index(const StateId& a, const StateId& b) const;

  // Odds curve for the binary menu {a, b}; samples with a zero cell are
  // dropped and listed. Throws InsufficientData below min_samples usable
  // points. Classification is left to the statistical layer.
  OddsCurve odds_curve(const StateId& a, const StateId& b, std::size_t min_samples = 3) const;

  // All unordered pairs {a, b}, a < b, that have an observed binary menu.
  std::vector<std::pair<StateId, StateId>> observed_pairs() const;

  std::vector<CountRecord> emit_records() const;  // throws on exact data
  std::vector<FrequencyRecord> emit_frequency_records() const;

 private:
  struct Group {
    double total = 0.0;           // effective total after smoothing
    long long raw_total = 0;      // counts mode only
    std::map<StateId, Cell> cells;
  };

  const Group* find_group(std::size_t t_idx, std::size_t menu_idx) const;

  TemperatureGrid grid_;
  std::vector<Menu> menus_;    // sorted by id
  std::vector<StateId> states_;
  std::map<std::pair<std::size_t, std::size_t>, Group> groups_;
  bool exact_ = false;
  bool smoothed_ = false;
};

}  // namespace bgate
