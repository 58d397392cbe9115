#include "bgate/rsf.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace bgate {

const char* odds_class_name(OddsClass cls) {
  switch (cls) {
    case OddsClass::IncreasingToInf: return "increasing-to-inf";
    case OddsClass::ConstantOne: return "constant-1";
    case OddsClass::DecreasingToZero: return "decreasing-to-0";
    case OddsClass::Unclassified: return "unclassified";
  }
  return "unclassified";
}

std::vector<OddsSample> OddsCurve::by_inverse_temperature() const {
  std::vector<OddsSample> out(samples.rbegin(), samples.rend());
  return out;
}

namespace {

std::string cell_name(const std::string& t, const std::string& menu, const StateId& state) {
  return "(" + t + ", " + menu + ", " + state + ")";
}

struct GroupKey {
  std::string t_token;
  std::string menu_id;
  bool operator<(const GroupKey& other) const {
    if (t_token != other.t_token) return t_token < other.t_token;
    return menu_id < other.menu_id;
  }
};

}  // namespace

EmpiricalRSF EmpiricalRSF::from_counts(const std::vector<CountRecord>& records,
                                       const BuildOptions& options) {
  std::map<GroupKey, std::map<StateId, std::pair<long long, long>>> raw;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    long where = rec.line >= 0 ? rec.line : static_cast<long>(i);
    if (rec.count < 0) {
      fail(ErrorCode::DataError, "negative count in row " + std::to_string(where) +
                                     " at cell " + cell_name(rec.t_token, rec.menu_id, rec.state));
    }
    parse_temperature(rec.t_token);
    auto& group = raw[GroupKey{rec.t_token, rec.menu_id}];
    auto [it, inserted] = group.emplace(rec.state, std::make_pair(rec.count, where));
    if (!inserted) {
      fail(ErrorCode::DataError,
           "duplicate cell " + cell_name(rec.t_token, rec.menu_id, rec.state) + " in row " +
               std::to_string(where) + " (first seen in row " + std::to_string(it->second.second) +
               ")");
    }
  }
  if (raw.empty()) {
    fail(ErrorCode::DataError, "no records given");
  }

  EmpiricalRSF rsf;
  rsf.smoothed_ = options.jeffreys;

  // Menu membership comes from the states appearing in a group and must be
  // consistent across temperatures.
  std::map<std::string, std::vector<StateId>> menu_members;
  std::set<std::string> tokens;
  for (const auto& [key, cells] : raw) {
    tokens.insert(key.t_token);
    std::vector<StateId> members;
    for (const auto& [state, _] : cells) members.push_back(state);
    auto it = menu_members.find(key.menu_id);
    if (it == menu_members.end()) {
      menu_members.emplace(key.menu_id, members);
    } else if (it->second != members) {
      fail(ErrorCode::DataError, "menu '" + key.menu_id +
                                     "' lists different member states at different temperatures");
    }
  }
  rsf.grid_ = TemperatureGrid::from_tokens({tokens.begin(), tokens.end()});
  for (auto& [id, members] : menu_members) {
    rsf.menus_.push_back(make_menu(id, members));
  }

  std::set<StateId> all_states;
  for (const auto& m : rsf.menus_) all_states.insert(m.members.begin(), m.members.end());
  rsf.states_.assign(all_states.begin(), all_states.end());

  for (const auto& [key, cells] : raw) {
    long long raw_total = 0;
    for (const auto& [state, cv] : cells) raw_total += cv.first;
    if (raw_total <= 0) {
      fail(ErrorCode::DataError,
           "group (" + key.t_token + ", " + key.menu_id + ") has zero total count");
    }
    std::size_t t_idx = *rsf.grid_.index_of_key(key.t_token);
    std::size_t m_idx = *rsf.menu_index(key.menu_id);
    Group group;
    group.raw_total = raw_total;
    double half = options.jeffreys ? 0.5 : 0.0;
    group.total = static_cast<double>(raw_total) + half * static_cast<double>(cells.size());
    for (const auto& [state, cv] : cells) {
      Cell cell;
      cell.raw_count = cv.first;
      cell.count = static_cast<double>(cv.first) + half;
      cell.freq = cell.count / group.total;
      cell.se = std::sqrt(cell.freq * (1.0 - cell.freq) / group.total);
      group.cells.emplace(state, cell);
    }
    rsf.groups_.emplace(std::make_pair(t_idx, m_idx), std::move(group));
  }
  return rsf;
}

EmpiricalRSF EmpiricalRSF::from_frequencies(const std::vector<FrequencyRecord>& records) {
  std::map<GroupKey, std::map<StateId, std::pair<double, long>>> raw;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    long where = rec.line >= 0 ? rec.line : static_cast<long>(i);
    if (!(rec.freq >= 0.0) || !(rec.freq <= 1.0)) {
      fail(ErrorCode::DataError, "frequency outside [0,1] in row " + std::to_string(where));
    }
    parse_temperature(rec.t_token);
    auto& group = raw[GroupKey{rec.t_token, rec.menu_id}];
    auto [it, inserted] = group.emplace(rec.state, std::make_pair(rec.freq, where));
    if (!inserted) {
      fail(ErrorCode::DataError,
           "duplicate cell " + cell_name(rec.t_token, rec.menu_id, rec.state) + " in row " +
               std::to_string(where));
    }
  }
  if (raw.empty()) {
    fail(ErrorCode::DataError, "no records given");
  }

  EmpiricalRSF rsf;
  rsf.exact_ = true;

  std::map<std::string, std::vector<StateId>> menu_members;
  std::set<std::string> tokens;
  for (const auto& [key, cells] : raw) {
    tokens.insert(key.t_token);
    std::vector<StateId> members;
    for (const auto& [state, _] : cells) members.push_back(state);
    auto it = menu_members.find(key.menu_id);
    if (it == menu_members.end()) {
      menu_members.emplace(key.menu_id, members);
    } else if (it->second != members) {
      fail(ErrorCode::DataError, "menu '" + key.menu_id +
                                     "' lists different member states at different temperatures");
    }
  }
  rsf.grid_ = TemperatureGrid::from_tokens({tokens.begin(), tokens.end()});
  for (auto& [id, members] : menu_members) {
    rsf.menus_.push_back(make_menu(id, members));
  }
  std::set<StateId> all_states;
  for (const auto& m : rsf.menus_) all_states.insert(m.members.begin(), m.members.end());
  rsf.states_.assign(all_states.begin(), all_states.end());

  for (const auto& [key, cells] : raw) {
    double sum = 0.0;
    for (const auto& [state, fv] : cells) sum += fv.first;
    if (std::fabs(sum - 1.0) > 1e-9) {
      fail(ErrorCode::DataError, "group (" + key.t_token + ", " + key.menu_id +
                                     ") frequencies sum to " + format_temperature(sum));
    }
    std::size_t t_idx = *rsf.grid_.index_of_key(key.t_token);
    std::size_t m_idx = *rsf.menu_index(key.menu_id);
    Group group;
    group.total = 0.0;
    for (const auto& [state, fv] : cells) {
      Cell cell;
      cell.freq = fv.first;
      cell.se = kStderrFloor;
      group.cells.emplace(state, cell);
    }
    rsf.groups_.emplace(std::make_pair(t_idx, m_idx), std::move(group));
  }
  return rsf;
}

std::optional<std::size_t> EmpiricalRSF::menu_index(const std::string& menu_id) const {
  for (std::size_t i = 0; i < menus_.size(); ++i) {
    if (menus_[i].id == menu_id) return i;
  }
  return std::nullopt;
}

const EmpiricalRSF::Group* EmpiricalRSF::find_group(std::size_t t_idx,
                                                    std::size_t menu_idx) const {
  auto it = groups_.find(std::make_pair(t_idx, menu_idx));
  return it == groups_.end() ? nullptr : &it->second;
}

bool EmpiricalRSF::observed(std::size_t t_idx, std::size_t menu_idx) const {
  return find_group(t_idx, menu_idx) != nullptr;
}

double EmpiricalRSF::total(std::size_t t_idx, std::size_t menu_idx) const {
  const Group* g = find_group(t_idx, menu_idx);
  if (g == nullptr) {
    fail(ErrorCode::LookupError, "group not observed");
  }
  return g->total;
}

const Cell* EmpiricalRSF::find_cell(std::size_t t_idx, std::size_t menu_idx,
                                    const StateId& state) const {
  const Group* g = find_group(t_idx, menu_idx);
  if (g == nullptr) return nullptr;
  auto it = g->cells.find(state);
  return it == g->cells.end() ? nullptr : &it->second;
}

std::pair<double, double> EmpiricalRSF::frequency(double t, const std::string& menu_id,
                                                  const StateId& state) const {
  auto t_idx = grid_.index_of_value(t);
  auto m_idx = menu_index(menu_id);
  if (!t_idx || !m_idx || !observed(*t_idx, *m_idx)) {
    fail(ErrorCode::LookupError,
         "no observation for (" + format_temperature(t) + ", " + menu_id + ")");
  }
  const Cell* cell = find_cell(*t_idx, *m_idx, state);
  if (cell == nullptr) return {0.0, 0.0};  // outside the menu
  return {cell->freq, cell->se};
}

double EmpiricalRSF::conditional_frequency(double t, const std::vector<StateId>& subset,
                                           const std::string& menu_id) const {
  auto m_idx = menu_index(menu_id);
  if (!m_idx) {
    fail(ErrorCode::LookupError, "unknown menu '" + menu_id + "'");
  }
  const auto& members = menus_[*m_idx].members;
  for (const auto& s : subset) {
    if (!std::binary_search(members.begin(), members.end(), s)) {
      fail(ErrorCode::InvalidArgument,
           "state '" + s + "' is not a member of menu '" + menu_id + "'");
    }
  }
  double sum = 0.0;
  for (const auto& s : subset) sum += frequency(t, menu_id, s).first;
  return sum;
}

std::optional<std::size_t> EmpiricalRSF::binary_menu_index(const StateId& a,
                                                           const StateId& b) const {
  std::vector<StateId> want{a};
  if (b != a) want.push_back(b);
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < menus_.size(); ++i) {
    if (menus_[i].members == want) return i;
  }
  return std::nullopt;
}

OddsCurve EmpiricalRSF::odds_curve(const StateId& a, const StateId& b,
                                   std::size_t min_samples) const {
  OddsCurve curve;
  curve.a = a;
  curve.b = b;
  auto m_idx = binary_menu_index(a, b);
  if (!m_idx) {
    fail(ErrorCode::LookupError, "no binary menu {" + a + ", " + b + "} observed");
  }
  for (std::size_t t_idx = 0; t_idx < grid_.size(); ++t_idx) {
    const Group* g = find_group(t_idx, *m_idx);
    if (g == nullptr) continue;
    double t = grid_.at(t_idx).value;
    if (a == b) {
      // Singleton menu: p/p = 1 identically.
      OddsSample s;
      s.t = t;
      s.v = 1.0 / t;
      s.r = 1.0;
      s.logw = 0.0;
      s.se = exact_ ? kStderrFloor : std::sqrt(2.0 / g->total);
      s.n_a = s.n_b = exact_ ? 0.0 : g->total;
      curve.samples.push_back(s);
      continue;
    }
    const Cell& ca = g->cells.at(a);
    const Cell& cb = g->cells.at(b);
    bool usable = exact_ ? (ca.freq > 0.0 && cb.freq > 0.0) : (ca.count > 0.0 && cb.count > 0.0);
    if (!usable) {
      curve.dropped.push_back(t);
      continue;
    }
    OddsSample s;
    s.t = t;
    s.v = 1.0 / t;
    s.r = ca.freq / cb.freq;
    s.logw = std::log(ca.freq) - std::log(cb.freq);
    if (exact_) {
      s.se = kStderrFloor;
    } else {
      s.n_a = ca.count;
      s.n_b = cb.count;
      s.se = std::sqrt(1.0 / ca.count + 1.0 / cb.count);
    }
    curve.samples.push_back(s);
  }
  if (curve.samples.size() < min_samples) {
    fail(ErrorCode::InsufficientData,
         "pair {" + a + ", " + b + "} has " + std::to_string(curve.samples.size()) +
             " usable samples, need " + std::to_string(min_samples));
  }
  return curve;
}

std::vector<std::pair<StateId, StateId>> EmpiricalRSF::observed_pairs() const {
  std::vector<std::pair<StateId, StateId>> pairs;
  for (const auto& m : menus_) {
    if (m.members.size() == 2) {
      pairs.emplace_back(m.members[0], m.members[1]);
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::vector<CountRecord> EmpiricalRSF::emit_records() const {
  if (exact_) {
    fail(ErrorCode::InvalidArgument,
         "exact family holds no counts to emit; use the frequency export");
  }
  std::vector<CountRecord> out;
  for (std::size_t t_idx = 0; t_idx < grid_.size(); ++t_idx) {
    for (std::size_t m_idx = 0; m_idx < menus_.size(); ++m_idx) {
      const Group* g = find_group(t_idx, m_idx);
      if (g == nullptr) continue;
      for (const auto& [state, cell] : g->cells) {
        out.push_back({grid_.at(t_idx).key, menus_[m_idx].id, state, cell.raw_count, -1});
      }
    }
  }
  return out;
}

std::vector<FrequencyRecord> EmpiricalRSF::emit_frequency_records() const {
  std::vector<FrequencyRecord> out;
  for (std::size_t t_idx = 0; t_idx < grid_.size(); ++t_idx) {
    for (std::size_t m_idx = 0; m_idx < menus_.size(); ++m_idx) {
      const Group* g = find_group(t_idx, m_idx);
      if (g == nullptr) continue;
      for (const auto& [state, cell] : g->cells) {
        out.push_back({grid_.at(t_idx).key, menus_[m_idx].id, state, cell.freq, -1});
      }
    }
  }
  return out;
}

}  // namespace bgate
