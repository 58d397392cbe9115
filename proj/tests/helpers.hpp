#pragma once

// Shared fixture builders for the test suites.

#include <map>
#include <string>
#include <vector>

#include "bgate/synth.hpp"

namespace bgate::testing {

inline std::vector<StateId> state_ids(const std::map<StateId, double>& energies) {
  std::vector<StateId> out;
  for (const auto& [id, e] : energies) out.push_back(id);
  return out;
}

// All binary menus, ids "b<i><j>".
inline std::vector<Menu> binary_menus(const std::vector<StateId>& states) {
  std::vector<Menu> menus;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      menus.push_back(make_menu("b" + std::to_string(i) + std::to_string(j),
                                {states[i], states[j]}));
    }
  }
  return menus;
}

inline std::vector<Menu> binaries_and_full(const std::vector<StateId>& states) {
  auto menus = binary_menus(states);
  menus.push_back(make_menu("all", states));
  return menus;
}

inline std::vector<double> default_grid() { return {0.25, 0.5, 1.0, 2.0, 4.0}; }

inline NoiseMap kappa_table_of(const std::vector<double>& grid, double (*fn)(double)) {
  std::vector<std::pair<double, double>> knots;
  for (double t : grid) knots.emplace_back(t, fn(t));
  return NoiseMap::tabulated(MonotoneTable::strict(std::move(knots)));
}

inline FamilySpec boltzmann_spec(const std::map<StateId, double>& energies, double k,
                                 const std::vector<double>& grid, std::vector<Menu> menus,
                                 long long n = 0, std::uint64_t seed = 0) {
  FamilySpec spec;
  spec.kind = FamilyKind::Boltzmann;
  spec.energies = energies;
  spec.k = k;
  spec.grid = grid;
  spec.menus = std::move(menus);
  spec.n = n;
  spec.seed = seed;
  return spec;
}

inline FamilySpec softmax_spec(const std::map<StateId, double>& energies, NoiseMap kappa,
                               const std::vector<double>& grid, std::vector<Menu> menus,
                               long long n = 0, std::uint64_t seed = 0) {
  FamilySpec spec;
  spec.kind = FamilyKind::Softmax;
  spec.energies = energies;
  spec.kappa = std::move(kappa);
  spec.grid = grid;
  spec.menus = std::move(menus);
  spec.n = n;
  spec.seed = seed;
  return spec;
}

inline FamilySpec uniform_spec(const std::vector<StateId>& states,
                               const std::vector<double>& grid, std::vector<Menu> menus,
                               long long n = 0, std::uint64_t seed = 0) {
  FamilySpec spec;
  spec.kind = FamilyKind::Uniform;
  for (const auto& s : states) spec.energies[s] = 0.0;
  spec.grid = grid;
  spec.menus = std::move(menus);
  spec.n = n;
  spec.seed = seed;
  return spec;
}

inline FamilySpec probit_spec(const std::map<StateId, double>& energies,
                              const std::vector<double>& grid, std::vector<Menu> menus,
                              long long n = 0, std::uint64_t seed = 0) {
  FamilySpec spec;
  spec.kind = FamilyKind::ProbitBinary;
  spec.energies = energies;
  spec.grid = grid;
  spec.menus = std::move(menus);
  spec.n = n;
  spec.seed = seed;
  return spec;
}

inline FamilySpec crossing_spec(double c0, double c1, const std::vector<double>& grid,
                                long long n = 0, std::uint64_t seed = 0) {
  FamilySpec spec;
  spec.kind = FamilyKind::CrossingLogOdds;
  spec.c0 = c0;
  spec.c1 = c1;
  spec.grid = grid;
  spec.menus = {make_menu("ab", {"a", "b"})};
  spec.n = n;
  spec.seed = seed;
  return spec;
}

inline FamilySpec scaled_conditioning_spec(const std::map<StateId, double>& energies, double k,
                                           double scale, const std::vector<double>& grid,
                                           std::vector<Menu> menus, long long n = 0,
                                           std::uint64_t seed = 0) {
  FamilySpec spec;
  spec.kind = FamilyKind::ScaledConditioning;
  spec.energies = energies;
  spec.k = k;
  spec.scale = scale;
  spec.grid = grid;
  spec.menus = std::move(menus);
  spec.n = n;
  spec.seed = seed;
  return spec;
}

// Exact family with all binary odds equal to 1 but a non-uniform triple menu:
// p(a|{a,b,c}) = 1/2, the others 1/4.
inline EmpiricalRSF equal_binary_odds_family(const std::vector<double>& grid) {
  std::vector<FrequencyRecord> records;
  for (double t : grid) {
    std::string tok = format_temperature(t);
    for (const auto& [menu, members] : std::vector<std::pair<std::string, std::vector<StateId>>>{
             {"ab", {"a", "b"}}, {"ac", {"a", "c"}}, {"bc", {"b", "c"}}}) {
      records.push_back({tok, menu, members[0], 0.5, -1});
      records.push_back({tok, menu, members[1], 0.5, -1});
    }
    records.push_back({tok, "abc", "a", 0.5, -1});
    records.push_back({tok, "abc", "b", 0.25, -1});
    records.push_back({tok, "abc", "c", 0.25, -1});
  }
  return EmpiricalRSF::from_frequencies(records);
}

}  // namespace bgate::testing
