#pragma once

// Synthetic families: exact and multinomially sampled data for the softmax
// forms, the uniform family, and targeted counterexample families that break
// specific checks. Deterministic for a fixed spec and seed.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bgate/rsf.hpp"
#include "bgate/softmax.hpp"

namespace bgate {

enum class FamilyKind {
  Boltzmann,          // kappa(t) = k t
  Softmax,            // general kappa
  Uniform,            // 1/|A| everywhere
  ProbitBinary,       // binary menus only: p_t(a,b) = Phi((E(b)-E(a))/t)
  CrossingLogOdds,    // binary menus only: ln r_t = c0 - c1 t
  ScaledConditioning, // softmax, but binary menus use kappa scaled by `scale`
};

const char* family_kind_name(FamilyKind kind);
FamilyKind family_kind_from_name(const std::string& name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::Boltzmann;
  std::map<StateId, double> energies;  // used by all kinds except Uniform/Crossing
  double k = 1.0;                      // Boltzmann / ScaledConditioning base slope
  NoiseMap kappa;                      // Softmax
  double c0 = 1.0, c1 = 1.0;           // CrossingLogOdds: ln r_t = c0 - c1 t
  double scale = 2.0;                  // ScaledConditioning: binary-menu kappa factor
  std::vector<double> grid;            // temperatures, positive
  std::vector<Menu> menus;
  long long n = 0;                     // samples per (t, menu); 0 = exact
  std::uint64_t seed = 0;
};

// Closed-form cell probabilities for one (t, menu); menu order preserved.
std::vector<double> cell_probabilities(const FamilySpec& spec, double t, const Menu& menu);

// Exact family: frequencies equal the closed form, stderr floored.
EmpiricalRSF exact_family(const FamilySpec& spec);

// Multinomial counts per (t, menu) from a splitmix64 stream derived from
// (seed, cell index); identical spec => identical counts.
EmpiricalRSF sample_family(const FamilySpec& spec);

// exact_family when n == 0, sample_family otherwise.
EmpiricalRSF synthesize(const FamilySpec& spec);

}  // namespace bgate
