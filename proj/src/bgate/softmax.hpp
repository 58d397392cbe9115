#pragma once

// Exact evaluation of the Boltzmann family p_t(a|A) ~ exp(-E(a)/(k t)) and
// its softmax generalization with noise map kappa(t), including the t -> 0
// freezing limit.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bgate/noise.hpp"
#include "bgate/types.hpp"

namespace bgate {

struct EnergyModel {
  std::map<StateId, double> energies;
  NoiseMap noise;  // kappa

  double energy(const StateId& state) const;
  bool parametric() const { return noise.kind() == NoiseMap::Kind::Parametric; }
};

// Weights are computed in log space with max subtraction, so small kappa(t)
// (large 1/kappa) cannot overflow.
double softmax_prob(const EnergyModel& model, double t, const StateId& a,
                    std::span<const StateId> menu);

// softmax_prob restricted to parametric noise kappa(t) = k t.
double boltzmann_prob(const EnergyModel& model, double t, const StateId& a,
                      std::span<const StateId> menu);

// ln r_t(a, b) = -(E(a) - E(b)) / kappa(t).
double log_odds(const EnergyModel& model, double t, const StateId& a, const StateId& b);

// Probabilities at t -> 0+: mass splits uniformly across the energy
// minimizers of the menu; binary values land in {0, 1/2, 1}.
struct FreezingProfile {
  std::map<StateId, double> menu_mass;                       // per state in the menu
  std::map<std::pair<StateId, StateId>, double> pair_p0;     // ordered pairs within the menu
};

FreezingProfile zero_limit(const EnergyModel& model, std::span<const StateId> menu);

}  // namespace bgate
