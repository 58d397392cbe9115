#include "bgate/softmax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bgate/common.hpp"

namespace bgate {

double EnergyModel::energy(const StateId& state) const {
  auto it = energies.find(state);
  if (it == energies.end()) {
    fail(ErrorCode::LookupError, "no energy assigned to state '" + state + "'");
  }
  return it->second;
}

double softmax_prob(const EnergyModel& model, double t, const StateId& a,
                    std::span<const StateId> menu) {
  if (!(t > 0.0)) {
    fail(ErrorCode::InvalidArgument, "temperature must be positive");
  }
  if (menu.empty()) {
    fail(ErrorCode::InvalidArgument, "menu must be nonempty");
  }
  bool member = false;
  for (const auto& s : menu) {
    if (s == a) member = true;
  }
  if (!member) return 0.0;

  double kappa = model.noise.value(t);
  double max_w = -std::numeric_limits<double>::infinity();
  std::vector<double> w(menu.size());
  for (std::size_t i = 0; i < menu.size(); ++i) {
    w[i] = -model.energy(menu[i]) / kappa;
    max_w = std::max(max_w, w[i]);
  }
  double z = 0.0, wa = 0.0;
  for (std::size_t i = 0; i < menu.size(); ++i) {
    double e = std::exp(w[i] - max_w);
    z += e;
    if (menu[i] == a) wa = e;
  }
  return wa / z;
}

double boltzmann_prob(const EnergyModel& model, double t, const StateId& a,
                      std::span<const StateId> menu) {
  if (!model.parametric()) {
    fail(ErrorCode::InvalidArgument, "boltzmann_prob requires parametric noise kappa = k t");
  }
  return softmax_prob(model, t, a, menu);
}

double log_odds(const EnergyModel& model, double t, const StateId& a, const StateId& b) {
  if (!(t > 0.0)) {
    fail(ErrorCode::InvalidArgument, "temperature must be positive");
  }
  if (a == b) return 0.0;
  return -(model.energy(a) - model.energy(b)) / model.noise.value(t);
}

FreezingProfile zero_limit(const EnergyModel& model, std::span<const StateId> menu) {
  if (menu.empty()) {
    fail(ErrorCode::InvalidArgument, "menu must be nonempty");
  }
  FreezingProfile profile;
  double min_e = model.energy(menu[0]);
  for (const auto& s : menu) min_e = std::min(min_e, model.energy(s));
  std::size_t ties = 0;
  for (const auto& s : menu) {
    if (model.energy(s) == min_e) ++ties;
  }
  for (const auto& s : menu) {
    profile.menu_mass[s] = model.energy(s) == min_e ? 1.0 / static_cast<double>(ties) : 0.0;
  }
  for (const auto& a : menu) {
    for (const auto& b : menu) {
      double ea = model.energy(a), eb = model.energy(b);
      double p0;
      if (a == b) {
        p0 = 1.0;  // singleton menu {a}
      } else if (ea < eb) {
        p0 = 1.0;
      } else if (ea > eb) {
        p0 = 0.0;
      } else {
        p0 = 0.5;
      }
      profile.pair_p0[{a, b}] = p0;
    }
  }
  return profile;
}

}  // namespace bgate
