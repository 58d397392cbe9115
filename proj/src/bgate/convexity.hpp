#pragma once

// Convexity tests for an energy defined on vector coordinates, through the
// observable inequalities they are equivalent to: mixing two states while
// shrinking temperature proportionally can only raise the mixture's binary
// choice probability when the energy is convex. Exact evaluation only; the
// equivalence needs noise-free probabilities.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bgate/rsf.hpp"

namespace bgate {

// Energy as a function of coordinates, with Boltzmann noise slope k.
struct CoordEnergyModel {
  std::function<double(std::span<const double>)> energy;
  std::size_t dimension = 1;
  double k = 1.0;
};

CoordEnergyModel quadratic_energy(const std::vector<std::vector<double>>& q,
                                  const std::vector<double>& linear, double constant, double k);

// Binary probability p_t(x, y) of coordinate point x against y under the model.
double coord_binary_prob(const CoordEnergyModel& model, double t, std::span<const double> x,
                         std::span<const double> y);

// p_{alpha t}(alpha a + (1-alpha) b, b) >= p_t(a, b), alpha in (0, 1).
// Holds for all (a, b, alpha, t) iff the energy is convex.
bool check_mixture_pair(const CoordEnergyModel& model, double t, std::span<const double> a,
                        std::span<const double> b, double alpha, double tol = 1e-12);

// p_s(b | (1/eta) A + (1 - 1/eta) b) <= p_{eta s}(b | A), eta > 1.
bool check_menu_shrink(const CoordEnergyModel& model, double s,
                       const std::vector<std::vector<double>>& menu, std::size_t b_index,
                       double eta, double tol = 1e-12);

// check_menu_shrink restricted to the minimizers of p_{eta s}(.|A); ties all tested.
bool check_argmin_shrink(const CoordEnergyModel& model, double s,
                         const std::vector<std::vector<double>>& menu, double eta,
                         double tol = 1e-12);

struct ConvexityWitness {
  std::vector<double> a, b;
  double alpha = 0.0;
  double lhs = 0.0, rhs = 0.0;
};

struct ConvexityVerdict {
  bool convex = true;
  int samples = 0;
  std::optional<ConvexityWitness> witness;
};

struct ConvexitySampler {
  int samples = 1000;
  std::uint64_t seed = 1;
  double low = -3.0, high = 3.0;  // coordinate box, per dimension
  double t = 1.0;                 // the inequality is t-free on exact models
  double spot_check_t = 2.0;      // second temperature asserted on a subsample
};

// Samples random (a, b, alpha) triples and menu instances; convex iff every
// mixture inequality holds.
ConvexityVerdict convexity_verdict(const CoordEnergyModel& model, const ConvexitySampler& cfg);

// Independent route: E(alpha a + (1-alpha) b) <= alpha E(a) + (1-alpha) E(b)
// on the same sampling scheme.
ConvexityVerdict midpoint_verdict(const CoordEnergyModel& model, const ConvexitySampler& cfg);

// --- empirical variant ----------------------------------------------------------

// Resolves coordinates to a state id (exact match within 1e-9 per component).
using CoordTable = std::vector<std::pair<StateId, std::vector<double>>>;

std::optional<StateId> resolve_coords(const CoordTable& table, std::span<const double> coords);

// Inequality check on observed data; requires the mixture state and both
// binary menus to be present, else returns nullopt (inapplicable). The
// comparison allows one combined standard error of slack.
std::optional<bool> empirical_mixture_pair(const EmpiricalRSF& rsf, const CoordTable& coords,
                                           double t, const StateId& a, const StateId& b,
                                           double alpha);

}  // namespace bgate
