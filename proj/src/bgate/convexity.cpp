#include "bgate/convexity.hpp"

#include <algorithm>
#include <cmath>

#include "bgate/stats.hpp"

namespace bgate {

CoordEnergyModel quadratic_energy(const std::vector<std::vector<double>>& q,
                                  const std::vector<double>& linear, double constant, double k) {
  const std::size_t d = linear.size();
  if (q.size() != d) {
    fail(ErrorCode::InvalidArgument, "quadratic_energy: matrix/vector dimension mismatch");
  }
  for (const auto& row : q) {
    if (row.size() != d) {
      fail(ErrorCode::InvalidArgument, "quadratic_energy: matrix is not square");
    }
  }
  CoordEnergyModel model;
  model.dimension = d;
  model.k = k;
  model.energy = [q, linear, constant](std::span<const double> x) {
    double e = constant;
    for (std::size_t i = 0; i < x.size(); ++i) {
      e += linear[i] * x[i];
      for (std::size_t j = 0; j < x.size(); ++j) {
        e += x[i] * q[i][j] * x[j];
      }
    }
    return e;
  };
  return model;
}

namespace {

std::vector<double> mix(std::span<const double> a, std::span<const double> b, double alpha) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = alpha * a[i] + (1.0 - alpha) * b[i];
  }
  return out;
}

void check_point(const CoordEnergyModel& model, std::span<const double> x) {
  if (x.size() != model.dimension) {
    fail(ErrorCode::InvalidArgument, "coordinate dimension mismatch");
  }
}

}  // namespace

double coord_binary_prob(const CoordEnergyModel& model, double t, std::span<const double> x,
                         std::span<const double> y) {
  if (!(t > 0.0)) {
    fail(ErrorCode::InvalidArgument, "temperature must be positive");
  }
  check_point(model, x);
  check_point(model, y);
  double diff = (model.energy(x) - model.energy(y)) / (model.k * t);
  return 1.0 / (1.0 + std::exp(diff));
}

bool check_mixture_pair(const CoordEnergyModel& model, double t, std::span<const double> a,
                        std::span<const double> b, double alpha, double tol) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    fail(ErrorCode::InvalidArgument, "alpha must be interior to (0,1)");
  }
  auto m = mix(a, b, alpha);
  double lhs = coord_binary_prob(model, alpha * t, m, b);
  double rhs = coord_binary_prob(model, t, a, b);
  return lhs >= rhs - tol;
}

bool check_menu_shrink(const CoordEnergyModel& model, double s,
                       const std::vector<std::vector<double>>& menu, std::size_t b_index,
                       double eta, double tol) {
  if (!(eta > 1.0)) {
    fail(ErrorCode::InvalidArgument, "eta must exceed 1");
  }
  if (b_index >= menu.size()) {
    fail(ErrorCode::InvalidArgument, "anchor index outside menu");
  }
  const auto& b = menu[b_index];
  // p over a menu computed from pairwise energy differences to the anchor.
  auto menu_prob_of_anchor = [&](double temp, bool shrink) {
    double kt = model.k * temp;
    double z = 0.0;
    double e_b = model.energy(b);
    for (const auto& a : menu) {
      std::vector<double> point = shrink ? mix(a, b, 1.0 / eta) : a;
      z += std::exp(-(model.energy(point) - e_b) / kt);
    }
    return 1.0 / z;
  };
  double lhs = menu_prob_of_anchor(s, true);
  double rhs = menu_prob_of_anchor(eta * s, false);
  return lhs <= rhs + tol;
}

bool check_argmin_shrink(const CoordEnergyModel& model, double s,
                         const std::vector<std::vector<double>>& menu, double eta, double tol) {
  if (menu.size() == 1) return true;  // both sides are 1
  // Minimizers of p_{eta s}(.|A) are the energy maximizers of the menu.
  double max_e = model.energy(menu[0]);
  for (const auto& a : menu) max_e = std::max(max_e, model.energy(a));
  bool ok = true;
  for (std::size_t i = 0; i < menu.size(); ++i) {
    if (model.energy(menu[i]) == max_e) {
      ok = ok && check_menu_shrink(model, s, menu, i, eta, tol);
    }
  }
  return ok;
}

namespace {

struct TripleSampler {
  SplitMix64 rng;
  const ConvexitySampler& cfg;
  const CoordEnergyModel& model;

  std::vector<double> point() {
    std::vector<double> x(model.dimension);
    for (auto& c : x) c = rng.uniform(cfg.low, cfg.high);
    return x;
  }
};

ConvexityVerdict scan_triples(
    const CoordEnergyModel& model, const ConvexitySampler& cfg,
    const std::function<bool(std::span<const double>, std::span<const double>, double, double)>&
        holds) {
  ConvexityVerdict verdict;
  TripleSampler sampler{SplitMix64(SplitMix64::derive(cfg.seed, 0x6d6978ull)), cfg, model};
  for (int i = 0; i < cfg.samples; ++i) {
    auto a = sampler.point();
    auto b = sampler.point();
    double alpha = sampler.rng.uniform(0.01, 0.99);
    ++verdict.samples;
    bool ok = holds(a, b, alpha, cfg.t);
    // The inequality chain is temperature-free on exact models; spot-check a
    // second t on a thin subsample.
    if (ok && i % 64 == 0) ok = holds(a, b, alpha, cfg.spot_check_t);
    if (!ok) {
      verdict.convex = false;
      ConvexityWitness w;
      w.a = a;
      w.b = b;
      w.alpha = alpha;
      verdict.witness = w;
      return verdict;
    }
  }
  return verdict;
}

}  // namespace

ConvexityVerdict convexity_verdict(const CoordEnergyModel& model, const ConvexitySampler& cfg) {
  return scan_triples(model, cfg,
                      [&](std::span<const double> a, std::span<const double> b, double alpha,
                          double t) { return check_mixture_pair(model, t, a, b, alpha); });
}

ConvexityVerdict midpoint_verdict(const CoordEnergyModel& model, const ConvexitySampler& cfg) {
  return scan_triples(
      model, cfg,
      [&](std::span<const double> a, std::span<const double> b, double alpha, double) {
        auto m = mix(a, b, alpha);
        double lhs = model.energy(m);
        double rhs = alpha * model.energy(a) + (1.0 - alpha) * model.energy(b);
        return lhs <= rhs + 1e-12 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
      });
}

std::optional<StateId> resolve_coords(const CoordTable& table, std::span<const double> coords) {
  for (const auto& [id, xs] : table) {
    if (xs.size() != coords.size()) continue;
    bool match = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (std::fabs(xs[i] - coords[i]) > 1e-9) match = false;
    }
    if (match) return id;
  }
  return std::nullopt;
}

std::optional<bool> empirical_mixture_pair(const EmpiricalRSF& rsf, const CoordTable& coords,
                                           double t, const StateId& a, const StateId& b,
                                           double alpha) {
  auto coords_of = [&](const StateId& s) -> const std::vector<double>* {
    for (const auto& [id, xs] : coords) {
      if (id == s) return &xs;
    }
    return nullptr;
  };
  const auto* xa = coords_of(a);
  const auto* xb = coords_of(b);
  if (xa == nullptr || xb == nullptr || xa->size() != xb->size()) return std::nullopt;
  auto m = mix(*xa, *xb, alpha);
  auto mixed = resolve_coords(coords, m);
  if (!mixed) return std::nullopt;

  auto lhs_menu = rsf.binary_menu_index(*mixed, b);
  auto rhs_menu = rsf.binary_menu_index(a, b);
  auto lhs_t = rsf.grid().index_of_value(alpha * t);
  auto rhs_t = rsf.grid().index_of_value(t);
  if (!lhs_menu || !rhs_menu || !lhs_t || !rhs_t) return std::nullopt;
  if (!rsf.observed(*lhs_t, *lhs_menu) || !rsf.observed(*rhs_t, *rhs_menu)) return std::nullopt;

  const Cell* lhs_cell = rsf.find_cell(*lhs_t, *lhs_menu, *mixed);
  const Cell* rhs_cell = rsf.find_cell(*rhs_t, *rhs_menu, a);
  if (lhs_cell == nullptr || rhs_cell == nullptr) return std::nullopt;
  double slack = std::sqrt(lhs_cell->se * lhs_cell->se + rhs_cell->se * rhs_cell->se);
  return lhs_cell->freq >= rhs_cell->freq - slack;
}

}  // namespace bgate
