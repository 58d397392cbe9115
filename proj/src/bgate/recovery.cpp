#include "bgate/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "bgate/stats.hpp"

namespace bgate {

LogOddsPoint lookup_log_odds(const EmpiricalRSF& rsf, std::size_t t_idx, const StateId& a,
                             const StateId& b) {
  LogOddsPoint out;
  if (a == b) {
    out.usable = true;
    out.lnr = 0.0;
    out.se = kStderrFloor;
    return out;
  }
  auto use_menu = [&](std::size_t m_idx, bool derived) {
    const Cell* ca = rsf.find_cell(t_idx, m_idx, a);
    const Cell* cb = rsf.find_cell(t_idx, m_idx, b);
    if (ca == nullptr || cb == nullptr) return false;
    bool positive = rsf.exact() ? (ca->freq > 0.0 && cb->freq > 0.0)
                                : (ca->count > 0.0 && cb->count > 0.0);
    if (!positive) return false;
    out.usable = true;
    out.derived = derived;
    out.lnr = std::log(ca->freq) - std::log(cb->freq);
    out.se = rsf.exact() ? kStderrFloor : std::sqrt(1.0 / ca->count + 1.0 / cb->count);
    return true;
  };
  if (auto bin = rsf.binary_menu_index(a, b)) {
    if (rsf.observed(t_idx, *bin) && use_menu(*bin, false)) return out;
  }
  // Conditioning fallback: smallest observed menu containing both states.
  std::vector<std::pair<std::size_t, std::size_t>> candidates;  // (size, menu idx)
  for (std::size_t m = 0; m < rsf.menus().size(); ++m) {
    const auto& members = rsf.menus()[m].members;
    if (members.size() <= 2) continue;
    if (!std::binary_search(members.begin(), members.end(), a)) continue;
    if (!std::binary_search(members.begin(), members.end(), b)) continue;
    if (!rsf.observed(t_idx, m)) continue;
    candidates.emplace_back(members.size(), m);
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](const auto& x, const auto& y) {
              if (x.first != y.first) return x.first < y.first;
              return rsf.menus()[x.second].id < rsf.menus()[y.second].id;
            });
  for (const auto& [size, m_idx] : candidates) {
    if (use_menu(m_idx, true)) return out;
  }
  return out;
}

std::optional<Pivot> select_pivot(const EmpiricalRSF& rsf, double alpha) {
  const auto& states = rsf.states();
  const std::size_t T = rsf.grid().size();
  std::size_t n_pairs = states.size() * (states.size() - 1) / 2;
  if (n_pairs == 0 || T == 0) return std::nullopt;
  double level = alpha / static_cast<double>(n_pairs * T);
  double z_crit = normal_quantile(1.0 - level / 2.0);

  std::optional<Pivot> best;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      for (std::size_t t_idx = 0; t_idx < T; ++t_idx) {
        LogOddsPoint p = lookup_log_odds(rsf, t_idx, states[i], states[j]);
        if (!p.usable || p.lnr == 0.0) continue;
        double z = std::fabs(p.lnr) / p.se;
        if (z <= z_crit) continue;
        Pivot cand;
        cand.v_bar = rsf.grid().at(t_idx).value;
        cand.t_key = rsf.grid().at(t_idx).key;
        cand.c_bar = p.lnr > 0.0 ? states[i] : states[j];
        cand.d_bar = p.lnr > 0.0 ? states[j] : states[i];
        cand.log_odds = std::fabs(p.lnr);
        cand.se = p.se;
        cand.z = z;
        bool take = false;
        if (!best) {
          take = true;
        } else if (cand.z != best->z) {
          take = cand.z > best->z;
        } else {
          take = std::tie(cand.c_bar, cand.d_bar, cand.t_key) <
                 std::tie(best->c_bar, best->d_bar, best->t_key);
        }
        if (take) best = cand;
      }
    }
  }
  return best;
}

std::map<StateId, double> recover_energy(const EmpiricalRSF& rsf, const Pivot& pivot,
                                         std::vector<StateId>* unrecoverable,
                                         std::vector<StateId>* derived) {
  auto t_idx = rsf.grid().index_of_key(pivot.t_key);
  if (!t_idx) {
    fail(ErrorCode::LookupError, "pivot temperature '" + pivot.t_key + "' not on the grid");
  }
  std::map<StateId, double> energy;
  for (const auto& a : rsf.states()) {
    if (a == pivot.c_bar) {
      energy[a] = 0.0;
      continue;
    }
    LogOddsPoint p = lookup_log_odds(rsf, *t_idx, pivot.c_bar, a);
    if (!p.usable) {
      if (unrecoverable != nullptr) unrecoverable->push_back(a);
      continue;
    }
    energy[a] = p.lnr;
    if (p.derived && derived != nullptr) derived->push_back(a);
  }
  return energy;
}

std::vector<std::pair<double, double>> recover_kappa(const EmpiricalRSF& rsf, const Pivot& pivot,
                                                     std::vector<double>* gaps) {
  auto pivot_idx = rsf.grid().index_of_key(pivot.t_key);
  if (!pivot_idx) {
    fail(ErrorCode::LookupError, "pivot temperature '" + pivot.t_key + "' not on the grid");
  }
  LogOddsPoint anchor = lookup_log_odds(rsf, *pivot_idx, pivot.c_bar, pivot.d_bar);
  if (!anchor.usable || !(anchor.lnr > 0.0)) {
    fail(ErrorCode::InsufficientData, "pivot pair has no usable odds at the pivot temperature");
  }
  std::vector<std::pair<double, double>> table;
  for (std::size_t t_idx = 0; t_idx < rsf.grid().size(); ++t_idx) {
    double t = rsf.grid().at(t_idx).value;
    if (t_idx == *pivot_idx) {
      table.emplace_back(t, 1.0);
      continue;
    }
    LogOddsPoint p = lookup_log_odds(rsf, t_idx, pivot.c_bar, pivot.d_bar);
    if (!p.usable || p.lnr == 0.0) {
      if (gaps != nullptr) gaps->push_back(t);
      continue;
    }
    table.emplace_back(t, anchor.lnr / p.lnr);
  }
  return table;
}

ConcatGenerator identify_concatenation(const std::vector<std::pair<double, double>>& kappa_table) {
  if (kappa_table.size() < 2) {
    fail(ErrorCode::InsufficientData, "kappa table needs at least 2 entries");
  }
  std::vector<std::pair<double, double>> knots(kappa_table.begin(), kappa_table.end());
  std::sort(knots.begin(), knots.end());
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].second > knots[i - 1].second)) {
      fail(ErrorCode::InvalidArgument, "kappa table is not strictly increasing");
    }
    if (!(knots[i - 1].second > 0.0)) {
      fail(ErrorCode::InvalidArgument, "kappa table must be strictly positive");
    }
  }
  NoiseMap kappa = NoiseMap::tabulated(MonotoneTable::strict(std::move(knots)));
  ConcatGenerator phi = generator_from_kappa(kappa);
  const MonotoneTable& t = *phi.table();
  if (t.front_x() <= 1.0 && 1.0 <= t.back_x()) {
    return phi.normalized();
  }
  double mid = t.knots()[t.knots().size() / 2].first;
  return phi.scaled_by(1.0 / phi.forward(mid));
}

RecoveryResult recover_family(const EmpiricalRSF& rsf, double alpha) {
  RecoveryResult out;
  out.pivot = select_pivot(rsf, alpha);
  if (!out.pivot) {
    out.uniform = true;  // E constant; kappa undetermined
    for (const auto& s : rsf.states()) out.energy[s] = 0.0;
    return out;
  }
  out.energy = recover_energy(rsf, *out.pivot, &out.unrecoverable, &out.conditioning_dependent);
  out.kappa = recover_kappa(rsf, *out.pivot, &out.kappa_gaps);

  // Data-quality check: kappa~ should increase with temperature.
  std::vector<double> y, w;
  for (const auto& [t, k] : out.kappa) {
    y.push_back(k);
    w.push_back(1.0);
  }
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] <= y[i - 1]) out.kappa_monotone = false;
  }
  std::vector<std::pair<double, double>> usable_table = out.kappa;
  if (!out.kappa_monotone) {
    auto proj = isotonic_fit(y, w);
    out.kappa_projected.reserve(out.kappa.size());
    for (std::size_t i = 0; i < out.kappa.size(); ++i) {
      out.kappa_projected.emplace_back(out.kappa[i].first, proj[i]);
    }
    usable_table = out.kappa_projected;
  }
  bool strictly_increasing = usable_table.size() >= 2;
  for (std::size_t i = 1; i < usable_table.size(); ++i) {
    if (!(usable_table[i].second > usable_table[i - 1].second)) strictly_increasing = false;
  }
  if (strictly_increasing) {
    out.generator = identify_concatenation(usable_table);
  }
  return out;
}

AffineMatch affine_equivalent(const std::map<StateId, double>& e1, const NoiseMap& k1,
                              const std::map<StateId, double>& e2, const NoiseMap& k2,
                              std::span<const double> grid, double tol) {
  std::vector<double> x, y;
  for (const auto& [state, v1] : e1) {
    auto it = e2.find(state);
    if (it == e2.end()) continue;
    x.push_back(v1);
    y.push_back(it->second);
  }
  if (x.size() < 2) {
    fail(ErrorCode::InvalidArgument, "affine_equivalent: fewer than 2 shared states");
  }
  auto constant = [](const std::vector<double>& v) {
    for (double u : v) {
      if (u != v.front()) return false;
    }
    return true;
  };
  if (constant(x) || constant(y)) {
    fail(ErrorCode::InvalidArgument,
         "affine_equivalent requires non-constant energies; the uniform case is handled by "
         "the recovery driver");
  }
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  AffineMatch match;
  match.m = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  match.q = (sy - match.m * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    match.max_energy_residual =
        std::max(match.max_energy_residual, std::fabs(y[i] - (match.m * x[i] + match.q)));
  }
  for (double t : grid) {
    match.max_kappa_residual =
        std::max(match.max_kappa_residual, std::fabs(k2.value(t) - match.m * k1.value(t)));
  }
  match.equivalent = match.m > 0.0 && match.max_energy_residual <= tol &&
                     match.max_kappa_residual <= tol;
  return match;
}

}  // namespace bgate
