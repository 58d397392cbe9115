#pragma once

// Closed-form recovery of the energy function and noise map from observed
// odds: anchored at a pivot (v_bar, c_bar, d_bar) with significantly strict
// binary preference, E~(a) = ln r_vbar(c_bar, a) and
// kappa~(t) = ln r_vbar(c_bar, d_bar) / ln r_t(c_bar, d_bar). The recovered
// pair matches any true representation up to (m E + q, m kappa), m > 0.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bgate/concat.hpp"
#include "bgate/noise.hpp"
#include "bgate/rsf.hpp"

namespace bgate {

struct Pivot {
  double v_bar = 0.0;      // pivot temperature
  std::string t_key;       // its grid token
  StateId c_bar, d_bar;    // r_{v_bar}(c_bar, d_bar) > 1 significantly
  double log_odds = 0.0;   // ln r_{v_bar}(c_bar, d_bar)
  double se = 0.0;
  double z = 0.0;          // |log_odds| / se
};

// Binary log-odds with the conditioning fallback: preferred source is the
// binary menu {a, b}; otherwise the smallest observed menu containing both
// states (flagged as derived).
struct LogOddsPoint {
  bool usable = false;
  bool derived = false;  // taken from a larger menu via conditioning ratios
  double lnr = 0.0;
  double se = 0.0;
};

LogOddsPoint lookup_log_odds(const EmpiricalRSF& rsf, std::size_t t_idx, const StateId& a,
                             const StateId& b);

// Maximizes |ln r| / stderr over significant (pair, t) candidates; exact ties
// break lexicographically by (state, state, temperature token). Returns
// nullopt when no significantly strict pair exists (uniform signal).
std::optional<Pivot> select_pivot(const EmpiricalRSF& rsf, double alpha);

struct RecoveryResult {
  bool uniform = false;  // no strict pair: E constant, kappa undetermined
  std::optional<Pivot> pivot;
  std::map<StateId, double> energy;          // E~; E~(c_bar) = 0 exactly
  std::vector<StateId> unrecoverable;        // states without usable odds at v_bar
  std::vector<StateId> conditioning_dependent;
  std::vector<std::pair<double, double>> kappa;  // (t, kappa~); kappa~(v_bar) = 1
  std::vector<double> kappa_gaps;                // grid temperatures without estimate
  bool kappa_monotone = true;
  std::vector<std::pair<double, double>> kappa_projected;  // isotonic fix when violated
  std::optional<ConcatGenerator> generator;  // identified concatenation, phi(1) = 1
};

std::map<StateId, double> recover_energy(const EmpiricalRSF& rsf, const Pivot& pivot,
                                         std::vector<StateId>* unrecoverable = nullptr,
                                         std::vector<StateId>* derived = nullptr);

// Tabulated kappa~ over the grid; entries with unusable or null pivot odds
// are reported as gaps.
std::vector<std::pair<double, double>> recover_kappa(const EmpiricalRSF& rsf, const Pivot& pivot,
                                                     std::vector<double>* gaps = nullptr);

// Table-backed generator phi(v) = 1/kappa~(1/v), normalized to phi(1) = 1
// when 1 lies in range (otherwise normalized at the middle knot).
ConcatGenerator identify_concatenation(const std::vector<std::pair<double, double>>& kappa_table);

RecoveryResult recover_family(const EmpiricalRSF& rsf, double alpha);

// --- affine equivalence of representations ----------------------------------

struct AffineMatch {
  bool equivalent = false;
  double m = 1.0;
  double q = 0.0;
  double max_energy_residual = 0.0;
  double max_kappa_residual = 0.0;
};

// Fits (m, q) by least squares on shared states and checks kappa2 = m*kappa1
// on the given grid. Requires both energy maps non-constant.
AffineMatch affine_equivalent(const std::map<StateId, double>& e1, const NoiseMap& k1,
                              const std::map<StateId, double>& e2, const NoiseMap& k2,
                              std::span<const double> grid, double tol);

}  // namespace bgate
