#pragma once

// Statistical checkers for the nine structural properties of an empirical
// random state function: positivity, conditioning, continuity of the odds
// trend, freezing consistency, zero-temperature uniformity, boundedness
// (log-odds linear in inverse temperature), weak boundedness (linear in a
// generator), monotonicity, and cross-pair concatenation alignment.
//
// Multiple-testing policy: `alpha` is the familywise budget for a whole
// suite run. It is split evenly across the nine checkers, and each checker
// Bonferroni-corrects over its own elementary tests. A checker invoked on
// its own applies the same budget split so verdicts match suite runs.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bgate/concat.hpp"
#include "bgate/recovery.hpp"
#include "bgate/rsf.hpp"

namespace bgate {

struct ToleranceConfig {
  double alpha = 0.01;        // familywise significance budget, in (0,1)
  double sum_tol = 1e-9;      // normalization tolerance
  std::size_t min_samples = 3;  // minimum usable grid points per pair
};

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);

// Conjunction: Fail dominates, then Inconclusive.
Verdict conjoin(Verdict a, Verdict b);

struct Witness {
  std::string detail;  // human-readable description of the offending tuple
  std::map<std::string, std::string> fields;
};

struct AxiomOutcome {
  std::string name;
  Verdict verdict = Verdict::Inconclusive;
  double statistic = 0.0;  // extreme test statistic observed
  double threshold = 0.0;  // rejection threshold at the corrected level
  int tests = 0;           // elementary tests performed
  std::optional<Witness> witness;
};

// --- freezing-limit estimation ----------------------------------------------

enum class TrendClass { Diverging, ConstantOne, Vanishing, FlatNonzero, Ambiguous };
const char* trend_class_name(TrendClass t);

struct FreezingEstimate {
  StateId a, b;
  TrendClass trend = TrendClass::Ambiguous;
  double p0 = 0.5;       // estimated zero-temperature probability of a over b
  double level = 0.0;    // weighted mean of ln r_{1/v}
  double level_se = 0.0;
  double slope = 0.0;    // trend of ln r_{1/v} against v
  double slope_se = 0.0;
  std::size_t points = 0;

  FreezingEstimate mirrored() const;  // estimate for the reversed pair
};

OddsClass trend_to_odds_class(TrendClass t);

// Trend classification of ln r_{1/v}(a,b) on the inverse-temperature axis;
// never evaluates at t = 0. Throws InsufficientData below min_samples.
FreezingEstimate estimate_freezing_limit(const EmpiricalRSF& rsf, const StateId& a,
                                         const StateId& b, const ToleranceConfig& cfg);

// Estimates for every observed binary pair with enough usable samples;
// `skipped` collects pairs below min_samples.
std::vector<FreezingEstimate> estimate_freezing_all(
    const EmpiricalRSF& rsf, const ToleranceConfig& cfg,
    std::vector<std::pair<StateId, StateId>>* skipped = nullptr);

// odds_curve with the class filled in from the trend test.
OddsCurve classified_odds_curve(const EmpiricalRSF& rsf, const StateId& a, const StateId& b,
                                const ToleranceConfig& cfg);

// --- revealed order ----------------------------------------------------------

enum class Relation { Succ, Sim, Prec, Unknown };
const char* relation_name(Relation r);

struct RevealedOrder {
  // Per unordered pair (a < b): how a compares to b.
  std::map<std::pair<StateId, StateId>, Relation> pairs;
  Relation relation(const StateId& a, const StateId& b) const;
};

RevealedOrder revealed_order(const std::vector<FreezingEstimate>& estimates);

// --- individual checkers ------------------------------------------------------

AxiomOutcome check_positivity(const EmpiricalRSF& rsf, const ToleranceConfig& cfg);
AxiomOutcome check_conditioning(const EmpiricalRSF& rsf, const ToleranceConfig& cfg);
AxiomOutcome check_continuity(const EmpiricalRSF& rsf, const ToleranceConfig& cfg);
AxiomOutcome check_consistency(const EmpiricalRSF& rsf, const ToleranceConfig& cfg);
AxiomOutcome check_zero_uniformity(const EmpiricalRSF& rsf, const ToleranceConfig& cfg);
AxiomOutcome check_boundedness(const EmpiricalRSF& rsf, const ToleranceConfig& cfg);
AxiomOutcome check_weak_boundedness(const EmpiricalRSF& rsf, const ConcatGenerator& g,
                                    const ToleranceConfig& cfg);
AxiomOutcome check_monotonicity(const EmpiricalRSF& rsf, const ToleranceConfig& cfg);
AxiomOutcome check_concatenation(const EmpiricalRSF& rsf, const ToleranceConfig& cfg);

// Standalone statistics backing fail witnesses.
double conditioning_statistic(const EmpiricalRSF& rsf, double t, const std::string& menu_b,
                              const std::string& menu_a, const StateId& state);
double boundedness_statistic(const EmpiricalRSF& rsf, const StateId& a, const StateId& b,
                             const ToleranceConfig& cfg);
double weak_boundedness_statistic(const EmpiricalRSF& rsf, const StateId& a, const StateId& b,
                                  const ConcatGenerator& g, const ToleranceConfig& cfg);
double ratio_constancy_statistic(const EmpiricalRSF& rsf, const StateId& a1, const StateId& b1,
                                 const StateId& a2, const StateId& b2,
                                 const ToleranceConfig& cfg);

// --- the full suite ------------------------------------------------------------

struct AxiomSuiteResult {
  // Index 0..8: positivity, conditioning, continuity, consistency,
  // zero-uniformity, boundedness, weak boundedness, monotonicity,
  // concatenation.
  std::array<AxiomOutcome, 9> axioms;
  bool boltzmannian = false;  // first six all pass
  Verdict consistency_and_weak = Verdict::Inconclusive;   // 4th and 7th combined
  Verdict monotonicity_and_concat = Verdict::Inconclusive;  // 8th and 9th combined
  bool equivalence_match = false;
  std::vector<FreezingEstimate> freezing;
  RevealedOrder order;
  RecoveryResult recovery;  // also supplies the generator used above
};

AxiomSuiteResult run_suite(const EmpiricalRSF& rsf, const ToleranceConfig& cfg);

}  // namespace bgate
