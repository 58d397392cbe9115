#include "bgate/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bgate/stats.hpp"

namespace bgate {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict conjoin(Verdict a, Verdict b) {
  if (a == Verdict::Fail || b == Verdict::Fail) return Verdict::Fail;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::Pass;
}

const char* trend_class_name(TrendClass t) {
  switch (t) {
    case TrendClass::Diverging: return "diverging";
    case TrendClass::ConstantOne: return "constant-1";
    case TrendClass::Vanishing: return "vanishing";
    case TrendClass::FlatNonzero: return "flat-nonzero";
    case TrendClass::Ambiguous: return "ambiguous";
  }
  return "?";
}

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Succ: return "succ";
    case Relation::Sim: return "sim";
    case Relation::Prec: return "prec";
    case Relation::Unknown: return "unknown";
  }
  return "?";
}

OddsClass trend_to_odds_class(TrendClass t) {
  switch (t) {
    case TrendClass::Diverging: return OddsClass::IncreasingToInf;
    case TrendClass::ConstantOne: return OddsClass::ConstantOne;
    case TrendClass::Vanishing: return OddsClass::DecreasingToZero;
    default: return OddsClass::Unclassified;
  }
}

FreezingEstimate FreezingEstimate::mirrored() const {
  FreezingEstimate out = *this;
  std::swap(out.a, out.b);
  out.p0 = 1.0 - p0;
  out.level = -level;
  out.slope = -slope;
  if (trend == TrendClass::Diverging) {
    out.trend = TrendClass::Vanishing;
  } else if (trend == TrendClass::Vanishing) {
    out.trend = TrendClass::Diverging;
  }
  return out;
}

namespace {

constexpr int kAxiomCount = 9;

double axiom_budget(const ToleranceConfig& cfg) { return cfg.alpha / kAxiomCount; }

double z_two_sided(double level) { return normal_quantile(1.0 - 0.5 * level); }
double z_one_sided(double level) { return normal_quantile(1.0 - level); }

std::size_t effective_min_samples(const ToleranceConfig& cfg) {
  return std::max<std::size_t>(3, cfg.min_samples);
}

double logistic(double w) { return 1.0 / (1.0 + std::exp(-w)); }

std::string pair_name(const StateId& a, const StateId& b) { return "{" + a + ", " + b + "}"; }

FreezingEstimate classify_trend(const OddsCurve& curve, double z_cls) {
  auto samples = curve.by_inverse_temperature();  // ascending v
  const std::size_t n = samples.size();
  std::vector<double> vs(n), ws(n), ses(n);
  for (std::size_t i = 0; i < n; ++i) {
    vs[i] = samples[i].v;
    ws[i] = samples[i].logw;
    ses[i] = samples[i].se;
  }
  LineFit fit = fit_line(vs, ws, ses);
  WeightedMean level = weighted_mean(ws, ses);

  bool sig_up_step = false, sig_down_step = false;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double step = ws[i + 1] - ws[i];
    double se_step = std::sqrt(ses[i] * ses[i] + ses[i + 1] * ses[i + 1]);
    if (step > z_cls * se_step) sig_up_step = true;
    if (step < -z_cls * se_step) sig_down_step = true;
  }
  int last_sign = 0;
  if (ws[n - 1] > z_cls * ses[n - 1]) last_sign = 1;
  if (ws[n - 1] < -z_cls * ses[n - 1]) last_sign = -1;
  bool slope_sig = std::fabs(fit.slope) > z_cls * fit.slope_se;
  bool level_sig = std::fabs(level.mean) > z_cls * level.se;

  FreezingEstimate est;
  est.a = curve.a;
  est.b = curve.b;
  est.level = level.mean;
  est.level_se = level.se;
  est.slope = fit.slope;
  est.slope_se = fit.slope_se;
  est.points = n;

  if (slope_sig && fit.slope > 0.0) {
    if (last_sign < 0 || sig_down_step) {
      est.trend = TrendClass::Ambiguous;
      est.p0 = logistic(level.mean);
    } else {
      est.trend = TrendClass::Diverging;
      est.p0 = 1.0;
    }
  } else if (slope_sig && fit.slope < 0.0) {
    if (last_sign > 0 || sig_up_step) {
      est.trend = TrendClass::Ambiguous;
      est.p0 = logistic(level.mean);
    } else {
      est.trend = TrendClass::Vanishing;
      est.p0 = 0.0;
    }
  } else if (sig_up_step && sig_down_step) {
    est.trend = TrendClass::Ambiguous;
    est.p0 = logistic(level.mean);
  } else if (level_sig) {
    est.trend = TrendClass::FlatNonzero;
    est.p0 = logistic(level.mean);
  } else {
    est.trend = TrendClass::ConstantOne;
    est.p0 = 0.5;
  }
  return est;
}

double classifier_z(const EmpiricalRSF& rsf, const ToleranceConfig& cfg) {
  std::size_t pairs = std::max<std::size_t>(1, rsf.observed_pairs().size());
  double level = axiom_budget(cfg) / (3.0 * static_cast<double>(pairs));
  return z_two_sided(level);
}

}  // namespace

FreezingEstimate estimate_freezing_limit(const EmpiricalRSF& rsf, const StateId& a,
                                         const StateId& b, const ToleranceConfig& cfg) {
  OddsCurve curve = rsf.odds_curve(a, b, effective_min_samples(cfg));
  return classify_trend(curve, classifier_z(rsf, cfg));
}

std::vector<FreezingEstimate> estimate_freezing_all(
    const EmpiricalRSF& rsf, const ToleranceConfig& cfg,
    std::vector<std::pair<StateId, StateId>>* skipped) {
  std::vector<FreezingEstimate> out;
  double z_cls = classifier_z(rsf, cfg);
  for (const auto& [a, b] : rsf.observed_pairs()) {
    try {
      OddsCurve curve = rsf.odds_curve(a, b, effective_min_samples(cfg));
      out.push_back(classify_trend(curve, z_cls));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientData) throw;
      if (skipped != nullptr) skipped->emplace_back(a, b);
    }
  }
  return out;
}

OddsCurve classified_odds_curve(const EmpiricalRSF& rsf, const StateId& a, const StateId& b,
                                const ToleranceConfig& cfg) {
  OddsCurve curve = rsf.odds_curve(a, b, effective_min_samples(cfg));
  curve.cls = trend_to_odds_class(classify_trend(curve, classifier_z(rsf, cfg)).trend);
  return curve;
}

RevealedOrder revealed_order(const std::vector<FreezingEstimate>& estimates) {
  RevealedOrder order;
  for (const auto& est : estimates) {
    Relation rel = Relation::Unknown;
    switch (est.trend) {
      case TrendClass::Diverging: rel = Relation::Succ; break;
      case TrendClass::ConstantOne: rel = Relation::Sim; break;
      case TrendClass::Vanishing: rel = Relation::Prec; break;
      default: rel = Relation::Unknown; break;
    }
    if (est.a <= est.b) {
      order.pairs[{est.a, est.b}] = rel;
    } else {
      Relation inv = rel == Relation::Succ   ? Relation::Prec
                     : rel == Relation::Prec ? Relation::Succ
                                             : rel;
      order.pairs[{est.b, est.a}] = inv;
    }
  }
  return order;
}

Relation RevealedOrder::relation(const StateId& a, const StateId& b) const {
  bool flip = b < a;
  auto key = flip ? std::make_pair(b, a) : std::make_pair(a, b);
  auto it = pairs.find(key);
  if (it == pairs.end()) return Relation::Unknown;
  if (!flip) return it->second;
  if (it->second == Relation::Succ) return Relation::Prec;
  if (it->second == Relation::Prec) return Relation::Succ;
  return it->second;
}

// --- A: positivity -----------------------------------------------------------

AxiomOutcome check_positivity(const EmpiricalRSF& rsf, const ToleranceConfig& cfg) {
  AxiomOutcome out;
  out.name = "positivity";
  out.verdict = Verdict::Pass;
  for (std::size_t t_idx = 0; t_idx < rsf.grid().size(); ++t_idx) {
    for (std::size_t m_idx = 0; m_idx < rsf.menus().size(); ++m_idx) {
      if (!rsf.observed(t_idx, m_idx)) continue;
      const Menu& menu = rsf.menus()[m_idx];
      const std::string& t_key = rsf.grid().at(t_idx).key;
      double sum = 0.0;
      for (const auto& s : menu.members) {
        const Cell* cell = rsf.find_cell(t_idx, m_idx, s);
        sum += cell->freq;
        ++out.tests;
        if (!(cell->freq > 0.0)) {
          out.verdict = Verdict::Fail;
          out.statistic = cell->freq;
          Witness w;
          w.detail = "zero frequency for in-menu state at (" + t_key + ", " + menu.id + ", " + s + ")";
          w.fields = {{"t", t_key}, {"menu", menu.id}, {"state", s}};
          out.witness = w;
          return out;
        }
      }
      double gap = std::fabs(sum - 1.0);
      out.statistic = std::max(out.statistic, gap);
      if (gap > cfg.sum_tol) {
        out.verdict = Verdict::Fail;
        Witness w;
        w.detail = "frequencies at (" + t_key + ", " + menu.id + ") sum to " + format_number(sum);
        w.fields = {{"t", t_key}, {"menu", menu.id}, {"sum", format_number(sum)}};
        out.witness = w;
        return out;
      }
    }
  }
  out.threshold = cfg.sum_tol;
  return out;
}

// --- A: conditioning ---------------------------------------------------------

namespace {

struct NestedTest {
  std::size_t t_idx, b_idx, a_idx;
  StateId state;
};

std::vector<NestedTest> nested_tests(const EmpiricalRSF& rsf) {
  std::vector<NestedTest> tests;
  const auto& menus = rsf.menus();
  for (std::size_t t_idx = 0; t_idx < rsf.grid().size(); ++t_idx) {
    for (std::size_t b_idx = 0; b_idx < menus.size(); ++b_idx) {
      if (!rsf.observed(t_idx, b_idx) || menus[b_idx].members.size() < 2) continue;
      for (std::size_t a_idx = 0; a_idx < menus.size(); ++a_idx) {
        if (a_idx == b_idx || !rsf.observed(t_idx, a_idx)) continue;
        const auto& small = menus[b_idx].members;
        const auto& large = menus[a_idx].members;
        if (small.size() >= large.size()) continue;
        if (!std::includes(large.begin(), large.end(), small.begin(), small.end())) continue;
        for (const auto& s : small) {
          tests.push_back({t_idx, b_idx, a_idx, s});
        }
      }
    }
  }
  return tests;
}

double conditioning_z(const EmpiricalRSF& rsf, const NestedTest& test) {
  const Menu& menu_b = rsf.menus()[test.b_idx];
  double p_b_a = rsf.find_cell(test.t_idx, test.a_idx, test.state)->freq;
  double q = rsf.find_cell(test.t_idx, test.b_idx, test.state)->freq;
  double mass = 0.0;  // p_t(B|A)
  for (const auto& s : menu_b.members) {
    mass += rsf.find_cell(test.t_idx, test.a_idx, s)->freq;
  }
  double diff = p_b_a - q * mass;
  double var;
  if (rsf.exact()) {
    var = 3.0 * kStderrFloor * kStderrFloor;
  } else {
    double n_a = rsf.total(test.t_idx, test.a_idx);
    double n_b = rsf.total(test.t_idx, test.b_idx);
    double var_a =
        ((1.0 - q) * (1.0 - q) * p_b_a + q * q * (mass - p_b_a) - diff * diff) / n_a;
    double var_b = mass * mass * q * (1.0 - q) / n_b;
    var = std::max(0.0, var_a) + std::max(0.0, var_b);
  }
  var = std::max(var, kStderrFloor * kStderrFloor);
  return diff / std::sqrt(var);
}

}  // namespace

double conditioning_statistic(const EmpiricalRSF& rsf, double t, const std::string& menu_b,
                              const std::string& menu_a, const StateId& state) {
  auto t_idx = rsf.grid().index_of_value(t);
  auto b_idx = rsf.menu_index(menu_b);
  auto a_idx = rsf.menu_index(menu_a);
  if (!t_idx || !b_idx || !a_idx) {
    fail(ErrorCode::LookupError, "conditioning_statistic: unknown temperature or menu");
  }
  return conditioning_z(rsf, {*t_idx, *b_idx, *a_idx, state});
}

AxiomOutcome check_conditioning(const EmpiricalRSF& rsf, const ToleranceConfig& cfg) {
  AxiomOutcome out;
  out.name = "conditioning";
  auto tests = nested_tests(rsf);
  out.tests = static_cast<int>(tests.size());
  if (tests.empty()) {
    out.verdict = Verdict::Inconclusive;
    return out;
  }
  double level = axiom_budget(cfg) / static_cast<double>(tests.size());
  out.threshold = z_two_sided(level);
  out.verdict = Verdict::Pass;
  for (const auto& test : tests) {
    double z = conditioning_z(rsf, test);
    if (std::fabs(z) > std::fabs(out.statistic)) out.statistic = z;
    if (std::fabs(z) > out.threshold && !out.witness) {
      out.verdict = Verdict::Fail;
      const std::string& t_key = rsf.grid().at(test.t_idx).key;
      Witness w;
      w.detail = "p(" + test.state + "|" + rsf.menus()[test.a_idx].id + ") != p(" + test.state +
                 "|" + rsf.menus()[test.b_idx].id + ") * p(" + rsf.menus()[test.b_idx].id + "|" +
                 rsf.menus()[test.a_idx].id + ") at t=" + t_key + " (z=" + format_number(z) + ")";
      w.fields = {{"t", t_key},
                  {"menu_b", rsf.menus()[test.b_idx].id},
                  {"menu_a", rsf.menus()[test.a_idx].id},
                  {"state", test.state},
                  {"z", format_number(z)}};
      out.witness = w;
    }
  }
  return out;
}

// --- A: continuity of the odds trend ------------------------------------------

AxiomOutcome check_continuity(const EmpiricalRSF& rsf, const ToleranceConfig& cfg) {
  AxiomOutcome out;
  out.name = "continuity";
  std::vector<std::pair<StateId, StateId>> skipped;
  auto estimates = estimate_freezing_all(rsf, cfg, &skipped);
  out.tests = static_cast<int>(estimates.size());
  if (estimates.empty()) {
    out.verdict = Verdict::Inconclusive;
    return out;
  }
  out.verdict = Verdict::Pass;
  for (const auto& est : estimates) {
    if (est.trend == TrendClass::Ambiguous) {
      out.verdict = Verdict::Fail;
      Witness w;
      w.detail = "odds trend of " + pair_name(est.a, est.b) +
                 " fits no monotone or constant class (slope=" + format_number(est.slope) +
                 ", level=" + format_number(est.level) + ")";
      w.fields = {{"a", est.a}, {"b", est.b}, {"slope", format_number(est.slope)},
                  {"level", format_number(est.level)}};
      out.witness = w;
      return out;
    }
  }
  return out;
}

// --- A: consistency of freezing with positive-temperature preference -----------

AxiomOutcome check_consistency(const EmpiricalRSF& rsf, const ToleranceConfig& cfg) {
  AxiomOutcome out;
  out.name = "consistency";
  auto estimates = estimate_freezing_all(rsf, cfg);
  if (estimates.empty()) {
    out.verdict = Verdict::Inconclusive;
    return out;
  }
  std::size_t samples = 0;
  for (const auto& est : estimates) samples += est.points;
  double level = axiom_budget(cfg) / (2.0 * static_cast<double>(samples));
  double z_sig = z_one_sided(level);
  out.threshold = z_sig;
  out.verdict = Verdict::Pass;

  for (const auto& base : estimates) {
    for (const FreezingEstimate& est : {base, base.mirrored()}) {
      OddsCurve curve = rsf.odds_curve(est.a, est.b, effective_min_samples(cfg));
      const OddsSample* sig_at = nullptr;
      for (const auto& s : curve.samples) {
        if (s.logw > z_sig * s.se) {
          out.statistic = std::max(out.statistic, s.logw / s.se);
          if (sig_at == nullptr) sig_at = &s;
        }
      }
      ++out.tests;
      if (sig_at == nullptr) continue;
      double p0_fwd = est.p0;
      double p0_rev = 1.0 - est.p0;
      if (!(p0_fwd > p0_rev)) {
        out.verdict = Verdict::Fail;
        Witness w;
        w.detail = "r_t(" + est.a + "," + est.b + ") > 1 significantly at t=" +
                   format_number(sig_at->t) + " but estimated p0=" + format_number(p0_fwd) +
                   " is not above " + format_number(p0_rev);
        w.fields = {{"a", est.a}, {"b", est.b}, {"t", format_number(sig_at->t)},
                    {"p0", format_number(p0_fwd)}, {"p0_rev", format_number(p0_rev)},
                    {"trend", trend_class_name(est.trend)}};
        out.witness = w;
        return out;
      }
    }
  }
  return out;
}

// --- A: zero-temperature uniformity -------------------------------------------

AxiomOutcome check_zero_uniformity(const EmpiricalRSF& rsf, const ToleranceConfig& cfg) {
  AxiomOutcome out;
  out.name = "zero-uniformity";
  auto estimates = estimate_freezing_all(rsf, cfg);
  if (estimates.empty()) {
    out.verdict = Verdict::Inconclusive;
    return out;
  }
  out.verdict = Verdict::Pass;
  out.threshold = classifier_z(rsf, cfg);
  for (const auto& est : estimates) {
    ++out.tests;
    if (est.trend == TrendClass::ConstantOne || est.trend == TrendClass::FlatNonzero) {
      out.statistic = std::max(out.statistic, std::fabs(est.level) / est.level_se);
    }
    if (est.trend == TrendClass::FlatNonzero) {
      out.verdict = Verdict::Fail;
      Witness w;
      w.detail = "freezing limit of " + pair_name(est.a, est.b) + " estimated interior at p0=" +
                 format_number(est.p0) + ", significantly away from 1/2";
      w.fields = {{"a", est.a}, {"b", est.b}, {"p0", format_number(est.p0)},
                  {"level", format_number(est.level)}, {"level_se", format_number(est.level_se)}};
      out.witness = w;
      return out;
    }
  }
  return out;
}

// --- A: boundedness (log-odds proportional to inverse temperature) -------------

namespace {

struct PairCurveStats {
  StateId a, b;
  double chi2 = 0.0;
  int dof = 0;
  double coeff = 0.0;
};

// Lack-of-fit of logw against c * x(v) for each usable pair.
template <typename XFn>
std::vector<PairCurveStats> proportional_lack_of_fit(const EmpiricalRSF& rsf,
                                                     const ToleranceConfig& cfg, XFn&& x_of_v) {
  std::vector<PairCurveStats> stats;
  for (const auto& [a, b] : rsf.observed_pairs()) {
    OddsCurve curve;
    try {
      curve = rsf.odds_curve(a, b, effective_min_samples(cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientData) throw;
      continue;
    }
    std::vector<double> xs, ws, ses;
    for (const auto& s : curve.by_inverse_temperature()) {
      double x;
      try {
        x = x_of_v(s.v);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::RangeError) throw;
        continue;
      }
      xs.push_back(x);
      ws.push_back(s.logw);
      ses.push_back(s.se);
    }
    if (xs.size() < effective_min_samples(cfg)) continue;
    ProportionalFit fit = fit_proportional(xs, ws, ses);
    stats.push_back({a, b, fit.chi2, fit.dof, fit.coeff});
  }
  return stats;
}

AxiomOutcome lack_of_fit_outcome(const char* name, const std::vector<PairCurveStats>& stats,
                                 const ToleranceConfig& cfg) {
  AxiomOutcome out;
  out.name = name;
  out.tests = static_cast<int>(stats.size());
  if (stats.empty()) {
    out.verdict = Verdict::Inconclusive;
    return out;
  }
  double level = axiom_budget(cfg) / static_cast<double>(stats.size());
  out.verdict = Verdict::Pass;
  for (const auto& s : stats) {
    double thr = chi2_quantile(1.0 - level, s.dof);
    if (s.chi2 > out.statistic) {
      out.statistic = s.chi2;
      out.threshold = thr;
    }
    if (s.chi2 > thr && !out.witness) {
      out.verdict = Verdict::Fail;
      Witness w;
      w.detail = "log-odds of " + pair_name(s.a, s.b) + " do not fit c*x: chi2=" +
                 format_number(s.chi2) + " (dof " + std::to_string(s.dof) + ", threshold " +
                 format_number(thr) + "), fitted c=" + format_number(s.coeff);
      w.fields = {{"a", s.a}, {"b", s.b}, {"chi2", format_number(s.chi2)},
                  {"dof", std::to_string(s.dof)}, {"coeff", format_number(s.coeff)}};
      out.witness = w;
    }
  }
  return out;
}

}  // namespace

double boundedness_statistic(const EmpiricalRSF& rsf, const StateId& a, const StateId& b,
                             const ToleranceConfig& cfg) {
  OddsCurve curve = rsf.odds_curve(a, b, effective_min_samples(cfg));
  std::vector<double> xs, ws, ses;
  for (const auto& s : curve.by_inverse_temperature()) {
    xs.push_back(s.v);
    ws.push_back(s.logw);
    ses.push_back(s.se);
  }
  return fit_proportional(xs, ws, ses).chi2;
}

double weak_boundedness_statistic(const EmpiricalRSF& rsf, const StateId& a, const StateId& b,
                                  const ConcatGenerator& g, const ToleranceConfig& cfg) {
  OddsCurve curve = rsf.odds_curve(a, b, effective_min_samples(cfg));
  std::vector<double> xs, ws, ses;
  for (const auto& s : curve.by_inverse_temperature()) {
    double x;
    try {
      x = g.forward(s.v);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RangeError) throw;
      continue;
    }
    xs.push_back(x);
    ws.push_back(s.logw);
    ses.push_back(s.se);
  }
  return fit_proportional(xs, ws, ses).chi2;
}

AxiomOutcome check_boundedness(const EmpiricalRSF& rsf, const ToleranceConfig& cfg) {
  auto stats = proportional_lack_of_fit(rsf, cfg, [](double v) { return v; });
  return lack_of_fit_outcome("boundedness", stats, cfg);
}

AxiomOutcome check_weak_boundedness(const EmpiricalRSF& rsf, const ConcatGenerator& g,
                                    const ToleranceConfig& cfg) {
  auto stats = proportional_lack_of_fit(rsf, cfg, [&](double v) { return g.forward(v); });
  return lack_of_fit_outcome("weak-boundedness", stats, cfg);
}

// --- A: monotone approach to even odds -----------------------------------------

AxiomOutcome check_monotonicity(const EmpiricalRSF& rsf, const ToleranceConfig& cfg) {
  AxiomOutcome out;
  out.name = "monotonicity";
  auto pairs = rsf.observed_pairs();
  std::vector<OddsCurve> curves;
  for (const auto& [a, b] : pairs) {
    try {
      curves.push_back(rsf.odds_curve(a, b, effective_min_samples(cfg)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientData) throw;
    }
  }
  if (curves.empty()) {
    out.verdict = Verdict::Inconclusive;
    return out;
  }
  std::size_t checks = 0;
  for (const auto& c : curves) checks += 3 * c.samples.size();
  double level = axiom_budget(cfg) / static_cast<double>(checks);
  double z = z_two_sided(level);
  out.threshold = z;
  out.verdict = Verdict::Pass;
  out.tests = static_cast<int>(checks);

  for (const auto& curve : curves) {
    const auto& s = curve.samples;  // ascending temperature
    const std::size_t n = s.size();
    bool sig_plus = false, sig_minus = false;
    double t_plus = 0.0, t_minus = 0.0;
    for (const auto& p : s) {
      if (p.logw > z * p.se && !sig_plus) {
        sig_plus = true;
        t_plus = p.t;
      }
      if (p.logw < -z * p.se && !sig_minus) {
        sig_minus = true;
        t_minus = p.t;
      }
    }
    auto fail_with = [&](const std::string& detail, std::map<std::string, std::string> fields) {
      out.verdict = Verdict::Fail;
      Witness w;
      w.detail = detail;
      fields.emplace("a", curve.a);
      fields.emplace("b", curve.b);
      w.fields = std::move(fields);
      out.witness = w;
    };
    if (sig_plus && sig_minus) {
      fail_with("odds of " + pair_name(curve.a, curve.b) + " cross 1: r > 1 at t=" +
                    format_number(t_plus) + " but r < 1 at t=" + format_number(t_minus),
                {{"t_above", format_number(t_plus)}, {"t_below", format_number(t_minus)}});
      return out;
    }
    int dir = sig_plus ? 1 : (sig_minus ? -1 : 0);
    if (dir != 0) {
      for (std::size_t i = 0; i + 1 < n; ++i) {
        double step = (s[i + 1].logw - s[i].logw) * dir;
        double se_step = std::sqrt(s[i].se * s[i].se + s[i + 1].se * s[i + 1].se);
        if (step > z * se_step) {
          fail_with("log-odds of " + pair_name(curve.a, curve.b) +
                        " move away from 0 between t=" + format_number(s[i].t) + " and t=" +
                        format_number(s[i + 1].t),
                    {{"t_lo", format_number(s[i].t)}, {"t_hi", format_number(s[i + 1].t)},
                     {"step", format_number(step)}});
          return out;
        }
      }
    }
    bool last_ok = std::fabs(s[n - 1].logw) <= z * s[n - 1].se;
    bool shrinking = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      double se_step = std::sqrt(s[i].se * s[i].se + s[i + 1].se * s[i + 1].se);
      if (std::fabs(s[i + 1].logw) > std::fabs(s[i].logw) + z * se_step) shrinking = false;
    }
    if (!last_ok && !shrinking) {
      fail_with("odds of " + pair_name(curve.a, curve.b) +
                    " do not approach 1 at large t (last log-odds " +
                    format_number(s[n - 1].logw) + ")",
                {{"t", format_number(s[n - 1].t)}, {"logw", format_number(s[n - 1].logw)}});
      return out;
    }
  }
  return out;
}

// --- A: cross-pair alignment of log-odds ratios --------------------------------

namespace {

struct StrictCurve {
  StateId a, b;           // oriented so logw > 0 throughout
  std::vector<OddsSample> samples;  // ascending temperature, logw sign fixed
};

std::vector<StrictCurve> strict_curves(const EmpiricalRSF& rsf, const ToleranceConfig& cfg,
                                       double z_strict) {
  std::vector<StrictCurve> out;
  for (const auto& [a, b] : rsf.observed_pairs()) {
    OddsCurve curve;
    try {
      curve = rsf.odds_curve(a, b, effective_min_samples(cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientData) throw;
      continue;
    }
    bool all_plus = true, all_minus = true;
    for (const auto& s : curve.samples) {
      if (!(s.logw > z_strict * s.se)) all_plus = false;
      if (!(-s.logw > z_strict * s.se)) all_minus = false;
    }
    if (!all_plus && !all_minus) continue;
    StrictCurve sc;
    sc.a = all_plus ? curve.a : curve.b;
    sc.b = all_plus ? curve.b : curve.a;
    sc.samples = curve.samples;
    if (all_minus) {
      for (auto& s : sc.samples) {
        s.logw = -s.logw;
        s.r = 1.0 / s.r;
      }
    }
    out.push_back(std::move(sc));
  }
  return out;
}

struct RatioTest {
  double chi2 = 0.0;
  int dof = 0;
  double mean = 0.0;
  int shared = 0;
};

RatioTest ratio_constancy(const StrictCurve& p, const StrictCurve& q) {
  std::vector<double> rho, se;
  std::size_t i = 0, j = 0;
  while (i < p.samples.size() && j < q.samples.size()) {
    if (p.samples[i].t < q.samples[j].t) {
      ++i;
    } else if (q.samples[j].t < p.samples[i].t) {
      ++j;
    } else {
      double wp = p.samples[i].logw, wq = q.samples[j].logw;
      double r = wp / wq;
      double rel = std::sqrt(std::pow(p.samples[i].se / wp, 2) + std::pow(q.samples[j].se / wq, 2));
      rho.push_back(r);
      se.push_back(std::max(std::fabs(r) * rel, kStderrFloor));
      ++i;
      ++j;
    }
  }
  RatioTest out;
  out.shared = static_cast<int>(rho.size());
  if (rho.size() < 2) return out;
  WeightedMean wm = weighted_mean(rho, se);
  out.chi2 = wm.chi2;
  out.dof = wm.dof;
  out.mean = wm.mean;
  return out;
}

}  // namespace

double ratio_constancy_statistic(const EmpiricalRSF& rsf, const StateId& a1, const StateId& b1,
                                 const StateId& a2, const StateId& b2,
                                 const ToleranceConfig& cfg) {
  auto curve_of = [&](const StateId& x, const StateId& y) {
    OddsCurve c = rsf.odds_curve(x, y, effective_min_samples(cfg));
    StrictCurve sc;
    sc.a = x;
    sc.b = y;
    sc.samples = c.samples;
    if (c.a != x) {
      for (auto& s : sc.samples) {
        s.logw = -s.logw;
        s.r = 1.0 / s.r;
      }
    }
    return sc;
  };
  return ratio_constancy(curve_of(a1, b1), curve_of(a2, b2)).chi2;
}

AxiomOutcome check_concatenation(const EmpiricalRSF& rsf, const ToleranceConfig& cfg) {
  AxiomOutcome out;
  out.name = "concatenation";
  std::size_t total_samples = 0;
  for (const auto& [a, b] : rsf.observed_pairs()) {
    try {
      total_samples += rsf.odds_curve(a, b, effective_min_samples(cfg)).samples.size();
    } catch (const Error&) {
    }
  }
  if (total_samples == 0) {
    out.verdict = Verdict::Inconclusive;
    return out;
  }
  double z_strict = z_one_sided(axiom_budget(cfg) / (2.0 * static_cast<double>(total_samples)));
  auto strict = strict_curves(rsf, cfg, z_strict);
  if (strict.size() < 2) {
    out.verdict = Verdict::Inconclusive;
    out.tests = static_cast<int>(strict.size());
    return out;
  }
  std::size_t combos = strict.size() * (strict.size() - 1) / 2;
  double level = axiom_budget(cfg) / static_cast<double>(combos);
  out.verdict = Verdict::Pass;
  for (std::size_t i = 0; i < strict.size(); ++i) {
    for (std::size_t j = i + 1; j < strict.size(); ++j) {
      RatioTest rt = ratio_constancy(strict[i], strict[j]);
      if (rt.shared < 2) continue;
      ++out.tests;
      double thr = chi2_quantile(1.0 - level, rt.dof);
      if (rt.chi2 > out.statistic) {
        out.statistic = rt.chi2;
        out.threshold = thr;
      }
      if (rt.chi2 > thr && !out.witness) {
        out.verdict = Verdict::Fail;
        Witness w;
        w.detail = "log-odds ratio of " + pair_name(strict[i].a, strict[i].b) + " over " +
                   pair_name(strict[j].a, strict[j].b) + " varies with t: chi2=" +
                   format_number(rt.chi2) + " (dof " + std::to_string(rt.dof) + ")";
        w.fields = {{"a1", strict[i].a}, {"b1", strict[i].b}, {"a2", strict[j].a},
                    {"b2", strict[j].b}, {"chi2", format_number(rt.chi2)},
                    {"mean_ratio", format_number(rt.mean)}};
        out.witness = w;
      }
    }
  }
  if (out.tests == 0) out.verdict = Verdict::Inconclusive;
  return out;
}

// --- the suite ------------------------------------------------------------------

AxiomSuiteResult run_suite(const EmpiricalRSF& rsf, const ToleranceConfig& cfg) {
  AxiomSuiteResult result;
  result.axioms[0] = check_positivity(rsf, cfg);
  result.axioms[1] = check_conditioning(rsf, cfg);
  result.axioms[2] = check_continuity(rsf, cfg);
  result.axioms[3] = check_consistency(rsf, cfg);
  result.axioms[4] = check_zero_uniformity(rsf, cfg);
  result.axioms[5] = check_boundedness(rsf, cfg);

  result.recovery = recover_family(rsf, cfg.alpha);
  ConcatGenerator generator = result.recovery.generator ? *result.recovery.generator
                                                        : ConcatGenerator::identity();
  result.axioms[6] = check_weak_boundedness(rsf, generator, cfg);
  result.axioms[7] = check_monotonicity(rsf, cfg);
  result.axioms[8] = check_concatenation(rsf, cfg);

  result.boltzmannian = true;
  for (int i = 0; i < 6; ++i) {
    if (result.axioms[i].verdict != Verdict::Pass) result.boltzmannian = false;
  }
  result.consistency_and_weak = conjoin(result.axioms[3].verdict, result.axioms[6].verdict);
  result.monotonicity_and_concat = conjoin(result.axioms[7].verdict, result.axioms[8].verdict);
  result.equivalence_match = result.consistency_and_weak == result.monotonicity_and_concat;

  result.freezing = estimate_freezing_all(rsf, cfg);
  result.order = revealed_order(result.freezing);
  return result;
}

}  // namespace bgate
