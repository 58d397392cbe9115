#include "bgate/report.hpp"

#include <json.hpp>

#include "bgate/stats.hpp"

namespace bgate {

namespace {

using Json = nlohmann::ordered_json;

Json config_block(const ReportConfig& config) {
  Json j;
  j["alpha"] = config.tolerances.alpha;
  j["sum_tol"] = config.tolerances.sum_tol;
  j["min_samples"] = config.tolerances.min_samples;
  j["smoothing"] = config.jeffreys ? "jeffreys" : "none";
  j["rng"] = rng_algorithm_name();
  if (config.seed) j["seed"] = *config.seed;
  return j;
}

Json outcome_block(const AxiomOutcome& outcome) {
  Json j;
  j["verdict"] = verdict_name(outcome.verdict);
  j["statistic"] = outcome.statistic;
  j["threshold"] = outcome.threshold;
  j["tests"] = outcome.tests;
  if (outcome.witness) {
    Json w;
    w["detail"] = outcome.witness->detail;
    for (const auto& [key, value] : outcome.witness->fields) {
      w["fields"][key] = value;
    }
    j["witness"] = w;
  }
  return j;
}

Json freezing_block(const std::vector<FreezingEstimate>& estimates) {
  Json arr = Json::array();
  for (const auto& est : estimates) {
    Json j;
    j["a"] = est.a;
    j["b"] = est.b;
    j["class"] = trend_class_name(est.trend);
    j["p0"] = est.p0;
    j["slope"] = est.slope;
    j["level"] = est.level;
    j["points"] = est.points;
    arr.push_back(j);
  }
  return arr;
}

Json order_block(const RevealedOrder& order) {
  Json arr = Json::array();
  for (const auto& [pair, rel] : order.pairs) {
    Json j;
    j["a"] = pair.first;
    j["b"] = pair.second;
    j["relation"] = relation_name(rel);
    arr.push_back(j);
  }
  return arr;
}

Json recovery_block(const RecoveryResult& recovery) {
  Json j;
  j["uniform"] = recovery.uniform;
  if (recovery.uniform) {
    j["kappa_undetermined"] = true;
  }
  if (recovery.pivot) {
    Json p;
    p["t"] = recovery.pivot->t_key;
    p["c"] = recovery.pivot->c_bar;
    p["d"] = recovery.pivot->d_bar;
    p["log_odds"] = recovery.pivot->log_odds;
    p["z"] = recovery.pivot->z;
    j["pivot"] = p;
  }
  Json energy;
  for (const auto& [state, e] : recovery.energy) energy[state] = e;
  j["energy"] = energy;
  if (!recovery.unrecoverable.empty()) j["unrecoverable"] = recovery.unrecoverable;
  if (!recovery.conditioning_dependent.empty()) {
    j["conditioning_dependent"] = recovery.conditioning_dependent;
  }
  Json kappa = Json::array();
  for (const auto& [t, v] : recovery.kappa) kappa.push_back(Json::array({t, v}));
  j["kappa"] = kappa;
  if (!recovery.kappa_gaps.empty()) j["kappa_gaps"] = recovery.kappa_gaps;
  j["kappa_monotone"] = recovery.kappa_monotone;
  if (!recovery.kappa_projected.empty()) {
    Json proj = Json::array();
    for (const auto& [t, v] : recovery.kappa_projected) proj.push_back(Json::array({t, v}));
    j["kappa_isotonic"] = proj;
  }
  if (recovery.generator) {
    Json g;
    g["form"] = recovery.generator->describe();
    if (const MonotoneTable* table = recovery.generator->table()) {
      Json knots = Json::array();
      for (const auto& [x, y] : table->knots()) {
        knots.push_back(Json::array({x, recovery.generator->scale() * y}));
      }
      g["knots"] = knots;
    }
    j["generator"] = g;
  }
  return j;
}

const char* const kAxiomKeys[9] = {"positivity",      "conditioning", "continuity",
                                   "consistency",     "zero-uniformity", "boundedness",
                                   "weak-boundedness", "monotonicity", "concatenation"};

}  // namespace

std::string check_report_json(const AxiomSuiteResult& result, const ReportConfig& config) {
  Json j;
  j["format"] = kReportFormat;
  j["config"] = config_block(config);
  Json checks;
  for (int i = 0; i < 9; ++i) {
    checks[kAxiomKeys[i]] = outcome_block(result.axioms[i]);
  }
  j["checks"] = checks;
  j["overall"] = result.boltzmannian;
  Json eq;
  eq["consistency_and_weak_boundedness"] = verdict_name(result.consistency_and_weak);
  eq["monotonicity_and_concatenation"] = verdict_name(result.monotonicity_and_concat);
  eq["match"] = result.equivalence_match;
  j["equivalence"] = eq;
  j["freezing"] = freezing_block(result.freezing);
  j["order"] = order_block(result.order);
  j["recovery"] = recovery_block(result.recovery);
  return j.dump(2) + "\n";
}

std::string recover_report_json(const RecoveryResult& recovery, const ReportConfig& config) {
  Json j;
  j["format"] = kReportFormat;
  j["config"] = config_block(config);
  j["recovery"] = recovery_block(recovery);
  return j.dump(2) + "\n";
}

std::string convexity_report_json(const ConvexityVerdict& mixture,
                                  const ConvexityVerdict& midpoint,
                                  const ConvexitySampler& sampler, double k) {
  Json j;
  j["format"] = kReportFormat;
  Json cfg;
  cfg["samples"] = sampler.samples;
  cfg["seed"] = sampler.seed;
  cfg["box"] = Json::array({sampler.low, sampler.high});
  cfg["k"] = k;
  cfg["rng"] = rng_algorithm_name();
  j["config"] = cfg;
  auto verdict_json = [](const ConvexityVerdict& v) {
    Json out;
    out["convex"] = v.convex;
    out["samples"] = v.samples;
    if (v.witness) {
      Json w;
      w["a"] = v.witness->a;
      w["b"] = v.witness->b;
      w["alpha"] = v.witness->alpha;
      out["witness"] = w;
    }
    return out;
  };
  j["convexity"] = verdict_json(mixture);
  j["midpoint_oracle"] = verdict_json(midpoint);
  j["match"] = mixture.convex == midpoint.convex;
  return j.dump(2) + "\n";
}

namespace {

void render_value(std::string& out, const Json& value) {
  if (value.is_string()) {
    out += value.get<std::string>();
  } else {
    out += value.dump();
  }
}

}  // namespace

std::string report_markdown(const std::string& report_json) {
  Json j = Json::parse(report_json);
  std::string md;
  md += "# boltzmann-gate report\n\n";
  if (j.contains("overall")) {
    md += j["overall"].get<bool>() ? "**Overall: PASS** — the data admits a Boltzmann "
                                     "representation at the configured level.\n\n"
                                   : "**Overall: FAIL** — at least one required property is "
                                     "rejected.\n\n";
  }
  if (j.contains("config")) {
    md += "## Configuration\n\n";
    for (const auto& [key, value] : j["config"].items()) {
      md += "- " + key + ": ";
      render_value(md, value);
      md += "\n";
    }
    md += "\n";
  }
  if (j.contains("checks")) {
    md += "## Checks\n\n";
    md += "| check | verdict | statistic | threshold | tests |\n";
    md += "|---|---|---|---|---|\n";
    for (const auto& [key, value] : j["checks"].items()) {
      md += "| " + key + " | " + value["verdict"].get<std::string>() + " | " +
            value["statistic"].dump() + " | " + value["threshold"].dump() + " | " +
            value["tests"].dump() + " |\n";
    }
    md += "\n";
    for (const auto& [key, value] : j["checks"].items()) {
      if (value.contains("witness")) {
        md += "- " + key + " witness: " + value["witness"]["detail"].get<std::string>() + "\n";
      }
    }
    md += "\n";
  }
  if (j.contains("equivalence")) {
    const auto& eq = j["equivalence"];
    md += "## Alternative-route cross-check\n\n";
    md += "- consistency + weak boundedness: " +
          eq["consistency_and_weak_boundedness"].get<std::string>() + "\n";
    md += "- monotonicity + concatenation: " +
          eq["monotonicity_and_concatenation"].get<std::string>() + "\n";
    md += std::string("- match: ") + (eq["match"].get<bool>() ? "yes" : "no") + "\n\n";
  }
  if (j.contains("freezing") && !j["freezing"].empty()) {
    md += "## Freezing limits\n\n";
    md += "| a | b | class | p0 |\n|---|---|---|---|\n";
    for (const auto& row : j["freezing"]) {
      md += "| " + row["a"].get<std::string>() + " | " + row["b"].get<std::string>() + " | " +
            row["class"].get<std::string>() + " | " + row["p0"].dump() + " |\n";
    }
    md += "\n";
  }
  if (j.contains("recovery")) {
    const auto& rec = j["recovery"];
    md += "## Recovery\n\n";
    if (rec["uniform"].get<bool>()) {
      md += "Uniform family: energies constant, noise map undetermined.\n\n";
    } else {
      if (rec.contains("pivot")) {
        md += "- pivot: (" + rec["pivot"]["t"].get<std::string>() + ", " +
              rec["pivot"]["c"].get<std::string>() + ", " + rec["pivot"]["d"].get<std::string>() +
              ")\n";
      }
      md += "- energies:\n";
      for (const auto& [state, e] : rec["energy"].items()) {
        md += "    - " + state + ": " + e.dump() + "\n";
      }
      md += "- kappa table:\n";
      for (const auto& row : rec["kappa"]) {
        md += "    - t=" + row[0].dump() + ": " + row[1].dump() + "\n";
      }
      if (rec.contains("generator")) {
        md += "- concatenation generator: " + rec["generator"]["form"].get<std::string>() + "\n";
      }
      md += "\n";
    }
  }
  if (j.contains("convexity")) {
    md += "## Convexity\n\n";
    md += std::string("- inequality route: ") +
          (j["convexity"]["convex"].get<bool>() ? "convex" : "not convex") + "\n";
    md += std::string("- midpoint oracle: ") +
          (j["midpoint_oracle"]["convex"].get<bool>() ? "convex" : "not convex") + "\n";
    md += std::string("- match: ") + (j["match"].get<bool>() ? "yes" : "no") + "\n";
  }
  return md;
}

}  // namespace bgate
