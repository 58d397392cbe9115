#include "boltzmann_gate.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include <json.hpp>

#include "bgate/axioms.hpp"
#include "bgate/convexity.hpp"
#include "bgate/csv.hpp"
#include "bgate/report.hpp"
#include "bgate/synth.hpp"

using Json = nlohmann::json;

struct bg_rsf {
  bgate::EmpiricalRSF impl;
  bool jeffreys = false;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** error, const std::string& message) {
  if (error != nullptr) *error = dup_string(message);
}

bg_status map_code(bgate::ErrorCode code) {
  switch (code) {
    case bgate::ErrorCode::InvalidArgument: return BG_ERR_INVALID_ARGUMENT;
    case bgate::ErrorCode::DataError: return BG_ERR_DATA;
    case bgate::ErrorCode::LookupError: return BG_ERR_LOOKUP;
    case bgate::ErrorCode::RangeError: return BG_ERR_RANGE;
    case bgate::ErrorCode::InsufficientData: return BG_ERR_INSUFFICIENT;
    case bgate::ErrorCode::IoError: return BG_ERR_IO;
  }
  return BG_ERR_INTERNAL;
}

template <typename Fn>
bg_status guarded(char** error, Fn&& fn) {
  try {
    return fn();
  } catch (const bgate::Error& e) {
    set_error(error, e.what());
    return map_code(e.code());
  } catch (const Json::exception& e) {
    set_error(error, std::string("json: ") + e.what());
    return BG_ERR_DATA;
  } catch (const std::exception& e) {
    set_error(error, e.what());
    return BG_ERR_INTERNAL;
  }
}

bgate::NoiseMap parse_kappa(const Json& j, const std::vector<double>& grid) {
  if (j.contains("k")) {
    return bgate::NoiseMap::parametric(j.at("k").get<double>());
  }
  if (j.contains("table")) {
    std::vector<std::pair<double, double>> knots;
    for (const auto& row : j.at("table")) {
      knots.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
    }
    return bgate::NoiseMap::tabulated(bgate::MonotoneTable::strict(std::move(knots)));
  }
  if (j.contains("preset")) {
    std::string preset = j.at("preset").get<std::string>();
    if (preset == "t") return bgate::NoiseMap::parametric(1.0);
    if (preset == "2t") return bgate::NoiseMap::parametric(2.0);
    auto tabulate = [&](auto&& fn) {
      std::vector<std::pair<double, double>> knots;
      for (double t : grid) knots.emplace_back(t, fn(t));
      return bgate::NoiseMap::tabulated(bgate::MonotoneTable::strict(std::move(knots)));
    };
    if (preset == "t^2") return tabulate([](double t) { return t * t; });
    if (preset == "t+t^3") return tabulate([](double t) { return t + t * t * t; });
    bgate::fail(bgate::ErrorCode::InvalidArgument, "unknown kappa preset '" + preset + "'");
  }
  bgate::fail(bgate::ErrorCode::InvalidArgument,
              "kappa must give one of: k, table, preset");
}

bgate::FamilySpec parse_family(const std::string& family_json) {
  Json j = Json::parse(family_json);
  bgate::FamilySpec spec;
  spec.kind = bgate::family_kind_from_name(j.at("kind").get<std::string>());
  for (const auto& t : j.at("grid")) spec.grid.push_back(t.get<double>());
  if (j.contains("states")) {
    for (const auto& s : j.at("states")) {
      if (s.contains("energy")) {
        spec.energies[s.at("id").get<std::string>()] = s.at("energy").get<double>();
      } else {
        spec.energies.emplace(s.at("id").get<std::string>(), 0.0);
      }
    }
  }
  for (const auto& m : j.at("menus")) {
    std::vector<bgate::StateId> members;
    for (const auto& s : m.at("members")) members.push_back(s.get<std::string>());
    spec.menus.push_back(bgate::make_menu(m.at("id").get<std::string>(), std::move(members)));
  }
  spec.n = j.value("n", 0LL);
  spec.seed = j.value("seed", 0ULL);
  spec.k = j.value("k", 1.0);
  spec.c0 = j.value("c0", 1.0);
  spec.c1 = j.value("c1", 1.0);
  spec.scale = j.value("scale", 2.0);
  if (spec.kind == bgate::FamilyKind::Softmax) {
    if (!j.contains("kappa")) {
      bgate::fail(bgate::ErrorCode::InvalidArgument, "softmax family needs a kappa block");
    }
    spec.kappa = parse_kappa(j.at("kappa"), spec.grid);
  }
  return spec;
}

struct ParsedConfig {
  bgate::ReportConfig report;
};

ParsedConfig parse_config(const char* config_json, bool jeffreys) {
  ParsedConfig out;
  out.report.jeffreys = jeffreys;
  if (config_json == nullptr || *config_json == '\0') return out;
  Json j = Json::parse(config_json);
  auto& tol = out.report.tolerances;
  tol.alpha = j.value("alpha", tol.alpha);
  tol.sum_tol = j.value("sum_tol", tol.sum_tol);
  tol.min_samples = j.value("min_samples", tol.min_samples);
  if (!(tol.alpha > 0.0 && tol.alpha < 1.0)) {
    bgate::fail(bgate::ErrorCode::InvalidArgument, "alpha must lie in (0,1)");
  }
  if (j.contains("seed")) out.report.seed = j.at("seed").get<std::uint64_t>();
  return out;
}

}  // namespace

extern "C" {

const char* bg_version(void) { return "boltzmann-gate 0.1.0"; }

void bg_string_free(char* s) { std::free(s); }

void bg_rsf_free(bg_rsf* rsf) { delete rsf; }

bg_status bg_rsf_read_csv(const char* path, int jeffreys_smoothing, bg_rsf** out, char** error) {
  if (path == nullptr || out == nullptr) {
    set_error(error, "path and out must be non-null");
    return BG_ERR_INVALID_ARGUMENT;
  }
  return guarded(error, [&] {
    bgate::BuildOptions options;
    options.jeffreys = jeffreys_smoothing != 0;
    auto handle = std::make_unique<bg_rsf>();
    handle->impl = bgate::ingest_csv(path, options);
    handle->jeffreys = options.jeffreys;
    *out = handle.release();
    return BG_OK;
  });
}

bg_status bg_rsf_write_csv(const bg_rsf* rsf, const char* path, int exact_frequencies,
                           char** error) {
  if (rsf == nullptr || path == nullptr) {
    set_error(error, "rsf and path must be non-null");
    return BG_ERR_INVALID_ARGUMENT;
  }
  return guarded(error, [&] {
    bgate::export_csv(rsf->impl, path, exact_frequencies != 0);
    return BG_OK;
  });
}

bg_status bg_generate(const char* family_json, bg_rsf** out, char** error) {
  if (family_json == nullptr || out == nullptr) {
    set_error(error, "family_json and out must be non-null");
    return BG_ERR_INVALID_ARGUMENT;
  }
  return guarded(error, [&] {
    auto spec = parse_family(family_json);
    auto handle = std::make_unique<bg_rsf>();
    handle->impl = bgate::synthesize(spec);
    *out = handle.release();
    return BG_OK;
  });
}

bg_status bg_check(const bg_rsf* rsf, const char* config_json, int* overall_pass,
                   char** report_json, char** error) {
  if (rsf == nullptr || report_json == nullptr) {
    set_error(error, "rsf and report_json must be non-null");
    return BG_ERR_INVALID_ARGUMENT;
  }
  return guarded(error, [&] {
    ParsedConfig cfg = parse_config(config_json, rsf->jeffreys);
    bgate::AxiomSuiteResult result = bgate::run_suite(rsf->impl, cfg.report.tolerances);
    if (overall_pass != nullptr) *overall_pass = result.boltzmannian ? 1 : 0;
    *report_json = dup_string(bgate::check_report_json(result, cfg.report));
    return BG_OK;
  });
}

bg_status bg_recover(const bg_rsf* rsf, const char* config_json, char** report_json,
                     char** error) {
  if (rsf == nullptr || report_json == nullptr) {
    set_error(error, "rsf and report_json must be non-null");
    return BG_ERR_INVALID_ARGUMENT;
  }
  return guarded(error, [&] {
    ParsedConfig cfg = parse_config(config_json, rsf->jeffreys);
    bgate::RecoveryResult recovery =
        bgate::recover_family(rsf->impl, cfg.report.tolerances.alpha);
    *report_json = dup_string(bgate::recover_report_json(recovery, cfg.report));
    return BG_OK;
  });
}

bg_status bg_convexity(const char* model_json, char** report_json, char** error) {
  if (model_json == nullptr || report_json == nullptr) {
    set_error(error, "model_json and report_json must be non-null");
    return BG_ERR_INVALID_ARGUMENT;
  }
  return guarded(error, [&] {
    Json j = Json::parse(model_json);
    std::vector<std::vector<double>> q;
    for (const auto& row : j.at("quadratic")) {
      q.push_back(row.get<std::vector<double>>());
    }
    std::vector<double> linear = j.at("linear").get<std::vector<double>>();
    double constant = j.value("constant", 0.0);
    double k = j.value("k", 1.0);
    bgate::CoordEnergyModel model = bgate::quadratic_energy(q, linear, constant, k);
    bgate::ConvexitySampler sampler;
    sampler.samples = j.value("samples", 1000);
    sampler.seed = j.value("seed", 1ULL);
    if (j.contains("box")) {
      sampler.low = j.at("box").at(0).get<double>();
      sampler.high = j.at("box").at(1).get<double>();
    }
    auto mixture = bgate::convexity_verdict(model, sampler);
    auto midpoint = bgate::midpoint_verdict(model, sampler);
    *report_json = dup_string(bgate::convexity_report_json(mixture, midpoint, sampler, k));
    return BG_OK;
  });
}

bg_status bg_report_markdown(const char* report_json, char** markdown, char** error) {
  if (report_json == nullptr || markdown == nullptr) {
    set_error(error, "report_json and markdown must be non-null");
    return BG_ERR_INVALID_ARGUMENT;
  }
  return guarded(error, [&] {
    *markdown = dup_string(bgate::report_markdown(report_json));
    return BG_OK;
  });
}

}  // extern "C"
