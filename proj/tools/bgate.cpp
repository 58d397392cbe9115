// Command-line front end. All functionality goes through the C API in
// boltzmann_gate.h; this translation unit only parses arguments, shuttles
// files, and maps results to exit codes:
//   0  ran, and (for `check`) the data passed the gate
//   1  ran, and the gate failed
//   2  usage or data error

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boltzmann_gate.h"

using Json = nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct CApiFailure {
  bg_status status;
  std::string message;
};

void throw_on_error(bg_status status, char** error) {
  if (status == BG_OK) return;
  std::string message = *error != nullptr ? *error : "unknown error";
  bg_string_free(*error);
  throw CApiFailure{status, message};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CApiFailure{BG_ERR_IO, "cannot open '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CApiFailure{BG_ERR_IO, "cannot write '" + path + "'"};
  out << content;
  if (!out) throw CApiFailure{BG_ERR_IO, "failed writing '" + path + "'"};
}

std::vector<double> parse_grid(const std::string& list) {
  std::vector<double> grid;
  std::stringstream ss(list);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    grid.push_back(std::stod(token));
  }
  if (grid.empty()) throw CApiFailure{BG_ERR_INVALID_ARGUMENT, "empty grid list"};
  return grid;
}

Json kappa_json(const std::string& spec) {
  if (spec == "t" || spec == "2t" || spec == "t^2" || spec == "t+t^3") {
    return Json{{"preset", spec}};
  }
  if (spec.rfind("k:", 0) == 0) {
    return Json{{"k", std::stod(spec.substr(2))}};
  }
  if (!spec.empty() && spec[0] == '@') {
    return Json{{"table", Json::parse(read_file(spec.substr(1)))}};
  }
  throw CApiFailure{BG_ERR_INVALID_ARGUMENT,
                    "kappa spec must be t, 2t, t^2, t+t^3, k:<value>, or @<table.json>"};
}

struct RsfHandle {
  bg_rsf* ptr = nullptr;
  ~RsfHandle() { bg_rsf_free(ptr); }
};

struct StringHandle {
  char* ptr = nullptr;
  ~StringHandle() { bg_string_free(ptr); }
  std::string str() const { return ptr != nullptr ? ptr : ""; }
};

std::string render_report(const std::string& report_json, const std::string& format) {
  if (format == "json") return report_json;
  StringHandle md;
  char* error = nullptr;
  throw_on_error(bg_report_markdown(report_json.c_str(), &md.ptr, &error), &error);
  return md.str();
}

int cmd_generate(const std::string& kind, const std::string& grid_list,
                 const std::string& menus_path, long long n, std::uint64_t seed,
                 const std::string& out_path, double k, const std::string& kappa_spec,
                 double c0, double c1, double scale, bool exact) {
  Json family = Json::parse(read_file(menus_path));
  family["kind"] = kind;
  family["grid"] = parse_grid(grid_list);
  family["n"] = n;
  family["seed"] = seed;
  family["k"] = k;
  family["c0"] = c0;
  family["c1"] = c1;
  family["scale"] = scale;
  if (!kappa_spec.empty()) family["kappa"] = kappa_json(kappa_spec);

  RsfHandle rsf;
  char* error = nullptr;
  throw_on_error(bg_generate(family.dump().c_str(), &rsf.ptr, &error), &error);
  bool frequency_format = exact || n == 0;
  throw_on_error(bg_rsf_write_csv(rsf.ptr, out_path.c_str(), frequency_format ? 1 : 0, &error),
                 &error);
  return kExitPass;
}

Json tolerance_json(double alpha) {
  Json config = Json::object();
  config["alpha"] = alpha;
  return config;
}

int cmd_check(const std::string& in_path, double alpha, const std::string& smoothing,
              const std::string& report_path, const std::string& format) {
  RsfHandle rsf;
  char* error = nullptr;
  int jeffreys = smoothing == "jeffreys" ? 1 : 0;
  throw_on_error(bg_rsf_read_csv(in_path.c_str(), jeffreys, &rsf.ptr, &error), &error);
  StringHandle report;
  int overall = 0;
  throw_on_error(
      bg_check(rsf.ptr, tolerance_json(alpha).dump().c_str(), &overall, &report.ptr, &error),
      &error);
  write_file(report_path, render_report(report.str(), format));
  return overall != 0 ? kExitPass : kExitFail;
}

int cmd_recover(const std::string& in_path, double alpha, const std::string& report_path,
                const std::string& format) {
  RsfHandle rsf;
  char* error = nullptr;
  throw_on_error(bg_rsf_read_csv(in_path.c_str(), 0, &rsf.ptr, &error), &error);
  StringHandle report;
  throw_on_error(
      bg_recover(rsf.ptr, tolerance_json(alpha).dump().c_str(), &report.ptr, &error), &error);
  write_file(report_path, render_report(report.str(), format));
  return kExitPass;
}

int cmd_convexity(const std::string& model_path, const std::string& report_path,
                  const std::string& format) {
  std::string model = read_file(model_path);
  StringHandle report;
  char* error = nullptr;
  throw_on_error(bg_convexity(model.c_str(), &report.ptr, &error), &error);
  write_file(report_path, render_report(report.str(), format));
  return kExitPass;
}

int cmd_report(const std::string& in_path) {
  std::string report = read_file(in_path);
  StringHandle md;
  char* error = nullptr;
  throw_on_error(bg_report_markdown(report.c_str(), &md.ptr, &error), &error);
  std::cout << md.str();
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(bg_version()) +
               " - tests whether temperature-indexed choice frequencies admit a "
               "Boltzmann/softmax representation, and recovers it when they do"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "synthesize a family and write it as CSV");
  std::string kind, grid_list, menus_path, out_path, kappa_spec;
  long long n = 0;
  std::uint64_t seed = 0;
  double k = 1.0, c0 = 1.0, c1 = 1.0, scale = 2.0;
  bool exact = false;
  gen->add_option("--kind", kind,
                  "boltzmann|softmax|uniform|probit-binary|crossing-logodds|"
                  "scaled-conditioning-breaker")
      ->required();
  gen->add_option("--grid", grid_list, "comma-separated temperatures")->required();
  gen->add_option("--menus", menus_path, "JSON file with states and menus")->required();
  gen->add_option("--n", n, "samples per (t, menu); 0 = exact frequencies");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--out", out_path, "output CSV path")->required();
  gen->add_option("--k", k, "noise slope for boltzmann");
  gen->add_option("--kappa", kappa_spec, "softmax noise: t|2t|t^2|t+t^3|k:<v>|@table.json");
  gen->add_option("--c0", c0, "crossing-logodds intercept");
  gen->add_option("--c1", c1, "crossing-logodds slope");
  gen->add_option("--scale", scale, "binary-menu kappa factor for the conditioning breaker");
  gen->add_flag("--exact", exact, "write the frequency format even when counts exist");

  // check
  auto* chk = app.add_subcommand("check", "run the full property suite on a CSV data set");
  std::string in_path, report_path, format = "json", smoothing = "none";
  double alpha = 0.01;
  chk->add_option("--in", in_path, "input CSV")->required();
  chk->add_option("--alpha", alpha, "familywise significance budget");
  chk->add_option("--smoothing", smoothing, "none|jeffreys")
      ->check(CLI::IsMember({"none", "jeffreys"}));
  chk->add_option("--report", report_path, "report output path")->required();
  chk->add_option("--format", format, "json|markdown")
      ->check(CLI::IsMember({"json", "markdown"}));

  // recover
  auto* rec = app.add_subcommand("recover", "estimate energies and the noise map from a CSV");
  std::string rec_in, rec_report, rec_format = "json";
  double rec_alpha = 0.01;
  rec->add_option("--in", rec_in, "input CSV")->required();
  rec->add_option("--alpha", rec_alpha, "pivot significance budget");
  rec->add_option("--report", rec_report, "report output path")->required();
  rec->add_option("--format", rec_format, "json|markdown")
      ->check(CLI::IsMember({"json", "markdown"}));

  // convexity
  auto* cvx = app.add_subcommand("convexity", "convexity verdict for a coordinate energy model");
  std::string model_path, cvx_report, cvx_format = "json";
  cvx->add_option("--model", model_path, "JSON model file")->required();
  cvx->add_option("--report", cvx_report, "report output path")->required();
  cvx->add_option("--format", cvx_format, "json|markdown")
      ->check(CLI::IsMember({"json", "markdown"}));

  // report
  auto* rep = app.add_subcommand("report", "pretty-print a JSON report as markdown");
  std::string rep_in;
  rep->add_option("--in", rep_in, "report JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints contextual help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_generate(kind, grid_list, menus_path, n, seed, out_path, k, kappa_spec, c0, c1,
                          scale, exact);
    }
    if (chk->parsed()) return cmd_check(in_path, alpha, smoothing, report_path, format);
    if (rec->parsed()) return cmd_recover(rec_in, rec_alpha, rec_report, rec_format);
    if (cvx->parsed()) return cmd_convexity(model_path, cvx_report, cvx_format);
    if (rep->parsed()) return cmd_report(rep_in);
  } catch (const CApiFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
