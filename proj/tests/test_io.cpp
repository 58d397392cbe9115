#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bgate/axioms.hpp"
#include "bgate/csv.hpp"
#include "bgate/report.hpp"
#include "bgate/synth.hpp"
#include "helpers.hpp"

using namespace bgate;
namespace bt = bgate::testing;

namespace {

EmpiricalRSF ingest_text(const std::string& text, BuildOptions options = {}) {
  std::istringstream in(text);
  return ingest_csv_stream(in, options, "<memory>");
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/bgate_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("csv ingestion") {
  SUBCASE("a two-row binary menu parses") {
    auto rsf = ingest_text(
        "temperature,menu_id,state,count\n"
        "1.0,M,a,73\n"
        "1.0,M,b,27\n");
    CHECK(rsf.frequency(1.0, "M", "a").first == doctest::Approx(0.73));
    CHECK_FALSE(rsf.exact());
  }
  SUBCASE("negative counts carry the line number") {
    CHECK_THROWS_WITH_AS(ingest_text("temperature,menu_id,state,count\n"
                                     "1.0,M,a,73\n"
                                     "1.0,M,b,-3\n"),
                         doctest::Contains("line 3"), Error);
  }
  SUBCASE("unknown headers are format errors") {
    CHECK_THROWS_WITH_AS(ingest_text("temp,menu,state,count\n1,M,a,3\n"),
                         doctest::Contains("unknown header"), Error);
  }
  SUBCASE("column-count mismatches carry the line number") {
    CHECK_THROWS_WITH_AS(ingest_text("temperature,menu_id,state,count\n1.0,M,a\n"),
                         doctest::Contains("line 2"), Error);
  }
  SUBCASE("frequency header produces an exact table with the stderr floor") {
    auto rsf = ingest_text(
        "temperature,menu_id,state,frequency\n"
        "1,M,a,0.25\n"
        "1,M,b,0.75\n");
    CHECK(rsf.exact());
    CHECK(rsf.frequency(1.0, "M", "a").second == kStderrFloor);
  }
  SUBCASE("frequencies outside [0,1] are rejected") {
    CHECK_THROWS_AS(ingest_text("temperature,menu_id,state,frequency\n1,M,a,1.25\n"), Error);
  }
  SUBCASE("duplicate cells carry their line numbers") {
    CHECK_THROWS_WITH_AS(ingest_text("temperature,menu_id,state,count\n"
                                     "1.0,M,a,5\n"
                                     "1.0,M,a,6\n"),
                         doctest::Contains("row 3"), Error);
  }
}

TEST_CASE("csv round trips preserve the table bit-exactly") {
  auto spec = bt::boltzmann_spec({{"a", 0.0}, {"b", 0.7}}, 1.0, {0.25, 1.0, 4.0},
                                 {make_menu("ab", {"a", "b"})}, 4096, 13);
  auto rsf = sample_family(spec);
  std::string text = render_csv(rsf, false);
  auto back = ingest_text(text);
  CHECK(render_csv(back, false) == text);

  auto exact = exact_family(bt::boltzmann_spec({{"a", 0.0}, {"b", 0.7}}, 1.0, {0.25, 1.0, 4.0},
                                               {make_menu("ab", {"a", "b"})}));
  std::string freq_text = render_csv(exact, true);
  auto exact_back = ingest_text(freq_text);
  CHECK(render_csv(exact_back, true) == freq_text);
  CHECK(exact_back.exact());
  // Counts export of an exact family is refused.
  CHECK_THROWS_AS(render_csv(exact, false), Error);
}

TEST_CASE("file export and ingest") {
  TempFile file("roundtrip.csv");
  auto spec = bt::boltzmann_spec({{"a", 0.0}, {"b", 1.0}}, 1.0, {0.5, 1.0, 2.0},
                                 {make_menu("ab", {"a", "b"})}, 100, 3);
  auto rsf = sample_family(spec);
  export_csv(rsf, file.path, false);
  auto back = ingest_csv(file.path);
  CHECK(render_csv(back, false) == render_csv(rsf, false));
  CHECK_THROWS_AS(ingest_csv("/nonexistent/nope.csv"), Error);
}

TEST_CASE("reports are stable and carry the schema version") {
  auto spec = bt::boltzmann_spec({{"a", 0.0}, {"b", 0.5}, {"c", 1.0}}, 1.0, bt::default_grid(),
                                 bt::binaries_and_full({"a", "b", "c"}), 20000, 5);
  auto rsf = sample_family(spec);
  ToleranceConfig cfg;
  ReportConfig rc;
  rc.tolerances = cfg;
  auto first = check_report_json(run_suite(rsf, cfg), rc);
  auto second = check_report_json(run_suite(rsf, cfg), rc);
  CHECK(first == second);  // byte-identical
  CHECK(first.find("\"format\": \"boltzmann-gate/1\"") != std::string::npos);
  CHECK(first.find("\"overall\": true") != std::string::npos);
  CHECK(first.find("\"rng\": \"splitmix64\"") != std::string::npos);
}

TEST_CASE("failing runs carry populated witness blocks") {
  auto kappa = bt::kappa_table_of(bt::default_grid(), [](double t) { return t * t; });
  auto rsf = exact_family(bt::softmax_spec({{"a", 0.0}, {"b", 1.0}}, kappa, bt::default_grid(),
                                           {make_menu("ab", {"a", "b"})}));
  ToleranceConfig cfg;
  ReportConfig rc;
  rc.tolerances = cfg;
  auto result = run_suite(rsf, cfg);
  auto json = check_report_json(result, rc);
  CHECK(json.find("\"overall\": false") != std::string::npos);
  CHECK(json.find("\"witness\"") != std::string::npos);
  // Both the strict and the weak block are populated.
  CHECK(json.find("\"boundedness\"") != std::string::npos);
  CHECK(json.find("\"weak-boundedness\"") != std::string::npos);

  auto md = report_markdown(json);
  CHECK(md.find("Overall: FAIL") != std::string::npos);
  CHECK(md.find("| boundedness | fail |") != std::string::npos);
  CHECK(md.find("witness") != std::string::npos);
}

TEST_CASE("markdown rendering of passing reports") {
  auto rsf = exact_family(bt::uniform_spec({"a", "b", "c"}, bt::default_grid(),
                                           bt::binaries_and_full({"a", "b", "c"})));
  ToleranceConfig cfg;
  ReportConfig rc;
  rc.tolerances = cfg;
  rc.seed = 7;
  auto json = check_report_json(run_suite(rsf, cfg), rc);
  CHECK(json.find("\"seed\": 7") != std::string::npos);
  auto md = report_markdown(json);
  CHECK(md.find("Overall: PASS") != std::string::npos);
  CHECK(md.find("Uniform family") != std::string::npos);
}
