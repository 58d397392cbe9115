#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bgate/axioms.hpp"
#include "bgate/rsf.hpp"
#include "bgate/synth.hpp"
#include "helpers.hpp"

using namespace bgate;
namespace bt = bgate::testing;

TEST_CASE("counts normalize per group with multinomial stderr") {
  EmpiricalRSF rsf = EmpiricalRSF::from_counts({
      {"1", "M", "a", 73},
      {"1", "M", "b", 27},
  });
  auto [freq, se] = rsf.frequency(1.0, "M", "a");
  CHECK(freq == doctest::Approx(0.73).epsilon(1e-15));
  CHECK(se == doctest::Approx(std::sqrt(0.73 * 0.27 / 100.0)).epsilon(1e-15));
  CHECK(se == doctest::Approx(0.0444).epsilon(1e-3));
}

TEST_CASE("duplicate cells are rejected with the row index") {
  CHECK_THROWS_WITH_AS(EmpiricalRSF::from_counts({
                           {"1", "M", "a", 50},
                           {"1", "M", "a", 10},
                       }),
                       doctest::Contains("duplicate cell"), Error);
  try {
    EmpiricalRSF::from_counts({{"1", "M", "a", 50}, {"1", "M", "a", 10}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DataError);
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("zero-total groups are rejected") {
  CHECK_THROWS_AS(EmpiricalRSF::from_counts({
                      {"1", "M", "a", 0},
                      {"1", "M", "b", 0},
                  }),
                  Error);
}

TEST_CASE("negative temperatures and inconsistent menus are rejected") {
  CHECK_THROWS_AS(EmpiricalRSF::from_counts({{"-1", "M", "a", 3}}), Error);
  CHECK_THROWS_AS(EmpiricalRSF::from_counts({
                      {"1", "M", "a", 3},
                      {"1", "M", "b", 4},
                      {"2", "M", "a", 3},
                      {"2", "M", "c", 4},
                  }),
                  Error);
}

TEST_CASE("distinct tokens for the same grid value are rejected, not merged") {
  CHECK_THROWS_AS(EmpiricalRSF::from_counts({
                      {"1.0", "M", "a", 3},
                      {"1.0", "M", "b", 4},
                      {"1.00", "N", "a", 3},
                      {"1.00", "N", "b", 4},
                  }),
                  Error);
}

TEST_CASE("sampled frequencies concentrate on the exact evaluator value") {
  // 1e5 draws from the two-state family with energies {0, 1}, k = 1, t = 1.
  auto spec = bt::boltzmann_spec({{"a", 0.0}, {"b", 1.0}}, 1.0, {0.5, 1.0, 2.0},
                                 {make_menu("ab", {"a", "b"})}, 100000, 2024);
  EmpiricalRSF rsf = sample_family(spec);
  double expected = 1.0 / (1.0 + std::exp(-1.0));
  auto [freq, se] = rsf.frequency(1.0, "ab", "a");
  CHECK(std::fabs(freq - expected) <= 3.0 * se);
}

TEST_CASE("frequency lookups") {
  EmpiricalRSF rsf = EmpiricalRSF::from_counts({
      {"1", "M", "a", 73},
      {"1", "M", "b", 27},
      {"1", "S", "a", 40},
  });
  SUBCASE("state outside the menu reports zero mass") {
    auto [freq, se] = rsf.frequency(1.0, "M", "zz");
    CHECK(freq == 0.0);
    CHECK(se == 0.0);
  }
  SUBCASE("singleton menus are forced to certainty") {
    auto [freq, se] = rsf.frequency(1.0, "S", "a");
    CHECK(freq == 1.0);
    CHECK(se == 0.0);
  }
  SUBCASE("missing observations raise lookup errors") {
    CHECK_THROWS_AS(rsf.frequency(3.0, "M", "a"), Error);
    CHECK_THROWS_AS(rsf.frequency(1.0, "nope", "a"), Error);
  }
}

TEST_CASE("conditional frequency sums members of a subset") {
  auto spec = bt::boltzmann_spec({{"a", 0.0}, {"b", 1.0}, {"c", 2.0}}, 1.0, {1.0, 2.0, 4.0},
                                 {make_menu("all", {"a", "b", "c"})});
  EmpiricalRSF rsf = exact_family(spec);
  CHECK(rsf.conditional_frequency(1.0, {"a", "b", "c"}, "all") ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rsf.conditional_frequency(1.0, {}, "all") == 0.0);
  // Two lowest-energy states at t = 1: (1 + e^-1) / (1 + e^-1 + e^-2).
  double z = 1.0 + std::exp(-1.0) + std::exp(-2.0);
  double expected = (1.0 + std::exp(-1.0)) / z;
  CHECK(expected == doctest::Approx(0.909969).epsilon(1e-6));
  CHECK(rsf.conditional_frequency(1.0, {"a", "b"}, "all") ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(rsf.conditional_frequency(1.0, {"zz"}, "all"), Error);
}

TEST_CASE("odds curves from exact families") {
  auto spec = bt::boltzmann_spec({{"a", 0.0}, {"b", 1.0}}, 1.0, bt::default_grid(),
                                 {make_menu("ab", {"a", "b"}), make_menu("sa", {"a"})});
  EmpiricalRSF rsf = exact_family(spec);
  SUBCASE("r equals the closed-form odds") {
    OddsCurve curve = rsf.odds_curve("a", "b");
    REQUIRE(curve.samples.size() == 5);
    for (const auto& s : curve.samples) {
      CHECK(s.r == doctest::Approx(std::exp(1.0 / s.t)).epsilon(1e-12));
    }
    // t = 1 entry: e^{1/1}.
    CHECK(curve.samples[2].r == doctest::Approx(2.718282).epsilon(1e-6));
  }
  SUBCASE("singleton pair is constant one") {
    ToleranceConfig cfg;
    OddsCurve curve = classified_odds_curve(rsf, "a", "a", cfg);
    CHECK(curve.cls == OddsClass::ConstantOne);
    for (const auto& s : curve.samples) CHECK(s.r == 1.0);
  }
  SUBCASE("reversed pair classifies as decreasing") {
    ToleranceConfig cfg;
    OddsCurve curve = classified_odds_curve(rsf, "b", "a", cfg);
    CHECK(curve.cls == OddsClass::DecreasingToZero);
  }
}

TEST_CASE("odds curve preconditions") {
  SUBCASE("fewer than three usable samples is insufficient") {
    EmpiricalRSF rsf = EmpiricalRSF::from_counts({
        {"1", "ab", "a", 5},
        {"1", "ab", "b", 5},
        {"2", "ab", "a", 5},
        {"2", "ab", "b", 5},
        {"4", "x", "a", 5},
    });
    CHECK_THROWS_AS(rsf.odds_curve("a", "b"), Error);
  }
  SUBCASE("zero cells are dropped and flagged") {
    EmpiricalRSF rsf = EmpiricalRSF::from_counts({
        {"1", "ab", "a", 5},  {"1", "ab", "b", 5},
        {"2", "ab", "a", 10}, {"2", "ab", "b", 0},
        {"4", "ab", "a", 5},  {"4", "ab", "b", 5},
        {"8", "ab", "a", 5},  {"8", "ab", "b", 5},
    });
    OddsCurve curve = rsf.odds_curve("a", "b");
    CHECK(curve.samples.size() == 3);
    REQUIRE(curve.dropped.size() == 1);
    CHECK(curve.dropped[0] == 2.0);
  }
  SUBCASE("unobserved binary menu is a lookup error") {
    EmpiricalRSF rsf = EmpiricalRSF::from_counts({
        {"1", "abc", "a", 5}, {"1", "abc", "b", 5}, {"1", "abc", "c", 5}});
    CHECK_THROWS_AS(rsf.odds_curve("a", "b"), Error);
  }
}

TEST_CASE("jeffreys smoothing keeps zero-count cells usable") {
  std::vector<CountRecord> records{
      {"1", "ab", "a", 10}, {"1", "ab", "b", 0},
      {"2", "ab", "a", 8},  {"2", "ab", "b", 2},
      {"4", "ab", "a", 6},  {"4", "ab", "b", 4},
  };
  BuildOptions smooth;
  smooth.jeffreys = true;
  EmpiricalRSF rsf = EmpiricalRSF::from_counts(records, smooth);
  CHECK(rsf.smoothed());
  auto [freq, se] = rsf.frequency(1.0, "ab", "b");
  CHECK(freq == doctest::Approx(0.5 / 11.0).epsilon(1e-12));
  OddsCurve curve = rsf.odds_curve("a", "b");
  CHECK(curve.samples.size() == 3);
  CHECK(curve.dropped.empty());
}

TEST_CASE("property: frequencies sum to one and odds are antisymmetric") {
  auto spec = bt::boltzmann_spec({{"a", 0.0}, {"b", 0.7}, {"c", 1.3}}, 1.0, bt::default_grid(),
                                 bt::binaries_and_full({"a", "b", "c"}), 5000, 99);
  EmpiricalRSF rsf = sample_family(spec);
  for (std::size_t t = 0; t < rsf.grid().size(); ++t) {
    for (std::size_t m = 0; m < rsf.menus().size(); ++m) {
      REQUIRE(rsf.observed(t, m));
      double sum = 0.0;
      for (const auto& s : rsf.menus()[m].members) {
        const Cell* cell = rsf.find_cell(t, m, s);
        REQUIRE(cell != nullptr);
        CHECK(cell->freq >= 0.0);
        sum += cell->freq;
      }
      CHECK(std::fabs(sum - 1.0) <= 1e-12);
    }
  }
  OddsCurve fwd = rsf.odds_curve("a", "b");
  OddsCurve rev = rsf.odds_curve("b", "a");
  REQUIRE(fwd.samples.size() == rev.samples.size());
  for (std::size_t i = 0; i < fwd.samples.size(); ++i) {
    // Same two frequencies back both directions.
    CHECK(fwd.samples[i].logw == -rev.samples[i].logw);  // exact antisymmetry
    CHECK(std::fabs(fwd.samples[i].r * rev.samples[i].r - 1.0) <= 1e-15);
  }
}

TEST_CASE("property: rebuilding from emitted records is bit-exact") {
  auto spec = bt::boltzmann_spec({{"a", 0.0}, {"b", 0.4}, {"c", 1.1}}, 1.0, {0.5, 1.0, 3.0},
                                 bt::binaries_and_full({"a", "b", "c"}), 750, 7);
  EmpiricalRSF rsf = sample_family(spec);
  EmpiricalRSF rebuilt = EmpiricalRSF::from_counts(rsf.emit_records());
  REQUIRE(rebuilt.grid().size() == rsf.grid().size());
  REQUIRE(rebuilt.menus().size() == rsf.menus().size());
  for (std::size_t t = 0; t < rsf.grid().size(); ++t) {
    CHECK(rebuilt.grid().at(t).key == rsf.grid().at(t).key);
    for (std::size_t m = 0; m < rsf.menus().size(); ++m) {
      for (const auto& s : rsf.menus()[m].members) {
        const Cell* before = rsf.find_cell(t, m, s);
        const Cell* after = rebuilt.find_cell(t, m, s);
        REQUIRE(after != nullptr);
        CHECK(before->raw_count == after->raw_count);
        CHECK(before->freq == after->freq);  // bit-exact
        CHECK(before->se == after->se);
      }
    }
  }
}
