#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bgate/common.hpp"
#include "bgate/concat.hpp"
#include "bgate/noise.hpp"
#include "bgate/stats.hpp"

using namespace bgate;

TEST_CASE("closed-form applications") {
  SUBCASE("identity generator is plain addition") {
    auto g = ConcatGenerator::identity();
    CHECK(g.apply(2.0, 3.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(g.apply(2.0, 0.0) == 2.0);
  }
  SUBCASE("log1p generator gives t + s + eta t s") {
    auto g = ConcatGenerator::log1p_form(1.0);
    CHECK(g.apply(2.0, 3.0) == doctest::Approx(11.0).epsilon(1e-12));
    auto g2 = ConcatGenerator::log1p_form(2.0);
    CHECK(g2.apply(2.0, 3.0) == doctest::Approx(2.0 + 3.0 + 2.0 * 2.0 * 3.0).epsilon(1e-12));
  }
  SUBCASE("power generator gives the eta-norm") {
    auto g = ConcatGenerator::power_form(2.0);
    CHECK(g.apply(3.0, 4.0) == doctest::Approx(5.0).epsilon(1e-12));
  }
}

TEST_CASE("closed forms match generator evaluation on random pairs") {
  SplitMix64 rng(77);
  for (double eta : {0.5, 1.0, 2.0}) {
    auto g = ConcatGenerator::log1p_form(eta);
    for (int i = 0; i < 100; ++i) {
      double t = rng.uniform(0.0, 5.0), s = rng.uniform(0.0, 5.0);
      double closed = t + s + eta * t * s;
      CHECK(std::fabs(g.apply(t, s) - closed) <= 1e-10 * std::max(1.0, closed));
    }
  }
  for (double eta : {0.5, 2.0, 3.0}) {
    auto g = ConcatGenerator::power_form(eta);
    for (int i = 0; i < 100; ++i) {
      double t = rng.uniform(0.0, 5.0), s = rng.uniform(0.0, 5.0);
      double closed = std::pow(std::pow(t, eta) + std::pow(s, eta), 1.0 / eta);
      CHECK(std::fabs(g.apply(t, s) - closed) <= 1e-10 * std::max(1.0, closed));
    }
  }
}

TEST_CASE("validation passes for genuine concatenations") {
  for (const auto& g : {ConcatGenerator::identity(), ConcatGenerator::scaled_identity(2.0),
                        ConcatGenerator::log1p_form(1.0), ConcatGenerator::power_form(2.0)}) {
    ConcatCheck check = validate_concatenation(g, 500, 5);
    CHECK(check.pass);
  }
}

TEST_CASE("a corrupted table fails validation with a witness") {
  // One non-monotone knot.
  auto table = MonotoneTable::unchecked({{1.0, 1.0}, {2.0, 3.0}, {3.0, 2.0}, {4.0, 4.0}});
  auto g = ConcatGenerator::from_table(table);
  ConcatCheck check = validate_concatenation(g, 2000, 5);
  CHECK_FALSE(check.pass);
  CHECK_FALSE(check.law.empty());
}

TEST_CASE("generator from kappa") {
  SUBCASE("parametric kappa cancels k in the operation") {
    auto g = generator_from_kappa(NoiseMap::parametric(3.0));
    CHECK(g.apply(2.0, 3.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(g.forward(6.0) == doctest::Approx(2.0).epsilon(1e-12));  // phi(v) = v/k
  }
  SUBCASE("kappa(t) = t^2 induces the quadratic mean form") {
    auto kappa = NoiseMap::from_generator(ConcatGenerator::power_form(2.0));
    CHECK(kappa.value(3.0) == doctest::Approx(9.0).epsilon(1e-12));
    auto g = generator_from_kappa(kappa);
    CHECK(g.apply(3.0, 4.0) == doctest::Approx(5.0).epsilon(1e-12));
  }
  SUBCASE("tabulated kappa sampled from t^2 reproduces the closed form inside the grid") {
    std::vector<std::pair<double, double>> knots;
    for (double t : {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) knots.emplace_back(t, t * t);
    auto g = generator_from_kappa(NoiseMap::tabulated(MonotoneTable::strict(knots)));
    CHECK(std::fabs(g.apply(3.0, 4.0) - 5.0) <= 1e-6);
    CHECK(std::fabs(g.apply(1.0, 1.0) - std::sqrt(2.0)) <= 1e-6);
  }
  SUBCASE("non-bijective table is rejected") {
    auto bad = MonotoneTable::unchecked({{1.0, 1.0}, {2.0, 3.0}, {3.0, 2.0}});
    CHECK_THROWS_AS(NoiseMap::tabulated(bad), Error);
  }
}

TEST_CASE("kappa from generator") {
  SUBCASE("scaled identity maps to parametric") {
    auto kappa = kappa_from_generator(ConcatGenerator::scaled_identity(2.0));
    CHECK(kappa.kind() == NoiseMap::Kind::Parametric);
    CHECK(kappa.value(3.0) == doctest::Approx(6.0).epsilon(1e-12));
  }
  SUBCASE("square generator maps to kappa(t) = t^2") {
    auto kappa = kappa_from_generator(ConcatGenerator::power_form(2.0));
    CHECK(kappa.value(3.0) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(kappa.value(0.5) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("round trip through kappa preserves log1p samples") {
    auto g = ConcatGenerator::log1p_form(1.0);
    auto round = generator_from_kappa(kappa_from_generator(g));
    for (double x : {0.1, 0.7, 1.0, 2.5, 9.0}) {
      CHECK(std::fabs(round.forward(x) - g.forward(x)) <= 1e-9 * std::max(1.0, g.forward(x)));
    }
  }
  SUBCASE("round trip through a table is exact at the knots") {
    std::vector<std::pair<double, double>> knots{{0.5, 0.3}, {1.0, 1.0}, {2.0, 3.5}};
    auto kappa = NoiseMap::tabulated(MonotoneTable::strict(knots));
    auto round = kappa_from_generator(generator_from_kappa(kappa));
    for (const auto& [t, v] : knots) {
      CHECK(round.value(t) == doctest::Approx(v).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: contract holds on random triples for supported generators") {
  std::vector<ConcatGenerator> gens{
      ConcatGenerator::identity(),          ConcatGenerator::scaled_identity(2.0),
      ConcatGenerator::scaled_identity(7.0), ConcatGenerator::log1p_form(0.5),
      ConcatGenerator::log1p_form(1.0),     ConcatGenerator::log1p_form(2.0),
      ConcatGenerator::power_form(0.5),     ConcatGenerator::power_form(2.0),
      ConcatGenerator::power_form(3.0)};
  std::uint64_t seed = 11;
  for (const auto& g : gens) {
    ConcatCheck check = validate_concatenation(g, 1000, seed++);
    CHECK(check.pass);
  }
}

TEST_CASE("property: the operation is invariant to generator scale") {
  SplitMix64 rng(123);
  for (double m : {0.25, 3.0, 42.0}) {
    auto f = ConcatGenerator::log1p_form(1.0);
    auto mf = f.scaled_by(m);
    for (int i = 0; i < 200; ++i) {
      double t = rng.uniform(0.0, 5.0), s = rng.uniform(0.0, 5.0);
      double a = f.apply(t, s), b = mf.apply(t, s);
      CHECK(std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(a)));
    }
  }
}

TEST_CASE("normalization pins f(1) = 1 without changing the operation") {
  auto g = ConcatGenerator::log1p_form(2.0).normalized();
  CHECK(g.forward(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  auto raw = ConcatGenerator::log1p_form(2.0);
  SplitMix64 rng(5);
  for (int i = 0; i < 100; ++i) {
    double t = rng.uniform(0.0, 4.0), s = rng.uniform(0.0, 4.0);
    CHECK(g.apply(t, s) == doctest::Approx(raw.apply(t, s)).epsilon(1e-11));
  }
}

TEST_CASE("table-backed generators refuse out-of-range queries") {
  auto table = MonotoneTable::strict({{0.5, 0.5}, {1.0, 1.0}, {2.0, 2.0}});
  auto g = ConcatGenerator::from_table(table);
  CHECK_THROWS_AS(g.apply(2.0, 2.0), Error);  // f(2)+f(2) = 4 beyond the table
  CHECK(g.apply(0.6, 0.0) == doctest::Approx(0.6).epsilon(1e-9));
  CHECK_THROWS_AS(g.forward(3.0), Error);
}
