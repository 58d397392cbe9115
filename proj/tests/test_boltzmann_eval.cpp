#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "bgate/softmax.hpp"
#include "bgate/stats.hpp"

using namespace bgate;

namespace {

EnergyModel parametric_model(std::map<StateId, double> energies, double k) {
  return EnergyModel{std::move(energies), NoiseMap::parametric(k)};
}

const std::vector<StateId> kTriple{"a", "b", "c"};
const std::vector<StateId> kPair{"a", "b"};

}  // namespace

TEST_CASE("constant energies give the uniform distribution") {
  auto model = parametric_model({{"a", 2.0}, {"b", 2.0}, {"c", 2.0}}, 1.0);
  for (double t : {0.1, 1.0, 10.0}) {
    for (const auto& s : kTriple) {
      CHECK(boltzmann_prob(model, t, s, kTriple) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    }
  }
}

TEST_CASE("three-state weights at unit temperature") {
  auto model = parametric_model({{"a", 0.0}, {"b", 1.0}, {"c", 2.0}}, 1.0);
  // Weights 1, e^-1, e^-2 normalized.
  double z = 1.0 + std::exp(-1.0) + std::exp(-2.0);
  CHECK(boltzmann_prob(model, 1.0, "a", kTriple) == doctest::Approx(1.0 / z).epsilon(1e-14));
  CHECK(boltzmann_prob(model, 1.0, "b", kTriple) ==
        doctest::Approx(std::exp(-1.0) / z).epsilon(1e-14));
  CHECK(boltzmann_prob(model, 1.0, "c", kTriple) ==
        doctest::Approx(std::exp(-2.0) / z).epsilon(1e-14));
  CHECK(1.0 / z == doctest::Approx(0.665241).epsilon(1e-6));
  CHECK(std::exp(-1.0) / z == doctest::Approx(0.244728).epsilon(1e-6));
  CHECK(std::exp(-2.0) / z == doctest::Approx(0.090031).epsilon(1e-5));
}

TEST_CASE("membership, domain and lookup errors") {
  auto model = parametric_model({{"a", 0.0}, {"b", 1.0}}, 1.0);
  CHECK(boltzmann_prob(model, 1.0, "zz", kPair) == 0.0);
  CHECK_THROWS_AS(boltzmann_prob(model, 0.0, "a", kPair), Error);
  CHECK_THROWS_AS(boltzmann_prob(model, -2.0, "a", kPair), Error);
  auto incomplete = parametric_model({{"a", 0.0}}, 1.0);
  CHECK_THROWS_AS(boltzmann_prob(incomplete, 1.0, "a", kPair), Error);
  CHECK_THROWS_AS(softmax_prob(model, 1.0, "a", std::vector<StateId>{}), Error);
}

TEST_CASE("softmax with general noise maps") {
  SUBCASE("kappa(t) = t reduces to the parametric form") {
    auto boltz = parametric_model({{"a", 0.0}, {"b", 1.0}, {"c", 0.3}}, 1.0);
    EnergyModel soft{boltz.energies, NoiseMap::from_generator(ConcatGenerator::power_form(1.0))};
    for (double t : {0.25, 1.0, 3.0}) {
      for (const auto& s : kTriple) {
        CHECK(softmax_prob(soft, t, s, kTriple) ==
              doctest::Approx(boltzmann_prob(boltz, t, s, kTriple)).epsilon(1e-14));
      }
    }
  }
  SUBCASE("kappa(t) = t^2 at t = 2") {
    EnergyModel model{{{"a", 0.0}, {"b", 1.0}},
                      NoiseMap::from_generator(ConcatGenerator::power_form(2.0))};
    double expected = 1.0 / (1.0 + std::exp(-0.25));
    CHECK(expected == doctest::Approx(0.562177).epsilon(1e-6));
    CHECK(softmax_prob(model, 2.0, "a", kPair) == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("tabulated kappa is exact at its knots") {
    std::vector<std::pair<double, double>> knots;
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) knots.emplace_back(t, t * t);
    EnergyModel tab{{{"a", 0.0}, {"b", 1.0}},
                    NoiseMap::tabulated(MonotoneTable::strict(knots))};
    EnergyModel closed{{{"a", 0.0}, {"b", 1.0}},
                       NoiseMap::from_generator(ConcatGenerator::power_form(2.0))};
    for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      CHECK(std::fabs(softmax_prob(tab, t, "a", kPair) - softmax_prob(closed, t, "a", kPair)) <=
            1e-12);
    }
    CHECK_THROWS_AS(softmax_prob(tab, 8.0, "a", kPair), Error);  // no extrapolation
  }
}

TEST_CASE("log odds") {
  auto model = parametric_model({{"a", 0.0}, {"b", 1.0}}, 1.0);
  CHECK(log_odds(model, 1.0, "a", "a") == 0.0);
  CHECK(log_odds(model, 1.0, "a", "b") == doctest::Approx(1.0).epsilon(1e-15));
  // Doubling t halves the value under parametric noise.
  for (double t : {0.5, 1.0, 3.0}) {
    CHECK(log_odds(model, 2.0 * t, "a", "b") ==
          doctest::Approx(0.5 * log_odds(model, t, "a", "b")).epsilon(1e-14));
  }
  // Log odds equal the log of the probability ratio.
  auto big = parametric_model({{"a", 0.2}, {"b", 1.7}, {"c", 0.9}}, 2.0);
  for (double t : {0.5, 1.0, 2.0}) {
    double lhs = log_odds(big, t, "a", "c");
    double rhs = std::log(softmax_prob(big, t, "a", kTriple)) -
                 std::log(softmax_prob(big, t, "c", kTriple));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("freezing limit concentrates on energy minimizers") {
  SUBCASE("strict pair") {
    auto model = parametric_model({{"a", 0.0}, {"b", 1.0}}, 1.0);
    FreezingProfile p = zero_limit(model, kPair);
    CHECK(p.pair_p0.at({"a", "b"}) == 1.0);
    CHECK(p.pair_p0.at({"b", "a"}) == 0.0);
    CHECK(p.menu_mass.at("a") == 1.0);
    CHECK(p.menu_mass.at("b") == 0.0);
  }
  SUBCASE("ties split evenly") {
    auto model = parametric_model({{"a", 0.5}, {"b", 0.5}}, 1.0);
    FreezingProfile p = zero_limit(model, kPair);
    CHECK(p.pair_p0.at({"a", "b"}) == 0.5);
    CHECK(p.pair_p0.at({"b", "a"}) == 0.5);
  }
  SUBCASE("double minimum on a triple") {
    auto model = parametric_model({{"a", 0.0}, {"b", 0.0}, {"c", 1.0}}, 1.0);
    FreezingProfile p = zero_limit(model, kTriple);
    CHECK(p.menu_mass.at("a") == 0.5);
    CHECK(p.menu_mass.at("b") == 0.5);
    CHECK(p.menu_mass.at("c") == 0.0);
    // Numeric check against the evaluator at t = 1e-3.
    for (const auto& s : kTriple) {
      CHECK(std::fabs(boltzmann_prob(model, 1e-3, s, kTriple) - p.menu_mass.at(s)) <= 1e-6);
    }
  }
}

TEST_CASE("property: normalization and translation invariance") {
  SplitMix64 rng(314);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<StateId, double> energies;
    std::vector<StateId> menu;
    int m = 2 + static_cast<int>(rng.uniform() * 4);
    for (int i = 0; i < m; ++i) {
      StateId id = "s" + std::to_string(i);
      energies[id] = rng.uniform(-2.0, 2.0);
      menu.push_back(id);
    }
    double t = std::exp(rng.uniform(-2.0, 2.0));
    auto model = parametric_model(energies, 1.0);
    double q = rng.uniform(-5.0, 5.0);
    auto shifted_energies = energies;
    for (auto& [id, e] : shifted_energies) e += q;
    auto shifted = parametric_model(shifted_energies, 1.0);
    double sum = 0.0;
    for (const auto& s : menu) {
      double p = boltzmann_prob(model, t, s, menu);
      sum += p;
      CHECK(std::fabs(p - boltzmann_prob(shifted, t, s, menu)) <= 1e-12);
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("property: odds are multiplicative in inverse temperature") {
  auto model = parametric_model({{"a", 0.3}, {"b", 1.4}}, 1.0);
  SplitMix64 rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    double u = std::exp(rng.uniform(-1.5, 1.5));
    double v = std::exp(rng.uniform(-1.5, 1.5));
    // ln r at inverse temperatures u, v, and u + v.
    auto logw_at_inverse = [&](double inv) {
      double t = 1.0 / inv;
      return std::log(boltzmann_prob(model, t, "a", kPair)) -
             std::log(boltzmann_prob(model, t, "b", kPair));
    };
    CHECK(std::fabs(logw_at_inverse(u + v) - (logw_at_inverse(u) + logw_at_inverse(v))) <= 1e-10);
  }
}

TEST_CASE("property: freezing profile matches the evaluator at tiny t") {
  SplitMix64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::map<StateId, double> energies;
    std::vector<StateId> menu;
    for (int i = 0; i < 4; ++i) {
      StateId id = "s" + std::to_string(i);
      energies[id] = rng.uniform(0.0, 3.0);
      menu.push_back(id);
    }
    auto model = parametric_model(energies, 1.0);
    FreezingProfile profile = zero_limit(model, menu);
    double tv = 0.0;
    for (const auto& s : menu) {
      tv += std::fabs(profile.menu_mass.at(s) - softmax_prob(model, 1e-300, s, menu));
    }
    CHECK(tv / 2.0 <= 1e-6);
  }
}
