#pragma once

// Shared numerical statistics kernel: normal/chi-square distributions,
// weighted least squares, and the deterministic counter RNG used by the
// samplers (splitmix64).

#include <cstdint>
#include <span>
#include <vector>

namespace bgate {

// --- distributions ---------------------------------------------------------

double normal_cdf(double z);
// Inverse of normal_cdf; p in (0,1).
double normal_quantile(double p);

// Regularized lower incomplete gamma P(s, x), s > 0, x >= 0.
double gamma_p(double s, double x);

double chi2_cdf(double x, double dof);
// Inverse of chi2_cdf in x; p in [0,1).
double chi2_quantile(double p, double dof);

// --- weighted least squares ------------------------------------------------

struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_se = 0.0;
  double slope_se = 0.0;
  double chi2 = 0.0;  // residual chi-square against the given stderrs
  int dof = 0;
};

// Fit y = a + b*x with weights 1/se^2. Requires >= 3 points with distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> se);

struct ProportionalFit {
  double coeff = 0.0;
  double coeff_se = 0.0;
  double chi2 = 0.0;  // lack-of-fit chi-square, dof = n - 1
  int dof = 0;
};

// Fit y = c*x (zero intercept) with weights 1/se^2. Requires >= 2 points.
ProportionalFit fit_proportional(std::span<const double> x,
                                 std::span<const double> y,
                                 std::span<const double> se);

struct WeightedMean {
  double mean = 0.0;
  double se = 0.0;
  double chi2 = 0.0;  // dispersion about the mean, dof = n - 1
  int dof = 0;
};

WeightedMean weighted_mean(std::span<const double> y,
                           std::span<const double> se);

// Weighted isotonic regression (pool-adjacent-violators), nondecreasing.
std::vector<double> isotonic_fit(std::span<const double> y,
                                 std::span<const double> weights);

// --- deterministic RNG -----------------------------------------------------

// splitmix64: tiny counter-style generator; streams derived from a base seed
// and a stream index are independent for practical purposes.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ull * (stream + 1)));
    return mix.next();
  }

 private:
  std::uint64_t state_;
};

inline const char* rng_algorithm_name() { return "splitmix64"; }

}  // namespace bgate
