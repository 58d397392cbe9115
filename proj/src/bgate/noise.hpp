#pragma once

// Noise maps kappa: (0, inf) -> (0, inf), increasing bijections. Parametric
// kappa(t) = k*t, tabulated with log-log interpolation (no extrapolation), or
// backed by a concatenation generator through kappa(t) = 1/f(1/t), which keeps
// the kappa <-> generator conversions exactly inverse for closed forms.

#include <optional>
#include <string>

#include "bgate/concat.hpp"
#include "bgate/monotone.hpp"

namespace bgate {

class NoiseMap {
 public:
  enum class Kind { Parametric, Tabulated, FromGenerator };

  NoiseMap() : NoiseMap(parametric(1.0)) {}

  static NoiseMap parametric(double k);
  static NoiseMap tabulated(MonotoneTable table);  // strictly increasing
  static NoiseMap from_generator(ConcatGenerator g);

  Kind kind() const { return kind_; }
  double k() const { return k_; }
  const MonotoneTable* table() const { return table_ ? &*table_ : nullptr; }
  const ConcatGenerator* generator() const { return generator_ ? &*generator_ : nullptr; }
  std::string describe() const;

  // kappa(t); t > 0. Tabulated maps refuse queries outside their knot range.
  double value(double t) const;

  NoiseMap scaled(double m) const;  // m * kappa

 private:
  explicit NoiseMap(Kind kind) : kind_(kind) {}

  Kind kind_;
  double k_ = 1.0;
  std::optional<MonotoneTable> table_;
  std::optional<ConcatGenerator> generator_;
};

// phi(v) = 1/kappa(1/v), phi(0) = 0: the generator of the unique
// concatenation compatible with the noise map.
ConcatGenerator generator_from_kappa(const NoiseMap& kappa);

// kappa(t) = 1/f(1/t): inverse of generator_from_kappa.
NoiseMap kappa_from_generator(const ConcatGenerator& g);

}  // namespace bgate
