#pragma once

// Generator-based concatenation operations on the nonnegative reals:
// t (+) s = f^{-1}(f(t) + f(s)) for a strictly increasing bijection f with
// f(0) = 0. Supported forms: scaled identity x/k, ln(1 + eta*x), x^eta, and
// table-backed generators. Generators differing by a positive scale induce
// the same operation.

#include <cstdint>
#include <optional>
#include <string>

#include "bgate/monotone.hpp"

namespace bgate {

class ConcatGenerator {
 public:
  enum class Kind { Linear, Log1p, Power, Table };

  static ConcatGenerator identity() { return scaled_identity(1.0); }
  static ConcatGenerator scaled_identity(double k);      // f(x) = x / k
  static ConcatGenerator log1p_form(double eta);         // f(x) = ln(1 + eta x)
  static ConcatGenerator power_form(double eta);         // f(x) = x^eta
  static ConcatGenerator from_table(MonotoneTable table);  // knots on (0, inf)

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  double scale() const { return scale_; }
  const MonotoneTable* table() const { return table_ ? &*table_ : nullptr; }
  std::string describe() const;

  double forward(double x) const;  // f(x); x >= 0
  double inverse(double y) const;  // f^{-1}(y); y >= 0

  // t (+) s. Table-backed generators throw RangeError outside their range.
  double apply(double t, double s) const;

  // Same operation, scaled so that f(1) = 1.
  ConcatGenerator normalized() const;

  // m * f; induces the same operation for any m > 0.
  ConcatGenerator scaled_by(double m) const;

 private:
  ConcatGenerator(Kind kind, double param, double scale)
      : kind_(kind), param_(param), scale_(scale) {}

  Kind kind_;
  double param_ = 1.0;
  double scale_ = 1.0;
  std::optional<MonotoneTable> table_;
};

struct ConcatCheck {
  bool pass = true;
  std::string law;  // violated law when !pass
  double t = 0.0, s = 0.0, v = 0.0;
  double lhs = 0.0, rhs = 0.0;
};

// Property check of the concatenation contract on random nonnegative triples:
// associativity, commutativity, identity at 0, and strict monotonicity,
// all within 1e-9 relative.
ConcatCheck validate_concatenation(const ConcatGenerator& g, int trials, std::uint64_t seed);

}  // namespace bgate
