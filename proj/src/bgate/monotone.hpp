#pragma once

// Tabulated positive functions on (0, inf) with log-log piecewise-linear
// interpolation. Queries at a knot return the stored value exactly;
// queries outside the knot range are refused.

#include <utility>
#include <vector>

namespace bgate {

class MonotoneTable {
 public:
  // Validates: >= 2 knots, x strictly increasing and positive, y strictly
  // increasing and positive.
  static MonotoneTable strict(std::vector<std::pair<double, double>> knots);

  // Requires positive x (strictly increasing) and positive y; monotonicity of
  // y is NOT checked. Used where a later validation step owns the verdict.
  static MonotoneTable unchecked(std::vector<std::pair<double, double>> knots);

  double front_x() const { return knots_.front().first; }
  double back_x() const { return knots_.back().first; }
  double front_y() const { return knots_.front().second; }
  double back_y() const { return knots_.back().second; }
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }
  bool is_increasing() const { return increasing_; }

  // Log-log linear interpolation; throws RangeError outside [front_x, back_x].
  double value(double x) const;

  // Inverse lookup by bisection on the bracketing segment (1e-12 absolute).
  // Requires an increasing table; throws RangeError outside [front_y, back_y].
  double inverse(double y) const;

  // Pointwise reciprocal of y with x replaced by 1/x (reverses knot order).
  MonotoneTable reciprocal_reindexed() const;

 private:
  explicit MonotoneTable(std::vector<std::pair<double, double>> knots, bool increasing)
      : knots_(std::move(knots)), increasing_(increasing) {}

  std::vector<std::pair<double, double>> knots_;
  bool increasing_;
};

}  // namespace bgate
