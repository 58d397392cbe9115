#include "bgate/monotone.hpp"

#include <algorithm>
#include <cmath>

#include "bgate/common.hpp"

namespace bgate {

namespace {

void check_shape(const std::vector<std::pair<double, double>>& knots, bool strict_y) {
  if (knots.size() < 2) {
    fail(ErrorCode::InvalidArgument, "table needs at least 2 knots");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i].first > 0.0) || !(knots[i].second > 0.0)) {
      fail(ErrorCode::InvalidArgument, "table knots must be strictly positive");
    }
    if (i > 0 && !(knots[i].first > knots[i - 1].first)) {
      fail(ErrorCode::InvalidArgument, "table abscissae must be strictly increasing");
    }
    if (strict_y && i > 0 && !(knots[i].second > knots[i - 1].second)) {
      fail(ErrorCode::InvalidArgument, "table values must be strictly increasing");
    }
  }
}

}  // namespace

MonotoneTable MonotoneTable::strict(std::vector<std::pair<double, double>> knots) {
  check_shape(knots, true);
  return MonotoneTable(std::move(knots), true);
}

MonotoneTable MonotoneTable::unchecked(std::vector<std::pair<double, double>> knots) {
  check_shape(knots, false);
  bool inc = true;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].second > knots[i - 1].second)) inc = false;
  }
  return MonotoneTable(std::move(knots), inc);
}

double MonotoneTable::value(double x) const {
  if (x < front_x() || x > back_x()) {
    fail(ErrorCode::RangeError, "table query outside knot range");
  }
  auto it = std::lower_bound(
      knots_.begin(), knots_.end(), x,
      [](const std::pair<double, double>& k, double v) { return k.first < v; });
  if (it != knots_.end() && it->first == x) return it->second;
  auto hi = it;
  auto lo = it - 1;
  double u = (std::log(x) - std::log(lo->first)) / (std::log(hi->first) - std::log(lo->first));
  return std::exp(std::log(lo->second) + u * (std::log(hi->second) - std::log(lo->second)));
}

namespace {

double bisect_segment(const MonotoneTable& table, double x_lo, double x_hi, double y,
                      bool segment_increasing) {
  double lo = x_lo, hi = x_hi;
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    double mid = 0.5 * (lo + hi);
    bool go_right = segment_increasing ? (table.value(mid) < y) : (table.value(mid) > y);
    if (go_right) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double MonotoneTable::inverse(double y) const {
  if (increasing_) {
    if (y < front_y() || y > back_y()) {
      fail(ErrorCode::RangeError, "inverse query outside value range");
    }
    auto it = std::lower_bound(
        knots_.begin(), knots_.end(), y,
        [](const std::pair<double, double>& k, double v) { return k.second < v; });
    if (it != knots_.end() && it->second == y) return it->first;
    return bisect_segment(*this, (it - 1)->first, it->first, y, true);
  }
  // Non-monotone table: take the leftmost segment whose values bracket y.
  // The result is one preimage among several; callers validating the
  // concatenation contract will then observe the broken laws.
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    double ylo = std::min(knots_[i].second, knots_[i + 1].second);
    double yhi = std::max(knots_[i].second, knots_[i + 1].second);
    if (y < ylo || y > yhi) continue;
    if (y == knots_[i].second) return knots_[i].first;
    if (y == knots_[i + 1].second) return knots_[i + 1].first;
    bool seg_inc = knots_[i + 1].second > knots_[i].second;
    return bisect_segment(*this, knots_[i].first, knots_[i + 1].first, y, seg_inc);
  }
  fail(ErrorCode::RangeError, "inverse query outside value range");
}

MonotoneTable MonotoneTable::reciprocal_reindexed() const {
  std::vector<std::pair<double, double>> out(knots_.size());
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    const auto& k = knots_[knots_.size() - 1 - i];
    out[i] = {1.0 / k.first, 1.0 / k.second};
  }
  return MonotoneTable::unchecked(std::move(out));
}

}  // namespace bgate
