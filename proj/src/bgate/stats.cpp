#include "bgate/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bgate/common.hpp"

namespace bgate {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

// Acklam's rational approximation to the probit function, refined below by a
// Halley step against erfc, giving near machine precision.
double probit_seed(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    fail(ErrorCode::InvalidArgument, "normal_quantile: p must be in (0,1)");
  }
  double x = probit_seed(p);
  // Halley refinement.
  for (int i = 0; i < 2; ++i) {
    double e = normal_cdf(x) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
  }
  return x;
}

namespace {

double gamma_p_series(double s, double x) {
  double term = 1.0 / s;
  double sum = term;
  double a = s;
  for (int n = 0; n < 500; ++n) {
    a += 1.0;
    term *= x / a;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Continued fraction for Q(s,x) = 1 - P(s,x), modified Lentz.
double gamma_q_cf(double s, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - s;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

}  // namespace

double gamma_p(double s, double x) {
  if (s <= 0.0 || x < 0.0) {
    fail(ErrorCode::InvalidArgument, "gamma_p: require s > 0, x >= 0");
  }
  if (x == 0.0) return 0.0;
  if (x < s + 1.0) return gamma_p_series(s, x);
  return 1.0 - gamma_q_cf(s, x);
}

double chi2_cdf(double x, double dof) {
  if (x <= 0.0) return 0.0;
  return gamma_p(0.5 * dof, 0.5 * x);
}

double chi2_quantile(double p, double dof) {
  if (!(p >= 0.0 && p < 1.0)) {
    fail(ErrorCode::InvalidArgument, "chi2_quantile: p must be in [0,1)");
  }
  if (p == 0.0) return 0.0;
  double lo = 0.0;
  double hi = dof + 10.0;
  while (chi2_cdf(hi, dof) < p) {
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (chi2_cdf(mid, dof) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> se) {
  const std::size_t n = x.size();
  if (n < 3 || y.size() != n || se.size() != n) {
    fail(ErrorCode::InvalidArgument, "fit_line: need >= 3 matched points");
  }
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0 / (se[i] * se[i]);
    sw += w;
    swx += w * x[i];
    swy += w * y[i];
    swxx += w * x[i] * x[i];
    swxy += w * x[i] * y[i];
  }
  double det = sw * swxx - swx * swx;
  if (det <= 0.0) {
    fail(ErrorCode::InvalidArgument, "fit_line: degenerate abscissae");
  }
  LineFit fit;
  fit.intercept = (swxx * swy - swx * swxy) / det;
  fit.slope = (sw * swxy - swx * swy) / det;
  fit.intercept_se = std::sqrt(swxx / det);
  fit.slope_se = std::sqrt(sw / det);
  for (std::size_t i = 0; i < n; ++i) {
    double r = (y[i] - fit.intercept - fit.slope * x[i]) / se[i];
    fit.chi2 += r * r;
  }
  fit.dof = static_cast<int>(n) - 2;
  return fit;
}

ProportionalFit fit_proportional(std::span<const double> x,
                                 std::span<const double> y,
                                 std::span<const double> se) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n || se.size() != n) {
    fail(ErrorCode::InvalidArgument, "fit_proportional: need >= 2 matched points");
  }
  double swxx = 0, swxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0 / (se[i] * se[i]);
    swxx += w * x[i] * x[i];
    swxy += w * x[i] * y[i];
  }
  if (swxx <= 0.0) {
    fail(ErrorCode::InvalidArgument, "fit_proportional: degenerate abscissae");
  }
  ProportionalFit fit;
  fit.coeff = swxy / swxx;
  fit.coeff_se = std::sqrt(1.0 / swxx);
  for (std::size_t i = 0; i < n; ++i) {
    double r = (y[i] - fit.coeff * x[i]) / se[i];
    fit.chi2 += r * r;
  }
  fit.dof = static_cast<int>(n) - 1;
  return fit;
}

WeightedMean weighted_mean(std::span<const double> y,
                           std::span<const double> se) {
  const std::size_t n = y.size();
  if (n < 1 || se.size() != n) {
    fail(ErrorCode::InvalidArgument, "weighted_mean: need >= 1 matched points");
  }
  double sw = 0, swy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0 / (se[i] * se[i]);
    sw += w;
    swy += w * y[i];
  }
  WeightedMean m;
  m.mean = swy / sw;
  m.se = std::sqrt(1.0 / sw);
  for (std::size_t i = 0; i < n; ++i) {
    double r = (y[i] - m.mean) / se[i];
    m.chi2 += r * r;
  }
  m.dof = static_cast<int>(n) - 1;
  return m;
}

std::vector<double> isotonic_fit(std::span<const double> y,
                                 std::span<const double> weights) {
  const std::size_t n = y.size();
  if (weights.size() != n) {
    fail(ErrorCode::InvalidArgument, "isotonic_fit: size mismatch");
  }
  std::vector<double> level(y.begin(), y.end());
  std::vector<double> weight(weights.begin(), weights.end());
  std::vector<std::size_t> count(n, 1);
  std::size_t blocks = 0;
  for (std::size_t i = 0; i < n; ++i) {
    level[blocks] = y[i];
    weight[blocks] = weights[i];
    count[blocks] = 1;
    ++blocks;
    while (blocks > 1 && level[blocks - 2] > level[blocks - 1]) {
      double w = weight[blocks - 2] + weight[blocks - 1];
      level[blocks - 2] =
          (weight[blocks - 2] * level[blocks - 2] + weight[blocks - 1] * level[blocks - 1]) / w;
      weight[blocks - 2] = w;
      count[blocks - 2] += count[blocks - 1];
      --blocks;
    }
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t b = 0; b < blocks; ++b) {
    out.insert(out.end(), count[b], level[b]);
  }
  return out;
}

}  // namespace bgate
