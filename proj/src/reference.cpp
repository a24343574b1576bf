#include "coinbet/reference.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace coinbet::reference {

namespace {

constexpr long double kSqrtPi = 1.772453850905516027298167483341145182798L;

// erfc(x) * exp(x^2) * sqrt(pi) for x > 0 by backward evaluation of
// 1 / (x + (1/2) / (x + 1 / (x + (3/2) / (x + ...)))).
long double scaled_erfc_cf(long double x) {
  long double tail = x;
  for (int k = 200; k >= 1; --k) {
    tail = x + (k / 2.0L) / tail;
  }
  return 1.0L / tail;
}

long double erf_maclaurin(long double x) {
  // erf(x) = 2/sqrt(pi) sum_n (-1)^n x^{2n+1} / (n! (2n+1))
  long double term = x;
  long double sum = x;
  const long double x2 = x * x;
  for (int n = 1; n < 200; ++n) {
    term *= -x2 / n;
    const long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs(add) < 1e-22L * std::fabs(sum)) {
      break;
    }
  }
  return 2.0L / kSqrtPi * sum;
}

// log of the integral of exp(-y^2) over [p, q], 0 <= p < q.
double log_gauss_tail_difference(double p, double q) {
  const double lp = log_erfc(p);
  const double lq = log_erfc(q);
  return lp + std::log1p(-std::exp(lq - lp)) + std::log(std::sqrt(std::numbers::pi) / 2.0);
}

// log of the integral of exp(-y^2) over [p, q], p < q.
double log_gauss_integral(double p, double q) {
  if (p >= 0.0) {
    return log_gauss_tail_difference(p, q);
  }
  if (q <= 0.0) {
    return log_gauss_tail_difference(-q, -p);
  }
  // Straddles zero: erf(q) + erf(-p), both nonnegative.
  return std::log(erf_series(q) + erf_series(-p)) + std::log(std::sqrt(std::numbers::pi) / 2.0);
}

}  // namespace

double erf_series(double x) {
  const long double ax = std::fabs(static_cast<long double>(x));
  long double value;
  if (ax <= 3.0L) {
    value = erf_maclaurin(ax);
  } else {
    value = 1.0L - std::exp(-ax * ax) * scaled_erfc_cf(ax) / kSqrtPi;
  }
  return static_cast<double>(x < 0 ? -value : value);
}

double log_erfc(double x) {
  const long double lx = x;
  if (lx < 2.0L) {
    const long double e = lx < 0 ? -erf_maclaurin(-lx) : erf_maclaurin(lx);
    return static_cast<double>(std::log(1.0L - e));
  }
  return static_cast<double>(-lx * lx + std::log(scaled_erfc_cf(lx) / kSqrtPi));
}

double log_quadratic_exponential_integral(double a, double c, double lo, double hi) {
  if (c == 0.0) {
    if (a == 0.0) {
      return std::log(hi - lo);
    }
    // (e^{a hi} - e^{a lo}) / a
    if (a > 0.0) {
      return a * hi + std::log(-std::expm1(a * (lo - hi))) - std::log(a);
    }
    return a * lo + std::log(-std::expm1(a * (hi - lo))) - std::log(-a);
  }
  // a b + c b^2 = -k (b - mu)^2 + a^2 / (4k), k = -c
  const double k = -c;
  const double mu = a / (2.0 * k);
  const double root = std::sqrt(k);
  return a * a / (4.0 * k) - std::log(root) +
         log_gauss_integral(root * (lo - mu), root * (hi - mu));
}

double log_factorial(unsigned n) {
  long double sum = 0.0L;
  for (unsigned k = 2; k <= n; ++k) {
    sum += std::log(static_cast<long double>(k));
  }
  return static_cast<double>(sum);
}

}  // namespace coinbet::reference
