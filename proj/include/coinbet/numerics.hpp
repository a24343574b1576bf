#ifndef COINBET_NUMERICS_HPP_
#define COINBET_NUMERICS_HPP_

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coinbet::numerics {

/// Thrown when an adaptive quadrature does not reach its tolerance before
/// the node-count cap.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Gauss-Legendre rule on the reference interval [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing, symmetric about 0
  std::vector<double> weights;  // positive, sum to 2
  int order = 0;
};

/// Builds the n-point Gauss-Legendre rule (Newton iteration on P_n).
QuadratureRule gauss_legendre(int order);

/// Cached rule of the given order; safe to call concurrently.
const QuadratureRule& cached_gauss_legendre(int order);

struct LogIntegralResult {
  double log_value = 0.0;
  double est_rel_error = 0.0;  // relative change between the last two levels
  int nodes_used = 0;
};

struct QuadratureOptions {
  double tol = 1e-10;
  int min_order = 32;
  int max_order = 4096;
};

using Exponent = std::function<double(double)>;

double erf(double x);

/// Natural log of the gamma function; throws std::domain_error for x <= 0.
double log_gamma(double x);

/// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

/// log(sum_i exp(v_i)); -inf for an empty span.
double log_sum_exp(std::span<const double> values);

/// log of the integral of exp(exponent(beta)) over [lo, hi].
///
/// The integrand is evaluated on Gauss-Legendre nodes after the substitution
/// beta = mid + half * sin(pi u / 2), which clusters nodes at the interval
/// ends and smooths algebraic endpoint behaviour such as (1 - beta^2)^z.
/// The largest exponent on the current grid is factored out before summing,
/// so exponents in the 1e6 range neither overflow nor underflow. The node
/// count doubles from opts.min_order until two consecutive levels agree to
/// opts.tol relative; ConvergenceError is thrown at opts.max_order.
LogIntegralResult integrate_log(const Exponent& exponent, double lo, double hi,
                                const QuadratureOptions& opts = {});

LogIntegralResult integrate_log(const Exponent& exponent, double lo, double hi, double tol);

/// Ratio of the integral of beta * exp(h) to the integral of exp(h) over
/// [lo, hi]. The numerator is split at zero into two positive log-domain
/// integrals. The result lies in [lo, hi].
double signed_moment_ratio(const Exponent& exponent, double lo, double hi,
                           const QuadratureOptions& opts = {});

double signed_moment_ratio(const Exponent& exponent, double lo, double hi, double tol);

}  // namespace coinbet::numerics

#endif  // COINBET_NUMERICS_HPP_
