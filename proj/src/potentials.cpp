#include "coinbet/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace coinbet {

namespace {

void require_in_range(double s, std::int64_t horizon, const char* who) {
  if (horizon < 1) {
    throw std::domain_error(std::string(who) + ": horizon must be at least 1");
  }
  if (!(std::abs(s) <= static_cast<double>(horizon))) {
    throw std::domain_error(std::string(who) + ": |x| exceeds the horizon");
  }
}

}  // namespace

double conj_power_log_wealth(double z, std::int64_t heads, std::int64_t tails) {
  if (heads < 0 || tails < 0) {
    throw std::domain_error("conj_power_log_wealth: counts must be nonnegative");
  }
  if (!(z >= 0.0)) {
    throw std::domain_error("conj_power_log_wealth: z must be nonnegative");
  }
  using numerics::log_gamma;
  const double a = static_cast<double>(heads);
  const double b = static_cast<double>(tails);
  const double t = a + b;
  return t * std::numbers::ln2 + log_gamma(a + z + 1.0) + log_gamma(b + z + 1.0) +
         log_gamma(2.0 * z + 2.0) - log_gamma(t + 2.0 * z + 2.0) - 2.0 * log_gamma(z + 1.0);
}

double squint_log_potential(double x, double v, const PriorSpec& prior,
                            const numerics::QuadratureOptions& opts) {
  if (!(v >= 0.0)) {
    throw std::domain_error("squint_log_potential: v must be nonnegative");
  }
  const Interval support = prior.support();
  const double lo = std::max(support.lo, kSquintRange.lo);
  const double hi = std::min(support.hi, kSquintRange.hi);
  const double log_norm = prior.log_normalizer();
  const auto exponent = [&](double b) { return b * x - b * b * v + prior.log_kernel(b); };
  return numerics::integrate_log(exponent, lo, hi, opts).log_value - log_norm;
}

double log_erf_sum(double a, double b) {
  if (a < b) {
    std::swap(a, b);
  }
  if (b >= 0.0) {
    const double big = std::erf(a);
    return std::log(big) + std::log1p(std::erf(b) / big);
  }
  // erf(a) - erf(|b|) = erfc(|b|) - erfc(a) with a > |b| required for positivity.
  const double nb = -b;
  if (!(a > nb)) {
    return -std::numeric_limits<double>::infinity();
  }
  const double small_tail = std::erfc(nb);
  return std::log(small_tail) + std::log1p(-std::erfc(a) / small_tail);
}

double trunc_gauss_log_potential_closed(double x, double t, double sigma_sq) {
  if (!(sigma_sq > 0.0)) {
    throw std::domain_error("trunc_gauss_log_potential_closed: sigma_sq must be positive");
  }
  if (!(t >= 0.0)) {
    throw std::domain_error("trunc_gauss_log_potential_closed: T must be nonnegative");
  }
  const double sigma = std::sqrt(sigma_sq);
  const double lambda = t + 1.0 / (2.0 * sigma_sq);
  const double root = std::sqrt(lambda);
  const double prefactor = 2.0 * std::numbers::sqrt2 * sigma * root *
                           std::erf(1.0 / (2.0 * std::numbers::sqrt2 * sigma));
  const double shift = x / (2.0 * root);
  return x * x / (4.0 * lambda) - std::log(prefactor) +
         log_erf_sum(root / 2.0 - shift, root / 2.0 + shift);
}

double default_potential_log(double x, std::int64_t horizon) {
  require_in_range(x, horizon, "default_potential_log");
  const double t = static_cast<double>(horizon);
  return trunc_gauss_log_potential_closed(x, t, 1.0 / (2.0 * t));
}

double wealth_floor_log(double s, std::int64_t horizon) {
  require_in_range(s, horizon, "wealth_floor_log");
  return -std::numbers::ln2 + s * s / (8.0 * static_cast<double>(horizon));
}

double regret_bound_gaussian(const BoundFormulaInput& in) {
  return std::sqrt(8.0 * static_cast<double>(in.horizon) * (in.kl + std::numbers::ln2));
}

double regret_bound_shifted_kt(const BoundFormulaInput& in) {
  return std::sqrt(3.0 * static_cast<double>(in.horizon) * (in.kl + 3.0));
}

double squint_bound_reference(std::int64_t horizon, double kl, double v_u) {
  const double log_t1 = std::log(static_cast<double>(horizon) + 1.0);
  return std::sqrt(2.0 * v_u) * (1.0 + std::sqrt(2.0 * (kl + std::log(0.5 + log_t1)))) + 1.0 +
         5.0 * (kl + std::log(1.0 + 2.0 * log_t1));
}

}  // namespace coinbet
