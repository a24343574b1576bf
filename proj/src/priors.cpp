#include "coinbet/priors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "coinbet/numerics.hpp"

namespace coinbet {

PriorSpec PriorSpec::conjugate_power(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw std::invalid_argument("conjugate_power prior: z must be a finite nonnegative real");
  }
  return PriorSpec(PriorKind::conjugate_power, z, 0.0, conj_power_log_normalizer(z));
}

PriorSpec PriorSpec::truncated_gaussian(double sigma_sq) {
  if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) {
    throw std::invalid_argument("truncated_gaussian prior: sigma_sq must be positive and finite");
  }
  return PriorSpec(PriorKind::truncated_gaussian, 0.0, sigma_sq,
                   trunc_gauss_log_normalizer(sigma_sq));
}

Interval PriorSpec::support() const {
  if (kind_ == PriorKind::conjugate_power) {
    return {-1.0, 1.0};
  }
  return {-0.5, 0.5};
}

double PriorSpec::log_kernel(double beta) const {
  if (kind_ == PriorKind::conjugate_power) {
    if (z_ == 0.0) {
      return 0.0;
    }
    return z_ * (std::log1p(beta) + std::log1p(-beta));
  }
  return -beta * beta / (2.0 * sigma_sq_);
}

std::string PriorSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  if (kind_ == PriorKind::conjugate_power) {
    out << "conjugate_power(z=" << z_ << ")";
  } else {
    out << "truncated_gaussian(sigma_sq=" << sigma_sq_ << ")";
  }
  return out.str();
}

double log_density(const PriorSpec& prior, double beta) {
  if (!prior.support().contains(beta)) {
    throw std::domain_error("log_density: beta outside the prior support");
  }
  return prior.log_kernel(beta) - prior.log_normalizer();
}

double conj_power_log_normalizer(double z) {
  if (!(z >= 0.0)) {
    throw std::domain_error("conj_power_log_normalizer: z must be nonnegative");
  }
  return (2.0 * z + 1.0) * std::numbers::ln2 + 2.0 * numerics::log_gamma(z + 1.0) -
         numerics::log_gamma(2.0 * z + 2.0);
}

double trunc_gauss_log_normalizer(double sigma_sq) {
  const double sigma = std::sqrt(sigma_sq);
  return 0.5 * std::log(2.0 * std::numbers::pi * sigma_sq) +
         std::log(numerics::erf(1.0 / (2.0 * std::numbers::sqrt2 * sigma)));
}

}  // namespace coinbet
