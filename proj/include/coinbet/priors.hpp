#ifndef COINBET_PRIORS_HPP_
#define COINBET_PRIORS_HPP_

#include <string>

namespace coinbet {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double length() const { return hi - lo; }
};

enum class PriorKind { conjugate_power, truncated_gaussian };

/// A symmetric prior density over betting fractions.
///
/// conjugate_power: proportional to (1 + b)^z (1 - b)^z on [-1, 1].
/// truncated_gaussian: proportional to exp(-b^2 / (2 sigma^2)) on [-1/2, 1/2].
///
/// Immutable once built; the log-normalizer is computed at construction.
class PriorSpec {
 public:
  static PriorSpec conjugate_power(double z);
  static PriorSpec truncated_gaussian(double sigma_sq);

  PriorKind kind() const { return kind_; }
  double z() const { return z_; }
  double sigma_sq() const { return sigma_sq_; }
  Interval support() const;
  double log_normalizer() const { return log_normalizer_; }

  /// Unnormalized log density; -inf at the conjugate-power endpoints when z > 0.
  double log_kernel(double beta) const;

  std::string describe() const;

 private:
  PriorSpec(PriorKind kind, double z, double sigma_sq, double log_normalizer)
      : kind_(kind), z_(z), sigma_sq_(sigma_sq), log_normalizer_(log_normalizer) {}

  PriorKind kind_;
  double z_;
  double sigma_sq_;
  double log_normalizer_;
};

/// Normalized log density; throws std::domain_error outside the support.
double log_density(const PriorSpec& prior, double beta);

/// log of the integral of (1 + b)^z (1 - b)^z over [-1, 1], via the
/// Gamma-function identity 2^{2z+1} Gamma(z+1)^2 / Gamma(2z+2).
double conj_power_log_normalizer(double z);

/// log of the integral of exp(-b^2 / (2 sigma^2)) over [-1/2, 1/2],
/// sqrt(2 pi) sigma erf(1 / (2 sqrt(2) sigma)).
double trunc_gauss_log_normalizer(double sigma_sq);

}  // namespace coinbet

#endif  // COINBET_PRIORS_HPP_
