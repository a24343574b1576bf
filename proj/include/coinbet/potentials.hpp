#ifndef COINBET_POTENTIALS_HPP_
#define COINBET_POTENTIALS_HPP_

#include <cstdint>

#include "coinbet/numerics.hpp"
#include "coinbet/priors.hpp"

namespace coinbet {

/// Fractions entering the Squint-style potentials live in [-1/2, 1/2], where
/// 1 + b c >= exp(b c - b^2 c^2) holds for every coin |c| <= 1.
inline constexpr Interval kSquintRange{-0.5, 0.5};

struct BoundFormulaInput {
  std::int64_t horizon = 1;  // T >= 1
  double kl = 0.0;           // KL(u; pi) in nats
};

/// log of the mixture wealth of the conjugate-power prior after a heads and
/// b tails (T = a + b):
///   T ln 2 + lgamma(a+z+1) + lgamma(b+z+1) + lgamma(2z+2) - lgamma(T+2z+2) - 2 lgamma(z+1).
double conj_power_log_wealth(double z, std::int64_t heads, std::int64_t tails);

/// log of the integral of exp(b x - b^2 v) F(b) over [-1/2, 1/2] intersected
/// with the prior support, by quadrature. F is normalized on its own support,
/// so for the conjugate-power prior the value at (0, 0) is the log of the
/// prior mass inside [-1/2, 1/2].
double squint_log_potential(double x, double v, const PriorSpec& prior,
                            const numerics::QuadratureOptions& opts = {});

/// Closed form of the truncated-Gaussian potential with lambda = T + 1/(2 sigma^2):
///   x^2/(4 lambda) - ln(2 sqrt2 sigma sqrt(lambda) erf(1/(2 sqrt2 sigma)))
///   + ln[erf(sqrt(lambda)/2 - x/(2 sqrt(lambda))) + erf(sqrt(lambda)/2 + x/(2 sqrt(lambda)))].
/// T may be any nonnegative real (it carries either t or the sum of c^2).
double trunc_gauss_log_potential_closed(double x, double t, double sigma_sq);

/// The closed form above at sigma^2 = 1/(2T). Throws std::domain_error if |x| > T.
double default_potential_log(double x, std::int64_t horizon);

/// -ln 2 + s^2 / (8T). Throws std::domain_error if |s| > T.
double wealth_floor_log(double s, std::int64_t horizon);

/// sqrt(8 T (kl + ln 2)).
double regret_bound_gaussian(const BoundFormulaInput& in);

/// sqrt(3 T (kl + 3)); comparison envelope only.
double regret_bound_shifted_kt(const BoundFormulaInput& in);

/// Squint's data-dependent bound with V_T(u) = v_u:
///   sqrt(2 v_u) [1 + sqrt(2 (kl + ln(1/2 + ln(T+1))))] + 1 + 5 (kl + ln(1 + 2 ln(T+1))).
double squint_bound_reference(std::int64_t horizon, double kl, double v_u);

/// log(erf(a) + erf(b)) evaluated as the larger term times (1 + ratio), with
/// an erfc difference when the arguments have opposite signs.
double log_erf_sum(double a, double b);

}  // namespace coinbet

#endif  // COINBET_POTENTIALS_HPP_
