#ifndef COINBET_REFERENCE_HPP_
#define COINBET_REFERENCE_HPP_

// Independent reference evaluations used by the verification suites. None of
// these share code with the numerics module they are checked against.

namespace coinbet::reference {

/// erf by its Maclaurin series (|x| <= 3) or the erfc continued fraction,
/// both in long double.
double erf_series(double x);

/// log erfc(x) for any real x, accurate where erfc itself underflows.
double log_erfc(double x);

/// log of the integral of exp(a b + c b^2) over [lo, hi] for c <= 0, in
/// closed form (erf / erfc terms, or exponentials when c == 0).
double log_quadratic_exponential_integral(double a, double c, double lo, double hi);

/// ln(n!) as a long-double sum of logarithms.
double log_factorial(unsigned n);

}  // namespace coinbet::reference

#endif  // COINBET_REFERENCE_HPP_
