#include "coinbet/betting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "coinbet/potentials.hpp"

namespace coinbet {

namespace {

Interval mixture_range(const PriorSpec& prior) {
  const Interval support = prior.support();
  return {std::max(support.lo, kSquintRange.lo), std::min(support.hi, kSquintRange.hi)};
}

double exponent_scale(const BettorConfig& config, const BettorState& state) {
  return *config.exponent_mode == ExponentMode::variance ? state.sum_csq
                                                         : static_cast<double>(state.t);
}

bool use_closed_form(const BettorConfig& config) {
  return config.evaluation == MixtureEvaluation::closed_form &&
         config.prior->kind() == PriorKind::truncated_gaussian;
}

// Mean of a Gaussian kernel exp(-lambda (b - mu)^2) truncated to [lo, hi]:
// mu + (e^{-A^2} - e^{-B^2}) / (sqrt(pi lambda) (erf B - erf A)),
// A = sqrt(lambda)(lo - mu), B = sqrt(lambda)(hi - mu).
// Requires lo <= mu <= hi so that erf B - erf A is a sum of nonnegative terms.
double truncated_gaussian_mean(double mu, double lambda, Interval range) {
  const double root = std::sqrt(lambda);
  const double a = root * (range.lo - mu);
  const double b = root * (range.hi - mu);
  const double mass = std::erf(b) + std::erf(-a);
  const double edge = std::exp(-a * a) - std::exp(-b * b);
  return mu + edge / (std::sqrt(std::numbers::pi) * root * mass);
}

}  // namespace

BettorConfig BettorConfig::conjugate_power(double z) {
  BettorConfig config;
  config.family = BettorFamily::conjugate_power;
  config.z = z;
  config.validate();
  return config;
}

BettorConfig BettorConfig::mixture(PriorSpec prior, ExponentMode mode,
                                   MixtureEvaluation evaluation) {
  BettorConfig config;
  config.family = BettorFamily::mixture_quadrature;
  config.prior = prior;
  config.exponent_mode = mode;
  config.evaluation = evaluation;
  config.validate();
  return config;
}

BettorConfig BettorConfig::default_mixture(std::int64_t horizon, MixtureEvaluation evaluation) {
  if (horizon < 1) {
    throw std::invalid_argument("default_mixture: horizon must be at least 1");
  }
  return mixture(PriorSpec::truncated_gaussian(1.0 / (2.0 * static_cast<double>(horizon))),
                 ExponentMode::round_count, evaluation);
}

void BettorConfig::validate() const {
  if (family == BettorFamily::conjugate_power) {
    if (!(z >= 0.0) || !std::isfinite(z)) {
      throw std::invalid_argument("conjugate_power bettor: z must be finite and nonnegative");
    }
    if (exponent_mode.has_value()) {
      throw std::invalid_argument("conjugate_power bettor: exponent_mode applies to mixtures only");
    }
    return;
  }
  if (!prior.has_value()) {
    throw std::invalid_argument("mixture bettor: prior required");
  }
  if (!exponent_mode.has_value()) {
    throw std::invalid_argument("mixture bettor: exponent_mode required");
  }
  if (evaluation == MixtureEvaluation::closed_form &&
      prior->kind() != PriorKind::truncated_gaussian) {
    throw std::invalid_argument("mixture bettor: closed_form needs a truncated_gaussian prior");
  }
}

double Trajectory::final_log_wealth() const {
  return rounds.empty() ? 0.0 : rounds.back().log_wealth;
}

double next_fraction(const BettorConfig& config, const BettorState& state) {
  if (config.family == BettorFamily::conjugate_power) {
    const double beta = state.sum_c / (static_cast<double>(state.t) + 2.0 * config.z + 2.0);
    const double cap = std::nextafter(1.0, 0.0);
    return std::clamp(beta, -cap, cap);
  }
  if (state.t == 0) {
    return 0.0;
  }
  const PriorSpec& prior = *config.prior;
  const Interval range = mixture_range(prior);
  const double scale = exponent_scale(config, state);
  const double sum_c = state.sum_c;
  if (use_closed_form(config)) {
    const double lambda = scale + 1.0 / (2.0 * prior.sigma_sq());
    const double mu = sum_c / (2.0 * lambda);
    if (range.contains(mu)) {
      return std::clamp(truncated_gaussian_mean(mu, lambda, range), range.lo, range.hi);
    }
  }
  const auto exponent = [&](double b) { return b * sum_c - b * b * scale + prior.log_kernel(b); };
  return numerics::signed_moment_ratio(exponent, range.lo, range.hi, config.quadrature);
}

BettorState advance(const BettorState& state, double fraction, double coin) {
  if (!(std::abs(coin) <= 1.0)) {
    throw std::domain_error("observe: coin outside [-1, 1]");
  }
  const double product = fraction * coin;
  if (!(1.0 + product > 0.0)) {
    throw std::logic_error("observe: bet would lose the entire wealth (1 + beta c <= 0)");
  }
  BettorState next = state;
  next.t += 1;
  next.sum_c += coin;
  next.sum_csq += coin * coin;
  next.log_wealth += std::log1p(product);
  return next;
}

BettorState observe(const BettorConfig& config, const BettorState& state, double coin) {
  return advance(state, next_fraction(config, state), coin);
}

double conj_power_log_potential(double z, double x, double t) {
  using numerics::log_gamma;
  const double heads = 0.5 * (t + x);
  const double tails = 0.5 * (t - x);
  return t * std::numbers::ln2 + log_gamma(heads + z + 1.0) + log_gamma(tails + z + 1.0) +
         log_gamma(2.0 * z + 2.0) - log_gamma(t + 2.0 * z + 2.0) - 2.0 * log_gamma(z + 1.0);
}

double log_potential(const BettorConfig& config, const BettorState& state) {
  if (config.family == BettorFamily::conjugate_power) {
    return conj_power_log_potential(config.z, state.sum_c, static_cast<double>(state.t));
  }
  const double scale = exponent_scale(config, state);
  if (use_closed_form(config)) {
    return trunc_gauss_log_potential_closed(state.sum_c, scale, config.prior->sigma_sq());
  }
  return squint_log_potential(state.sum_c, scale, *config.prior, config.quadrature);
}

Trajectory run(const BettorConfig& config, std::span<const double> coins) {
  config.validate();
  Trajectory trajectory;
  trajectory.rounds.reserve(coins.size());
  BettorState state;
  for (double coin : coins) {
    const double fraction = next_fraction(config, state);
    state = advance(state, fraction, coin);
    trajectory.rounds.push_back({fraction, coin, state.log_wealth, log_potential(config, state)});
  }
  trajectory.epochs.push_back({0, coins.size(), static_cast<std::int64_t>(coins.size()),
                               state.sum_c, state.log_wealth});
  return trajectory;
}

std::vector<std::size_t> doubling_epoch_lengths(std::size_t rounds) {
  std::vector<std::size_t> lengths;
  std::size_t nominal = 1;
  while (rounds > 0) {
    const std::size_t length = std::min(nominal, rounds);
    lengths.push_back(length);
    rounds -= length;
    nominal *= 2;
  }
  return lengths;
}

Trajectory doubling_wrap(const ConfigFactory& factory, std::span<const double> coins) {
  Trajectory trajectory;
  trajectory.rounds.reserve(coins.size());
  std::size_t offset = 0;
  std::int64_t horizon = 1;
  for (std::size_t length : doubling_epoch_lengths(coins.size())) {
    Trajectory epoch = run(factory(horizon), coins.subspan(offset, length));
    trajectory.rounds.insert(trajectory.rounds.end(), epoch.rounds.begin(), epoch.rounds.end());
    EpochSummary summary = epoch.epochs.front();
    summary.first_round = offset;
    summary.horizon = horizon;
    trajectory.epochs.push_back(summary);
    offset += length;
    horizon *= 2;
  }
  return trajectory;
}

}  // namespace coinbet
