#ifndef COINBET_BETTING_HPP_
#define COINBET_BETTING_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "coinbet/numerics.hpp"
#include "coinbet/priors.hpp"

namespace coinbet {

enum class BettorFamily { conjugate_power, mixture_quadrature };

/// Which variance proxy multiplies b^2 in the mixture exponent.
enum class ExponentMode {
  variance,     // sum of c_i^2 (data-dependent potential)
  round_count,  // t (data-independent potential)
};

/// How the mixture integrals are evaluated. closed_form is available for the
/// truncated-Gaussian prior only, where both integrals reduce to erf terms.
enum class MixtureEvaluation { quadrature, closed_form };

struct BettorConfig {
  BettorFamily family = BettorFamily::conjugate_power;
  double z = 0.0;                       // conjugate_power only
  std::optional<PriorSpec> prior;       // mixture only
  std::optional<ExponentMode> exponent_mode;  // mixture only
  MixtureEvaluation evaluation = MixtureEvaluation::quadrature;
  numerics::QuadratureOptions quadrature{};

  static BettorConfig conjugate_power(double z);
  static BettorConfig mixture(PriorSpec prior, ExponentMode mode,
                              MixtureEvaluation evaluation = MixtureEvaluation::quadrature);
  /// Truncated Gaussian with sigma^2 = 1/(2T), exponent scale t.
  static BettorConfig default_mixture(std::int64_t horizon,
                                      MixtureEvaluation evaluation = MixtureEvaluation::quadrature);

  /// Throws std::invalid_argument when the fields are inconsistent.
  void validate() const;
};

struct BettorState {
  std::int64_t t = 0;
  double log_wealth = 0.0;
  double sum_c = 0.0;
  double sum_csq = 0.0;
};

struct TrajectoryRound {
  double fraction = 0.0;
  double coin = 0.0;
  double log_wealth = 0.0;     // after the round
  double log_potential = 0.0;  // configured potential at (sum_c, t) after the round
};

struct EpochSummary {
  std::size_t first_round = 0;
  std::size_t length = 0;     // rounds actually played
  std::int64_t horizon = 0;   // nominal epoch length 2^k
  double sum_c = 0.0;
  double log_wealth = 0.0;    // final log-wealth of the epoch's bettor
};

struct Trajectory {
  std::vector<TrajectoryRound> rounds;
  std::vector<EpochSummary> epochs;  // a single epoch unless doubling was used

  double final_log_wealth() const;
};

/// Signed fraction of current wealth to bet next round.
///
/// conjugate_power: sum_c / (t + 2z + 2), the posterior mean of b after the
/// observed coins, kept strictly inside (-1, 1).
/// mixture_quadrature: ratio of the integrals of b exp(b S - b^2 V) F(b) and
/// exp(b S - b^2 V) F(b) over the prior support intersected with [-1/2, 1/2].
double next_fraction(const BettorConfig& config, const BettorState& state);

/// Applies a round in which `fraction` was bet and `coin` came up.
BettorState advance(const BettorState& state, double fraction, double coin);

BettorState observe(const BettorConfig& config, const BettorState& state, double coin);

/// Log of the potential the configured bettor is guaranteed (or, for the
/// conjugate-power bettor on binary coins, equal) to reach.
double log_potential(const BettorConfig& config, const BettorState& state);

/// Gamma-form conjugate-power potential for a real coin sum x after t rounds
/// (heads (t+x)/2, tails (t-x)/2).
double conj_power_log_potential(double z, double x, double t);

Trajectory run(const BettorConfig& config, std::span<const double> coins);

using ConfigFactory = std::function<BettorConfig(std::int64_t horizon)>;

/// Restarts a fresh bettor on epochs of length 1, 2, 4, ... built from
/// factory(2^k); wealth is not carried across epochs.
Trajectory doubling_wrap(const ConfigFactory& factory, std::span<const double> coins);

/// Lengths of the doubling epochs covering `rounds` rounds (last one may be
/// cut short).
std::vector<std::size_t> doubling_epoch_lengths(std::size_t rounds);

}  // namespace coinbet

#endif  // COINBET_BETTING_HPP_
