#ifndef COINBET_EXPERTS_HPP_
#define COINBET_EXPERTS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coinbet/betting.hpp"

namespace coinbet {

using Vector = std::vector<double>;

/// Learning with expert advice reduced to one coin-betting game per expert.
struct ExpertsConfig {
  std::size_t d = 1;
  Vector prior_pi;            // strictly positive, sums to 1
  BettorConfig bettor;        // template, one instance per expert
  std::int64_t horizon = 1;   // T

  static ExpertsConfig uniform(std::size_t d, std::int64_t horizon, BettorConfig bettor);

  /// Throws std::invalid_argument on a malformed prior or dimension.
  void validate() const;
};

struct ExpertsState {
  std::vector<BettorState> bettors;
  Vector iterate;  // last played point on the simplex
  std::int64_t round = 0;

  static ExpertsState initial(const ExpertsConfig& config);
};

struct Prediction {
  Vector x;          // point on the simplex
  Vector fractions;  // beta_{t,i}
  std::vector<bool> positive_weight;  // w_{t,i} > 0
};

struct ExpertsRound {
  Vector losses;  // g_t
  Vector x;       // x_t
  double algorithm_loss = 0.0;  // h_t = <g_t, x_t>
};

struct Comparator {
  std::string name;
  Vector u;
  double kl = 0.0;  // KL(u; pi)
};

struct RegretRecord {
  std::int64_t horizon = 0;
  std::vector<ExpertsRound> rounds;
  std::vector<Comparator> comparators;
  std::vector<Vector> cumulative_regret;  // [round][comparator]
  Vector envelope_gaussian;               // [comparator], sqrt(8 T (KL + ln 2))
  std::vector<BettorState> final_bettors;  // per expert, after the last round

  Vector final_regret() const;
};

/// KL(u; pi) with 0 ln 0 = 0; throws std::domain_error if some u_i > 0 has pi_i = 0.
double kl(std::span<const double> u, std::span<const double> pi);

/// Iterate for the coming round: x_i proportional to max(w_i, 0) with
/// w_i = pi_i beta_i Wealth_i, falling back to pi when no weight is positive.
/// Weights are normalized in log domain, so large wealths do not overflow.
Prediction predict(const ExpertsState& state, const ExpertsConfig& config);

/// Coins fed to the bettors: c_i = h - g_i, clipped at zero from below for
/// experts whose weight was not positive.
Vector reduction_coins(const Prediction& prediction, std::span<const double> losses, double h);

std::pair<ExpertsState, ExpertsRound> step(const ExpertsState& state, const ExpertsConfig& config,
                                           std::span<const double> losses);

/// Plays the whole loss sequence. Comparators are every vertex e_i (named
/// "e1".."ed") followed by `extra` (named "u1", "u2", ...).
RegretRecord run_game(const ExpertsConfig& config, std::span<const Vector> losses,
                      std::span<const Vector> extra = {});

/// Cumulative regret against u recomputed from the stored rounds, summed in
/// the same order as run_game.
double recompute_regret(const RegretRecord& record, std::span<const double> u);

/// V_T(u) = sum_t sum_i u_i (<g_t, x_t> - g_{t,i})^2.
double v_t_diagnostic(const RegretRecord& record, std::span<const double> u);

struct DoublingEpoch {
  std::size_t first_round = 0;
  std::size_t length = 0;
  std::int64_t horizon = 0;
  Vector regret;            // per comparator, within the epoch
  Vector envelope_gaussian; // per comparator, sqrt(8 2^k (KL + ln 2))
  std::vector<BettorState> final_bettors;
};

struct DoublingRecord {
  RegretRecord record;  // concatenated rounds; regret accumulates across epochs
  std::vector<DoublingEpoch> epochs;

  /// Sum of the per-epoch envelopes, per comparator.
  Vector envelope_sum() const;
};

/// Unknown-horizon mode: a fresh experts state per doubling epoch with the
/// bettor template rebuilt for horizon 2^k.
DoublingRecord run_game_doubling(std::span<const double> prior_pi, const ConfigFactory& factory,
                                 std::span<const Vector> losses,
                                 std::span<const Vector> extra = {});

}  // namespace coinbet

#endif  // COINBET_EXPERTS_HPP_
