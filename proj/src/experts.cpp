#include "coinbet/experts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "coinbet/potentials.hpp"

namespace coinbet {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += a[i] * b[i];
  }
  return sum;
}

void check_simplex(std::span<const double> p, const char* who) {
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument(std::string(who) + ": entries must be nonnegative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument(std::string(who) + ": entries must sum to 1");
  }
}

std::vector<Comparator> build_comparators(std::span<const double> pi,
                                          std::span<const Vector> extra) {
  const std::size_t d = pi.size();
  std::vector<Comparator> comparators;
  comparators.reserve(d + extra.size());
  for (std::size_t i = 0; i < d; ++i) {
    Vector u(d, 0.0);
    u[i] = 1.0;
    const double divergence = kl(u, pi);
    comparators.push_back({"e" + std::to_string(i + 1), std::move(u), divergence});
  }
  for (std::size_t k = 0; k < extra.size(); ++k) {
    if (extra[k].size() != d) {
      throw std::invalid_argument("run_game: comparator dimension mismatch");
    }
    check_simplex(extra[k], "comparator");
    comparators.push_back({"u" + std::to_string(k + 1), extra[k], kl(extra[k], pi)});
  }
  return comparators;
}

}  // namespace

ExpertsConfig ExpertsConfig::uniform(std::size_t d, std::int64_t horizon, BettorConfig bettor) {
  ExpertsConfig config;
  config.d = d;
  config.prior_pi.assign(d, d == 0 ? 0.0 : 1.0 / static_cast<double>(d));
  config.bettor = std::move(bettor);
  config.horizon = horizon;
  config.validate();
  return config;
}

void ExpertsConfig::validate() const {
  if (d < 1) {
    throw std::invalid_argument("experts: d must be at least 1");
  }
  if (prior_pi.size() != d) {
    throw std::invalid_argument("experts: prior dimension does not match d");
  }
  check_simplex(prior_pi, "experts prior");
  if (std::any_of(prior_pi.begin(), prior_pi.end(), [](double p) { return p <= 0.0; })) {
    throw std::invalid_argument("experts prior: entries must be strictly positive");
  }
  if (horizon < 1) {
    throw std::invalid_argument("experts: horizon must be at least 1");
  }
  bettor.validate();
}

ExpertsState ExpertsState::initial(const ExpertsConfig& config) {
  ExpertsState state;
  state.bettors.assign(config.d, BettorState{});
  state.iterate = config.prior_pi;
  return state;
}

Vector RegretRecord::final_regret() const {
  return cumulative_regret.empty() ? Vector(comparators.size(), 0.0) : cumulative_regret.back();
}

double kl(std::span<const double> u, std::span<const double> pi) {
  if (u.size() != pi.size()) {
    throw std::invalid_argument("kl: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0.0) {
      continue;
    }
    if (!(pi[i] > 0.0)) {
      throw std::domain_error("kl: prior has zero mass where the comparator does not");
    }
    sum += u[i] * std::log(u[i] / pi[i]);
  }
  return std::max(sum, 0.0);
}

Prediction predict(const ExpertsState& state, const ExpertsConfig& config) {
  const std::size_t d = config.d;
  Prediction out;
  out.fractions.resize(d);
  out.positive_weight.assign(d, false);
  Vector log_weight(d, -std::numeric_limits<double>::infinity());
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < d; ++i) {
    const double beta = next_fraction(config.bettor, state.bettors[i]);
    out.fractions[i] = beta;
    if (beta > 0.0) {
      out.positive_weight[i] = true;
      log_weight[i] = std::log(config.prior_pi[i]) + std::log(beta) + state.bettors[i].log_wealth;
      peak = std::max(peak, log_weight[i]);
    }
  }
  if (peak == -std::numeric_limits<double>::infinity()) {
    out.x = config.prior_pi;
    return out;
  }
  out.x.assign(d, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (out.positive_weight[i]) {
      out.x[i] = std::exp(log_weight[i] - peak);
      total += out.x[i];
    }
  }
  for (double& v : out.x) {
    v /= total;
  }
  return out;
}

Vector reduction_coins(const Prediction& prediction, std::span<const double> losses, double h) {
  Vector coins(losses.size());
  for (std::size_t i = 0; i < losses.size(); ++i) {
    const double raw = h - losses[i];
    coins[i] = prediction.positive_weight[i] ? raw : std::max(raw, 0.0);
    coins[i] = std::clamp(coins[i], -1.0, 1.0);
  }
  return coins;
}

std::pair<ExpertsState, ExpertsRound> step(const ExpertsState& state, const ExpertsConfig& config,
                                           std::span<const double> losses) {
  if (losses.size() != config.d) {
    throw std::invalid_argument("step: loss vector dimension does not match d");
  }
  for (double g : losses) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw std::domain_error("step: losses must lie in [0, 1]");
    }
  }
  const Prediction prediction = predict(state, config);
  const double h = dot(losses, prediction.x);
  const Vector coins = reduction_coins(prediction, losses, h);

  ExpertsState next;
  next.bettors.resize(config.d);
  for (std::size_t i = 0; i < config.d; ++i) {
    next.bettors[i] = advance(state.bettors[i], prediction.fractions[i], coins[i]);
  }
  next.iterate = prediction.x;
  next.round = state.round + 1;
  ExpertsRound round{Vector(losses.begin(), losses.end()), prediction.x, h};
  return {std::move(next), std::move(round)};
}

RegretRecord run_game(const ExpertsConfig& config, std::span<const Vector> losses,
                      std::span<const Vector> extra) {
  config.validate();
  if (static_cast<std::int64_t>(losses.size()) > config.horizon) {
    throw std::invalid_argument("run_game: more rounds than the configured horizon");
  }
  RegretRecord record;
  record.horizon = config.horizon;
  record.comparators = build_comparators(config.prior_pi, extra);
  for (const Comparator& c : record.comparators) {
    record.envelope_gaussian.push_back(regret_bound_gaussian({config.horizon, c.kl}));
  }
  record.rounds.reserve(losses.size());
  record.cumulative_regret.reserve(losses.size());

  ExpertsState state = ExpertsState::initial(config);
  Vector regret(record.comparators.size(), 0.0);
  for (const Vector& g : losses) {
    auto [next, round] = step(state, config, g);
    for (std::size_t k = 0; k < regret.size(); ++k) {
      regret[k] += round.algorithm_loss - dot(g, record.comparators[k].u);
    }
    record.cumulative_regret.push_back(regret);
    record.rounds.push_back(std::move(round));
    state = std::move(next);
  }
  record.final_bettors = state.bettors;
  return record;
}

double recompute_regret(const RegretRecord& record, std::span<const double> u) {
  double regret = 0.0;
  for (const ExpertsRound& round : record.rounds) {
    regret += dot(round.losses, round.x) - dot(round.losses, u);
  }
  return regret;
}

double v_t_diagnostic(const RegretRecord& record, std::span<const double> u) {
  double total = 0.0;
  for (const ExpertsRound& round : record.rounds) {
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double gap = round.algorithm_loss - round.losses[i];
      total += u[i] * gap * gap;
    }
  }
  return total;
}

Vector DoublingRecord::envelope_sum() const {
  Vector total(record.comparators.size(), 0.0);
  for (const DoublingEpoch& epoch : epochs) {
    for (std::size_t k = 0; k < total.size(); ++k) {
      total[k] += epoch.envelope_gaussian[k];
    }
  }
  return total;
}

DoublingRecord run_game_doubling(std::span<const double> prior_pi, const ConfigFactory& factory,
                                 std::span<const Vector> losses, std::span<const Vector> extra) {
  DoublingRecord out;
  out.record.horizon = static_cast<std::int64_t>(losses.size());
  out.record.comparators = build_comparators(prior_pi, extra);
  const std::size_t n_comp = out.record.comparators.size();
  for (const Comparator& c : out.record.comparators) {
    out.record.envelope_gaussian.push_back(
        regret_bound_gaussian({std::max<std::int64_t>(out.record.horizon, 1), c.kl}));
  }

  Vector regret(n_comp, 0.0);
  std::size_t offset = 0;
  std::int64_t horizon = 1;
  for (std::size_t length : doubling_epoch_lengths(losses.size())) {
    ExpertsConfig config;
    config.d = prior_pi.size();
    config.prior_pi.assign(prior_pi.begin(), prior_pi.end());
    config.bettor = factory(horizon);
    config.horizon = horizon;
    RegretRecord epoch_record = run_game(config, losses.subspan(offset, length), extra);

    DoublingEpoch epoch;
    epoch.first_round = offset;
    epoch.length = length;
    epoch.horizon = horizon;
    epoch.regret = epoch_record.final_regret();
    epoch.envelope_gaussian = epoch_record.envelope_gaussian;
    epoch.final_bettors = epoch_record.final_bettors;
    out.epochs.push_back(std::move(epoch));

    for (std::size_t r = 0; r < epoch_record.rounds.size(); ++r) {
      Vector cumulative(n_comp);
      for (std::size_t k = 0; k < n_comp; ++k) {
        cumulative[k] = regret[k] + epoch_record.cumulative_regret[r][k];
      }
      out.record.cumulative_regret.push_back(std::move(cumulative));
      out.record.rounds.push_back(std::move(epoch_record.rounds[r]));
    }
    regret = out.record.cumulative_regret.back();
    offset += length;
    horizon *= 2;
  }
  return out;
}

}  // namespace coinbet
