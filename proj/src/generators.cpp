#include "coinbet/generators.hpp"

#include <stdexcept>

namespace coinbet {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t run_seed, std::uint64_t index) {
  std::uint64_t state = run_seed + index * 0x9e3779b97f4a7c15ULL;
  return splitmix64(state);
}

CoinKind parse_coin_kind(std::string_view name) {
  if (name == "binary") return CoinKind::binary;
  if (name == "rademacher") return CoinKind::rademacher;
  if (name == "biased") return CoinKind::biased;
  if (name == "alternating") return CoinKind::alternating;
  if (name == "adversarial") return CoinKind::adversarial_sign_flip;
  if (name == "uniform") return CoinKind::uniform;
  throw std::invalid_argument("unknown coin generator: " + std::string(name));
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "alternating") return LossKind::alternating;
  if (name == "bernoulli") return LossKind::bernoulli;
  if (name == "single-best") return LossKind::single_best_expert;
  if (name == "uniform") return LossKind::iid_uniform;
  throw std::invalid_argument("unknown loss generator: " + std::string(name));
}

std::string to_string(CoinKind kind) {
  switch (kind) {
    case CoinKind::binary: return "binary";
    case CoinKind::rademacher: return "rademacher";
    case CoinKind::biased: return "biased";
    case CoinKind::alternating: return "alternating";
    case CoinKind::adversarial_sign_flip: return "adversarial";
    case CoinKind::uniform: return "uniform";
  }
  return "?";
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::alternating: return "alternating";
    case LossKind::bernoulli: return "bernoulli";
    case LossKind::single_best_expert: return "single-best";
    case LossKind::iid_uniform: return "uniform";
  }
  return "?";
}

std::vector<double> parse_binary_coins(std::string_view pattern) {
  std::vector<double> coins;
  coins.reserve(pattern.size());
  for (char ch : pattern) {
    if (ch == '+') {
      coins.push_back(1.0);
    } else if (ch == '-') {
      coins.push_back(-1.0);
    } else {
      throw std::invalid_argument("binary coins: expected only '+' and '-'");
    }
  }
  return coins;
}

std::vector<double> binary_sequence(std::size_t length, std::uint64_t mask) {
  std::vector<double> coins(length);
  for (std::size_t k = 0; k < length; ++k) {
    coins[k] = ((mask >> k) & 1U) ? 1.0 : -1.0;
  }
  return coins;
}

std::vector<double> generate_coins(const CoinStream& spec) {
  std::vector<double> coins;
  Rng rng(spec.seed);
  switch (spec.kind) {
    case CoinKind::binary:
      return parse_binary_coins(spec.pattern);
    case CoinKind::rademacher:
      for (std::size_t t = 0; t < spec.rounds; ++t) coins.push_back(rng.bernoulli(0.5) ? 1.0 : -1.0);
      return coins;
    case CoinKind::biased:
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
        throw std::invalid_argument("biased coins: p must lie in [0, 1]");
      }
      for (std::size_t t = 0; t < spec.rounds; ++t) coins.push_back(rng.bernoulli(spec.p) ? 1.0 : -1.0);
      return coins;
    case CoinKind::alternating:
      for (std::size_t t = 0; t < spec.rounds; ++t) coins.push_back(t % 2 == 0 ? 1.0 : -1.0);
      return coins;
    case CoinKind::uniform:
      for (std::size_t t = 0; t < spec.rounds; ++t) coins.push_back(rng.uniform(-1.0, 1.0));
      return coins;
    case CoinKind::adversarial_sign_flip:
      break;
  }
  throw std::invalid_argument("adversarial coins depend on the bettor; use play_coins");
}

Trajectory play_coins(const BettorConfig& config, const CoinStream& spec) {
  if (spec.kind != CoinKind::adversarial_sign_flip) {
    const std::vector<double> coins = generate_coins(spec);
    return run(config, coins);
  }
  config.validate();
  Trajectory trajectory;
  BettorState state;
  for (std::size_t t = 0; t < spec.rounds; ++t) {
    const double fraction = next_fraction(config, state);
    const double coin = fraction > 0.0 ? -1.0 : 1.0;
    state = advance(state, fraction, coin);
    trajectory.rounds.push_back({fraction, coin, state.log_wealth, log_potential(config, state)});
  }
  trajectory.epochs.push_back({0, spec.rounds, static_cast<std::int64_t>(spec.rounds), state.sum_c,
                               state.log_wealth});
  return trajectory;
}

std::vector<std::vector<double>> generate_losses(const LossStream& spec) {
  if (spec.d < 1) {
    throw std::invalid_argument("loss generator: d must be at least 1");
  }
  std::vector<std::vector<double>> losses(spec.rounds, std::vector<double>(spec.d, 0.0));
  Rng rng(spec.seed);
  const std::size_t best = spec.kind == LossKind::single_best_expert ? rng.next() % spec.d : 0;
  for (std::size_t t = 0; t < spec.rounds; ++t) {
    for (std::size_t i = 0; i < spec.d; ++i) {
      double& g = losses[t][i];
      switch (spec.kind) {
        case LossKind::alternating:
          g = (t + i) % 2 == 0 ? 0.0 : 1.0;
          break;
        case LossKind::bernoulli:
          g = rng.bernoulli(spec.p) ? 1.0 : 0.0;
          break;
        case LossKind::single_best_expert:
          g = rng.bernoulli(i == best ? spec.p - spec.gap : spec.p) ? 1.0 : 0.0;
          break;
        case LossKind::iid_uniform:
          g = rng.uniform01();
          break;
      }
    }
  }
  return losses;
}

}  // namespace coinbet
