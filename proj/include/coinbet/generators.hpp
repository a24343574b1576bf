#ifndef COINBET_GENERATORS_HPP_
#define COINBET_GENERATORS_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "coinbet/betting.hpp"

namespace coinbet {

/// One step of the splitmix64 sequence.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of trial `index` derived from a run seed: the index-th splitmix64
/// output after advancing the run seed by index golden-ratio increments.
std::uint64_t substream_seed(std::uint64_t run_seed, std::uint64_t index);

/// mt19937_64 with a platform-independent uniform double (top 53 bits).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool bernoulli(double p) { return uniform01() < p; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

enum class CoinKind { binary, rademacher, biased, alternating, adversarial_sign_flip, uniform };

enum class LossKind { alternating, bernoulli, single_best_expert, iid_uniform };

CoinKind parse_coin_kind(std::string_view name);
LossKind parse_loss_kind(std::string_view name);
std::string to_string(CoinKind kind);
std::string to_string(LossKind kind);

struct CoinStream {
  CoinKind kind = CoinKind::rademacher;
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
  double p = 0.5;        // biased: P(c = +1)
  std::string pattern;   // binary: '+' / '-' characters
};

/// Non-adaptive coins; throws std::invalid_argument for adversarial_sign_flip,
/// which depends on the bettor (see play_coins).
std::vector<double> generate_coins(const CoinStream& spec);

/// Plays the configured bettor against the stream. The adversarial kind bets
/// against the sign of the current fraction (+1 when it is zero).
Trajectory play_coins(const BettorConfig& config, const CoinStream& spec);

/// '+' -> +1, '-' -> -1; anything else throws std::invalid_argument.
std::vector<double> parse_binary_coins(std::string_view pattern);

/// The T-bit sequence encoded by `mask` (bit k set means coin k is +1).
std::vector<double> binary_sequence(std::size_t length, std::uint64_t mask);

struct LossStream {
  LossKind kind = LossKind::bernoulli;
  std::size_t d = 2;
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
  double p = 0.5;     // bernoulli: loss probability of every expert
  double gap = 0.1;   // single_best_expert: best expert's loss probability is p - gap
};

/// Row t is g_t; every entry lies in [0, 1].
std::vector<std::vector<double>> generate_losses(const LossStream& spec);

}  // namespace coinbet

#endif  // COINBET_GENERATORS_HPP_
