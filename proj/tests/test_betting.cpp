#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>

#include "coinbet/betting.hpp"
#include "coinbet/generators.hpp"
#include "coinbet/potentials.hpp"
#include "oracles.hpp"

using namespace coinbet;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("fresh bettors bet nothing") {
  CHECK(next_fraction(BettorConfig::conjugate_power(0.0), {}) == 0.0);
  CHECK(next_fraction(BettorConfig::conjugate_power(7.5), {}) == 0.0);
  CHECK(next_fraction(BettorConfig::default_mixture(100), {}) == 0.0);
  CHECK(next_fraction(BettorConfig::mixture(PriorSpec::conjugate_power(2.0), ExponentMode::variance), {}) == 0.0);
}

TEST_CASE("KT fraction after one head is 1/3") {
  const BettorConfig kt = BettorConfig::conjugate_power(0.0);
  const BettorState state = observe(kt, {}, 1.0);
  // Posterior mean of b under density proportional to (1 + b) on [-1, 1].
  const double oracle_mean = (2.0 / 3.0) / 2.0;
  CHECK(next_fraction(kt, state) == doctest::Approx(oracle_mean).epsilon(1e-15));
}

TEST_CASE("mixture fraction is zero when the coins cancel") {
  for (auto evaluation : {MixtureEvaluation::quadrature, MixtureEvaluation::closed_form}) {
    const BettorConfig config = BettorConfig::default_mixture(50, evaluation);
    BettorState state;
    state = observe(config, state, 0.7);
    state = observe(config, state, -0.7);
    CHECK(state.sum_c == 0.0);
    CHECK(std::abs(next_fraction(config, state)) < 1e-15);
  }
}

TEST_CASE("observe examples") {
  const BettorConfig kt = BettorConfig::conjugate_power(0.0);
  const BettorState first = observe(kt, {}, -0.4);
  CHECK(first.log_wealth == 0.0);
  CHECK(first.t == 1);
  CHECK(first.sum_c == -0.4);
  CHECK(first.sum_csq == doctest::Approx(0.16));

  const BettorState heads = observe(kt, observe(kt, {}, 1.0), 1.0);
  CHECK(heads.log_wealth == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-15));
  CHECK(std::abs(heads.log_wealth - conj_power_log_wealth(0.0, 2, 0)) <= 1e-15);

  const BettorState mixed = observe(kt, observe(kt, {}, 1.0), -1.0);
  CHECK(mixed.log_wealth == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-15));
  CHECK(std::abs(mixed.log_wealth - conj_power_log_wealth(0.0, 1, 1)) <= 1e-15);
}

TEST_CASE("observe and advance reject invalid rounds") {
  const BettorConfig kt = BettorConfig::conjugate_power(0.0);
  CHECK_THROWS_AS(observe(kt, {}, 1.5), std::domain_error);
  CHECK_THROWS_AS(observe(kt, {}, -1.0000001), std::domain_error);
  CHECK_THROWS_AS(observe(kt, {}, NAN), std::domain_error);
  CHECK_THROWS_AS(advance({}, 1.0, -1.0), std::logic_error);
  CHECK_THROWS_AS(advance({}, -2.0, 0.6), std::logic_error);
}

TEST_CASE("invalid configs are rejected") {
  BettorConfig config = BettorConfig::conjugate_power(0.0);
  config.exponent_mode = ExponentMode::variance;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  BettorConfig mixture = BettorConfig::default_mixture(10);
  mixture.exponent_mode.reset();
  CHECK_THROWS_AS(mixture.validate(), std::invalid_argument);

  CHECK_THROWS_AS(BettorConfig::conjugate_power(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(BettorConfig::default_mixture(0), std::invalid_argument);
}

TEST_CASE("run on an empty sequence") {
  const Trajectory traj = run(BettorConfig::default_mixture(10), {});
  CHECK(traj.rounds.empty());
  CHECK(traj.final_log_wealth() == 0.0);
}

TEST_CASE("mixture equality on every binary sequence, T <= 10") {
  for (double z : {0.0, 0.5, 2.0, 7.5}) {
    const BettorConfig config = BettorConfig::conjugate_power(z);
    for (std::size_t horizon = 1; horizon <= 10; ++horizon) {
      for (std::uint64_t mask = 0; mask < (1u << horizon); ++mask) {
        const std::vector<double> coins = binary_sequence(horizon, mask);
        const Trajectory traj = run(config, coins);
        const auto heads = static_cast<std::int64_t>(std::popcount(mask));
        const double expected = conj_power_log_wealth(z, heads, static_cast<std::int64_t>(horizon) - heads);
        REQUIRE(std::abs(traj.final_log_wealth() - expected) <= 1e-12);
        REQUIRE(std::abs(traj.rounds.back().log_potential - expected) <= 1e-12);
      }
    }
  }
}

TEST_CASE("conjugate-power wealth equals the Simpson mixture oracle") {
  // Independent of the Gamma formula: integrate the product directly.
  for (double z : {0.0, 0.5, 3.0}) {
    for (std::uint64_t mask : {0b1u, 0b10110u, 0b1101001u}) {
      const std::vector<double> coins = binary_sequence(7, mask);
      const Trajectory traj = run(BettorConfig::conjugate_power(z), coins);
      CHECK(std::abs(traj.final_log_wealth() - oracle::mixture_log_wealth_simpson(coins, z)) <= 1e-9);
    }
  }
}

TEST_CASE("wealth dominance on continuous coins, both exponent modes") {
  const std::int64_t horizon = 200;
  for (auto mode : {ExponentMode::round_count, ExponentMode::variance}) {
    const BettorConfig config =
        BettorConfig::mixture(PriorSpec::truncated_gaussian(1.0 / (2.0 * horizon)), mode);
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
      CoinStream stream;
      stream.kind = CoinKind::uniform;
      stream.rounds = horizon;
      stream.seed = substream_seed(20250101, trial);
      const Trajectory traj = play_coins(config, stream);
      BettorState state;
      for (const TrajectoryRound& round : traj.rounds) {
        state = advance(state, round.fraction, round.coin);
        const double v = mode == ExponentMode::round_count ? static_cast<double>(state.t) : state.sum_csq;
        const double potential = squint_log_potential(state.sum_c, v, *config.prior);
        REQUIRE(round.log_wealth >= potential - 1e-9);
        REQUIRE(std::abs(round.log_potential - potential) <= 1e-9);
        REQUIRE(std::abs(round.fraction) <= 0.5);
      }
    }
  }
}

TEST_CASE("closed-form and quadrature mixture fractions agree") {
  CoinStream stream;
  stream.kind = CoinKind::uniform;
  stream.rounds = 300;
  stream.seed = 99;
  const std::vector<double> coins = generate_coins(stream);
  const Trajectory quad = run(BettorConfig::default_mixture(300, MixtureEvaluation::quadrature), coins);
  const Trajectory closed = run(BettorConfig::default_mixture(300, MixtureEvaluation::closed_form), coins);
  for (std::size_t t = 0; t < coins.size(); ++t) {
    REQUIRE(std::abs(quad.rounds[t].fraction - closed.rounds[t].fraction) <= 1e-12);
  }
  CHECK(std::abs(quad.final_log_wealth() - closed.final_log_wealth()) <= 1e-10);
}

TEST_CASE("fraction bounds") {
  CoinStream stream;
  stream.kind = CoinKind::binary;
  stream.pattern = std::string(500, '+');
  for (double z : {0.0, 0.5, 10.0}) {
    const Trajectory traj = play_coins(BettorConfig::conjugate_power(z), stream);
    for (const TrajectoryRound& round : traj.rounds) REQUIRE(std::abs(round.fraction) < 1.0);
  }
  const BettorConfig wide = BettorConfig::mixture(PriorSpec::conjugate_power(1.0), ExponentMode::variance);
  const Trajectory traj = play_coins(wide, stream);
  for (const TrajectoryRound& round : traj.rounds) REQUIRE(std::abs(round.fraction) <= 0.5);
}

TEST_CASE("runs are bit-for-bit deterministic") {
  CoinStream stream;
  stream.kind = CoinKind::uniform;
  stream.rounds = 120;
  stream.seed = 5;
  for (const BettorConfig& config :
       {BettorConfig::conjugate_power(1.5), BettorConfig::default_mixture(120),
        BettorConfig::mixture(PriorSpec::truncated_gaussian(0.01), ExponentMode::variance)}) {
    const Trajectory a = play_coins(config, stream);
    const Trajectory b = play_coins(config, stream);
    REQUIRE(a.rounds.size() == b.rounds.size());
    for (std::size_t t = 0; t < a.rounds.size(); ++t) {
      REQUIRE(same_bits(a.rounds[t].fraction, b.rounds[t].fraction));
      REQUIRE(same_bits(a.rounds[t].log_wealth, b.rounds[t].log_wealth));
      REQUIRE(same_bits(a.rounds[t].log_potential, b.rounds[t].log_potential));
    }
  }
}

TEST_CASE("shifted-KT bettor never loses more than a fixed fraction") {
  // Exhaustive minimum of the Gamma formula for T <= 12 sets the constant.
  double exhaustive_min = 0.0;
  for (std::int64_t horizon = 1; horizon <= 12; ++horizon) {
    const double z = (horizon - 1) / 2.0;
    for (std::int64_t heads = 0; heads <= horizon; ++heads) {
      exhaustive_min = std::min(exhaustive_min, conj_power_log_wealth(z, heads, horizon - heads));
    }
  }
  CHECK(std::exp(exhaustive_min) >= 0.2);

  const std::int64_t horizon = 200;
  const BettorConfig config = BettorConfig::conjugate_power((horizon - 1) / 2.0);
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 10000; ++trial) {
    CoinStream stream;
    stream.kind = trial % 3 == 0 ? CoinKind::adversarial_sign_flip
                  : trial % 3 == 1 ? CoinKind::rademacher
                                   : CoinKind::uniform;
    stream.rounds = horizon;
    stream.seed = substream_seed(77, trial);
    worst = std::min(worst, play_coins(config, stream).final_log_wealth());
  }
  CHECK(std::exp(worst) >= 0.2);
}

TEST_CASE("doubling epochs") {
  CHECK(doubling_epoch_lengths(0).empty());
  CHECK(doubling_epoch_lengths(1) == std::vector<std::size_t>{1});
  CHECK(doubling_epoch_lengths(7) == std::vector<std::size_t>{1, 2, 4});
  CHECK(doubling_epoch_lengths(10) == std::vector<std::size_t>{1, 2, 4, 3});
  for (std::size_t n = 0; n < 300; ++n) {
    std::size_t total = 0;
    for (std::size_t len : doubling_epoch_lengths(n)) total += len;
    REQUIRE(total == n);
  }
}

TEST_CASE("doubling on one round matches a plain run") {
  const ConfigFactory factory = [](std::int64_t h) { return BettorConfig::default_mixture(h); };
  const std::vector<double> coins{0.8};
  const Trajectory wrapped = doubling_wrap(factory, coins);
  const Trajectory plain = run(factory(1), coins);
  REQUIRE(wrapped.rounds.size() == 1);
  CHECK(same_bits(wrapped.rounds[0].log_wealth, plain.rounds[0].log_wealth));
  CHECK(same_bits(wrapped.rounds[0].log_potential, plain.rounds[0].log_potential));
}

TEST_CASE("doubling: every epoch clears its floor on 1000 Rademacher coins") {
  const ConfigFactory factory = [](std::int64_t h) {
    return BettorConfig::default_mixture(h, MixtureEvaluation::closed_form);
  };
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    CoinStream stream;
    stream.kind = CoinKind::rademacher;
    stream.rounds = 1000;
    stream.seed = seed;
    const Trajectory traj = doubling_wrap(factory, generate_coins(stream));
    REQUIRE(traj.rounds.size() == 1000);
    REQUIRE(traj.epochs.size() == 10);
    std::size_t next_first = 0;
    for (std::size_t k = 0; k < traj.epochs.size(); ++k) {
      const EpochSummary& epoch = traj.epochs[k];
      CHECK(epoch.first_round == next_first);
      CHECK(epoch.horizon == (std::int64_t{1} << k));
      next_first += epoch.length;
      CHECK(epoch.log_wealth >= wealth_floor_log(epoch.sum_c, epoch.horizon));
    }
    // Wealth restarts at 1 in each epoch.
    CHECK(traj.rounds[traj.epochs[3].first_round].log_wealth ==
          doctest::Approx(std::log1p(traj.rounds[traj.epochs[3].first_round].fraction *
                                     traj.rounds[traj.epochs[3].first_round].coin)));
  }
}

TEST_CASE("conjugate-power bettor on continuous coins stays above its Gamma potential") {
  for (double z : {0.0, 0.5, 5.0}) {
    const BettorConfig config = BettorConfig::conjugate_power(z);
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
      CoinStream stream;
      stream.kind = CoinKind::uniform;
      stream.rounds = 200;
      stream.seed = substream_seed(606, trial);
      const Trajectory traj = play_coins(config, stream);
      double sum = 0.0;
      for (std::size_t t = 0; t < traj.rounds.size(); ++t) {
        sum += traj.rounds[t].coin;
        const double potential = conj_power_log_potential(z, sum, static_cast<double>(t + 1));
        REQUIRE(traj.rounds[t].log_wealth >= potential - 1e-9);
      }
    }
  }
}
