#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "coinbet/experts.hpp"
#include "coinbet/generators.hpp"
#include "coinbet/potentials.hpp"

using namespace coinbet;

namespace {

ExpertsConfig default_config(std::size_t d, std::int64_t horizon) {
  return ExpertsConfig::uniform(d, horizon, BettorConfig::default_mixture(horizon, MixtureEvaluation::closed_form));
}

void check_simplex(const Vector& x) {
  double total = 0.0;
  for (double v : x) {
    REQUIRE(v >= 0.0);
    total += v;
  }
  REQUIRE(std::abs(total - 1.0) <= 1e-12);
}

}  // namespace

TEST_CASE("kl examples") {
  const Vector pi{0.25, 0.75};
  CHECK(kl(pi, pi) == 0.0);
  Vector e1(8, 0.0), uniform8(8, 1.0 / 8.0);
  e1[0] = 1.0;
  CHECK(kl(e1, uniform8) == doctest::Approx(std::log(8.0)).epsilon(1e-15));
  const Vector half{0.5, 0.5};
  CHECK(kl(half, pi) == doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0)).epsilon(1e-15));
  CHECK(kl(half, pi) == doctest::Approx(0.143841036225890464).epsilon(1e-14));
  CHECK_THROWS_AS(kl(half, Vector{1.0, 0.0}), std::domain_error);
  CHECK(kl(Vector{1.0, 0.0}, Vector{1.0, 0.0}) == 0.0);
}

TEST_CASE("config validation") {
  ExpertsConfig config = default_config(3, 10);
  CHECK_NOTHROW(config.validate());
  config.prior_pi = {0.5, 0.5, 0.0};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.prior_pi = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.prior_pi = {0.5, 0.5};
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  CHECK_THROWS_AS(default_config(0, 10).validate(), std::invalid_argument);
}

TEST_CASE("first prediction is the prior") {
  ExpertsConfig config = default_config(3, 10);
  config.prior_pi = {0.2, 0.3, 0.5};
  const Prediction p = predict(ExpertsState::initial(config), config);
  CHECK(p.x == config.prior_pi);
  for (bool positive : p.positive_weight) CHECK_FALSE(positive);
}

TEST_CASE("single expert always gets the whole mass") {
  const ExpertsConfig config = default_config(1, 50);
  LossStream stream;
  stream.kind = LossKind::iid_uniform;
  stream.d = 1;
  stream.rounds = 50;
  stream.seed = 3;
  const RegretRecord record = run_game(config, generate_losses(stream));
  for (const ExpertsRound& round : record.rounds) CHECK(round.x == Vector{1.0});
  CHECK(record.final_regret()[0] == 0.0);
}

TEST_CASE("step: first round by hand") {
  const ExpertsConfig config = default_config(2, 10);
  const Vector losses{0.0, 1.0};
  const Prediction p = predict(ExpertsState::initial(config), config);
  CHECK(reduction_coins(p, losses, 0.5) == Vector{0.5, 0.0});
  const auto [state, round] = step(ExpertsState::initial(config), config, losses);
  CHECK(round.x == Vector{0.5, 0.5});
  CHECK(round.algorithm_loss == 0.5);
  CHECK(state.bettors[0].sum_c == 0.5);
  CHECK(state.bettors[1].sum_c == 0.0);
  CHECK(state.bettors[0].log_wealth == 0.0);
  CHECK(state.round == 1);
}

TEST_CASE("step: equal losses give zero coins") {
  const ExpertsConfig config = default_config(4, 10);
  ExpertsState state = ExpertsState::initial(config);
  state = step(state, config, Vector{0.0, 1.0, 0.0, 1.0}).first;
  const auto [next, round] = step(state, config, Vector{0.3, 0.3, 0.3, 0.3});
  CHECK(round.algorithm_loss == doctest::Approx(0.3).epsilon(1e-15));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(next.bettors[i].sum_c - state.bettors[i].sum_c) <= 1e-16);
  }
}

TEST_CASE("step rejects out-of-range losses") {
  const ExpertsConfig config = default_config(2, 10);
  const ExpertsState state = ExpertsState::initial(config);
  CHECK_THROWS_AS(step(state, config, Vector{0.0, 1.1}), std::domain_error);
  CHECK_THROWS_AS(step(state, config, Vector{-0.1, 0.0}), std::domain_error);
  CHECK_THROWS_AS(step(state, config, Vector{0.0}), std::invalid_argument);
}

TEST_CASE("coins stay in [-1, 1] for random iterates and losses") {
  Rng rng(12345);
  for (int trial = 0; trial < 100000; ++trial) {
    const std::size_t d = 2 + rng.next() % 5;
    Prediction p;
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      p.x.push_back(rng.uniform01());
      total += p.x.back();
      p.positive_weight.push_back(rng.bernoulli(0.5));
    }
    Vector g;
    double h = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      p.x[i] /= total;
      g.push_back(rng.uniform01());
      h += g[i] * p.x[i];
    }
    for (double c : reduction_coins(p, g, h)) REQUIRE(std::abs(c) <= 1.0);
  }
}

TEST_CASE("mass concentrates on the expert that never loses") {
  const ExpertsConfig config = default_config(2, 200);
  const std::vector<Vector> losses(200, Vector{0.0, 1.0});
  const RegretRecord record = run_game(config, losses);
  for (std::size_t t = 1; t < record.rounds.size(); ++t) {
    REQUIRE(record.rounds[t].x[0] >= record.rounds[t - 1].x[0]);
  }
  CHECK(record.rounds.back().x[0] > 0.9);
}

TEST_CASE("complementary losses give opposite coins when both weights are positive") {
  const ExpertsConfig config = default_config(2, 300);
  Rng rng(8);
  ExpertsState state = ExpertsState::initial(config);
  int both_positive = 0;
  for (int t = 0; t < 300; ++t) {
    const double ell = rng.uniform01() < 0.3 ? rng.uniform01() : 0.5 + 0.5 * rng.uniform01();
    const Vector g{ell, 1.0 - ell};
    const Prediction p = predict(state, config);
    const double h = g[0] * p.x[0] + g[1] * p.x[1];
    const Vector coins = reduction_coins(p, g, h);
    if (p.positive_weight[0] && p.positive_weight[1]) {
      ++both_positive;
      // Unclipped coins sum to 2h - 1, so they are exact negatives only when
      // h = 1/2; the general identity is the one that holds.
      CHECK(coins[0] + coins[1] == doctest::Approx(2.0 * h - 1.0).epsilon(1e-15));
      if (p.x[0] == p.x[1]) CHECK(coins[0] == doctest::Approx(-coins[1]));
    }
    state = step(state, config, g).first;
  }
  CHECK(both_positive > 0);
}

TEST_CASE("zero losses give zero regret") {
  const ExpertsConfig config = default_config(3, 20);
  const std::vector<Vector> losses(20, Vector(3, 0.0));
  const std::vector<Vector> extra{Vector{0.2, 0.3, 0.5}};
  const RegretRecord record = run_game(config, losses, extra);
  REQUIRE(record.comparators.size() == 4);
  CHECK(record.comparators[0].name == "e1");
  CHECK(record.comparators[3].name == "u1");
  for (double r : record.final_regret()) CHECK(r == 0.0);
  for (const Comparator& c : record.comparators) CHECK(v_t_diagnostic(record, c.u) == 0.0);
}

TEST_CASE("alternating losses, d = 2, T = 1000 stay under the envelope") {
  const ExpertsConfig config = default_config(2, 1000);
  LossStream stream;
  stream.kind = LossKind::alternating;
  stream.d = 2;
  stream.rounds = 1000;
  const RegretRecord record = run_game(config, generate_losses(stream));
  const double envelope = regret_bound_gaussian({1000, std::log(2.0)});
  CHECK(record.envelope_gaussian[0] == doctest::Approx(envelope).epsilon(1e-15));
  CHECK(record.final_regret()[0] <= envelope);
  CHECK(record.final_regret()[1] <= envelope);
}

TEST_CASE("bound holds on a reduced experts matrix") {
  for (std::size_t d : {2u, 10u}) {
    for (LossKind kind : {LossKind::alternating, LossKind::bernoulli, LossKind::single_best_expert}) {
      const int seeds = kind == LossKind::alternating ? 1 : 10;
      for (int s = 0; s < seeds; ++s) {
        LossStream stream;
        stream.kind = kind;
        stream.d = d;
        stream.rounds = 100;
        stream.seed = substream_seed(4242, static_cast<std::uint64_t>(s));
        const RegretRecord record = run_game(default_config(d, 100), generate_losses(stream));
        const Vector regret = record.final_regret();
        for (std::size_t i = 0; i < d; ++i) {
          REQUIRE(regret[i] <= regret_bound_gaussian({100, record.comparators[i].kl}));
        }
        for (std::size_t t = 0; t < record.rounds.size(); ++t) check_simplex(record.rounds[t].x);
      }
    }
  }
}

TEST_CASE("stored regret equals a recomputation, exactly") {
  LossStream stream;
  stream.kind = LossKind::iid_uniform;
  stream.d = 5;
  stream.rounds = 400;
  stream.seed = 11;
  const std::vector<Vector> extra{Vector{0.1, 0.2, 0.3, 0.2, 0.2}};
  const RegretRecord record = run_game(default_config(5, 400), generate_losses(stream), extra);
  const Vector final_regret = record.final_regret();
  for (std::size_t k = 0; k < record.comparators.size(); ++k) {
    CHECK(recompute_regret(record, record.comparators[k].u) == final_regret[k]);
  }
  // Independent order-free check with a loose tolerance.
  for (std::size_t k = 0; k < record.comparators.size(); ++k) {
    double total = 0.0;
    for (const ExpertsRound& round : record.rounds) {
      for (std::size_t i = 0; i < 5; ++i) total += round.losses[i] * (round.x[i] - record.comparators[k].u[i]);
    }
    CHECK(std::abs(total - final_regret[k]) <= 1e-10);
  }
}

TEST_CASE("v_t_diagnostic by hand") {
  RegretRecord record;
  record.horizon = 6;
  for (int t = 0; t < 6; ++t) record.rounds.push_back({Vector{0.0, 1.0}, Vector{1.0, 0.0}, 0.0});
  // h_t = 0; expert 1 term (0 - 0)^2, expert 2 term (0 - 1)^2.
  CHECK(v_t_diagnostic(record, Vector{1.0, 0.0}) == 0.0);
  CHECK(v_t_diagnostic(record, Vector{0.0, 1.0}) == 6.0);
  CHECK(v_t_diagnostic(record, Vector{0.5, 0.5}) == 3.0);
}

TEST_CASE("V_T never exceeds T") {
  LossStream stream;
  stream.kind = LossKind::bernoulli;
  stream.d = 4;
  stream.rounds = 150;
  stream.seed = 21;
  const RegretRecord record = run_game(default_config(4, 150), generate_losses(stream));
  for (const Comparator& c : record.comparators) {
    const double v = v_t_diagnostic(record, c.u);
    CHECK(v >= 0.0);
    CHECK(v <= 150.0);
  }
}

TEST_CASE("doubling experts: epochs, floors and summed envelopes") {
  LossStream stream;
  stream.kind = LossKind::single_best_expert;
  stream.d = 3;
  stream.rounds = 1000;
  stream.seed = 17;
  const Vector pi(3, 1.0 / 3.0);
  const ConfigFactory factory = [](std::int64_t h) {
    return BettorConfig::default_mixture(h, MixtureEvaluation::closed_form);
  };
  const DoublingRecord result = run_game_doubling(pi, factory, generate_losses(stream));
  REQUIRE(result.epochs.size() == 10);
  REQUIRE(result.record.rounds.size() == 1000);
  std::size_t expected_first = 0;
  for (std::size_t k = 0; k < result.epochs.size(); ++k) {
    const DoublingEpoch& epoch = result.epochs[k];
    CHECK(epoch.first_round == expected_first);
    CHECK(epoch.horizon == (std::int64_t{1} << k));
    expected_first += epoch.length;
    for (const BettorState& bettor : epoch.final_bettors) {
      CHECK(bettor.log_wealth >= wealth_floor_log(bettor.sum_c, epoch.horizon));
    }
  }
  const Vector sums = result.envelope_sum();
  const Vector regret = result.record.final_regret();
  for (std::size_t i = 0; i < 3; ++i) {
    double epoch_total = 0.0;
    for (const DoublingEpoch& epoch : result.epochs) epoch_total += epoch.regret[i];
    CHECK(epoch_total == doctest::Approx(regret[i]).epsilon(1e-12));
    CHECK(regret[i] <= sums[i]);
  }
  // The first round of every epoch plays the prior again.
  for (const DoublingEpoch& epoch : result.epochs) CHECK(result.record.rounds[epoch.first_round].x == pi);
}
