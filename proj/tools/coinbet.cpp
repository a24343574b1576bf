// Command-line front end: verification suites, bettor and experts
// simulations, and bound tables, all emitted as CSV.

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "coinbet/harness.hpp"

namespace {

template <typename Request, typename Command>
int write_output(const Request& request, Command command) {
  if (request.out.empty()) {
    return command(request, std::cout);
  }
  std::ofstream file(request.out, std::ios::binary);
  if (!file) {
    std::cerr << "coinbet: cannot open " << request.out << " for writing\n";
    return 2;
  }
  return command(request, file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coin-betting potentials, bettors, and experts regret verification"};
  app.set_version_flag("--version", std::string(coinbet::kVersion));
  app.require_subcommand(1);

  coinbet::VerifyRequest verify;
  std::vector<double> verify_z;
  std::optional<double> verify_tol;
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite and report one CSV row per check");
  verify_cmd->add_option("suite", verify.suite, "special_functions | priors | potentials | wealth_dominance | floor | experts_bounds | all")
      ->required();
  verify_cmd->add_option("--tol", verify_tol, "Slack allowed on inequality checks");
  verify_cmd->add_option("--seed", verify.options.seed, "Run seed");
  verify_cmd->add_option("--trials", verify.options.dominance_trials, "Continuous-coin dominance trials");
  verify_cmd->add_option("--expert-trials", verify.options.expert_trials, "Seeds per stochastic loss stream");
  verify_cmd->add_option("--d", verify.options.expert_dims, "Expert counts in the experts matrix");
  verify_cmd->add_option("--T", verify.options.expert_horizons, "Horizons in the experts matrix");
  verify_cmd->add_option("--z", verify_z, "Restrict the priors suite to these z values");
  verify_cmd->add_option("--threads", verify.options.threads, "Worker threads (0: all cores)");
  verify_cmd->add_option("--out", verify.out, "Output CSV path (default stdout)");

  coinbet::SimulateRequest sim;
  auto* sim_cmd = app.add_subcommand("simulate-bettor", "Play one bettor against a coin stream");
  sim_cmd->add_option("--family", sim.family, "conj-power | mixture")->check(CLI::IsMember({"conj-power", "mixture"}));
  sim_cmd->add_option("--prior", sim.prior, "trunc-gauss | conj-power")->check(CLI::IsMember({"trunc-gauss", "conj-power"}));
  sim_cmd->add_option("--z", sim.z, "Conjugate-power exponent");
  sim_cmd->add_option("--sigma2", sim.sigma2, "Truncated-Gaussian variance (default 1/(2T))");
  sim_cmd->add_option("--exponent-mode", sim.exponent_mode, "round-count | variance")->check(CLI::IsMember({"round-count", "variance"}));
  sim_cmd->add_option("--evaluation", sim.evaluation, "quadrature | closed-form")->check(CLI::IsMember({"quadrature", "closed-form"}));
  sim_cmd->add_option("--T", sim.T, "Rounds");
  sim_cmd->add_option("--gen", sim.gen, "binary | rademacher | biased | alternating | adversarial | uniform");
  sim_cmd->add_option("--coins", sim.coins, "Coin pattern for --gen binary, e.g. ++-");
  sim_cmd->add_option("--p", sim.p, "P(+1) for --gen biased");
  sim_cmd->add_option("--seed", sim.seed, "Run seed");
  sim_cmd->add_flag("--doubling", sim.doubling, "Restart on epochs of length 1, 2, 4, ...");
  sim_cmd->add_option("--out", sim.out, "Output CSV path (default stdout)");

  coinbet::ExpertsRequest experts;
  auto* experts_cmd = app.add_subcommand("experts", "Play the experts reduction against a loss stream");
  experts_cmd->add_option("--d", experts.d, "Number of experts");
  experts_cmd->add_option("--T", experts.T, "Horizon");
  experts_cmd->add_option("--pi", experts.pi, "uniform | comma-separated prior");
  experts_cmd->add_option("--family", experts.family, "mixture | conj-power")->check(CLI::IsMember({"mixture", "conj-power"}));
  experts_cmd->add_option("--z", experts.z, "Conjugate-power exponent (default (T-1)/2)");
  experts_cmd->add_option("--evaluation", experts.evaluation, "quadrature | closed-form")->check(CLI::IsMember({"quadrature", "closed-form"}));
  experts_cmd->add_option("--gen", experts.gen, "alternating | bernoulli | single-best | uniform");
  experts_cmd->add_option("--p", experts.p, "Loss probability for bernoulli / single-best");
  experts_cmd->add_option("--gap", experts.gap, "Advantage of the best expert for single-best");
  experts_cmd->add_option("--seed", experts.seed, "Run seed");
  experts_cmd->add_option("--u", experts.comparators, "Extra comparator, comma-separated (repeatable)");
  experts_cmd->add_flag("--doubling", experts.doubling, "Unknown horizon: restart on doubling epochs");
  experts_cmd->add_option("--out", experts.out, "Output CSV path (default stdout)");

  coinbet::BoundTableRequest table;
  auto* table_cmd = app.add_subcommand("bound-table", "Tabulate the regret envelopes");
  table_cmd->add_option("--T", table.T, "Horizons")->delimiter(',');
  table_cmd->add_option("--kl", table.kl, "KL values (nats)")->delimiter(',');
  table_cmd->add_option("--out", table.out, "Output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify_cmd) {
      verify.options.z_values = verify_z;
      verify.options.tol = verify_tol;
      return write_output(verify, coinbet::cmd_verify);
    }
    if (*sim_cmd) {
      return write_output(sim, coinbet::cmd_simulate_bettor);
    }
    if (*experts_cmd) {
      return write_output(experts, coinbet::cmd_experts);
    }
    if (*table_cmd) {
      return write_output(table, coinbet::cmd_bound_table);
    }
  } catch (const std::exception& error) {
    std::cerr << "coinbet: " << error.what() << '\n';
    return 2;
  }
  return 0;
}
