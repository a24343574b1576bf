#ifndef COINBET_VERIFY_HPP_
#define COINBET_VERIFY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coinbet::verify {

/// One row of a verification report. For equality checks `margin` is the
/// observed discrepancy; for inequality checks it is the signed slack
/// (negative means violated).
struct CheckRow {
  std::string name;
  std::string params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
};

struct Options {
  /// Slack allowed on inequality rows; unset keeps each row's built-in value
  /// (0 for the closed-form inequalities, 1e-9 for simulated wealth).
  std::optional<double> tol;
  std::uint64_t seed = 20250101;
  std::size_t dominance_trials = 1000;
  std::size_t dominance_rounds = 200;
  std::size_t expert_trials = 200;
  std::vector<std::size_t> expert_dims{2, 10, 50};
  std::vector<std::int64_t> expert_horizons{100, 1000, 10000};
  std::int64_t doubling_horizon = 1000;
  /// Restricts the conjugate-power z grid of the priors suite when non-empty.
  std::vector<double> z_values;
  unsigned threads = 0;  // 0: hardware concurrency
};

const std::vector<std::string>& suite_names();

/// Runs a suite by name ("all" runs every suite in order). Throws
/// std::invalid_argument for an unknown name.
std::vector<CheckRow> run_suite(std::string_view name, const Options& options = {});

std::vector<CheckRow> special_functions(const Options& options);
std::vector<CheckRow> priors(const Options& options);
std::vector<CheckRow> potentials(const Options& options);
std::vector<CheckRow> wealth_dominance(const Options& options);
std::vector<CheckRow> floor(const Options& options);
std::vector<CheckRow> experts_bounds(const Options& options);

// Building blocks shared with the acceptance suite.
std::vector<CheckRow> prior_normalizer_rows(const std::vector<double>& z_values);
std::vector<CheckRow> gamma_wealth_rows(int max_t);
std::vector<CheckRow> mixture_equality_rows(int max_t, const std::vector<double>& z_values);
std::vector<CheckRow> closed_form_potential_rows();
std::vector<CheckRow> floor_rows(double tol);
std::vector<CheckRow> erf_ratio_rows(double tol);
std::vector<CheckRow> key_inequality_rows(double tol);
std::vector<CheckRow> prior_approximation_rows(double tol);
std::vector<CheckRow> dominance_rows(const Options& options);
std::vector<CheckRow> experts_matrix_rows(const Options& options);
std::vector<CheckRow> doubling_rows(const Options& options);

bool all_pass(const std::vector<CheckRow>& rows);

}  // namespace coinbet::verify

#endif  // COINBET_VERIFY_HPP_
