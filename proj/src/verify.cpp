#include "coinbet/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "coinbet/betting.hpp"
#include "coinbet/csv.hpp"
#include "coinbet/experts.hpp"
#include "coinbet/generators.hpp"
#include "coinbet/numerics.hpp"
#include "coinbet/parallel.hpp"
#include "coinbet/potentials.hpp"
#include "coinbet/priors.hpp"
#include "coinbet/reference.hpp"

namespace coinbet::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using csv::format_double;

std::string join_params(std::initializer_list<std::pair<const char*, std::string>> items) {
  std::string out;
  for (const auto& [key, value] : items) {
    if (!out.empty()) {
      out += ' ';
    }
    out += key;
    out += '=';
    out += value;
  }
  return out;
}

std::string num(double v) { return format_double(v); }
std::string num(std::int64_t v) { return std::to_string(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }

// Equality within `allowed`; margin is |lhs - rhs|.
CheckRow equal(std::string name, std::string params, double lhs, double rhs, double allowed) {
  const double gap = std::abs(lhs - rhs);
  return {std::move(name), std::move(params), lhs, rhs, gap, gap <= allowed};
}

// Relative equality; margin is |lhs - rhs| / |rhs|.
CheckRow equal_rel(std::string name, std::string params, double lhs, double rhs, double allowed) {
  const double scale = std::abs(rhs) > 0.0 ? std::abs(rhs) : 1.0;
  const double gap = std::abs(lhs - rhs) / scale;
  return {std::move(name), std::move(params), lhs, rhs, gap, gap <= allowed};
}

// lhs >= rhs up to `slack`; margin is lhs - rhs.
CheckRow at_least(std::string name, std::string params, double lhs, double rhs, double slack) {
  const double margin = lhs - rhs;
  return {std::move(name), std::move(params), lhs, rhs, margin, margin >= -slack};
}

// Keeps the grid point with the smallest slack lhs - rhs.
struct WorstSlack {
  double lhs = kInf;
  double rhs = 0.0;
  double margin = kInf;

  void update(double l, double r) {
    const double m = l - r;
    if (m < margin || std::isnan(m)) {
      lhs = l;
      rhs = r;
      margin = std::isnan(m) ? -kInf : m;
    }
  }
  CheckRow row(std::string name, std::string params, double slack) const {
    return {std::move(name), std::move(params), lhs, rhs, margin, margin >= -slack};
  }
};

// Keeps the grid point with the largest |lhs - rhs|.
struct WorstGap {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = -1.0;

  void update(double l, double r) {
    const double g = std::isnan(l - r) ? kInf : std::abs(l - r);
    if (g > gap) {
      lhs = l;
      rhs = r;
      gap = g;
    }
  }
  CheckRow row(std::string name, std::string params, double allowed) const {
    return {std::move(name), std::move(params), lhs, rhs, gap, gap <= allowed};
  }
};

double slack_or(const Options& options, double fallback) { return options.tol.value_or(fallback); }

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return grid;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  std::vector<double> grid = linspace(std::log(lo), std::log(hi), n);
  for (double& v : grid) {
    v = std::exp(v);
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

void append(std::vector<CheckRow>& into, std::vector<CheckRow> rows) {
  into.insert(into.end(), std::make_move_iterator(rows.begin()),
              std::make_move_iterator(rows.end()));
}

// log of the mixture integral of prod_t (1 + b c_t) F(b) over [-1, 1] for a
// conjugate-power prior, by quadrature.
double quadrature_mixture_log_wealth(double z, int heads, int tails) {
  const PriorSpec prior = PriorSpec::conjugate_power(z);
  const auto exponent = [&](double b) {
    return heads * std::log1p(b) + tails * std::log1p(-b) + prior.log_kernel(b);
  };
  return numerics::integrate_log(exponent, -1.0, 1.0).log_value - prior.log_normalizer();
}

std::vector<double> gamma_check_z_values(int t) {
  return {0.0, 0.5, 2.0, (t - 1) / 2.0};
}

}  // namespace

bool all_pass(const std::vector<CheckRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"special_functions", "priors",
                                              "potentials",        "wealth_dominance",
                                              "floor",             "experts_bounds"};
  return names;
}

std::vector<CheckRow> run_suite(std::string_view name, const Options& options) {
  if (name == "special_functions") return special_functions(options);
  if (name == "priors") return priors(options);
  if (name == "potentials") return potentials(options);
  if (name == "wealth_dominance") return wealth_dominance(options);
  if (name == "floor") return floor(options);
  if (name == "experts_bounds") return experts_bounds(options);
  if (name == "all") {
    std::vector<CheckRow> rows;
    for (const std::string& suite : suite_names()) {
      append(rows, run_suite(suite, options));
    }
    return rows;
  }
  throw std::invalid_argument("unknown verification suite: " + std::string(name));
}

// ---------------------------------------------------------------------------
// special functions and quadrature

std::vector<CheckRow> special_functions(const Options&) {
  std::vector<CheckRow> rows;

  WorstGap oddness;
  for (double x : linspace(0.0, 6.0, 10000)) {
    oddness.update(numerics::erf(-x), -numerics::erf(x));
  }
  rows.push_back(oddness.row("erf_oddness", "grid=[0,6] n=10000", 0.0));

  WorstGap reference_gap;
  WorstSlack monotone;
  double previous = -1.0;
  for (double x : linspace(-6.0, 6.0, 2401)) {
    const double value = numerics::erf(x);
    reference_gap.update(value, reference::erf_series(x));
    monotone.update(value, previous);
    previous = value;
  }
  rows.push_back(reference_gap.row("erf_vs_series", "grid=[-6,6] n=2401", 1e-14));
  rows.push_back(monotone.row("erf_monotone", "grid=[-6,6] n=2401", 0.0));
  rows.push_back(equal("erf_value", "x=0.5", numerics::erf(0.5), 0.52049987781304653768, 1e-14));
  rows.push_back(equal("erf_value", "x=-2", numerics::erf(-2.0), -0.99532226501895273416, 1e-14));

  // Relative to max(1, |lgamma(x+1)|): at x = 1e6 the values themselves are
  // ~1.3e7, so an absolute 1e-12 is below one ulp.
  WorstGap recurrence;
  for (double x : logspace(1e-2, 1e6, 4000)) {
    const double lhs = numerics::log_gamma(x + 1.0) - numerics::log_gamma(x);
    const double scale = std::max(1.0, std::abs(numerics::log_gamma(x + 1.0)));
    recurrence.update(lhs / scale, std::log(x) / scale);
  }
  rows.push_back(recurrence.row("log_gamma_recurrence", "grid=log[1e-2,1e6] n=4000 scaled", 1e-12));

  WorstGap factorial;
  for (unsigned n = 1; n <= 170; ++n) {
    const double exact = reference::log_factorial(n - 1);
    const double value = numerics::log_gamma(static_cast<double>(n));
    const double scale = std::max(1.0, std::abs(exact));
    factorial.update(value / scale, exact / scale);
  }
  rows.push_back(factorial.row("log_gamma_factorial", "n=1..170", 1e-13));
  rows.push_back(equal_rel("log_gamma_half", "x=0.5", numerics::log_gamma(0.5),
                           0.5 * std::log(std::numbers::pi), 1e-13));

  for (int order : {1, 2, 3, 4, 5, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096}) {
    const numerics::QuadratureRule& rule = numerics::cached_gauss_legendre(order);
    double total = 0.0;
    bool ordered = true;
    double asymmetry = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      total += rule.weights[i];
      ordered = ordered && rule.weights[i] > 0.0 &&
                (i == 0 || rule.nodes[i] > rule.nodes[i - 1]);
      asymmetry = std::max(asymmetry, std::abs(rule.nodes[i] + rule.nodes[rule.nodes.size() - 1 - i]));
    }
    rows.push_back(equal("quadrature_weight_sum", "order=" + num(order), total, 2.0, 1e-12));
    rows.push_back({"quadrature_nodes_ordered_symmetric", "order=" + num(order), asymmetry, 0.0,
                    asymmetry, ordered && asymmetry == 0.0});
  }

  for (int order : {1, 2, 3, 4, 5, 8, 16, 32, 64, 128}) {
    const numerics::QuadratureRule& rule = numerics::cached_gauss_legendre(order);
    WorstGap exactness;
    for (int k = 0; k <= 2 * order - 1; ++k) {
      double sum = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      }
      const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
      const double scale = exact == 0.0 ? 1.0 : exact;
      exactness.update(sum / scale, exact / scale);
    }
    rows.push_back(exactness.row("quadrature_monomial_exactness",
                                 "order=" + num(order) + " degree<=" + num(2 * order - 1), 1e-12));
  }

  rows.push_back(equal("integrate_log_unit", "h=0 [-1/2,1/2]",
                       numerics::integrate_log([](double) { return 0.0; }, -0.5, 0.5).log_value,
                       0.0, 1e-12));
  rows.push_back(equal("integrate_log_polynomial", "h=ln(1-b^2) [-1,1]",
                       numerics::integrate_log([](double b) { return std::log1p(-b * b); }, -1.0,
                                               1.0)
                           .log_value,
                       std::log(4.0 / 3.0), 1e-10));
  for (double c : {-1e4, -1e3, -100.0, -10.0, -1.0, -0.1, 0.0}) {
    for (double a : {-100.0, -50.0, -10.0, -1.0, 0.0, 1.0, 10.0, 50.0, 100.0}) {
      const double value =
          numerics::integrate_log([&](double b) { return a * b + c * b * b; }, -0.5, 0.5)
              .log_value;
      const double exact = reference::log_quadratic_exponential_integral(a, c, -0.5, 0.5);
      // Relative agreement of the integrals themselves.
      const double rel = std::abs(std::expm1(value - exact));
      rows.push_back({"integrate_log_gaussian_closed_form",
                      join_params({{"a", num(a)}, {"b", num(c)}}), value, exact, rel,
                      rel <= 1e-10});
    }
  }

  WorstGap moments;
  for (double a : {1.0, 10.0, -3.0}) {
    const auto h = [&](double b) { return a * b; };
    const double ratio = numerics::signed_moment_ratio(h, -0.5, 0.5);
    // (x - 1/a) e^{a x} / a is an antiderivative of x e^{a x}.
    const double num_exact = ((0.5 - 1.0 / a) * std::exp(0.5 * a) - (-0.5 - 1.0 / a) * std::exp(-0.5 * a)) / a;
    const double den_exact = (std::exp(0.5 * a) - std::exp(-0.5 * a)) / a;
    moments.update(ratio, num_exact / den_exact);
  }
  rows.push_back(moments.row("signed_moment_ratio_exponential", "h=a*b a in {1,10,-3}", 1e-10));
  return rows;
}

// ---------------------------------------------------------------------------
// priors

std::vector<CheckRow> prior_normalizer_rows(const std::vector<double>& z_values) {
  std::vector<CheckRow> rows;
  for (double z : z_values) {
    const double closed = conj_power_log_normalizer(z);
    const double quad =
        numerics::integrate_log(
            [&](double b) { return z == 0.0 ? 0.0 : z * (std::log1p(b) + std::log1p(-b)); }, -1.0,
            1.0)
            .log_value;
    // Relative agreement of the normalizers (not of their logs).
    const double rel = std::abs(std::expm1(closed - quad));
    rows.push_back({"conj_power_normalizer", "z=" + num(z), closed, quad, rel, rel <= 1e-10});
  }
  return rows;
}

std::vector<CheckRow> prior_approximation_rows(double tol) {
  std::vector<CheckRow> rows;
  for (double z : {0.5, 1.0, 5.0, 50.0}) {
    WorstSlack worst;
    for (double b : linspace(-0.5, 0.5, 10000)) {
      worst.update(z * std::log1p(b) + z * std::log1p(-b), -2.0 * z * b * b);
    }
    rows.push_back(worst.row("prior_gaussian_lower_bound", "z=" + num(z) + " grid=[-1/2,1/2] n=10000", tol));
  }
  return rows;
}

std::vector<CheckRow> priors(const Options& options) {
  std::vector<CheckRow> rows;
  const std::vector<double> z_values =
      options.z_values.empty() ? std::vector<double>{0.0, 0.5, 1.0, 5.0, 50.0, 500.0}
                               : options.z_values;
  for (double z : z_values) {
    const PriorSpec prior = PriorSpec::conjugate_power(z);
    const double mass =
        numerics::integrate_log([&](double b) { return log_density(prior, b); }, -1.0, 1.0)
            .log_value;
    rows.push_back(equal("prior_normalization", prior.describe(), std::exp(mass), 1.0, 1e-9));
  }
  if (options.z_values.empty()) {
    for (double s2 : {1.0 / 2.0, 1.0 / 20.0, 1.0 / 2000.0}) {
      const PriorSpec prior = PriorSpec::truncated_gaussian(s2);
      const double mass =
          numerics::integrate_log([&](double b) { return log_density(prior, b); }, -0.5, 0.5)
              .log_value;
      rows.push_back(equal("prior_normalization", prior.describe(), std::exp(mass), 1.0, 1e-9));
    }
  }
  std::vector<double> normalizer_z = z_values;
  if (options.z_values.empty()) {
    normalizer_z.push_back(9.5);
  }
  append(rows, prior_normalizer_rows(normalizer_z));

  for (double z : z_values) {
    const PriorSpec prior = PriorSpec::conjugate_power(z);
    WorstGap symmetry;
    for (double b : linspace(0.0, 0.999, 1000)) {
      symmetry.update(log_density(prior, b), log_density(prior, -b));
    }
    rows.push_back(symmetry.row("prior_even", prior.describe(), 0.0));
  }
  if (options.z_values.empty()) {
    append(rows, prior_approximation_rows(slack_or(options, 0.0)));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// potentials

std::vector<CheckRow> closed_form_potential_rows() {
  std::vector<CheckRow> rows;
  for (std::int64_t t : {1, 2, 10, 100, 1000, 10000}) {
    const double td = static_cast<double>(t);
    const PriorSpec prior = PriorSpec::truncated_gaussian(1.0 / (2.0 * td));
    WorstGap worst;
    for (double x : linspace(-td, td, 21)) {
      worst.update(trunc_gauss_log_potential_closed(x, td, prior.sigma_sq()),
                   squint_log_potential(x, td, prior));
    }
    rows.push_back(worst.row("trunc_gauss_closed_vs_quadrature",
                             "T=" + num(t) + " sigma2=1/(2T) x-grid=21", 1e-8));
  }
  return rows;
}

std::vector<CheckRow> gamma_wealth_rows(int max_t) {
  std::vector<CheckRow> rows;
  for (int t = 1; t <= max_t; ++t) {
    for (double z : gamma_check_z_values(t)) {
      // The integrand depends on the sequence only through its head count,
      // so one quadrature per count covers all 2^T sequences.
      std::vector<double> quad(t + 1);
      for (int heads = 0; heads <= t; ++heads) {
        quad[heads] = quadrature_mixture_log_wealth(z, heads, t - heads);
      }
      WorstGap worst;
      const std::uint64_t count = std::uint64_t{1} << t;
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        const int heads = std::popcount(mask);
        worst.update(conj_power_log_wealth(z, heads, t - heads), quad[heads]);
      }
      rows.push_back(worst.row("gamma_wealth_vs_quadrature",
                               join_params({{"T", num(t)}, {"z", num(z)}, {"sequences", num(count)}}),
                               1e-9));
    }
  }
  return rows;
}

std::vector<CheckRow> key_inequality_rows(double tol) {
  WorstSlack worst;
  double worst_ulps = -kInf;
  const std::vector<double> grid = linspace(-1.0, 1.0, 1000);
  std::size_t points = 0;
  for (double b : grid) {
    for (double c : grid) {
      const double y = b * c;
      if (std::abs(y) > 0.5) {
        continue;
      }
      ++points;
      const double lhs = 1.0 + y;
      const double rhs = std::exp(y - y * y);
      const double ulp = std::nextafter(rhs, kInf) - rhs;
      // Slack measured in ulps of the right-hand side.
      const double ulps = (lhs - rhs) / ulp;
      if (ulps < worst_ulps || worst_ulps == -kInf) {
        worst_ulps = ulps;
      }
      worst.update(lhs, rhs);
    }
  }
  const std::string params = "grid=1000x1000 |bc|<=1/2 points=" + num(points);
  const double allowed = std::max(1.0, tol);
  return {{"key_inequality_ulps", params, worst.lhs, worst.rhs, worst_ulps, worst_ulps >= -allowed}};
}

std::vector<CheckRow> potentials(const Options& options) {
  std::vector<CheckRow> rows;
  append(rows, closed_form_potential_rows());

  const PriorSpec narrow = PriorSpec::truncated_gaussian(1.0 / 40.0);
  rows.push_back(equal("squint_vs_closed", "x=10 v=20 sigma2=1/40",
                       squint_log_potential(10.0, 20.0, narrow),
                       trunc_gauss_log_potential_closed(10.0, 20.0, 1.0 / 40.0), 1e-10));
  const PriorSpec wide = PriorSpec::truncated_gaussian(1.0 / 20.0);
  rows.push_back(equal("squint_vs_closed", "x=5 v=10 sigma2=1/20",
                       squint_log_potential(5.0, 10.0, wide),
                       trunc_gauss_log_potential_closed(5.0, 10.0, 1.0 / 20.0), 1e-10));
  WorstGap symmetry;
  for (double x : linspace(0.0, 50.0, 26)) {
    symmetry.update(squint_log_potential(x, 50.0, PriorSpec::truncated_gaussian(0.01)),
                    squint_log_potential(-x, 50.0, PriorSpec::truncated_gaussian(0.01)));
  }
  rows.push_back(symmetry.row("squint_even_in_x", "v=50 sigma2=0.01", 1e-12));
  rows.push_back(equal("conj_power_wealth_value", "z=0 a=2 b=0", conj_power_log_wealth(0.0, 2, 0),
                       std::log(4.0 / 3.0), 1e-13));
  rows.push_back(equal("conj_power_wealth_value", "z=0 a=1 b=1", conj_power_log_wealth(0.0, 1, 1),
                       std::log(2.0 / 3.0), 1e-13));
  append(rows, gamma_wealth_rows(12));
  append(rows, key_inequality_rows(slack_or(options, 1.0)));
  return rows;
}

// ---------------------------------------------------------------------------
// floor

std::vector<CheckRow> floor_rows(double tol) {
  std::vector<CheckRow> rows;
  std::vector<std::int64_t> horizons;
  for (std::int64_t t = 1; t <= 50; ++t) horizons.push_back(t);
  for (std::int64_t t : {100, 1000, 10000, 1000000}) horizons.push_back(t);
  for (std::int64_t t : horizons) {
    const double td = static_cast<double>(t);
    WorstSlack worst;
    for (double s : linspace(-td, td, 101)) {
      worst.update(default_potential_log(s, t), wealth_floor_log(s, t));
    }
    rows.push_back(worst.row("wealth_floor", "T=" + num(t) + " s-grid=101", tol));
  }
  return rows;
}

std::vector<CheckRow> erf_ratio_rows(double tol) {
  WorstSlack worst;
  const std::size_t n = 100000;
  for (double t : logspace(1.0, 1e6, n)) {
    const double root = std::sqrt(t);
    const double ratio = numerics::erf(root / (2.0 * std::numbers::sqrt2)) /
                         (std::numbers::sqrt2 * numerics::erf(root / 2.0));
    worst.update(ratio, 0.5);
  }
  CheckRow row = worst.row("erf_ratio_above_half", "T-grid=log[1,1e6] n=" + num(n), tol);
  if (tol == 0.0) {
    row.pass = row.margin > 0.0;
  }
  return {row};
}

std::vector<CheckRow> floor(const Options& options) {
  std::vector<CheckRow> rows = floor_rows(slack_or(options, 0.0));
  append(rows, erf_ratio_rows(slack_or(options, 0.0)));
  return rows;
}

// ---------------------------------------------------------------------------
// simulated wealth

std::vector<CheckRow> mixture_equality_rows(int max_t, const std::vector<double>& z_values) {
  std::vector<CheckRow> rows;
  for (double z : z_values) {
    const BettorConfig config = BettorConfig::conjugate_power(z);
    WorstGap worst;
    std::uint64_t sequences = 0;
    for (int t = 0; t <= max_t; ++t) {
      const std::uint64_t count = std::uint64_t{1} << t;
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        const std::vector<double> coins = binary_sequence(static_cast<std::size_t>(t), mask);
        const Trajectory trajectory = run(config, coins);
        const int heads = std::popcount(mask);
        worst.update(trajectory.final_log_wealth(), conj_power_log_wealth(z, heads, t - heads));
        ++sequences;
      }
    }
    rows.push_back(worst.row("mixture_equality",
                             join_params({{"z", num(z)}, {"T", "0.." + num(max_t)},
                                          {"sequences", num(sequences)}}),
                             1e-12));
  }
  return rows;
}

std::vector<CheckRow> dominance_rows(const Options& options) {
  const double slack = slack_or(options, 1e-9);
  const std::size_t rounds = options.dominance_rounds;
  const std::int64_t horizon = static_cast<std::int64_t>(std::max<std::size_t>(rounds, 1));
  std::vector<CheckRow> rows;
  for (ExponentMode mode : {ExponentMode::round_count, ExponentMode::variance}) {
    const BettorConfig config = BettorConfig::mixture(
        PriorSpec::truncated_gaussian(1.0 / (2.0 * static_cast<double>(horizon))), mode);
    const auto worst_per_trial = parallel_map(options.dominance_trials, options.threads, [&](std::size_t trial) {
      CoinStream stream;
      stream.kind = CoinKind::uniform;
      stream.rounds = rounds;
      stream.seed = substream_seed(options.seed, trial);
      const Trajectory trajectory = play_coins(config, stream);
      WorstSlack worst;
      for (const TrajectoryRound& r : trajectory.rounds) {
        worst.update(r.log_wealth, r.log_potential);
      }
      return worst;
    });
    WorstSlack worst;
    for (const WorstSlack& w : worst_per_trial) {
      if (w.margin < worst.margin) worst = w;
    }
    const std::string mode_name = mode == ExponentMode::round_count ? "round_count" : "variance";
    rows.push_back(worst.row("mixture_wealth_dominance",
                             join_params({{"mode", mode_name}, {"prior", "trunc_gauss sigma2=1/(2T)"},
                                          {"T", num(rounds)}, {"trials", num(options.dominance_trials)},
                                          {"seed", num(static_cast<std::size_t>(options.seed))}}),
                             slack));
  }
  return rows;
}

std::vector<CheckRow> wealth_dominance(const Options& options) {
  std::vector<CheckRow> rows = mixture_equality_rows(12, {0.0, 0.5, 2.0, 7.5});
  append(rows, dominance_rows(options));
  const double slack = slack_or(options, 1e-9);

  // Conjugate-power bettor on continuous coins: dominance of the Gamma-form
  // potential, checked empirically.
  for (double z : {0.0, 99.5}) {
    const BettorConfig config = BettorConfig::conjugate_power(z);
    WorstSlack worst;
    for (std::size_t trial = 0; trial < 200; ++trial) {
      CoinStream stream;
      stream.kind = CoinKind::uniform;
      stream.rounds = 200;
      stream.seed = substream_seed(options.seed + 1, trial);
      for (const TrajectoryRound& r : play_coins(config, stream).rounds) {
        worst.update(r.log_wealth, r.log_potential);
      }
    }
    rows.push_back(worst.row("conj_power_continuous_dominance",
                             "z=" + num(z) + " T=200 trials=200 coins=uniform", slack));
  }

  // Shifted-KT conservatism: z = (T-1)/2 never loses more than a fixed
  // fraction. Exhaustive minimum over binary sequences for T <= 12, then
  // 10^4 mixed adversarial trials at T = 200.
  double exhaustive_min = kInf;
  for (int t = 1; t <= 12; ++t) {
    for (int heads = 0; heads <= t; ++heads) {
      exhaustive_min =
          std::min(exhaustive_min, std::exp(conj_power_log_wealth((t - 1) / 2.0, heads, t - heads)));
    }
  }
  rows.push_back(at_least("shifted_kt_exhaustive_min_wealth", "z=(T-1)/2 T=1..12", exhaustive_min,
                          0.2, 0.0));
  {
    const std::size_t rounds = 200;
    const BettorConfig config = BettorConfig::conjugate_power((rounds - 1) / 2.0);
    const CoinKind kinds[] = {CoinKind::adversarial_sign_flip, CoinKind::rademacher,
                              CoinKind::biased, CoinKind::uniform, CoinKind::alternating};
    const std::size_t trials = 10000;
    const auto finals = parallel_map(trials, options.threads, [&](std::size_t trial) {
      CoinStream stream;
      stream.kind = kinds[trial % 5];
      stream.rounds = rounds;
      stream.seed = substream_seed(options.seed + 2, trial);
      stream.p = 0.05 + 0.9 * static_cast<double>((trial / 5) % 10) / 9.0;
      return std::exp(play_coins(config, stream).final_log_wealth());
    });
    const double worst = *std::min_element(finals.begin(), finals.end());
    rows.push_back(at_least("shifted_kt_min_final_wealth", "z=(T-1)/2 T=200 trials=10000", worst,
                            0.2, 0.0));
  }

  // Doubling wrapper on Rademacher coins: every epoch ends above the floor of
  // its nominal length.
  {
    const ConfigFactory factory = [](std::int64_t h) { return BettorConfig::default_mixture(h); };
    WorstSlack worst;
    for (std::size_t trial = 0; trial < 5; ++trial) {
      CoinStream stream;
      stream.kind = CoinKind::rademacher;
      stream.rounds = 1000;
      stream.seed = substream_seed(options.seed + 3, trial);
      const std::vector<double> coins = generate_coins(stream);
      const Trajectory trajectory = doubling_wrap(factory, coins);
      for (const EpochSummary& epoch : trajectory.epochs) {
        worst.update(epoch.log_wealth, wealth_floor_log(epoch.sum_c, epoch.horizon));
      }
    }
    rows.push_back(worst.row("doubling_epoch_floor", "coins=rademacher rounds=1000 trials=5", 0.0));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// experts

namespace {

struct GameOutcome {
  double worst_bound_slack = kInf;   // min over vertices of envelope - regret
  double worst_regret = 0.0;
  double worst_envelope = 0.0;
  double worst_floor_slack = kInf;   // min over experts of log-wealth - floor
  double floor_lhs = 0.0;
  double floor_rhs = 0.0;
};

void note_bound(GameOutcome& out, double regret, double envelope) {
  if (envelope - regret < out.worst_bound_slack) {
    out.worst_bound_slack = envelope - regret;
    out.worst_regret = regret;
    out.worst_envelope = envelope;
  }
}

void note_floor(GameOutcome& out, const BettorState& bettor, std::int64_t horizon) {
  const double floor = wealth_floor_log(bettor.sum_c, horizon);
  if (bettor.log_wealth - floor < out.worst_floor_slack) {
    out.worst_floor_slack = bettor.log_wealth - floor;
    out.floor_lhs = bettor.log_wealth;
    out.floor_rhs = floor;
  }
}

GameOutcome merge(const std::vector<GameOutcome>& outcomes) {
  GameOutcome total;
  for (const GameOutcome& o : outcomes) {
    if (o.worst_bound_slack < total.worst_bound_slack) {
      total.worst_bound_slack = o.worst_bound_slack;
      total.worst_regret = o.worst_regret;
      total.worst_envelope = o.worst_envelope;
    }
    if (o.worst_floor_slack < total.worst_floor_slack) {
      total.worst_floor_slack = o.worst_floor_slack;
      total.floor_lhs = o.floor_lhs;
      total.floor_rhs = o.floor_rhs;
    }
  }
  return total;
}

LossStream loss_stream(LossKind kind, std::size_t d, std::size_t rounds, std::uint64_t seed) {
  LossStream stream;
  stream.kind = kind;
  stream.d = d;
  stream.rounds = rounds;
  stream.seed = seed;
  stream.p = 0.5;
  stream.gap = 0.1;
  return stream;
}

const LossKind kMatrixFamilies[] = {LossKind::alternating, LossKind::bernoulli,
                                    LossKind::single_best_expert};

std::size_t trials_for(LossKind kind, const Options& options) {
  return kind == LossKind::alternating ? 1 : options.expert_trials;
}

}  // namespace

std::vector<CheckRow> experts_matrix_rows(const Options& options) {
  std::vector<CheckRow> rows;
  for (std::size_t d : options.expert_dims) {
    for (std::int64_t horizon : options.expert_horizons) {
      for (LossKind kind : kMatrixFamilies) {
        const ExpertsConfig config = ExpertsConfig::uniform(
            d, horizon, BettorConfig::default_mixture(horizon, MixtureEvaluation::closed_form));
        const std::size_t trials = trials_for(kind, options);
        const auto outcomes = parallel_map(trials, options.threads, [&](std::size_t trial) {
          const auto losses = generate_losses(loss_stream(
              kind, d, static_cast<std::size_t>(horizon), substream_seed(options.seed, trial)));
          const RegretRecord record = run_game(config, losses);
          GameOutcome out;
          const Vector regret = record.final_regret();
          for (std::size_t k = 0; k < regret.size(); ++k) {
            note_bound(out, regret[k], record.envelope_gaussian[k]);
          }
          for (const BettorState& bettor : record.final_bettors) {
            note_floor(out, bettor, horizon);
          }
          return out;
        });
        const GameOutcome total = merge(outcomes);
        const std::string params = join_params({{"d", num(d)}, {"T", num(horizon)},
                                                {"stream", to_string(kind)}, {"seeds", num(trials)}});
        rows.push_back({"experts_regret_bound", params, total.worst_regret, total.worst_envelope,
                        total.worst_bound_slack, total.worst_bound_slack >= 0.0});
        rows.push_back({"experts_wealth_floor", params, total.floor_lhs, total.floor_rhs,
                        total.worst_floor_slack, total.worst_floor_slack >= 0.0});
      }
    }
  }
  return rows;
}

std::vector<CheckRow> doubling_rows(const Options& options) {
  std::vector<CheckRow> rows;
  const std::int64_t horizon = options.doubling_horizon;
  const ConfigFactory factory = [](std::int64_t h) {
    return BettorConfig::default_mixture(h, MixtureEvaluation::closed_form);
  };
  for (std::size_t d : options.expert_dims) {
    for (LossKind kind : kMatrixFamilies) {
      const std::size_t trials = trials_for(kind, options);
      const Vector pi(d, 1.0 / static_cast<double>(d));
      const auto outcomes = parallel_map(trials, options.threads, [&](std::size_t trial) {
        const auto losses = generate_losses(loss_stream(
            kind, d, static_cast<std::size_t>(horizon), substream_seed(options.seed, trial)));
        const DoublingRecord result = run_game_doubling(pi, factory, losses);
        GameOutcome out;
        const Vector regret = result.record.final_regret();
        const Vector envelope = result.envelope_sum();
        for (std::size_t k = 0; k < regret.size(); ++k) {
          note_bound(out, regret[k], envelope[k]);
        }
        for (const DoublingEpoch& epoch : result.epochs) {
          for (const BettorState& bettor : epoch.final_bettors) {
            note_floor(out, bettor, epoch.horizon);
          }
        }
        return out;
      });
      const GameOutcome total = merge(outcomes);
      const std::string params = join_params({{"d", num(d)}, {"T", num(horizon)},
                                              {"stream", to_string(kind)}, {"seeds", num(trials)}});
      rows.push_back({"doubling_regret_bound", params, total.worst_regret, total.worst_envelope,
                      total.worst_bound_slack, total.worst_bound_slack >= 0.0});
      rows.push_back({"doubling_epoch_wealth_floor", params, total.floor_lhs, total.floor_rhs,
                      total.worst_floor_slack, total.worst_floor_slack >= 0.0});
    }
  }
  return rows;
}

std::vector<CheckRow> experts_bounds(const Options& options) {
  std::vector<CheckRow> rows;

  // Coins produced by the reduction stay in [-1, 1].
  {
    Rng rng(substream_seed(options.seed, 999));
    WorstSlack worst;
    for (int trial = 0; trial < 100000; ++trial) {
      const std::size_t d = 2 + rng.next() % 9;
      Prediction prediction;
      prediction.x.resize(d);
      prediction.positive_weight.resize(d);
      double total = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        prediction.x[i] = rng.uniform01();
        total += prediction.x[i];
        prediction.positive_weight[i] = rng.bernoulli(0.5);
      }
      Vector g(d);
      double h = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        prediction.x[i] /= total;
        g[i] = rng.uniform01();
        h += g[i] * prediction.x[i];
      }
      for (double c : reduction_coins(prediction, g, h)) {
        worst.update(1.0 - std::abs(c), 0.0);
      }
    }
    rows.push_back(worst.row("reduction_coin_range", "pairs=100000", 0.0));
  }

  // Quadrature and closed-form mixture bettors drive the same game.
  {
    WorstGap iterate_gap;
    for (std::size_t d : {2, 10}) {
      const std::int64_t horizon = 100;
      for (std::uint64_t trial = 0; trial < 3; ++trial) {
        const auto losses = generate_losses(
            loss_stream(LossKind::bernoulli, d, horizon, substream_seed(options.seed, trial)));
        const RegretRecord quad = run_game(
            ExpertsConfig::uniform(d, horizon, BettorConfig::default_mixture(horizon)), losses);
        const RegretRecord closed = run_game(
            ExpertsConfig::uniform(
                d, horizon, BettorConfig::default_mixture(horizon, MixtureEvaluation::closed_form)),
            losses);
        for (std::size_t t = 0; t < quad.rounds.size(); ++t) {
          for (std::size_t i = 0; i < d; ++i) {
            iterate_gap.update(quad.rounds[t].x[i], closed.rounds[t].x[i]);
          }
        }
      }
    }
    rows.push_back(iterate_gap.row("experts_quadrature_vs_closed_form_iterates",
                                   "d in {2,10} T=100 stream=bernoulli seeds=3", 1e-8));
  }

  append(rows, experts_matrix_rows(options));
  append(rows, doubling_rows(options));
  return rows;
}

}  // namespace coinbet::verify
