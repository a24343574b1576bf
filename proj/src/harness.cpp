#include "coinbet/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coinbet/betting.hpp"
#include "coinbet/csv.hpp"
#include "coinbet/experts.hpp"
#include "coinbet/generators.hpp"
#include "coinbet/potentials.hpp"

namespace coinbet {

namespace {

using csv::format_double;

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string opt(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string("default");
}

double sigma2_for(const SimulateRequest& request, std::int64_t horizon) {
  return request.sigma2.value_or(1.0 / (2.0 * static_cast<double>(std::max<std::int64_t>(horizon, 1))));
}

BettorConfig bettor_from(const SimulateRequest& request, std::int64_t horizon) {
  if (request.family == "conj-power") {
    return BettorConfig::conjugate_power(request.z);
  }
  if (request.family != "mixture") {
    throw std::invalid_argument("--family must be conj-power or mixture");
  }
  ExponentMode mode;
  if (request.exponent_mode == "round-count") {
    mode = ExponentMode::round_count;
  } else if (request.exponent_mode == "variance") {
    mode = ExponentMode::variance;
  } else {
    throw std::invalid_argument("--exponent-mode must be round-count or variance");
  }
  MixtureEvaluation evaluation;
  if (request.evaluation == "quadrature") {
    evaluation = MixtureEvaluation::quadrature;
  } else if (request.evaluation == "closed-form") {
    evaluation = MixtureEvaluation::closed_form;
  } else {
    throw std::invalid_argument("--evaluation must be quadrature or closed-form");
  }
  if (request.prior == "trunc-gauss") {
    return BettorConfig::mixture(PriorSpec::truncated_gaussian(sigma2_for(request, horizon)), mode,
                                 evaluation);
  }
  if (request.prior == "conj-power") {
    return BettorConfig::mixture(PriorSpec::conjugate_power(request.z), mode, evaluation);
  }
  throw std::invalid_argument("--prior must be trunc-gauss or conj-power");
}

BettorConfig expert_bettor(const ExpertsRequest& request, std::int64_t horizon) {
  if (request.family == "conj-power") {
    return BettorConfig::conjugate_power(request.z.value_or((static_cast<double>(horizon) - 1.0) / 2.0));
  }
  if (request.family != "mixture") {
    throw std::invalid_argument("--family must be mixture or conj-power");
  }
  if (request.evaluation == "quadrature") {
    return BettorConfig::default_mixture(horizon, MixtureEvaluation::quadrature);
  }
  if (request.evaluation == "closed-form") {
    return BettorConfig::default_mixture(horizon, MixtureEvaluation::closed_form);
  }
  throw std::invalid_argument("--evaluation must be quadrature or closed-form");
}

}  // namespace

std::string RunManifest::header() const {
  std::string line = std::string("coinbet ") + kVersion + " " + command;
  for (const auto& [key, value] : params) {
    line += " " + key + "=" + value;
  }
  return line;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("expected a comma-separated list of numbers: " + text);
    }
    if (used != item.size()) {
      throw std::invalid_argument("expected a comma-separated list of numbers: " + text);
    }
    values.push_back(v);
  }
  return values;
}

std::vector<double> parse_simplex(const std::string& text, std::size_t d) {
  if (text == "uniform") {
    return std::vector<double>(d, 1.0 / static_cast<double>(d));
  }
  std::vector<double> values = parse_real_list(text);
  if (values.size() != d) {
    throw std::invalid_argument("simplex point has " + std::to_string(values.size()) +
                                " entries, expected " + std::to_string(d));
  }
  double total = 0.0;
  for (double v : values) {
    if (!(v >= 0.0)) throw std::invalid_argument("simplex entries must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("simplex entries must sum to 1");
  }
  // Exact renormalization so downstream 1e-12 checks hold for decimal input.
  for (double& v : values) v /= total;
  return values;
}

RunManifest manifest_of(const VerifyRequest& request) {
  const verify::Options& o = request.options;
  std::vector<std::string> z;
  for (double v : o.z_values) z.push_back(format_double(v));
  std::vector<std::string> dims;
  for (auto v : o.expert_dims) dims.push_back(std::to_string(v));
  std::vector<std::string> horizons;
  for (auto v : o.expert_horizons) horizons.push_back(std::to_string(v));
  return {"verify",
          {{"suite", request.suite},
           {"tol", opt(o.tol)},
           {"seed", std::to_string(o.seed)},
           {"trials", std::to_string(o.dominance_trials)},
           {"expert_trials", std::to_string(o.expert_trials)},
           {"d", dims.empty() ? "none" : join(dims, ';')},
           {"T", horizons.empty() ? "none" : join(horizons, ';')},
           {"z", z.empty() ? "default" : join(z, ';')},
           {"out", request.out.empty() ? "-" : request.out}}};
}

RunManifest manifest_of(const SimulateRequest& r) {
  return {"simulate-bettor",
          {{"family", r.family},
           {"prior", r.prior},
           {"z", format_double(r.z)},
           {"sigma2", opt(r.sigma2)},
           {"exponent_mode", r.exponent_mode},
           {"evaluation", r.evaluation},
           {"T", std::to_string(r.T)},
           {"gen", r.gen},
           {"coins", r.coins.empty() ? "-" : r.coins},
           {"p", format_double(r.p)},
           {"seed", std::to_string(r.seed)},
           {"doubling", r.doubling ? "1" : "0"},
           {"out", r.out.empty() ? "-" : r.out}}};
}

RunManifest manifest_of(const ExpertsRequest& r) {
  std::vector<std::string> comparators = r.comparators;
  for (auto& c : comparators) std::replace(c.begin(), c.end(), ',', ';');
  std::string pi = r.pi;
  std::replace(pi.begin(), pi.end(), ',', ';');
  return {"experts",
          {{"d", std::to_string(r.d)},
           {"T", std::to_string(r.T)},
           {"pi", pi},
           {"family", r.family},
           {"z", opt(r.z)},
           {"evaluation", r.evaluation},
           {"gen", r.gen},
           {"p", format_double(r.p)},
           {"gap", format_double(r.gap)},
           {"seed", std::to_string(r.seed)},
           {"u", comparators.empty() ? "-" : join(comparators, '|')},
           {"doubling", r.doubling ? "1" : "0"},
           {"out", r.out.empty() ? "-" : r.out}}};
}

RunManifest manifest_of(const BoundTableRequest& r) {
  std::vector<std::string> t;
  for (auto v : r.T) t.push_back(std::to_string(v));
  std::vector<std::string> k;
  for (double v : r.kl) k.push_back(format_double(v));
  return {"bound-table",
          {{"T", join(t, ';')}, {"kl", join(k, ';')}, {"out", r.out.empty() ? "-" : r.out}}};
}

int cmd_verify(const VerifyRequest& request, std::ostream& out) {
  const std::vector<verify::CheckRow> rows = verify::run_suite(request.suite, request.options);
  csv::Writer writer(out);
  writer.comment(manifest_of(request).header());
  writer.header({"name", "params", "lhs", "rhs", "margin", "pass"});
  for (const verify::CheckRow& row : rows) {
    writer.row({row.name, row.params, format_double(row.lhs), format_double(row.rhs),
                format_double(row.margin), row.pass ? "1" : "0"});
  }
  return verify::all_pass(rows) ? 0 : 1;
}

int cmd_simulate_bettor(const SimulateRequest& request, std::ostream& out) {
  if (request.T < 0) {
    throw std::invalid_argument("--T must be nonnegative");
  }
  CoinStream stream;
  stream.kind = parse_coin_kind(request.gen);
  stream.rounds = static_cast<std::size_t>(request.T);
  stream.seed = request.seed;
  stream.p = request.p;
  stream.pattern = request.coins;
  if (stream.kind == CoinKind::binary) {
    stream.rounds = request.coins.size();
  }

  Trajectory trajectory;
  if (request.doubling) {
    if (stream.kind == CoinKind::adversarial_sign_flip) {
      throw std::invalid_argument("--doubling needs a non-adaptive coin generator");
    }
    const std::vector<double> coins = generate_coins(stream);
    trajectory = doubling_wrap([&](std::int64_t h) { return bettor_from(request, h); }, coins);
  } else {
    trajectory = play_coins(bettor_from(request, static_cast<std::int64_t>(stream.rounds)), stream);
  }

  csv::Writer writer(out);
  writer.comment(manifest_of(request).header());
  writer.header({"round", "coin", "fraction", "log_wealth", "log_potential", "dominance_margin"});
  for (std::size_t t = 0; t < trajectory.rounds.size(); ++t) {
    const TrajectoryRound& r = trajectory.rounds[t];
    writer.row({std::to_string(t + 1), format_double(r.coin), format_double(r.fraction),
                format_double(r.log_wealth), format_double(r.log_potential),
                format_double(r.log_wealth - r.log_potential)});
  }
  if (request.doubling) {
    for (std::size_t k = 0; k < trajectory.epochs.size(); ++k) {
      const EpochSummary& e = trajectory.epochs[k];
      writer.comment("epoch=" + std::to_string(k) + " first_round=" + std::to_string(e.first_round + 1) +
                     " length=" + std::to_string(e.length) + " horizon=" + std::to_string(e.horizon) +
                     " sum_c=" + format_double(e.sum_c) + " log_wealth=" + format_double(e.log_wealth) +
                     " log_floor=" + format_double(wealth_floor_log(e.sum_c, e.horizon)));
    }
  }
  return 0;
}

int cmd_experts(const ExpertsRequest& request, std::ostream& out) {
  if (request.d < 1) {
    throw std::invalid_argument("--d must be at least 1");
  }
  if (request.T < 1) {
    throw std::invalid_argument("--T must be at least 1");
  }
  const std::vector<double> pi = parse_simplex(request.pi, request.d);
  std::vector<Vector> extra;
  for (const std::string& text : request.comparators) {
    extra.push_back(parse_simplex(text, request.d));
  }
  LossStream stream;
  stream.kind = parse_loss_kind(request.gen);
  stream.d = request.d;
  stream.rounds = static_cast<std::size_t>(request.T);
  stream.seed = request.seed;
  stream.p = request.p;
  stream.gap = request.gap;
  const auto losses = generate_losses(stream);

  RegretRecord record;
  std::vector<DoublingEpoch> epochs;
  if (request.doubling) {
    DoublingRecord result = run_game_doubling(
        pi, [&](std::int64_t h) { return expert_bettor(request, h); }, losses, extra);
    record = std::move(result.record);
    epochs = std::move(result.epochs);
  } else {
    ExpertsConfig config;
    config.d = request.d;
    config.prior_pi = pi;
    config.bettor = expert_bettor(request, request.T);
    config.horizon = request.T;
    record = run_game(config, losses, extra);
  }

  // Envelope columns follow the comparator with the largest KL (first on ties).
  std::size_t ref = 0;
  for (std::size_t k = 1; k < record.comparators.size(); ++k) {
    if (record.comparators[k].kl > record.comparators[ref].kl) ref = k;
  }
  const Comparator& reference = record.comparators[ref];

  csv::Writer writer(out);
  writer.comment(manifest_of(request).header());
  writer.comment("envelope comparator=" + reference.name + " kl=" + format_double(reference.kl));
  std::vector<std::string> columns{"round", "loss_of_algorithm"};
  for (const Comparator& c : record.comparators) columns.push_back("regret_" + c.name);
  if (request.doubling) columns.push_back("epoch");
  columns.insert(columns.end(), {"envelope_gaussian", "envelope_shifted_kt", "envelope_squint_reference"});
  writer.header(columns);

  double cumulative_loss = 0.0;
  double v_ref = 0.0;
  std::size_t epoch_index = 0;
  double epoch_gaussian = 0.0;
  double epoch_shifted = 0.0;
  for (std::size_t t = 0; t < record.rounds.size(); ++t) {
    const ExpertsRound& round = record.rounds[t];
    cumulative_loss += round.algorithm_loss;
    for (std::size_t i = 0; i < request.d; ++i) {
      const double gap = round.algorithm_loss - round.losses[i];
      v_ref += reference.u[i] * gap * gap;
    }
    std::vector<std::string> fields{std::to_string(t + 1), format_double(cumulative_loss)};
    for (double r : record.cumulative_regret[t]) fields.push_back(format_double(r));
    double gaussian = 0.0;
    double shifted = 0.0;
    if (request.doubling) {
      while (t >= epochs[epoch_index].first_round + epochs[epoch_index].length) {
        const BoundFormulaInput done{epochs[epoch_index].horizon, reference.kl};
        epoch_gaussian += regret_bound_gaussian(done);
        epoch_shifted += regret_bound_shifted_kt(done);
        ++epoch_index;
      }
      const BoundFormulaInput current{epochs[epoch_index].horizon, reference.kl};
      gaussian = epoch_gaussian + regret_bound_gaussian(current);
      shifted = epoch_shifted + regret_bound_shifted_kt(current);
      fields.push_back(std::to_string(epoch_index));
    } else {
      gaussian = regret_bound_gaussian({request.T, reference.kl});
      shifted = regret_bound_shifted_kt({request.T, reference.kl});
    }
    fields.push_back(format_double(gaussian));
    fields.push_back(format_double(shifted));
    fields.push_back(format_double(
        squint_bound_reference(static_cast<std::int64_t>(t + 1), reference.kl, v_ref)));
    writer.row(fields);
  }

  // Summary: per-comparator final regret over its own Gaussian envelope.
  std::vector<double> envelope = record.envelope_gaussian;
  if (request.doubling) {
    std::fill(envelope.begin(), envelope.end(), 0.0);
    for (const DoublingEpoch& e : epochs) {
      for (std::size_t k = 0; k < envelope.size(); ++k) envelope[k] += e.envelope_gaussian[k];
    }
  }
  const Vector regret = record.final_regret();
  double max_ratio = -std::numeric_limits<double>::infinity();
  std::vector<std::string> fields{"summary", format_double(cumulative_loss)};
  for (std::size_t k = 0; k < regret.size(); ++k) {
    const double ratio = regret[k] / envelope[k];
    max_ratio = std::max(max_ratio, ratio);
    fields.push_back(format_double(ratio));
  }
  if (request.doubling) fields.push_back("");
  fields.push_back(format_double(max_ratio));
  fields.push_back("");
  fields.push_back("");
  writer.row(fields);
  return 0;
}

int cmd_bound_table(const BoundTableRequest& request, std::ostream& out) {
  csv::Writer writer(out);
  writer.comment(manifest_of(request).header());
  writer.header({"T", "kl", "gaussian", "shifted_kt", "squint_reference"});
  for (std::int64_t t : request.T) {
    if (t < 1) {
      throw std::invalid_argument("bound-table: T values must be positive");
    }
    for (double k : request.kl) {
      if (!(k >= 0.0)) {
        throw std::invalid_argument("bound-table: kl values must be nonnegative");
      }
      const BoundFormulaInput in{t, k};
      writer.row({std::to_string(t), format_double(k), format_double(regret_bound_gaussian(in)),
                  format_double(regret_bound_shifted_kt(in)),
                  format_double(squint_bound_reference(t, k, static_cast<double>(t)))});
    }
  }
  return 0;
}

}  // namespace coinbet
