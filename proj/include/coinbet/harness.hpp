#ifndef COINBET_HARNESS_HPP_
#define COINBET_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "coinbet/verify.hpp"

namespace coinbet {

inline constexpr const char* kVersion = "1.0.0";

/// Everything needed to reproduce a CLI run. Echoed as the first CSV line.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;

  std::string header() const;
};

struct VerifyRequest {
  std::string suite = "all";
  verify::Options options;
  std::string out;  // empty: stdout
};

struct SimulateRequest {
  std::string family = "mixture";    // conj-power | mixture
  std::string prior = "trunc-gauss"; // trunc-gauss | conj-power (mixture only)
  double z = 0.0;
  std::optional<double> sigma2;      // default 1/(2T)
  std::string exponent_mode = "round-count";  // round-count | variance
  std::string evaluation = "quadrature";      // quadrature | closed-form
  std::int64_t T = 100;
  std::string gen = "rademacher";
  std::string coins;                 // binary generator pattern
  double p = 0.5;
  std::uint64_t seed = 1;
  bool doubling = false;
  std::string out;
};

struct ExpertsRequest {
  std::size_t d = 2;
  std::int64_t T = 1000;
  std::string pi = "uniform";        // uniform | comma list
  std::string family = "mixture";    // mixture | conj-power
  std::optional<double> z;           // conj-power; default (T-1)/2
  std::string evaluation = "quadrature";
  std::string gen = "bernoulli";
  double p = 0.5;
  double gap = 0.1;
  std::uint64_t seed = 1;
  std::vector<std::string> comparators;  // extra comparators, comma lists
  bool doubling = false;
  std::string out;
};

struct BoundTableRequest {
  std::vector<std::int64_t> T{1, 10, 100, 1000, 10000};
  std::vector<double> kl{0.0};
  std::string out;
};

RunManifest manifest_of(const VerifyRequest& request);
RunManifest manifest_of(const SimulateRequest& request);
RunManifest manifest_of(const ExpertsRequest& request);
RunManifest manifest_of(const BoundTableRequest& request);

/// Each command writes its CSV (manifest comment first) to `out` and returns
/// the process exit status. Invalid requests throw std::invalid_argument.
int cmd_verify(const VerifyRequest& request, std::ostream& out);
int cmd_simulate_bettor(const SimulateRequest& request, std::ostream& out);
int cmd_experts(const ExpertsRequest& request, std::ostream& out);
int cmd_bound_table(const BoundTableRequest& request, std::ostream& out);

/// "uniform" or a comma-separated list of positive reals summing to 1.
std::vector<double> parse_simplex(const std::string& text, std::size_t d);

std::vector<double> parse_real_list(const std::string& text);

}  // namespace coinbet

#endif  // COINBET_HARNESS_HPP_
