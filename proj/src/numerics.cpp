#include "coinbet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace coinbet::numerics {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Gauss-Legendre nodes mapped through u -> sin(pi u / 2); weights carry the
// Jacobian (pi / 2) cos(pi u / 2).
struct SineMappedRule {
  std::vector<double> points;
  std::vector<double> weights;
};

SineMappedRule make_sine_mapped(const QuadratureRule& rule) {
  SineMappedRule mapped;
  const auto n = rule.nodes.size();
  mapped.points.resize(n);
  mapped.weights.resize(n);
  const double half_pi = std::numbers::pi / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rule.nodes[i];
    // cos(pi u / 2) through the complement keeps relative accuracy near |u| = 1.
    const double gap = 1.0 - std::abs(u);
    mapped.points[i] = std::copysign(std::cos(half_pi * gap), u);
    mapped.weights[i] = rule.weights[i] * half_pi * std::sin(half_pi * gap);
  }
  return mapped;
}

class RuleCache {
 public:
  const QuadratureRule& rule(int order) { return entry(order).rule; }
  const SineMappedRule& mapped(int order) { return entry(order).mapped; }

 private:
  struct Entry {
    QuadratureRule rule;
    SineMappedRule mapped;
  };

  const Entry& entry(int order) {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(order);
    if (it == entries_.end()) {
      auto fresh = std::make_unique<Entry>();
      fresh->rule = gauss_legendre(order);
      fresh->mapped = make_sine_mapped(fresh->rule);
      it = entries_.emplace(order, std::move(fresh)).first;
    }
    return *it->second;
  }

  std::mutex mutex_;
  std::map<int, std::unique_ptr<Entry>> entries_;
};

RuleCache& cache() {
  static RuleCache instance;
  return instance;
}

double log_integral_at(const Exponent& exponent, double lo, double hi, int order,
                       std::vector<double>& scratch) {
  const SineMappedRule& rule = cache().mapped(order);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const auto n = rule.points.size();
  scratch.resize(n);
  double peak = kNegInf;
  for (std::size_t i = 0; i < n; ++i) {
    const double beta = std::clamp(mid + half * rule.points[i], lo, hi);
    const double h = exponent(beta);
    if (std::isnan(h)) {
      throw std::domain_error("integrate_log: exponent returned NaN");
    }
    scratch[i] = h;
    peak = std::max(peak, h);
  }
  if (peak == kNegInf) {
    return kNegInf;
  }
  if (std::isinf(peak)) {
    throw std::overflow_error("integrate_log: exponent returned +inf");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += rule.weights[i] * std::exp(scratch[i] - peak);
  }
  return peak + std::log(half * sum);
}

}  // namespace

QuadratureRule gauss_legendre(int order) {
  if (order < 1) {
    throw std::invalid_argument("gauss_legendre: order must be positive");
  }
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);
  const int half = order / 2;
  for (int i = 0; i < half; ++i) {
    // i-th largest root of P_n, Tricomi-style initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      derivative = order * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) {
        break;
      }
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    derivative = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[order - 1 - i] = x;
    rule.nodes[i] = -x;
    rule.weights[order - 1 - i] = w;
    rule.weights[i] = w;
  }
  if (order % 2 == 1) {
    // Centre node: weight 2 / P'_n(0)^2, P'_n(0) from the recurrence.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int k = 2; k <= order; ++k) {
      const double p2 = (-(k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double derivative = order * (-p0) / (-1.0);
    rule.nodes[half] = 0.0;
    rule.weights[half] = 2.0 / (derivative * derivative);
  }
  return rule;
}

const QuadratureRule& cached_gauss_legendre(int order) { return cache().rule(order); }

double erf(double x) { return std::erf(x); }

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive");
  }
  return std::lgamma(x);
}

double log_add(double a, double b) {
  if (a < b) {
    std::swap(a, b);
  }
  if (b == kNegInf) {
    return a;
  }
  return a + std::log1p(std::exp(b - a));
}

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) {
    return kNegInf;
  }
  const double peak = *std::max_element(values.begin(), values.end());
  if (std::isinf(peak)) {
    return peak;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += std::exp(v - peak);
  }
  return peak + std::log(sum);
}

LogIntegralResult integrate_log(const Exponent& exponent, double lo, double hi,
                                const QuadratureOptions& opts) {
  if (!(lo < hi)) {
    throw std::invalid_argument("integrate_log: requires lo < hi");
  }
  if (!(opts.tol > 0.0)) {
    throw std::invalid_argument("integrate_log: tol must be positive");
  }
  std::vector<double> scratch;
  int order = opts.min_order;
  double previous = log_integral_at(exponent, lo, hi, order, scratch);
  double change = std::numeric_limits<double>::infinity();
  while (true) {
    order *= 2;
    if (order > opts.max_order) {
      throw ConvergenceError("integrate_log: relative change " + std::to_string(change) +
                             " above tolerance at the node-count cap");
    }
    const double current = log_integral_at(exponent, lo, hi, order, scratch);
    if (current == kNegInf && previous == kNegInf) {
      return {kNegInf, 0.0, order};
    }
    change = std::abs(std::expm1(current - previous));
    if (change < opts.tol) {
      return {current, change, order};
    }
    previous = current;
  }
}

LogIntegralResult integrate_log(const Exponent& exponent, double lo, double hi, double tol) {
  QuadratureOptions opts;
  opts.tol = tol;
  return integrate_log(exponent, lo, hi, opts);
}

double signed_moment_ratio(const Exponent& exponent, double lo, double hi,
                           const QuadratureOptions& opts) {
  const double log_mass = integrate_log(exponent, lo, hi, opts).log_value;
  double ratio = 0.0;
  if (hi > 0.0) {
    const double a = std::max(lo, 0.0);
    const double log_pos =
        integrate_log([&](double b) { return exponent(b) + std::log(b); }, a, hi, opts).log_value;
    ratio += std::exp(log_pos - log_mass);
  }
  if (lo < 0.0) {
    const double b_hi = std::min(hi, 0.0);
    const double log_neg =
        integrate_log([&](double b) { return exponent(b) + std::log(-b); }, lo, b_hi, opts)
            .log_value;
    ratio -= std::exp(log_neg - log_mass);
  }
  return std::clamp(ratio, lo, hi);
}

double signed_moment_ratio(const Exponent& exponent, double lo, double hi, double tol) {
  QuadratureOptions opts;
  opts.tol = tol;
  return signed_moment_ratio(exponent, lo, hi, opts);
}

}  // namespace coinbet::numerics
