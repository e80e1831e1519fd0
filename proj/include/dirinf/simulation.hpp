#ifndef DIRINF_SIMULATION_HPP
#define DIRINF_SIMULATION_HPP

#include "dirinf/combiners.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dirinf {

enum class MethodKind { Dct, Ap, Pc, Holm, GrFwer, Bh, GrFdr };

struct MethodSpec {
  MethodKind kind = MethodKind::Dct;
  Combiner combiner = Combiner::Fisher;  // ignored by stepwise methods
  bool alpha_tilde = false;              // AP only: run at alpha / (1 - 2^-n)

  /// "dct-fisher", "ap-msimes", "gr-fdr", ...
  std::string label() const;
};

/// Parses "dct", "ap", "pc", "holm", "gr-fwer", "bh", "gr-fdr".
MethodKind parse_method_kind(std::string_view name);

struct SimConfig {
  std::size_t n = 50;
  std::size_t n_plus = 15;
  std::size_t n_minus = 15;
  double snr = 3.0;
  std::vector<double> theta;  // overrides n, n_plus, n_minus, snr when non-empty
  double alpha = 0.05;
  std::vector<MethodSpec> methods;
  std::size_t replications = 2000;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency

  /// theta if given, else n_plus of +snr, n_minus of -snr, zeros.
  std::vector<double> effective_theta() const;
};

/// Per-replication metric names, in output order.
inline constexpr std::string_view kMetricNames[] = {
    "bound_sum",           // l+ + l- on [n]
    "discoveries",         // |D+| + |D-|
    "coverage",            // bounds on [n] are valid
    "nontrivial",          // l+ >= 1 or l- >= 1
    "discovery_coverage",  // n+(R) >= |D+| and the negative side likewise, R = D+ ∪ D-
    "simultaneous",        // valid for every subset at once
};
inline constexpr std::size_t kMetricCount = std::size(kMetricNames);

struct MetricEstimate {
  double mean = 0.0;
  double mc_se = 0.0;
};

struct MethodSummary {
  std::string method;
  MetricEstimate metrics[kMetricCount];
};

struct SimSummary {
  std::vector<double> theta;
  double snr = 0.0;
  double alpha = 0.05;
  std::size_t replications = 0;
  std::vector<MethodSummary> methods;

  const MethodSummary& at(std::string_view label) const;
};

/// One vector of p_i = 1 - Phi(theta_i + Z_i). Depends only on the seed, the
/// replication index and theta.
std::vector<double> generate_replication(const std::vector<double>& theta, std::uint64_t seed,
                                         std::size_t replication);

/// Throws std::invalid_argument on an inconsistent config.
SimSummary run_simulation(const SimConfig& config);

/// One grid point of a preset sweep.
struct SimPoint {
  double x = 0.0;  // snr, or theta_2 for the n = 2 sweep
  std::string series;  // "" or "theta1=<v>"
  SimSummary summary;
};

/// "fig4-row1", "fig4-row2", "fig5". Unknown names throw std::invalid_argument.
std::vector<SimPoint> run_preset(std::string_view preset, std::size_t replications, std::uint64_t seed,
                                 double alpha = 0.05, unsigned threads = 0);

}  // namespace dirinf

#endif  // DIRINF_SIMULATION_HPP
