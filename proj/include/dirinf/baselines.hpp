#ifndef DIRINF_BASELINES_HPP
#define DIRINF_BASELINES_HPP

#include "dirinf/index_set.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dirinf {

enum class StepMode { StepDown, StepUp };

enum class StepwiseName { Holm2n, GuoRomanoFwer, BhDirectional, GuoRomanoFdr };

/// Critical values alpha_1 <= ... <= alpha_n and the stepping direction.
struct StepwiseSpec {
  StepwiseName name = StepwiseName::Holm2n;
  StepMode mode = StepMode::StepDown;
  std::vector<double> critical_values;
  /// Negative decisions mean theta_i <= 0 (Guo-Romano) rather than theta_i < 0.
  bool non_positive = false;
};

/// CLI names "holm", "gr-fwer", "bh", "gr-fdr".
std::string_view stepwise_cli_name(StepwiseName name) noexcept;
StepwiseName parse_stepwise(std::string_view name);

/// Holm on 2n:   alpha / (2 (n-i+1)),     step-down
/// GR-FWER:      alpha / (n-i+1+alpha),   step-down
/// BH:           i alpha / (2n),          step-up
/// GR-FDR:       i alpha / n,             step-up
StepwiseSpec build_spec(StepwiseName name, std::size_t n, double alpha);

struct StepwiseResult {
  std::size_t rejections = 0;  // R
  IndexSet d_plus;             // theta_i > 0
  IndexSet d_minus;            // theta_i < 0, or <= 0 for non-positive specs
};

/// Works on x_i = min(p_i, 1 - p_i); a tie at p_i = 1/2 counts as positive.
StepwiseResult run_stepwise(const std::vector<double>& p, const StepwiseSpec& spec);

}  // namespace dirinf

#endif  // DIRINF_BASELINES_HPP
