#include "dirinf/baselines.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dirinf {

std::string_view stepwise_cli_name(StepwiseName name) noexcept {
  switch (name) {
    case StepwiseName::Holm2n: return "holm";
    case StepwiseName::GuoRomanoFwer: return "gr-fwer";
    case StepwiseName::BhDirectional: return "bh";
    case StepwiseName::GuoRomanoFdr: return "gr-fdr";
  }
  return "holm";
}

StepwiseName parse_stepwise(std::string_view name) {
  for (auto s : {StepwiseName::Holm2n, StepwiseName::GuoRomanoFwer, StepwiseName::BhDirectional,
                 StepwiseName::GuoRomanoFdr}) {
    if (stepwise_cli_name(s) == name) return s;
  }
  throw std::invalid_argument("unknown stepwise procedure: " + std::string(name));
}

StepwiseSpec build_spec(StepwiseName name, std::size_t n, double alpha) {
  if (n == 0) throw std::invalid_argument("build_spec: n must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  StepwiseSpec spec;
  spec.name = name;
  spec.critical_values.resize(n);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double i = static_cast<double>(k);
    double c = 0.0;
    switch (name) {
      case StepwiseName::Holm2n: c = alpha / (2.0 * (dn - i + 1.0)); break;
      case StepwiseName::GuoRomanoFwer: c = alpha / (dn - i + 1.0 + alpha); break;
      case StepwiseName::BhDirectional: c = i * alpha / (2.0 * dn); break;
      case StepwiseName::GuoRomanoFdr: c = i * alpha / dn; break;
    }
    spec.critical_values[k - 1] = c;
  }
  spec.mode = (name == StepwiseName::Holm2n || name == StepwiseName::GuoRomanoFwer) ? StepMode::StepDown
                                                                                      : StepMode::StepUp;
  spec.non_positive = name == StepwiseName::GuoRomanoFwer || name == StepwiseName::GuoRomanoFdr;
  return spec;
}

StepwiseResult run_stepwise(const std::vector<double>& p, const StepwiseSpec& spec) {
  const std::size_t n = p.size();
  if (spec.critical_values.size() != n) throw std::invalid_argument("run_stepwise: spec size mismatch");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) throw std::invalid_argument("p-value outside [0,1]");
    x[i] = std::min(p[i], 1.0 - p[i]);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x[a] < x[b]; });

  StepwiseResult res;
  if (spec.mode == StepMode::StepDown) {
    while (res.rejections < n && x[order[res.rejections]] <= spec.critical_values[res.rejections]) {
      ++res.rejections;
    }
  } else {
    for (std::size_t r = n; r > 0; --r) {
      if (x[order[r - 1]] <= spec.critical_values[r - 1]) {
        res.rejections = r;
        break;
      }
    }
  }
  for (std::size_t r = 0; r < res.rejections; ++r) {
    const std::size_t i = order[r];
    (p[i] <= 0.5 ? res.d_plus : res.d_minus).push_back(i);
  }
  std::sort(res.d_plus.begin(), res.d_plus.end());
  std::sort(res.d_minus.begin(), res.d_minus.end());
  return res;
}

}  // namespace dirinf
