#include "dirinf/combiners.hpp"

#include "dirinf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dirinf {

namespace {

double simes_sorted(std::span<const double> v, double multiplier) {
  double best = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, multiplier * v[i] / static_cast<double>(i + 1));
  }
  return clamp_probability(best);
}

}  // namespace

std::string_view combiner_name(Combiner c) noexcept {
  switch (c) {
    case Combiner::Fisher: return "fisher";
    case Combiner::Simes: return "simes";
    case Combiner::ModifiedSimes: return "msimes";
    case Combiner::Sidak: return "sidak";
    case Combiner::Bonferroni: return "bonferroni";
  }
  return "unknown";
}

Combiner parse_combiner(std::string_view name) {
  for (auto c : {Combiner::Fisher, Combiner::Simes, Combiner::ModifiedSimes, Combiner::Sidak,
                 Combiner::Bonferroni}) {
    if (combiner_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown combiner '" + std::string(name) +
                              "' (expected fisher|simes|msimes|sidak|bonferroni)");
}

double fisher_from_statistic(double minus_two_log_sum, std::size_t d) {
  if (d == 0) return 1.0;
  if (std::isinf(minus_two_log_sum)) return 0.0;
  return chi_square_sf(std::max(0.0, minus_two_log_sum), static_cast<unsigned>(2 * d));
}

double combine_sorted(std::span<const double> v, Combiner c) {
  const std::size_t d = v.size();
  if (d == 0) return 1.0;
  switch (c) {
    case Combiner::Fisher: {
      if (v.front() <= 0.0) return 0.0;
      double stat = 0.0;
      for (double x : v) stat -= 2.0 * std::log(x);
      return fisher_from_statistic(stat, d);
    }
    case Combiner::Simes:
      return simes_sorted(v, static_cast<double>(d));
    case Combiner::ModifiedSimes: {
      if (d <= 2) return simes_sorted(v, static_cast<double>(d));
      // ascending input: values above one half form a suffix
      const auto above = static_cast<std::size_t>(
          v.end() - std::upper_bound(v.begin(), v.end(), 0.5));
      return simes_sorted(v, 2.0 * static_cast<double>(above + 1));
    }
    case Combiner::Sidak:
      return clamp_probability(-std::expm1(static_cast<double>(d) * std::log1p(-v.front())));
    case Combiner::Bonferroni:
      return clamp_probability(static_cast<double>(d) * v.front());
  }
  return 1.0;
}

double combine(std::span<const double> values, Combiner c) {
  for (double x : values) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("combine: p-value outside [0,1]");
    }
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return combine_sorted(sorted, c);
}

}  // namespace dirinf
