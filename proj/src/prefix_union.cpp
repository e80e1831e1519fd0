#include "dirinf/detail/prefix_union.hpp"

#include "dirinf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace dirinf::detail {

std::vector<double> sorted_descending(std::vector<double> values) {
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

PrefixUnion::PrefixUnion(Combiner combiner, std::vector<std::vector<double>> descending_groups)
    : combiner_(combiner), groups_(std::move(descending_groups)) {
  if (groups_.size() > kMaxGroups) throw std::invalid_argument("PrefixUnion: too many groups");
  log_prefix_.resize(groups_.size());
  above_half_.resize(groups_.size());
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto& v = groups_[g];
    auto& lp = log_prefix_[g];
    lp.assign(v.size() + 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double term = v[i] > 0.0 ? -2.0 * std::log(v[i]) : std::numeric_limits<double>::infinity();
      lp[i + 1] = lp[i] + term;
    }
    above_half_[g] = static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [](double x) { return x > 0.5; }));
  }
}

double PrefixUnion::operator()(std::span<const std::size_t> lengths) const {
  std::size_t d = 0;
  for (std::size_t g = 0; g < groups_.size(); ++g) d += lengths[g];
  if (d == 0) return 1.0;

  switch (combiner_) {
    case Combiner::Fisher: {
      double stat = 0.0;
      for (std::size_t g = 0; g < groups_.size(); ++g) stat += log_prefix_[g][lengths[g]];
      return fisher_from_statistic(stat, d);
    }
    case Combiner::Sidak:
    case Combiner::Bonferroni: {
      double lo = 1.0;
      for (std::size_t g = 0; g < groups_.size(); ++g) {
        if (lengths[g] > 0) lo = std::min(lo, groups_[g][lengths[g] - 1]);
      }
      if (combiner_ == Combiner::Bonferroni) return clamp_probability(static_cast<double>(d) * lo);
      return clamp_probability(-std::expm1(static_cast<double>(d) * std::log1p(-lo)));
    }
    case Combiner::Simes:
      return simes_merge(lengths, d, static_cast<double>(d));
    case Combiner::ModifiedSimes: {
      if (d <= 2) return simes_merge(lengths, d, static_cast<double>(d));
      std::size_t above = 0;
      for (std::size_t g = 0; g < groups_.size(); ++g) above += std::min(lengths[g], above_half_[g]);
      return simes_merge(lengths, d, 2.0 * static_cast<double>(above + 1));
    }
  }
  return 1.0;
}

double PrefixUnion::simes_merge(std::span<const std::size_t> lengths, std::size_t d,
                                double multiplier) const {
  // Walk each prefix from its smallest element upwards: an ascending k-way merge.
  std::array<std::size_t, kMaxGroups> head{};
  const std::size_t ng = groups_.size();
  for (std::size_t g = 0; g < ng; ++g) head[g] = lengths[g];
  double best = 1.0;
  for (std::size_t rank = 1; rank <= d; ++rank) {
    std::size_t pick = ng;
    double value = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < ng; ++g) {
      if (head[g] > 0 && groups_[g][head[g] - 1] < value) {
        value = groups_[g][head[g] - 1];
        pick = g;
      }
    }
    --head[pick];
    best = std::min(best, multiplier * value / static_cast<double>(rank));
  }
  return clamp_probability(best);
}

}  // namespace dirinf::detail
