#ifndef DIRINF_DETAIL_PREFIX_UNION_HPP
#define DIRINF_DETAIL_PREFIX_UNION_HPP

#include "dirinf/combiners.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace dirinf::detail {

/// Evaluates combine() over the union of leading prefixes of up to four
/// groups, each sorted in descending order. The shortcut algorithms only ever
/// combine "the k largest values of group g", so every query is a tuple of
/// prefix lengths. Fisher and min-based combiners run in O(1) per query;
/// Simes variants merge the prefixes in O(total length).
class PrefixUnion {
 public:
  static constexpr std::size_t kMaxGroups = 4;

  PrefixUnion(Combiner combiner, std::vector<std::vector<double>> descending_groups);

  std::size_t group_count() const noexcept { return groups_.size(); }
  std::size_t group_size(std::size_t g) const noexcept { return groups_[g].size(); }

  /// combine(union of groups[g][0 .. lengths[g])).
  double operator()(std::span<const std::size_t> lengths) const;

 private:
  double simes_merge(std::span<const std::size_t> lengths, std::size_t d, double multiplier) const;

  Combiner combiner_;
  std::vector<std::vector<double>> groups_;
  std::vector<std::vector<double>> log_prefix_;   // -2 * sum log over the prefix
  std::vector<std::size_t> above_half_;           // count of values > 0.5 per group
};

/// Sort a copy of the values in descending order.
std::vector<double> sorted_descending(std::vector<double> values);

}  // namespace dirinf::detail

#endif  // DIRINF_DETAIL_PREFIX_UNION_HPP
