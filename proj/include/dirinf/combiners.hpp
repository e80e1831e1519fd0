#ifndef DIRINF_COMBINERS_HPP
#define DIRINF_COMBINERS_HPP

#include <span>
#include <string>
#include <string_view>

namespace dirinf {

/// Monotone, symmetric p-value combining functions.
///
/// Every kind maps the empty multiset to 1, so an empty intersection is never
/// rejected.
enum class Combiner { Fisher, Simes, ModifiedSimes, Sidak, Bonferroni };

/// Lowercase CLI name: "fisher", "simes", "msimes", "sidak", "bonferroni".
std::string_view combiner_name(Combiner c) noexcept;

/// Inverse of combiner_name. Throws std::invalid_argument on unknown names.
Combiner parse_combiner(std::string_view name);

/// Combine a multiset of p-values. Throws std::invalid_argument if any value
/// lies outside [0,1].
double combine(std::span<const double> values, Combiner c);

/// Same as combine() for input already sorted ascending; no validation.
double combine_sorted(std::span<const double> ascending, Combiner c);

/// Fisher's combination from a precomputed -2 * sum(log v) over d values.
double fisher_from_statistic(double minus_two_log_sum, std::size_t d);

}  // namespace dirinf

#endif  // DIRINF_COMBINERS_HPP
