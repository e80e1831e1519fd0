#ifndef DIRINF_PARTITIONING_HPP
#define DIRINF_PARTITIONING_HPP

#include "dirinf/combiners.hpp"
#include "dirinf/directional.hpp"
#include "dirinf/index_set.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace dirinf {

/// Adaptive test of the orthant in which exactly the coordinates in K are
/// positive: combines the conditional p-values whose selected direction
/// contradicts the orthant, i.e. S- outside K and S+ inside K. The realized
/// orthant K = S- has nothing to combine and gets 1.
double adaptive_orthant_pvalue(const IndexSet& k, const SignSplit& split, Combiner combiner);

/// Confidence set for n+(I) obtained by partitioning.
struct ConfidenceSet {
  std::vector<std::size_t> n_plus;  // v in 0..|I| with f_v > alpha, ascending
  std::size_t ell_plus_tilde = 0;
  std::size_t ell_minus_tilde = 0;
  std::vector<double> f_values;     // f_v(I) = max orthant p-value with |K ∩ I| = v
};

/// Enumerates all 2^n orthants. SizeError above kMaxExhaustive.
ConfidenceSet partition_confidence_set_bruteforce(const IndexSet& i, const SignSplit& split,
                                                  Combiner combiner, double alpha);

/// Polynomial shortcut. Splits the conditional p-values into four descending
/// groups a = S- ∩ I, b = S- \ I, c = S+ ∩ I, d = S+ \ I; for |K ∩ I| = v with
/// k members taken from c and |K \ I| = u with j members taken from d, the
/// worst orthant combines the largest |a|-(v-k) of a, |b|-(u-j) of b, k of c
/// and j of d. Cost O(|I|^2 max(1,|I^c|^2)) combinations.
ConfidenceSet ap_bounds_shortcut(const IndexSet& i, const SignSplit& split, Combiner combiner,
                                 double alpha);

/// Bounds from f-values by scanning inward from both ends until the first
/// v with f_v > alpha. Agrees with min/max of N+ (which is never empty).
std::pair<std::size_t, std::size_t> scan_bounds(const std::vector<double>& f_values, double alpha);

/// p_bar[i] = f_0({i}) and q_bar[i] = f_1({i}). theta_i > 0 is declared when
/// p_bar[i] <= alpha and theta_i <= 0 when q_bar[i] <= alpha.
struct AdjustedBase {
  std::vector<double> p_bar;
  std::vector<double> q_bar;
};

AdjustedBase ap_adjusted_base_pvalues(const SignSplit& split, Combiner combiner);

/// Bounds for every query plus base discoveries at one level.
struct ApResult {
  std::vector<IndexSet> queries;
  std::vector<ConfidenceSet> sets;
  AdjustedBase adjusted;
  IndexSet d_plus;   // theta_i > 0
  IndexSet d_minus;  // theta_i <= 0
};

ApResult ap_analysis(const std::vector<IndexSet>& queries, const SignSplit& split, Combiner combiner,
                     double alpha);

/// alpha / (1 - 2^-n), kept strictly below 1.
double alpha_tilde(double alpha, std::size_t n);

/// Partitioning with Sidak or Bonferroni orthant tests, which reduces to
/// per-coordinate thresholds on p_i and q_i.
struct UnconditionalDecisions {
  double threshold = 0.0;
  IndexSet d_plus;   // p_i <= threshold
  IndexSet d_minus;  // q_i <= threshold
};

UnconditionalDecisions unconditional_partition_bounds(const std::vector<double>& p, Combiner combiner,
                                                      double alpha);

enum class Side { Plus, Minus };

/// Conditional partial-conjunction p-value for "at most r-1 parameters are
/// positive" (Side::Plus, from S-) or "... negative" (Side::Minus, from S+).
/// Drops the r-1 smallest conditional p-values of the side and combines the
/// rest; 1 when r exceeds the side's size. Requires 1 <= r <= n.
double pc_pvalue(std::size_t r, Side side, const SignSplit& split, Combiner combiner);

struct PCBounds {
  std::size_t l_plus = 0;
  std::size_t l_minus = 0;
  std::vector<double> pc_pvalues_plus;   // r = 1..|S-|
  std::vector<double> pc_pvalues_minus;  // r = 1..|S+|
};

/// Sequential partial-conjunction testing, stopping at the first non-rejection
/// on each side.
PCBounds adaptive_pc_bounds(const SignSplit& split, Combiner combiner, double alpha);

/// Rejects "n+ < a or n+ > b" when l_plus >= a and n - l_minus <= b.
/// Requires 1 <= a < b <= n-1.
bool generalized_qi_test(std::size_t a, std::size_t b, const SignSplit& split, Combiner combiner,
                         double alpha);

}  // namespace dirinf

#endif  // DIRINF_PARTITIONING_HPP
