#ifndef DIRINF_DIRECTIONAL_HPP
#define DIRINF_DIRECTIONAL_HPP

#include "dirinf/closed_testing.hpp"
#include "dirinf/combiners.hpp"
#include "dirinf/index_set.hpp"

#include <span>
#include <vector>

namespace dirinf {

/// Data-driven choice of one direction per parameter.
///
/// Index i goes to S- (test theta_i <= 0) when p_i <= tau_i and to S+
/// (test theta_i >= 0) otherwise; the conditional p-value is p_i / tau_i or
/// q_i / (1 - tau_i) with q_i = 1 - p_i. The default tau_i = 1/2 doubles the
/// selected one-sided p-value. tau_i = 1 pins i to S- and tau_i = 0 pins it to
/// S+, each with the undoubled p-value.
struct SignSplit {
  std::size_t n = 0;
  std::vector<double> p;
  IndexSet s_minus;
  IndexSet s_plus;
  std::vector<double> cond;
  std::vector<int> sign_vector;  // -1 for S-, +1 for S+

  bool in_minus(std::size_t i) const noexcept { return sign_vector[i] < 0; }
};

/// Throws std::invalid_argument for p or tau outside [0,1] or a tau vector of
/// the wrong length. An empty tau means 1/2 everywhere.
SignSplit sign_split(std::span<const double> p, std::span<const double> tau = {});

/// Bounds and discoveries for a list of query subsets.
struct DirectionalBounds {
  std::vector<IndexSet> queries;
  std::vector<std::size_t> ell_plus;   // per query
  std::vector<std::size_t> ell_minus;  // per query
  std::vector<double> adjusted;        // closure-adjusted p-value per index
  IndexSet d_plus;                     // subset of S-, theta_i > 0 declared
  IndexSet d_minus;                    // subset of S+, theta_i < 0 declared
};

/// Directional closed testing: closed testing over the n selected one-sided
/// hypotheses with conditional p-values. ell_plus(I) = ell(I ∩ S-) and
/// ell_minus(I) = ell(I ∩ S+). With exhaustive = true the bounds use the
/// brute-force lattice (SizeError above kMaxExhaustive).
DirectionalBounds dct_bounds(const std::vector<IndexSet>& queries, const SignSplit& split,
                             Combiner combiner, double alpha, bool exhaustive = false);

/// Family of selected hypotheses ("H1-", "H2+", ...) with conditional p-values.
HypothesisFamily selected_family(const SignSplit& split, Combiner combiner, double alpha);

/// Closed testing for qualitative interactions.
///
/// Intersections that contain all of S- or all of S+ are tested by the global
/// qualitative-interaction p-value max(f(cond over S-), f(cond over S+)); all
/// other intersections use the ordinary local test.
struct QiResult {
  DirectionalBounds bounds;
  double qi_pvalue = 1.0;
};

QiResult qi_closed_testing(const std::vector<IndexSet>& queries, const SignSplit& split,
                           Combiner combiner, double alpha);

/// Local p-value of the modified lattice; exposed for the exhaustive check.
double qi_local_pvalue(const IndexSet& subset, const SignSplit& split, Combiner combiner);

/// Exhaustive reference for the modified lattice (SizeError above kMaxExhaustive).
double qi_adjusted_pvalue_bruteforce(const IndexSet& j, const SignSplit& split, Combiner combiner);
std::size_t qi_lower_bound_bruteforce(const IndexSet& i, const SignSplit& split, Combiner combiner,
                                      double alpha);

}  // namespace dirinf

#endif  // DIRINF_DIRECTIONAL_HPP
