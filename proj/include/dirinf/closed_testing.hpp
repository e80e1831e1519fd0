#ifndef DIRINF_CLOSED_TESTING_HPP
#define DIRINF_CLOSED_TESTING_HPP

#include "dirinf/combiners.hpp"
#include "dirinf/index_set.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirinf {

/// Raised when an exhaustive (exponential) path is asked to enumerate more
/// than kMaxExhaustive hypotheses.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kMaxExhaustive = 25;

/// m hypotheses with one p-value each, a combining function and a level.
struct HypothesisFamily {
  std::vector<std::string> labels;
  std::vector<double> pvalues;
  Combiner combiner = Combiner::Simes;
  double alpha = 0.05;

  /// Labels default to "H1".."Hm". Throws std::invalid_argument on p-values
  /// outside [0,1], alpha outside (0,1), or duplicate/mismatched labels.
  HypothesisFamily(std::vector<double> pvalues, Combiner combiner, double alpha,
                   std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return pvalues.size(); }
};

/// Local test p-value for the intersection over `subset`; 1 on the empty set.
double local_test_pvalue(const IndexSet& subset, const HypothesisFamily& family);

// Exhaustive reference paths. All enumerate the subset lattice and throw
// SizeError when family.size() > kMaxExhaustive.

/// max over J containing i of the local p-value.
double closure_adjusted_pvalue(std::size_t i, const HypothesisFamily& family);

/// max over K containing J of the local p-value.
double intersection_adjusted_pvalue_bruteforce(const IndexSet& j, const HypothesisFamily& family);

/// min{|I \ J| : J subset of I, J not rejected by closed testing}.
std::size_t lower_bound_bruteforce(const IndexSet& i, const HypothesisFamily& family);

/// Polynomial closed-testing shortcut for monotone symmetric combiners.
///
/// For fixed sizes a = |K ∩ I| and t = |K \ I|, monotonicity makes the
/// superset K with the largest local p-value the one built from the a largest
/// p-values inside I and the t largest outside; symmetry makes any other K of
/// that shape a relabelling of a dominated multiset. Hence J = "the a largest
/// inside I" survives closure iff some t gives combine > alpha, and the bound
/// is |I| minus the largest such a. The same argument yields adjusted
/// p-values as max over t of combine(J ∪ t largest outside J).
class ClosedTesting {
 public:
  explicit ClosedTesting(HypothesisFamily family);

  const HypothesisFamily& family() const noexcept { return family_; }

  double local_pvalue(const IndexSet& subset) const { return local_test_pvalue(subset, family_); }

  /// Closure-adjusted p-value of the intersection over j.
  double adjusted_pvalue(const IndexSet& j) const;

  /// Adjusted p-values of all singletons, O(m^2) combinations.
  std::vector<double> adjusted_pvalues() const;

  /// Lower bound on the number of false hypotheses in I at the family level.
  std::size_t lower_bound(const IndexSet& i) const;

  /// Same, at an arbitrary level.
  std::size_t lower_bound(const IndexSet& i, double alpha) const;

 private:
  HypothesisFamily family_;
};

/// Free-function form of ClosedTesting::lower_bound.
std::size_t lower_bound_shortcut(const IndexSet& i, const HypothesisFamily& family);

}  // namespace dirinf

#endif  // DIRINF_CLOSED_TESTING_HPP
