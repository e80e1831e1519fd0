#include "dirinf/closed_testing.hpp"

#include "dirinf/detail/prefix_union.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <unordered_set>

namespace dirinf {

namespace {

void require_exhaustive_size(std::size_t m) {
  if (m > kMaxExhaustive) {
    throw SizeError("exhaustive closed testing limited to " + std::to_string(kMaxExhaustive) +
                    " hypotheses, got " + std::to_string(m));
  }
}

double local_from_mask(std::uint64_t mask, const HypothesisFamily& family,
                       std::vector<double>& scratch) {
  scratch.clear();
  while (mask != 0) {
    scratch.push_back(family.pvalues[static_cast<std::size_t>(std::countr_zero(mask))]);
    mask &= mask - 1;
  }
  std::sort(scratch.begin(), scratch.end());
  return combine_sorted(scratch, family.combiner);
}

std::vector<double> values_of(const IndexSet& s, const std::vector<double>& p) {
  std::vector<double> out;
  out.reserve(s.size());
  for (auto i : s) out.push_back(p[i]);
  return out;
}

}  // namespace

HypothesisFamily::HypothesisFamily(std::vector<double> pv, Combiner c, double a,
                                   std::vector<std::string> lab)
    : labels(std::move(lab)), pvalues(std::move(pv)), combiner(c), alpha(a) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  for (double x : pvalues) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("p-value outside [0,1]");
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < pvalues.size(); ++i) labels.push_back("H" + std::to_string(i + 1));
  }
  if (labels.size() != pvalues.size()) throw std::invalid_argument("labels and p-values differ in length");
  std::unordered_set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw std::invalid_argument("hypothesis labels must be distinct");
}

double local_test_pvalue(const IndexSet& subset, const HypothesisFamily& family) {
  std::vector<double> v;
  v.reserve(subset.size());
  for (auto i : subset) {
    if (i >= family.size()) throw std::out_of_range("local_test_pvalue: index out of range");
    v.push_back(family.pvalues[i]);
  }
  std::sort(v.begin(), v.end());
  return combine_sorted(v, family.combiner);
}

double closure_adjusted_pvalue(std::size_t i, const HypothesisFamily& family) {
  if (i >= family.size()) throw std::out_of_range("closure_adjusted_pvalue: index out of range");
  return intersection_adjusted_pvalue_bruteforce(IndexSet{i}, family);
}

double intersection_adjusted_pvalue_bruteforce(const IndexSet& j, const HypothesisFamily& family) {
  const std::size_t m = family.size();
  require_exhaustive_size(m);
  const std::uint64_t base = to_mask(normalize_index_set(j, m));
  const std::uint64_t rest = ((std::uint64_t{1} << m) - 1) & ~base;
  std::vector<double> scratch;
  double worst = 0.0;
  // every submask of the complement, including the empty one
  std::uint64_t sub = rest;
  while (true) {
    worst = std::max(worst, local_from_mask(base | sub, family, scratch));
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
  return worst;
}

std::size_t lower_bound_bruteforce(const IndexSet& i_set, const HypothesisFamily& family) {
  const std::size_t m = family.size();
  require_exhaustive_size(m);
  const IndexSet idx = normalize_index_set(i_set, m);
  if (idx.empty()) return 0;
  const std::uint64_t full = (std::uint64_t{1} << m) - 1;

  // retained[K] = 1 when some superset of K has a non-rejected local test
  std::vector<std::uint8_t> retained(std::size_t{1} << m);
  std::vector<double> scratch;
  for (std::uint64_t k = 0; k <= full; ++k) {
    retained[k] = local_from_mask(k, family, scratch) > family.alpha ? 1 : 0;
  }
  for (std::size_t bit = 0; bit < m; ++bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    for (std::uint64_t k = 0; k <= full; ++k) {
      if ((k & b) == 0 && retained[k | b]) retained[k] = 1;
    }
  }

  const std::uint64_t imask = to_mask(idx);
  std::size_t best = idx.size();
  std::uint64_t sub = imask;
  while (true) {
    if (retained[sub]) {
      best = std::min(best, idx.size() - static_cast<std::size_t>(std::popcount(sub)));
    }
    if (sub == 0) break;
    sub = (sub - 1) & imask;
  }
  return best;
}

ClosedTesting::ClosedTesting(HypothesisFamily family) : family_(std::move(family)) {}

double ClosedTesting::adjusted_pvalue(const IndexSet& j_set) const {
  const std::size_t m = family_.size();
  const IndexSet j = normalize_index_set(j_set, m);
  detail::PrefixUnion eval(family_.combiner,
                           {detail::sorted_descending(values_of(j, family_.pvalues)),
                            detail::sorted_descending(values_of(complement(j, m), family_.pvalues))});
  const std::size_t inside = eval.group_size(0);
  double worst = 0.0;
  for (std::size_t t = 0; t <= eval.group_size(1); ++t) {
    const std::array<std::size_t, 2> len{inside, t};
    worst = std::max(worst, eval(len));
  }
  return worst;
}

std::vector<double> ClosedTesting::adjusted_pvalues() const {
  std::vector<double> out(family_.size());
  for (std::size_t i = 0; i < family_.size(); ++i) out[i] = adjusted_pvalue(IndexSet{i});
  return out;
}

std::size_t ClosedTesting::lower_bound(const IndexSet& i_set) const {
  return lower_bound(i_set, family_.alpha);
}

std::size_t ClosedTesting::lower_bound(const IndexSet& i_set, double alpha) const {
  const std::size_t m = family_.size();
  const IndexSet idx = normalize_index_set(i_set, m);
  if (idx.empty()) return 0;
  detail::PrefixUnion eval(family_.combiner,
                           {detail::sorted_descending(values_of(idx, family_.pvalues)),
                            detail::sorted_descending(values_of(complement(idx, m), family_.pvalues))});
  const std::size_t outside = eval.group_size(1);
  for (std::size_t a = idx.size() + 1; a-- > 0;) {
    for (std::size_t t = 0; t <= outside; ++t) {
      const std::array<std::size_t, 2> len{a, t};
      if (eval(len) > alpha) return idx.size() - a;
    }
  }
  return idx.size();  // unreachable: the empty intersection is never rejected
}

std::size_t lower_bound_shortcut(const IndexSet& i_set, const HypothesisFamily& family) {
  return ClosedTesting(family).lower_bound(i_set);
}

}  // namespace dirinf
