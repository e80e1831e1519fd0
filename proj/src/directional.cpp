#include "dirinf/directional.hpp"

#include "dirinf/detail/prefix_union.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace dirinf {

namespace {

std::vector<double> cond_values(const IndexSet& s, const SignSplit& split) {
  std::vector<double> out;
  out.reserve(s.size());
  for (auto i : s) out.push_back(split.cond[i]);
  return out;
}

double combine_cond(const IndexSet& s, const SignSplit& split, Combiner combiner) {
  auto v = cond_values(s, split);
  std::sort(v.begin(), v.end());
  return combine_sorted(v, combiner);
}

double qi_global(const SignSplit& split, Combiner combiner) {
  return std::max(combine_cond(split.s_minus, split, combiner),
                  combine_cond(split.s_plus, split, combiner));
}

// Index of the smallest conditional p-value in `region` (ties: lowest index).
std::optional<std::size_t> argmin_cond(const IndexSet& region, const SignSplit& split) {
  if (region.empty()) return std::nullopt;
  std::size_t best = region.front();
  for (auto i : region) {
    if (split.cond[i] < split.cond[best]) best = i;
  }
  return best;
}

IndexSet without(IndexSet s, std::optional<std::size_t> drop) {
  if (drop) s.erase(std::remove(s.begin(), s.end(), *drop), s.end());
  return s;
}

// Largest a such that combine(a largest of `inside` ∪ t largest of `outside`) > alpha for some t.
std::size_t largest_retained(const IndexSet& inside, const IndexSet& outside, const SignSplit& split,
                             Combiner combiner, double alpha) {
  detail::PrefixUnion eval(combiner, {detail::sorted_descending(cond_values(inside, split)),
                                      detail::sorted_descending(cond_values(outside, split))});
  for (std::size_t a = inside.size() + 1; a-- > 0;) {
    for (std::size_t t = 0; t <= outside.size(); ++t) {
      const std::array<std::size_t, 2> len{a, t};
      if (eval(len) > alpha) return a;
    }
  }
  return 0;
}

double max_over_supersets(const IndexSet& j, const IndexSet& rest, const SignSplit& split,
                          Combiner combiner) {
  detail::PrefixUnion eval(combiner, {detail::sorted_descending(cond_values(j, split)),
                                      detail::sorted_descending(cond_values(rest, split))});
  double worst = 0.0;
  for (std::size_t t = 0; t <= rest.size(); ++t) {
    const std::array<std::size_t, 2> len{j.size(), t};
    worst = std::max(worst, eval(len));
  }
  return worst;
}

// Modified-lattice adjusted p-value. Supersets containing all of S- or all of
// S+ contribute the global value; the others must leave out at least one
// member of each side, and leaving out the smallest one dominates.
double qi_adjusted(const IndexSet& j, const SignSplit& split, Combiner combiner, double global) {
  const IndexSet out = complement(j, split.n);
  const auto a = argmin_cond(intersect(split.s_minus, out), split);
  const auto b = argmin_cond(intersect(split.s_plus, out), split);
  if (!a || !b) return global;
  const IndexSet rest = without(without(out, a), b);
  return std::max(global, max_over_supersets(j, rest, split, combiner));
}

std::size_t qi_lower_bound(const IndexSet& idx, const SignSplit& split, Combiner combiner,
                           double alpha, double global) {
  if (idx.empty() || global > alpha) return 0;
  const IndexSet out = complement(idx, split.n);
  const std::array<IndexSet, 2> minus_regions{intersect(split.s_minus, idx), intersect(split.s_minus, out)};
  const std::array<IndexSet, 2> plus_regions{intersect(split.s_plus, idx), intersect(split.s_plus, out)};
  std::size_t best = 0;
  for (int ra = 0; ra < 2; ++ra) {
    const auto xa = argmin_cond(minus_regions[ra], split);
    if (!xa) continue;
    for (int rb = 0; rb < 2; ++rb) {
      const auto xb = argmin_cond(plus_regions[rb], split);
      if (!xb) continue;
      const IndexSet inside = without(without(idx, xa), xb);
      const IndexSet outside = without(without(out, xa), xb);
      best = std::max(best, largest_retained(inside, outside, split, combiner, alpha));
    }
  }
  return idx.size() - best;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}

}  // namespace

SignSplit sign_split(std::span<const double> p, std::span<const double> tau) {
  if (!tau.empty() && tau.size() != p.size()) {
    throw std::invalid_argument("sign_split: tau must be empty or match p in length");
  }
  SignSplit s;
  s.n = p.size();
  s.p.assign(p.begin(), p.end());
  s.cond.resize(s.n);
  s.sign_vector.resize(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    const double pi = p[i];
    const double t = tau.empty() ? 0.5 : tau[i];
    if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("sign_split: p-value outside [0,1]");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("sign_split: tau outside [0,1]");
    const bool minus = t > 0.0 && pi <= t;
    if (minus) {
      s.s_minus.push_back(i);
      s.sign_vector[i] = -1;
      s.cond[i] = std::min(1.0, pi / t);
    } else {
      s.s_plus.push_back(i);
      s.sign_vector[i] = 1;
      s.cond[i] = std::min(1.0, (1.0 - pi) / (1.0 - t));
    }
  }
  return s;
}

HypothesisFamily selected_family(const SignSplit& split, Combiner combiner, double alpha) {
  std::vector<std::string> labels;
  labels.reserve(split.n);
  for (std::size_t i = 0; i < split.n; ++i) {
    labels.push_back("H" + std::to_string(i + 1) + (split.in_minus(i) ? "-" : "+"));
  }
  return HypothesisFamily(split.cond, combiner, alpha, std::move(labels));
}

DirectionalBounds dct_bounds(const std::vector<IndexSet>& queries, const SignSplit& split,
                             Combiner combiner, double alpha, bool exhaustive) {
  check_alpha(alpha);
  const HypothesisFamily family = selected_family(split, combiner, alpha);
  const ClosedTesting ct(family);
  DirectionalBounds out;
  for (const auto& q : queries) {
    const IndexSet idx = normalize_index_set(q, split.n);
    const IndexSet plus_part = intersect(idx, split.s_minus);
    const IndexSet minus_part = intersect(idx, split.s_plus);
    out.queries.push_back(idx);
    if (exhaustive) {
      out.ell_plus.push_back(lower_bound_bruteforce(plus_part, family));
      out.ell_minus.push_back(lower_bound_bruteforce(minus_part, family));
    } else {
      out.ell_plus.push_back(ct.lower_bound(plus_part));
      out.ell_minus.push_back(ct.lower_bound(minus_part));
    }
  }
  out.adjusted = exhaustive ? std::vector<double>(split.n) : ct.adjusted_pvalues();
  for (std::size_t i = 0; i < split.n; ++i) {
    if (exhaustive) out.adjusted[i] = closure_adjusted_pvalue(i, family);
    if (out.adjusted[i] <= alpha) (split.in_minus(i) ? out.d_plus : out.d_minus).push_back(i);
  }
  return out;
}

double qi_local_pvalue(const IndexSet& subset, const SignSplit& split, Combiner combiner) {
  const IndexSet idx = normalize_index_set(subset, split.n);
  if (is_subset(split.s_minus, idx) || is_subset(split.s_plus, idx)) return qi_global(split, combiner);
  return combine_cond(idx, split, combiner);
}

double qi_adjusted_pvalue_bruteforce(const IndexSet& j, const SignSplit& split, Combiner combiner) {
  if (split.n > kMaxExhaustive) throw SizeError("exhaustive QI closure limited to 25 hypotheses");
  const std::uint64_t base = to_mask(normalize_index_set(j, split.n));
  const std::uint64_t rest = ((std::uint64_t{1} << split.n) - 1) & ~base;
  double worst = 0.0;
  std::uint64_t sub = rest;
  while (true) {
    worst = std::max(worst, qi_local_pvalue(from_mask(base | sub), split, combiner));
    if (sub == 0) break;
    sub = (sub - 1) & rest;
  }
  return worst;
}

std::size_t qi_lower_bound_bruteforce(const IndexSet& i_set, const SignSplit& split,
                                      Combiner combiner, double alpha) {
  const IndexSet idx = normalize_index_set(i_set, split.n);
  std::size_t best = idx.size();
  const std::uint64_t imask = to_mask(idx);
  std::uint64_t sub = imask;
  while (true) {
    if (qi_adjusted_pvalue_bruteforce(from_mask(sub), split, combiner) > alpha) {
      best = std::min(best, idx.size() - static_cast<std::size_t>(std::popcount(sub)));
    }
    if (sub == 0) break;
    sub = (sub - 1) & imask;
  }
  return best;
}

QiResult qi_closed_testing(const std::vector<IndexSet>& queries, const SignSplit& split,
                           Combiner combiner, double alpha) {
  check_alpha(alpha);
  QiResult res;
  res.qi_pvalue = qi_global(split, combiner);
  auto& out = res.bounds;
  for (const auto& q : queries) {
    const IndexSet idx = normalize_index_set(q, split.n);
    out.queries.push_back(idx);
    out.ell_plus.push_back(qi_lower_bound(intersect(idx, split.s_minus), split, combiner, alpha, res.qi_pvalue));
    out.ell_minus.push_back(qi_lower_bound(intersect(idx, split.s_plus), split, combiner, alpha, res.qi_pvalue));
  }
  out.adjusted.resize(split.n);
  for (std::size_t i = 0; i < split.n; ++i) {
    out.adjusted[i] = qi_adjusted(IndexSet{i}, split, combiner, res.qi_pvalue);
    if (out.adjusted[i] <= alpha) (split.in_minus(i) ? out.d_plus : out.d_minus).push_back(i);
  }
  return res;
}

}  // namespace dirinf
