#include "dirinf/partitioning.hpp"

#include "dirinf/closed_testing.hpp"
#include "dirinf/detail/prefix_union.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace dirinf {

namespace {

std::vector<double> cond_desc(const IndexSet& s, const SignSplit& split) {
  std::vector<double> v;
  v.reserve(s.size());
  for (auto i : s) v.push_back(split.cond[i]);
  return detail::sorted_descending(std::move(v));
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}

ConfidenceSet finish(std::vector<double> f, double alpha) {
  ConfidenceSet cs;
  cs.f_values = std::move(f);
  for (std::size_t v = 0; v < cs.f_values.size(); ++v) {
    if (cs.f_values[v] > alpha) cs.n_plus.push_back(v);
  }
  const std::size_t size_i = cs.f_values.size() - 1;
  if (cs.n_plus.empty()) {
    // cannot happen while the realized orthant has p-value 1
    cs.ell_plus_tilde = 0;
    cs.ell_minus_tilde = 0;
  } else {
    cs.ell_plus_tilde = cs.n_plus.front();
    cs.ell_minus_tilde = size_i - cs.n_plus.back();
  }
  return cs;
}

}  // namespace

double adaptive_orthant_pvalue(const IndexSet& k_set, const SignSplit& split, Combiner combiner) {
  const IndexSet k = normalize_index_set(k_set, split.n);
  std::vector<double> v;
  for (std::size_t i = 0; i < split.n; ++i) {
    if (split.in_minus(i) == contains(k, i)) continue;
    v.push_back(split.cond[i]);
  }
  std::sort(v.begin(), v.end());
  return combine_sorted(v, combiner);
}

ConfidenceSet partition_confidence_set_bruteforce(const IndexSet& i_set, const SignSplit& split,
                                                  Combiner combiner, double alpha) {
  check_alpha(alpha);
  if (split.n > kMaxExhaustive) {
    throw SizeError("exhaustive partitioning limited to " + std::to_string(kMaxExhaustive) + " parameters");
  }
  const IndexSet idx = normalize_index_set(i_set, split.n);
  const std::uint64_t imask = to_mask(idx);
  const std::uint64_t minus_mask = to_mask(split.s_minus);
  const std::uint64_t full = split.n == 0 ? 0 : (std::uint64_t{1} << split.n) - 1;
  std::vector<double> f(idx.size() + 1, 0.0);
  std::vector<double> scratch;
  for (std::uint64_t k = 0;; ++k) {
    // contradicting coordinates: S- outside K and S+ inside K
    std::uint64_t c = minus_mask ^ k;
    scratch.clear();
    while (c != 0) {
      scratch.push_back(split.cond[static_cast<std::size_t>(std::countr_zero(c))]);
      c &= c - 1;
    }
    std::sort(scratch.begin(), scratch.end());
    const auto v = static_cast<std::size_t>(std::popcount(k & imask));
    f[v] = std::max(f[v], combine_sorted(scratch, combiner));
    if (k == full) break;
  }
  return finish(std::move(f), alpha);
}

ConfidenceSet ap_bounds_shortcut(const IndexSet& i_set, const SignSplit& split, Combiner combiner,
                                 double alpha) {
  check_alpha(alpha);
  const IndexSet idx = normalize_index_set(i_set, split.n);
  const IndexSet out = complement(idx, split.n);
  detail::PrefixUnion eval(combiner, {cond_desc(intersect(split.s_minus, idx), split),
                                      cond_desc(intersect(split.s_minus, out), split),
                                      cond_desc(intersect(split.s_plus, idx), split),
                                      cond_desc(intersect(split.s_plus, out), split)});
  const std::size_t na = eval.group_size(0), nb = eval.group_size(1);
  const std::size_t nc = eval.group_size(2), nd = eval.group_size(3);
  const std::size_t size_i = idx.size(), size_out = out.size();

  std::vector<double> f(size_i + 1, 0.0);
  for (std::size_t v = 0; v <= size_i; ++v) {
    for (std::size_t u = 0; u <= size_out; ++u) {
      const std::size_t k_lo = v > na ? v - na : 0, k_hi = std::min(v, nc);
      const std::size_t j_lo = u > nb ? u - nb : 0, j_hi = std::min(u, nd);
      for (std::size_t k = k_lo; k <= k_hi; ++k) {
        for (std::size_t j = j_lo; j <= j_hi; ++j) {
          const std::array<std::size_t, 4> len{na - (v - k), nb - (u - j), k, j};
          f[v] = std::max(f[v], eval(len));
        }
      }
    }
  }
  return finish(std::move(f), alpha);
}

std::pair<std::size_t, std::size_t> scan_bounds(const std::vector<double>& f, double alpha) {
  if (f.empty()) return {0, 0};
  const std::size_t size_i = f.size() - 1;
  std::size_t lo = 0;
  while (lo < size_i && f[lo] <= alpha) ++lo;
  std::size_t hi = size_i;
  while (hi > 0 && f[hi] <= alpha) --hi;
  return {lo, size_i - hi};
}

// For I = {i} the complement part of an orthant is unconstrained, so the
// worst case takes the t largest values of S-\{i} and S+\{i} merged.
AdjustedBase ap_adjusted_base_pvalues(const SignSplit& split, Combiner combiner) {
  AdjustedBase out;
  out.p_bar.assign(split.n, 1.0);
  out.q_bar.assign(split.n, 1.0);
  for (std::size_t i = 0; i < split.n; ++i) {
    const IndexSet single{i};
    detail::PrefixUnion eval(combiner, {std::vector<double>{split.cond[i]},
                                        cond_desc(complement(single, split.n), split)});
    double worst = 0.0;
    for (std::size_t t = 0; t <= split.n - 1; ++t) {
      const std::array<std::size_t, 2> len{1, t};
      worst = std::max(worst, eval(len));
    }
    // orthants that agree with the selected sign at i leave it out, and
    // the empty choice t = 0 gives 1
    (split.in_minus(i) ? out.p_bar : out.q_bar)[i] = worst;
  }
  return out;
}

ApResult ap_analysis(const std::vector<IndexSet>& queries, const SignSplit& split, Combiner combiner,
                     double alpha) {
  ApResult res;
  for (const auto& q : queries) {
    res.queries.push_back(normalize_index_set(q, split.n));
    res.sets.push_back(ap_bounds_shortcut(res.queries.back(), split, combiner, alpha));
  }
  res.adjusted = ap_adjusted_base_pvalues(split, combiner);
  for (std::size_t i = 0; i < split.n; ++i) {
    if (res.adjusted.p_bar[i] <= alpha) res.d_plus.push_back(i);
    if (res.adjusted.q_bar[i] <= alpha) res.d_minus.push_back(i);
  }
  return res;
}

double alpha_tilde(double alpha, std::size_t n) {
  check_alpha(alpha);
  if (n == 0) throw std::invalid_argument("alpha_tilde: n must be positive");
  const double denom = -std::expm1(-static_cast<double>(n) * std::log(2.0));
  return std::min(alpha / denom, std::nextafter(1.0, 0.0));
}

UnconditionalDecisions unconditional_partition_bounds(const std::vector<double>& p, Combiner combiner,
                                                      double alpha) {
  check_alpha(alpha);
  if (p.empty()) return {};
  const double n = static_cast<double>(p.size());
  UnconditionalDecisions out;
  switch (combiner) {
    case Combiner::Sidak: out.threshold = -std::expm1(std::log1p(-alpha) / n); break;
    case Combiner::Bonferroni: out.threshold = alpha / n; break;
    default: throw std::invalid_argument("unconditional partitioning needs sidak or bonferroni");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0 && p[i] <= 1.0)) throw std::invalid_argument("p-value outside [0,1]");
    if (p[i] <= out.threshold) out.d_plus.push_back(i);
    if (1.0 - p[i] <= out.threshold) out.d_minus.push_back(i);
  }
  return out;
}

double pc_pvalue(std::size_t r, Side side, const SignSplit& split, Combiner combiner) {
  if (r < 1 || r > split.n) throw std::out_of_range("pc_pvalue: r must lie in 1..n");
  const IndexSet& members = side == Side::Plus ? split.s_minus : split.s_plus;
  if (r > members.size()) return 1.0;
  std::vector<double> v;
  for (auto i : members) v.push_back(split.cond[i]);
  std::sort(v.begin(), v.end());
  return combine_sorted(std::span<const double>(v).subspan(r - 1), combiner);
}

PCBounds adaptive_pc_bounds(const SignSplit& split, Combiner combiner, double alpha) {
  check_alpha(alpha);
  PCBounds out;
  for (std::size_t r = 1; r <= split.s_minus.size(); ++r) {
    out.pc_pvalues_plus.push_back(pc_pvalue(r, Side::Plus, split, combiner));
  }
  while (out.l_plus < out.pc_pvalues_plus.size() && out.pc_pvalues_plus[out.l_plus] <= alpha) ++out.l_plus;
  if (out.l_plus == split.n) return out;
  for (std::size_t r = 1; r <= split.s_plus.size(); ++r) {
    out.pc_pvalues_minus.push_back(pc_pvalue(r, Side::Minus, split, combiner));
  }
  while (out.l_minus < out.pc_pvalues_minus.size() && out.pc_pvalues_minus[out.l_minus] <= alpha) ++out.l_minus;
  return out;
}

bool generalized_qi_test(std::size_t a, std::size_t b, const SignSplit& split, Combiner combiner,
                         double alpha) {
  if (!(a >= 1 && a < b && b + 1 <= split.n)) {
    throw std::invalid_argument("generalized_qi_test: need 1 <= a < b <= n-1");
  }
  const PCBounds pc = adaptive_pc_bounds(split, combiner, alpha);
  return pc.l_plus >= a && split.n - pc.l_minus <= b;
}

}  // namespace dirinf
