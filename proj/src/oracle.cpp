#include "dirinf/oracle.hpp"

#include "dirinf/closed_testing.hpp"
#include "dirinf/directional.hpp"
#include "dirinf/numerics.hpp"
#include "dirinf/partitioning.hpp"

#include "json.hpp"

#include <array>
#include <cmath>
#include <random>

namespace dirinf {

namespace {

constexpr std::size_t kMaxFailureDumps = 5;

bool same_f(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::fabs(a[i] - b[i]) > 1e-9 * std::max(1e-300, std::max(a[i], b[i]))) return false;
  }
  return true;
}

}  // namespace

OracleReport run_oracle_check(const OracleOptions& opt) {
  if (opt.n_min == 0 || opt.n_min > opt.n_max || opt.n_max > 15) {
    throw std::invalid_argument("oracle sizes must satisfy 1 <= n_min <= n_max <= 15");
  }
  if (opt.combiners.empty() || opt.alphas.empty()) throw std::invalid_argument("oracle needs combiners and levels");
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<std::size_t> pick_n(opt.n_min, opt.n_max);
  std::uniform_int_distribution<std::size_t> pick_alpha(0, opt.alphas.size() - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  OracleReport rep;
  bool fault_pending = opt.inject_fault;
  for (std::size_t inst = 0; inst < opt.instances; ++inst) {
    const std::size_t n = pick_n(rng);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = unif(rng);
      const double theta = u < 0.4 ? 0.0 : (u < 0.7 ? 3.0 : -3.0) * unif(rng);
      p[i] = std_normal_sf(theta + gauss(rng));
      if (i > 0 && unif(rng) < 0.1) p[i] = p[i - 1];  // exercise ties
    }
    IndexSet query;
    for (std::size_t i = 0; i < n; ++i) {
      if (unif(rng) < 0.5) query.push_back(i);
    }
    const SignSplit split = sign_split(p);

    for (Combiner c : opt.combiners) {
      const double alpha = opt.alphas[pick_alpha(rng)];
      ++rep.cases;
      ConfidenceSet fast = ap_bounds_shortcut(query, split, c, alpha);
      const ConfidenceSet slow = partition_confidence_set_bruteforce(query, split, c, alpha);
      if (fault_pending) {
        fault_pending = false;
        double& f0 = fast.f_values[0];
        f0 = f0 > alpha ? alpha / 2.0 : 1.0;
        fast.n_plus.clear();
        for (std::size_t v = 0; v < fast.f_values.size(); ++v) {
          if (fast.f_values[v] > alpha) fast.n_plus.push_back(v);
        }
      }

      const HypothesisFamily fam(split.cond, c, alpha);
      const ClosedTesting ct(fam);
      const IndexSet in_minus = intersect(query, split.s_minus);
      const IndexSet in_plus = intersect(query, split.s_plus);
      bool ct_ok = true;
      for (const IndexSet* s : std::array<const IndexSet*, 3>{&query, &in_minus, &in_plus}) {
        ct_ok = ct_ok && ct.lower_bound(*s) == lower_bound_bruteforce(*s, fam);
      }
      const bool ap_ok = fast.n_plus == slow.n_plus && fast.ell_plus_tilde == slow.ell_plus_tilde &&
                         fast.ell_minus_tilde == slow.ell_minus_tilde && same_f(fast.f_values, slow.f_values);

      const std::size_t lp = ct.lower_bound(in_minus), lm = ct.lower_bound(in_plus);
      bool dom_ok = slow.ell_plus_tilde >= lp && slow.ell_minus_tilde >= lm;
      if (in_plus.empty()) dom_ok = dom_ok && slow.ell_plus_tilde == lp;
      if (in_minus.empty()) dom_ok = dom_ok && slow.ell_minus_tilde == lm;

      if (!ap_ok) ++rep.ap_mismatches;
      if (!ct_ok) ++rep.ct_mismatches;
      if (!dom_ok) ++rep.dominance_violations;
      if ((!ap_ok || !ct_ok || !dom_ok) && rep.failures.size() < kMaxFailureDumps) {
        nlohmann::json dump = {{"instance", inst},
                               {"combiner", combiner_name(c)},
                               {"alpha", alpha},
                               {"p", p},
                               {"subset", query},
                               {"shortcut_f", fast.f_values},
                               {"bruteforce_f", slow.f_values},
                               {"shortcut_n_plus", fast.n_plus},
                               {"bruteforce_n_plus", slow.n_plus},
                               {"dct_ell", {lp, lm}},
                               {"failed", {{"partitioning", !ap_ok}, {"closed_testing", !ct_ok}, {"dominance", !dom_ok}}}};
        rep.failures.push_back(dump.dump());
      }
    }
  }
  return rep;
}

}  // namespace dirinf
