#include "dirinf/simulation.hpp"

#include "dirinf/baselines.hpp"
#include "dirinf/closed_testing.hpp"
#include "dirinf/directional.hpp"
#include "dirinf/numerics.hpp"
#include "dirinf/partitioning.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

namespace dirinf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Truth {
  std::size_t n_plus = 0, n_minus = 0, n_zero = 0;
  std::vector<double> theta;

  bool positive(std::size_t i) const { return theta[i] > 0.0; }
  bool negative(std::size_t i) const { return theta[i] < 0.0; }
};

struct Outcome {
  std::size_t ell_plus = 0, ell_minus = 0;
  IndexSet d_plus, d_minus;
  bool non_positive = false;  // negative claims mean theta <= 0
  bool simultaneous = true;
  bool has_discoveries = true;
};

void score(const Outcome& o, const Truth& t, double* row) {
  const std::size_t neg_cap = o.non_positive ? t.n_minus + t.n_zero : t.n_minus;
  row[0] = static_cast<double>(o.ell_plus + o.ell_minus);
  row[1] = static_cast<double>(o.d_plus.size() + o.d_minus.size());
  row[2] = (o.ell_plus <= t.n_plus && o.ell_minus <= neg_cap) ? 1.0 : 0.0;
  row[3] = (o.ell_plus >= 1 || o.ell_minus >= 1) ? 1.0 : 0.0;
  std::size_t pos_in_r = 0, neg_in_r = 0;
  for (const IndexSet* s : {&o.d_plus, &o.d_minus}) {
    for (auto i : *s) {
      if (t.positive(i)) ++pos_in_r;
      if (o.non_positive ? !t.positive(i) : t.negative(i)) ++neg_in_r;
    }
  }
  row[4] = (pos_in_r >= o.d_plus.size() && neg_in_r >= o.d_minus.size()) ? 1.0 : 0.0;
  row[5] = o.simultaneous ? 1.0 : 0.0;
}

Outcome eval_dct(const SignSplit& split, const Truth& t, Combiner c, double alpha) {
  const ClosedTesting ct(HypothesisFamily(split.cond, c, alpha));
  Outcome o;
  o.ell_plus = ct.lower_bound(split.s_minus);
  o.ell_minus = ct.lower_bound(split.s_plus);
  const auto adj = ct.adjusted_pvalues();
  IndexSet true_nulls;
  for (std::size_t i = 0; i < split.n; ++i) {
    if (adj[i] <= alpha) (split.in_minus(i) ? o.d_plus : o.d_minus).push_back(i);
    if (split.in_minus(i) ? !t.positive(i) : !t.negative(i)) true_nulls.push_back(i);
  }
  o.simultaneous = ct.lower_bound(true_nulls) == 0;
  return o;
}

Outcome eval_ap(const SignSplit& split, const Truth& t, Combiner c, double level) {
  const ConfidenceSet cs = ap_bounds_shortcut(full_index_set(split.n), split, c, level);
  const AdjustedBase base = ap_adjusted_base_pvalues(split, c);
  Outcome o;
  o.non_positive = true;
  o.ell_plus = cs.ell_plus_tilde;
  o.ell_minus = cs.ell_minus_tilde;
  IndexSet true_orthant;
  for (std::size_t i = 0; i < split.n; ++i) {
    if (base.p_bar[i] <= level) o.d_plus.push_back(i);
    if (base.q_bar[i] <= level) o.d_minus.push_back(i);
    if (t.positive(i)) true_orthant.push_back(i);
  }
  o.simultaneous = adaptive_orthant_pvalue(true_orthant, split, c) > level;
  return o;
}

Outcome eval_pc(const SignSplit& split, const Truth& t, Combiner c, double alpha) {
  const PCBounds pc = adaptive_pc_bounds(split, c, alpha);
  Outcome o;
  o.ell_plus = pc.l_plus;
  o.ell_minus = pc.l_minus;
  o.simultaneous = pc.l_plus <= t.n_plus && pc.l_minus <= t.n_minus;
  return o;
}

Outcome eval_stepwise(const std::vector<double>& p, const Truth& t, StepwiseName name, double alpha) {
  const StepwiseSpec spec = build_spec(name, p.size(), alpha);
  StepwiseResult r = run_stepwise(p, spec);
  Outcome o;
  o.non_positive = spec.non_positive;
  o.ell_plus = r.d_plus.size();
  o.ell_minus = r.d_minus.size();
  o.d_plus = std::move(r.d_plus);
  o.d_minus = std::move(r.d_minus);
  bool ok = true;
  for (auto i : o.d_plus) ok = ok && t.positive(i);
  for (auto i : o.d_minus) ok = ok && (o.non_positive ? !t.positive(i) : t.negative(i));
  o.simultaneous = ok;
  return o;
}

Outcome evaluate(const MethodSpec& m, const std::vector<double>& p, const SignSplit& split,
                 const Truth& t, double alpha) {
  switch (m.kind) {
    case MethodKind::Dct: return eval_dct(split, t, m.combiner, alpha);
    case MethodKind::Ap:
      return eval_ap(split, t, m.combiner, m.alpha_tilde ? alpha_tilde(alpha, split.n) : alpha);
    case MethodKind::Pc: return eval_pc(split, t, m.combiner, alpha);
    case MethodKind::Holm: return eval_stepwise(p, t, StepwiseName::Holm2n, alpha);
    case MethodKind::GrFwer: return eval_stepwise(p, t, StepwiseName::GuoRomanoFwer, alpha);
    case MethodKind::Bh: return eval_stepwise(p, t, StepwiseName::BhDirectional, alpha);
    case MethodKind::GrFdr: return eval_stepwise(p, t, StepwiseName::GuoRomanoFdr, alpha);
  }
  throw std::logic_error("unhandled method");
}

std::vector<MethodSpec> default_methods() {
  return {{MethodKind::Dct, Combiner::Fisher, false},   {MethodKind::Dct, Combiner::ModifiedSimes, false},
          {MethodKind::Ap, Combiner::Fisher, false},    {MethodKind::Ap, Combiner::ModifiedSimes, false},
          {MethodKind::GrFwer, Combiner::Fisher, false}, {MethodKind::GrFdr, Combiner::Fisher, false}};
}

}  // namespace

std::string MethodSpec::label() const {
  switch (kind) {
    case MethodKind::Holm: return "holm";
    case MethodKind::GrFwer: return "gr-fwer";
    case MethodKind::Bh: return "bh";
    case MethodKind::GrFdr: return "gr-fdr";
    default: break;
  }
  std::string base = kind == MethodKind::Dct ? "dct" : kind == MethodKind::Ap ? "ap" : "pc";
  base += "-" + std::string(combiner_name(combiner));
  if (kind == MethodKind::Ap && alpha_tilde) base += "-tilde";
  return base;
}

MethodKind parse_method_kind(std::string_view name) {
  if (name == "dct") return MethodKind::Dct;
  if (name == "ap") return MethodKind::Ap;
  if (name == "pc") return MethodKind::Pc;
  if (name == "holm") return MethodKind::Holm;
  if (name == "gr-fwer") return MethodKind::GrFwer;
  if (name == "bh") return MethodKind::Bh;
  if (name == "gr-fdr") return MethodKind::GrFdr;
  throw std::invalid_argument("unknown method: " + std::string(name));
}

std::vector<double> SimConfig::effective_theta() const {
  if (!theta.empty()) return theta;
  if (n_plus + n_minus > n) throw std::invalid_argument("n_plus + n_minus exceeds n");
  if (!(snr >= 0.0)) throw std::invalid_argument("snr must be nonnegative");
  std::vector<double> th(n, 0.0);
  for (std::size_t i = 0; i < n_plus; ++i) th[i] = snr;
  for (std::size_t i = 0; i < n_minus; ++i) th[n_plus + i] = -snr;
  return th;
}

const MethodSummary& SimSummary::at(std::string_view label) const {
  for (const auto& m : methods) {
    if (m.method == label) return m;
  }
  throw std::out_of_range("no method " + std::string(label) + " in summary");
}

std::vector<double> generate_replication(const std::vector<double>& theta, std::uint64_t seed,
                                         std::size_t replication) {
  std::mt19937_64 rng(splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(replication)));
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> p(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) p[i] = std_normal_sf(theta[i] + z(rng));
  return p;
}

SimSummary run_simulation(const SimConfig& config) {
  if (config.replications == 0) throw std::invalid_argument("replications must be positive");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
  const std::vector<double> theta = config.effective_theta();
  if (theta.empty()) throw std::invalid_argument("simulation needs n >= 1");
  const std::vector<MethodSpec> methods = config.methods.empty() ? default_methods() : config.methods;

  Truth truth;
  truth.theta = theta;
  for (double th : theta) {
    if (th > 0.0) ++truth.n_plus;
    else if (th < 0.0) ++truth.n_minus;
    else ++truth.n_zero;
  }

  const std::size_t b = config.replications;
  const std::size_t stride = methods.size() * kMetricCount;
  std::vector<double> rows(b * stride);

  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t r = lo; r < hi; ++r) {
      const auto p = generate_replication(theta, config.seed, r);
      const SignSplit split = sign_split(p);
      for (std::size_t m = 0; m < methods.size(); ++m) {
        score(evaluate(methods[m], p, split, truth, config.alpha), truth,
              rows.data() + r * stride + m * kMetricCount);
      }
    }
  };

  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, b));
  if (threads <= 1) {
    work(0, b);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (b + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t lo = t * chunk, hi = std::min(b, lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
  }

  SimSummary out;
  out.theta = theta;
  out.snr = config.theta.empty() ? config.snr : 0.0;
  out.alpha = config.alpha;
  out.replications = b;
  const double db = static_cast<double>(b);
  for (std::size_t m = 0; m < methods.size(); ++m) {
    MethodSummary s;
    s.method = methods[m].label();
    for (std::size_t k = 0; k < kMetricCount; ++k) {
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t r = 0; r < b; ++r) {
        const double x = rows[r * stride + m * kMetricCount + k];
        sum += x;
        sum_sq += x * x;
      }
      const double mean = sum / db;
      const double var = b > 1 ? std::max(0.0, (sum_sq - db * mean * mean) / (db - 1.0)) : 0.0;
      s.metrics[k] = {mean, std::sqrt(var / db)};
    }
    out.methods.push_back(std::move(s));
  }
  return out;
}

std::vector<SimPoint> run_preset(std::string_view preset, std::size_t replications, std::uint64_t seed,
                                 double alpha, unsigned threads) {
  std::vector<SimPoint> points;
  SimConfig cfg;
  cfg.alpha = alpha;
  cfg.replications = replications;
  cfg.seed = seed;
  cfg.threads = threads;
  if (preset == "fig4-row1" || preset == "fig4-row2") {
    cfg.n = 50;
    cfg.n_plus = preset == "fig4-row1" ? 15 : 30;
    cfg.n_minus = preset == "fig4-row1" ? 15 : 0;
    cfg.methods = default_methods();
    for (int s = 0; s <= 30; ++s) {
      cfg.snr = s / 10.0;
      points.push_back({cfg.snr, "", run_simulation(cfg)});
    }
    return points;
  }
  if (preset == "fig5") {
    cfg.methods = {{MethodKind::Dct, Combiner::Simes, false}, {MethodKind::Ap, Combiner::Simes, true}};
    for (double theta1 : {0.0, 2.0}) {
      for (int s = -25; s <= 25; ++s) {
        const double theta2 = s * 0.12;
        cfg.theta = {theta1, theta2};
        points.push_back({theta2, theta1 == 0.0 ? "theta1=0" : "theta1=2", run_simulation(cfg)});
      }
    }
    return points;
  }
  throw std::invalid_argument("unknown preset: " + std::string(preset));
}

}  // namespace dirinf
