#include "doctest.h"

#include "common.hpp"
#include "dirinf/closed_testing.hpp"
#include "dirinf/partitioning.hpp"
#include "dirinf/report.hpp"
#include "dirinf/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace dirinf;

namespace {

// theta-hat back from p = 1 - Phi(theta-hat), by bisection
double invert(double p) {
  double lo = -40.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std_normal_sf(mid) > p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("replications are deterministic and seed dependent") {
  const std::vector<double> theta{1.0, -1.0, 0.0};
  CHECK(generate_replication(theta, 5, 10) == generate_replication(theta, 5, 10));
  CHECK(generate_replication(theta, 5, 10) != generate_replication(theta, 5, 11));
  CHECK(generate_replication(theta, 5, 10) != generate_replication(theta, 6, 10));
}

TEST_CASE("null p-values are uniform") {
  const std::vector<double> theta(10, 0.0);
  std::vector<double> pooled;
  for (std::size_t r = 0; r < 500; ++r) {
    const auto p = generate_replication(theta, 99, r);
    pooled.insert(pooled.end(), p.begin(), p.end());
  }
  std::sort(pooled.begin(), pooled.end());
  const double m = static_cast<double>(pooled.size());
  double d = 0.0;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    d = std::max({d, (i + 1) / m - pooled[i], pooled[i] - i / m});
  }
  CHECK(d < 1.628 / std::sqrt(m));  // Kolmogorov-Smirnov at 1%
}

TEST_CASE("positive effects centre on the signal") {
  SimConfig cfg;
  const auto theta = cfg.effective_theta();
  CHECK(std::count(theta.begin(), theta.end(), 3.0) == 15);
  CHECK(std::count(theta.begin(), theta.end(), -3.0) == 15);
  double sum = 0.0;
  const std::size_t b = 400;
  for (std::size_t r = 0; r < b; ++r) {
    const auto p = generate_replication(theta, 7, r);
    for (std::size_t i = 0; i < 15; ++i) sum += invert(p[i]);
  }
  CHECK(std::fabs(sum / (15.0 * b) - 3.0) < 3.0 * 3.0 / std::sqrt(15.0 * b));
}

TEST_CASE("summaries do not depend on the thread count") {
  SimConfig cfg;
  cfg.n = 12;
  cfg.n_plus = 3;
  cfg.n_minus = 3;
  cfg.snr = 2.0;
  cfg.replications = 300;
  cfg.threads = 1;
  const auto serial = run_simulation(cfg);
  cfg.threads = 4;
  const auto parallel = run_simulation(cfg);
  REQUIRE(serial.methods.size() == parallel.methods.size());
  for (std::size_t m = 0; m < serial.methods.size(); ++m) {
    for (std::size_t k = 0; k < kMetricCount; ++k) {
      CHECK(serial.methods[m].metrics[k].mean == parallel.methods[m].metrics[k].mean);
      CHECK(serial.methods[m].metrics[k].mc_se == parallel.methods[m].metrics[k].mc_se);
    }
  }
}

TEST_CASE("a single replication still reports standard errors") {
  SimConfig cfg;
  cfg.replications = 1;
  cfg.methods = {{MethodKind::Dct, Combiner::Fisher, false}, {MethodKind::Pc, Combiner::Simes, false},
                 {MethodKind::Holm, Combiner::Fisher, false}, {MethodKind::Bh, Combiner::Fisher, false}};
  const auto s = run_simulation(cfg);
  CHECK(s.methods.size() == 4);
  CHECK(s.at("pc-simes").metrics[0].mc_se == 0.0);
  const auto j = to_json(s);
  CHECK(j["methods"][0]["metrics"]["coverage"].contains("mc_se"));
  CHECK_THROWS_AS(s.at("nope"), std::out_of_range);
}

TEST_CASE("partitioning bounds dominate closed-testing bounds in every replication") {
  const std::vector<double> theta{2, 2, 2, -2, -2, 0, 0, 1, -1, 0};
  for (std::size_t r = 0; r < 300; ++r) {
    const SignSplit s = sign_split(generate_replication(theta, 3, r));
    for (Combiner c : {Combiner::Fisher, Combiner::ModifiedSimes}) {
      const ClosedTesting ct(HypothesisFamily(s.cond, c, 0.05));
      const auto cs = ap_bounds_shortcut(full_index_set(s.n), s, c, 0.05);
      CHECK(cs.ell_plus_tilde + cs.ell_minus_tilde >= ct.lower_bound(s.s_minus) + ct.lower_bound(s.s_plus));
    }
  }
}

TEST_CASE("configuration errors") {
  SimConfig cfg;
  cfg.n_plus = 40;
  CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
  cfg = SimConfig{};
  cfg.replications = 0;
  CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
  CHECK_THROWS_AS(parse_method_kind("knockoff"), std::invalid_argument);
  CHECK_THROWS_AS(run_preset("fig9", 1, 1), std::invalid_argument);
}

TEST_CASE("presets produce the expected grids") {
  const auto row = run_preset("fig4-row2", 2, 1);
  CHECK(row.size() == 31);
  CHECK(row.back().x == doctest::Approx(3.0));
  CHECK(row.front().summary.theta.size() == 50);
  const auto fig5 = run_preset("fig5", 2, 1);
  CHECK(fig5.size() == 102);
  CHECK(fig5.front().summary.methods[1].method == "ap-simes-tilde");
  std::ostringstream csv;
  write_curve_csv(csv, row);
  std::string header;
  std::getline(std::istringstream(csv.str()) >> std::ws, header);
  CHECK(header == "snr,series,method,metric,value,mc_se");
}

TEST_CASE("familywise directional error of guo-romano under mixed signs") {
  SimConfig cfg;
  cfg.theta = {1.5, -1.5, 0.5, -0.5, 0.0, 0.0, 2.5, -2.5};
  cfg.methods = {{MethodKind::GrFwer, Combiner::Fisher, false}};
  cfg.replications = 4000;
  const auto s = run_simulation(cfg);
  const auto& m = s.at("gr-fwer").metrics[5];
  CHECK(m.mean >= 0.95 - 3.0 * m.mc_se);
}
