#include "doctest.h"

#include "common.hpp"
#include "dirinf/directional.hpp"

#include <cmath>

using namespace dirinf;

namespace {

const Combiner kAll[] = {Combiner::Fisher, Combiner::Simes, Combiner::ModifiedSimes, Combiner::Sidak,
                         Combiner::Bonferroni};

}  // namespace

TEST_CASE("sign split of the breast-cancer example") {
  const SignSplit s = testutil::gail_split();
  CHECK(s.s_minus == IndexSet{0});
  CHECK(s.s_plus == IndexSet{1, 2, 3});
  const double expected[] = {0.0403, 0.1020, 0.4451, 0.0068};
  for (int i = 0; i < 4; ++i) CHECK(std::fabs(s.cond[i] - expected[i]) < 5e-4);
  CHECK(s.sign_vector == std::vector<int>{-1, 1, 1, 1});

  // rounded p-values give the same split
  const SignSplit r = sign_split(std::vector<double>{0.0202, 0.9490, 0.7774, 0.9966});
  CHECK(r.s_minus == s.s_minus);
}

TEST_CASE("sign split boundary, doubling and thresholds") {
  const SignSplit half = sign_split(std::vector<double>{0.5});
  CHECK(half.s_minus == IndexSet{0});
  CHECK(half.cond[0] == 1.0);
  const SignSplit quarter = sign_split(std::vector<double>(3, 0.25));
  CHECK(quarter.s_minus == IndexSet{0, 1, 2});
  for (double c : quarter.cond) CHECK(c == 0.5);

  const std::vector<double> p{0.3, 0.3, 0.3, 0.3};
  const SignSplit t = sign_split(p, std::vector<double>{1.0, 0.0, 0.2, 0.6});
  CHECK(t.s_minus == IndexSet{0, 3});
  CHECK(t.cond[0] == doctest::Approx(0.3));                // pinned to S-, raw p
  CHECK(t.cond[1] == doctest::Approx(0.7));                // pinned to S+, raw q
  CHECK(t.cond[2] == doctest::Approx(0.7 / 0.8));
  CHECK(t.cond[3] == doctest::Approx(0.5));

  CHECK_THROWS_AS(sign_split(std::vector<double>{1.2}), std::invalid_argument);
  CHECK_THROWS_AS(sign_split(std::vector<double>{0.2, 0.3}, std::vector<double>{0.5}), std::invalid_argument);
}

TEST_CASE("directional closed testing on the breast-cancer example") {
  const SignSplit s = testutil::gail_split();
  for (double alpha : {0.05, 0.03}) {
    const auto b = dct_bounds({{0, 1, 2, 3}}, s, Combiner::Simes, alpha);
    CHECK(b.ell_plus[0] == 0);
    CHECK(b.ell_minus[0] == 1);
    CHECK(b.d_plus.empty());
    CHECK(b.d_minus == IndexSet{3});
    const auto e = dct_bounds({{0, 1, 2, 3}}, s, Combiner::Simes, alpha, true);
    CHECK(e.ell_minus == b.ell_minus);
    CHECK(e.d_minus == b.d_minus);
  }
  const auto fam = selected_family(s, Combiner::Simes, 0.05);
  CHECK(fam.labels == std::vector<std::string>{"H1-", "H2+", "H3+", "H4+"});
}

TEST_CASE("single parameter") {
  const SignSplit s = sign_split(std::vector<double>{0.01});
  const auto b = dct_bounds({{0}}, s, Combiner::Fisher, 0.05);
  CHECK(b.ell_plus[0] == 1);
  CHECK(b.d_plus == IndexSet{0});
}

TEST_CASE("directional bounds are the closed-testing bounds of the split parts") {
  std::mt19937_64 rng(101);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rep % 11;
    const SignSplit s = sign_split(testutil::random_pvalues(rng, n));
    const IndexSet i = testutil::random_subset(rng, n);
    for (Combiner c : kAll) {
      const auto b = dct_bounds({i}, s, c, 0.05);
      const ClosedTesting ct(selected_family(s, c, 0.05));
      CHECK(b.ell_plus[0] == ct.lower_bound(intersect(i, s.s_minus)));
      CHECK(b.ell_minus[0] == ct.lower_bound(intersect(i, s.s_plus)));
      CHECK(b.ell_plus[0] + b.ell_minus[0] <= i.size());
      CHECK(is_subset(b.d_plus, s.s_minus));
      CHECK(is_subset(b.d_minus, s.s_plus));
      CHECK(b.ell_plus[0] >= intersect(b.d_plus, i).size());
      CHECK(b.ell_minus[0] >= intersect(b.d_minus, i).size());
    }
  }
}

TEST_CASE("qualitative-interaction closed testing on the breast-cancer example") {
  const SignSplit s = testutil::gail_split();
  const QiResult r = qi_closed_testing({{0, 1, 2, 3}}, s, Combiner::Simes, 0.05);
  CHECK(std::fabs(r.qi_pvalue - 0.0403) < 5e-4);
  CHECK(r.bounds.ell_plus[0] == 1);
  CHECK(r.bounds.ell_minus[0] == 1);
  CHECK(r.bounds.d_plus == IndexSet{0});
  CHECK(r.bounds.d_minus == IndexSet{3});

  const QiResult strict = qi_closed_testing({{0, 1, 2, 3}}, s, Combiner::Simes, 0.03);
  CHECK(strict.bounds.ell_plus[0] == 0);
  CHECK(strict.bounds.ell_minus[0] == 0);
  CHECK(strict.bounds.d_plus.empty());
  CHECK(strict.bounds.d_minus.empty());
}

TEST_CASE("one-sided data never shows a qualitative interaction") {
  const SignSplit s = sign_split(std::vector<double>{0.001, 0.002, 0.3});
  const QiResult r = qi_closed_testing({{0, 1, 2}}, s, Combiner::Fisher, 0.05);
  CHECK(r.qi_pvalue == 1.0);
  CHECK(r.bounds.ell_plus[0] == 0);
  CHECK(r.bounds.d_plus.empty());
}

TEST_CASE("qualitative-interaction shortcut equals enumeration of the modified lattice") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 400; ++rep) {
    const std::size_t n = 1 + rep % 7;
    const SignSplit s = sign_split(testutil::random_pvalues(rng, n));
    const IndexSet i = testutil::random_subset(rng, n);
    for (Combiner c : kAll) {
      for (double alpha : {0.05, 0.2}) {
        const QiResult r = qi_closed_testing({i}, s, c, alpha);
        for (std::size_t k = 0; k < n; ++k) {
          CHECK(r.bounds.adjusted[k] == doctest::Approx(qi_adjusted_pvalue_bruteforce({k}, s, c)));
        }
        CHECK(r.bounds.ell_plus[0] == qi_lower_bound_bruteforce(intersect(i, s.s_minus), s, c, alpha));
        CHECK(r.bounds.ell_minus[0] == qi_lower_bound_bruteforce(intersect(i, s.s_plus), s, c, alpha));
        if (!r.bounds.d_plus.empty() || !r.bounds.d_minus.empty()) CHECK(r.qi_pvalue <= alpha);
      }
    }
  }
}
