#include "doctest.h"

#include "dirinf/combiners.hpp"
#include "dirinf/detail/prefix_union.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace dirinf;

namespace {

const Combiner kAll[] = {Combiner::Fisher, Combiner::Simes, Combiner::ModifiedSimes, Combiner::Sidak,
                         Combiner::Bonferroni};

double comb(std::vector<double> v, Combiner c) { return combine(v, c); }

}  // namespace

TEST_CASE("fisher spot value") {
  CHECK(std::fabs(comb({0.202, 0.202}, Combiner::Fisher) - 0.1713) < 1e-4);
}

TEST_CASE("simes on the breast-cancer conditional p-values") {
  CHECK(std::fabs(comb({0.0068, 0.1020, 0.4451}, Combiner::Simes) - 0.0203) < 1e-4);
  CHECK(std::fabs(comb({0.0068, 0.0403, 0.1020, 0.4451}, Combiner::Simes) - 0.0271) < 1e-4);
}

TEST_CASE("modified simes against a term-by-term evaluation") {
  // three values above one half: multiplier 2 * (3 + 1) = 8
  // terms 8 * 0.01, 8/2 * 0.2, 8/3 * 0.6, 8/4 * 0.7, 8/5 * 0.9
  const double expected = std::min({0.08, 0.8, 1.6, 1.4, 1.44});
  CHECK(comb({0.9, 0.01, 0.7, 0.2, 0.6}, Combiner::ModifiedSimes) == doctest::Approx(expected));
  // capped at one
  CHECK(comb({0.6, 0.7, 0.8}, Combiner::ModifiedSimes) == 1.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 200; ++rep) {
    const double a = u(rng), b = u(rng);
    CHECK(comb({a, b}, Combiner::ModifiedSimes) == comb({a, b}, Combiner::Simes));
  }
}

TEST_CASE("singletons pass through and the empty set gives one") {
  for (Combiner c : kAll) {
    for (double x : {0.0, 1e-9, 0.03, 0.5, 0.97, 1.0}) {
      CHECK(comb({x}, c) == doctest::Approx(x).epsilon(1e-12));
    }
    CHECK(comb({}, c) == 1.0);
  }
}

TEST_CASE("fisher with a zero value is zero; inputs are validated") {
  CHECK(comb({0.0, 0.9, 0.9}, Combiner::Fisher) == 0.0);
  for (Combiner c : kAll) {
    CHECK_THROWS_AS(comb({0.2, 1.1}, c), std::invalid_argument);
    CHECK_THROWS_AS(comb({-0.1}, c), std::invalid_argument);
    CHECK_THROWS_AS(comb({NAN}, c), std::invalid_argument);
  }
}

TEST_CASE("combiner names round trip") {
  for (Combiner c : kAll) CHECK(parse_combiner(combiner_name(c)) == c);
  CHECK_THROWS_AS(parse_combiner("alrt"), std::invalid_argument);
}

TEST_CASE("monotonicity, symmetry and pointwise orderings") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> size(1, 12);
  for (int rep = 0; rep < 2000; ++rep) {
    const int d = size(rng);
    std::vector<double> v(d), w(d);
    for (int i = 0; i < d; ++i) {
      v[i] = u(rng);
      w[i] = std::min(1.0, v[i] + (u(rng) < 0.5 ? 0.0 : 0.3 * u(rng)));
    }
    auto shuffled = v;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (Combiner c : kAll) {
      CHECK(combine(v, c) <= combine(w, c) + 1e-15);
      CHECK(combine(v, c) == doctest::Approx(combine(shuffled, c)).epsilon(1e-13));
      CHECK(combine(v, c) <= 1.0);
    }
    CHECK(combine(v, Combiner::Bonferroni) >= combine(v, Combiner::Sidak) - 1e-15);
    CHECK(combine(v, Combiner::Simes) <= combine(v, Combiner::Bonferroni) + 1e-15);
  }
}

TEST_CASE("validity under the global null") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int reps = 20000;
  for (int d : {1, 2, 5, 20}) {
    std::vector<std::vector<double>> combined(std::size(kAll));
    std::vector<double> v(d);
    for (int r = 0; r < reps; ++r) {
      for (auto& x : v) x = u(rng);
      for (std::size_t k = 0; k < std::size(kAll); ++k) combined[k].push_back(combine(v, kAll[k]));
    }
    for (std::size_t k = 0; k < std::size(kAll); ++k) {
      for (double alpha : {0.01, 0.05, 0.1}) {
        const double freq =
            static_cast<double>(std::count_if(combined[k].begin(), combined[k].end(),
                                              [&](double x) { return x <= alpha; })) / reps;
        const double se = std::sqrt(alpha * (1.0 - alpha) / reps);
        INFO("combiner " << combiner_name(kAll[k]) << " d=" << d << " alpha=" << alpha);
        CHECK(freq <= alpha + 3.0 * se);
      }
    }
  }
}

TEST_CASE("prefix-union evaluation equals direct combination") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> size(0, 6), groups(1, 4);
  for (int rep = 0; rep < 500; ++rep) {
    const int g = groups(rng);
    std::vector<std::vector<double>> gs(g);
    for (auto& grp : gs) {
      grp.resize(size(rng));
      for (auto& x : grp) x = u(rng) < 0.1 ? 0.5 : u(rng);
      grp = detail::sorted_descending(grp);
    }
    for (Combiner c : kAll) {
      detail::PrefixUnion pu(c, gs);
      std::vector<std::size_t> len(g);
      std::vector<double> pooled;
      for (int k = 0; k < g; ++k) {
        len[k] = std::uniform_int_distribution<std::size_t>(0, gs[k].size())(rng);
        pooled.insert(pooled.end(), gs[k].begin(), gs[k].begin() + static_cast<long>(len[k]));
      }
      CHECK(pu(len) == doctest::Approx(combine(pooled, c)).epsilon(1e-12));
    }
  }
}
