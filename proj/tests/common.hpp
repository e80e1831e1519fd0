#ifndef DIRINF_TESTS_COMMON_HPP
#define DIRINF_TESTS_COMMON_HPP

#include "dirinf/directional.hpp"
#include "dirinf/numerics.hpp"

#include <random>
#include <string>
#include <vector>

namespace testutil {

// Subgroup effects of the breast-cancer example, at full precision.
inline std::vector<double> gail_p() {
  std::vector<double> p;
  for (double z : {2.051, -1.635, -0.764, -2.708}) p.push_back(dirinf::std_normal_sf(z));
  return p;
}

inline dirinf::SignSplit gail_split() { return dirinf::sign_split(gail_p()); }

inline std::string data_path(const std::string& name) { return std::string(DIRINF_TEST_DATA) + "/" + name; }

// Mixture of nulls and signals of either sign, with occasional ties.
inline std::vector<double> random_pvalues(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = u(rng);
    const double theta = r < 0.4 ? 0.0 : (r < 0.7 ? 3.0 : -3.0) * u(rng);
    p[i] = dirinf::std_normal_sf(theta + z(rng));
    if (i > 0 && u(rng) < 0.1) p[i] = p[i - 1];
  }
  return p;
}

inline dirinf::IndexSet random_subset(std::mt19937_64& rng, std::size_t n) {
  std::bernoulli_distribution coin(0.5);
  dirinf::IndexSet s;
  for (std::size_t i = 0; i < n; ++i) {
    if (coin(rng)) s.push_back(i);
  }
  return s;
}

}  // namespace testutil

#endif
