#ifndef DIRINF_ORACLE_HPP
#define DIRINF_ORACLE_HPP

#include "dirinf/combiners.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dirinf {

/// Randomized comparison of the polynomial shortcuts against exhaustive
/// enumeration.
struct OracleOptions {
  std::size_t instances = 200;
  std::size_t n_min = 10;
  std::size_t n_max = 10;
  std::vector<Combiner> combiners{Combiner::Fisher, Combiner::Simes, Combiner::ModifiedSimes, Combiner::Sidak,
                                  Combiner::Bonferroni};
  std::vector<double> alphas{0.01, 0.05, 0.2};
  std::uint64_t seed = 1;
  bool inject_fault = false;  // corrupt one f_v of the first shortcut result
};

struct OracleReport {
  std::size_t cases = 0;  // instance x combiner
  std::size_t ap_mismatches = 0;
  std::size_t ct_mismatches = 0;
  std::size_t dominance_violations = 0;
  std::vector<std::string> failures;  // first few offending instances

  bool ok() const noexcept { return ap_mismatches + ct_mismatches + dominance_violations == 0; }
};

OracleReport run_oracle_check(const OracleOptions& options);

}  // namespace dirinf

#endif  // DIRINF_ORACLE_HPP
