#ifndef DIRINF_CLI_HPP
#define DIRINF_CLI_HPP

#include "dirinf/combiners.hpp"
#include "dirinf/input.hpp"

#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace dirinf {

enum ExitCode : int { kExitOk = 0, kExitInput = 2, kExitSize = 3, kExitOracle = 4 };

struct BoundsOptions {
  std::string method = "dct";  // dct ap qi pc holm gr-fwer bh gr-fdr unconditional
  Combiner combiner = Combiner::Simes;
  double alpha = 0.05;
  bool alpha_tilde = false;
  bool exhaustive = false;  // brute-force paths; SizeError above 25
};

/// Report for I = [n] followed by the given queries.
nlohmann::json bounds_report(const Dataset& data, const BoundsOptions& options, const std::vector<Query>& queries);

/// One CSV row per subset of a bounds report.
void write_bounds_csv(std::ostream& out, const nlohmann::json& report);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dirinf

#endif  // DIRINF_CLI_HPP
