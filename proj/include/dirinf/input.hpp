#ifndef DIRINF_INPUT_HPP
#define DIRINF_INPUT_HPP

#include "dirinf/index_set.hpp"

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dirinf {

/// Malformed or inconsistent input data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Schema { PValue, ZStat, Survival };

/// Parsed analysis input. z is filled for the z and survival schemas.
struct Dataset {
  Schema schema = Schema::ZStat;
  std::vector<std::string> ids;
  std::vector<double> p;
  std::vector<double> z;

  std::size_t size() const noexcept { return ids.size(); }
};

/// Header must be exactly one of {id,p}, {id,z} or
/// {id,pi_trt,se_trt,pi_ctl,se_ctl}, in any column order.
Dataset parse_dataset(std::istream& in);
Dataset load_dataset(const std::string& path);

/// Arcsine-square-root difference of two survival probabilities, using the
/// effective sample size pi (1 - pi) / se^2 for each arm.
double arcsine_z(double pi_trt, double se_trt, double pi_ctl, double se_ctl);

/// Named subset query.
struct Query {
  std::string name;
  IndexSet members;
};

/// One subset per non-empty line as comma-separated ids; an optional
/// "name:" prefix labels it. Unknown ids raise InputError.
std::vector<Query> parse_subsets(std::istream& in, const Dataset& data);
std::vector<Query> load_subsets(const std::string& path, const Dataset& data);

/// I_k = the k strongest effects, k = 1..n, ordered by |z| (or by
/// min(p, 1-p) for the p schema) with ties broken by id.
std::vector<Query> topk_sweep(const Dataset& data);

}  // namespace dirinf

#endif  // DIRINF_INPUT_HPP
