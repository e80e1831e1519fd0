#include "dirinf/report.hpp"

#include <iomanip>

namespace dirinf {

nlohmann::json to_json(const SimSummary& s) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& m : s.methods) {
    nlohmann::json metrics = nlohmann::json::object();
    for (std::size_t k = 0; k < kMetricCount; ++k) {
      metrics[std::string(kMetricNames[k])] = {{"mean", m.metrics[k].mean}, {"mc_se", m.metrics[k].mc_se}};
    }
    methods.push_back({{"method", m.method}, {"metrics", metrics}});
  }
  return {{"theta", s.theta},
          {"snr", s.snr},
          {"alpha", s.alpha},
          {"replications", s.replications},
          {"methods", methods}};
}

nlohmann::json to_json(const std::vector<SimPoint>& points) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& pt : points) arr.push_back({{"x", pt.x}, {"series", pt.series}, {"summary", to_json(pt.summary)}});
  return {{"points", arr}};
}

void write_curve_csv(std::ostream& out, const std::vector<SimPoint>& points) {
  const auto old = out.precision(10);
  out << "snr,series,method,metric,value,mc_se\n";
  for (const auto& pt : points) {
    for (const auto& m : pt.summary.methods) {
      for (std::size_t k = 0; k < kMetricCount; ++k) {
        out << pt.x << ',' << pt.series << ',' << m.method << ',' << kMetricNames[k] << ',' << m.metrics[k].mean
            << ',' << m.metrics[k].mc_se << '\n';
      }
    }
  }
  out.precision(old);
}

}  // namespace dirinf
