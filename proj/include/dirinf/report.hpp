#ifndef DIRINF_REPORT_HPP
#define DIRINF_REPORT_HPP

#include "dirinf/simulation.hpp"

#include "json.hpp"

#include <ostream>
#include <vector>

namespace dirinf {

nlohmann::json to_json(const SimSummary& summary);

/// {"points": [{"x", "series", "summary"}...]}
nlohmann::json to_json(const std::vector<SimPoint>& points);

/// Curve rows "snr,series,method,metric,value,mc_se". For the n = 2 sweep the
/// snr column carries theta_2 and series names theta_1.
void write_curve_csv(std::ostream& out, const std::vector<SimPoint>& points);

}  // namespace dirinf

#endif  // DIRINF_REPORT_HPP
