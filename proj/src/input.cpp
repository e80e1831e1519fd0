#include "dirinf/input.hpp"

#include "dirinf/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace dirinf {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, std::size_t line_no, const std::string& column) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("line " + std::to_string(line_no) + ": column '" + column + "' is not a finite number: '" +
                     s + "'");
  }
}

}  // namespace

double arcsine_z(double pi_trt, double se_trt, double pi_ctl, double se_ctl) {
  for (double pi : {pi_trt, pi_ctl}) {
    if (!(pi > 0.0 && pi < 1.0)) throw InputError("survival probability must lie in (0,1)");
  }
  for (double se : {se_trt, se_ctl}) {
    if (!(se > 0.0)) throw InputError("standard error must be positive");
  }
  const double m_trt = pi_trt * (1.0 - pi_trt) / (se_trt * se_trt);
  const double m_ctl = pi_ctl * (1.0 - pi_ctl) / (se_ctl * se_ctl);
  const double diff = std::asin(std::sqrt(pi_trt)) - std::asin(std::sqrt(pi_ctl));
  return diff / std::sqrt(1.0 / (4.0 * m_trt) + 1.0 / (4.0 * m_ctl));
}

Dataset parse_dataset(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!trim(line).empty()) {
      header = split_fields(line);
      break;
    }
  }
  if (header.empty()) throw InputError("empty input: a header row is required");

  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!col.emplace(header[i], i).second) throw InputError("duplicate column '" + header[i] + "'");
  }
  std::set<std::string> names;
  for (const auto& [k, v] : col) names.insert(k);

  Dataset d;
  if (names == std::set<std::string>{"id", "p"}) {
    d.schema = Schema::PValue;
  } else if (names == std::set<std::string>{"id", "z"}) {
    d.schema = Schema::ZStat;
  } else if (names == std::set<std::string>{"id", "pi_trt", "se_trt", "pi_ctl", "se_ctl"}) {
    d.schema = Schema::Survival;
  } else {
    throw InputError("unrecognized header; expected columns {id,p}, {id,z} or "
                     "{id,pi_trt,se_trt,pi_ctl,se_ctl}");
  }

  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != header.size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                       " fields, got " + std::to_string(f.size()));
    }
    const std::string& id = f[col["id"]];
    if (id.empty()) throw InputError("line " + std::to_string(line_no) + ": empty id");
    if (!seen.insert(id).second) throw InputError("line " + std::to_string(line_no) + ": duplicate id '" + id + "'");
    auto num = [&](const char* c) { return parse_number(f[col[c]], line_no, c); };
    d.ids.push_back(id);
    switch (d.schema) {
      case Schema::PValue: {
        const double p = num("p");
        if (!(p >= 0.0 && p <= 1.0)) throw InputError("line " + std::to_string(line_no) + ": p outside [0,1]");
        d.p.push_back(p);
        break;
      }
      case Schema::ZStat: {
        const double z = num("z");
        d.z.push_back(z);
        d.p.push_back(std_normal_sf(z));
        break;
      }
      case Schema::Survival: {
        double z = 0.0;
        try {
          z = arcsine_z(num("pi_trt"), num("se_trt"), num("pi_ctl"), num("se_ctl"));
        } catch (const InputError& e) {
          throw InputError("line " + std::to_string(line_no) + ": " + e.what());
        }
        d.z.push_back(z);
        d.p.push_back(std_normal_sf(z));
        break;
      }
    }
  }
  if (d.ids.empty()) throw InputError("input has a header but no data rows");
  return d;
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return parse_dataset(in);
}

std::vector<Query> parse_subsets(std::istream& in, const Dataset& data) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < data.ids.size(); ++i) index.emplace(data.ids[i], i);
  std::vector<Query> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    Query q;
    q.name = "subset" + std::to_string(out.size() + 1);
    if (const auto colon = line.find(':'); colon != std::string::npos) {
      q.name = trim(line.substr(0, colon));
      line = line.substr(colon + 1);
    }
    for (const auto& id : split_fields(line)) {
      if (id.empty()) continue;
      const auto it = index.find(id);
      if (it == index.end()) {
        throw InputError("subsets line " + std::to_string(line_no) + ": unknown id '" + id + "'");
      }
      q.members.push_back(it->second);
    }
    q.members = normalize_index_set(std::move(q.members), data.size());
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Query> load_subsets(const std::string& path, const Dataset& data) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open subsets file '" + path + "'");
  return parse_subsets(in, data);
}

std::vector<Query> topk_sweep(const Dataset& data) {
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto strength = [&](std::size_t i) {
    return data.z.empty() ? -std::min(data.p[i], 1.0 - data.p[i]) : std::fabs(data.z[i]);
  };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = strength(a), sb = strength(b);
    if (sa != sb) return sa > sb;
    return data.ids[a] < data.ids[b];
  });
  std::vector<Query> out;
  IndexSet members;
  for (std::size_t k = 1; k <= order.size(); ++k) {
    members.push_back(order[k - 1]);
    IndexSet sorted = members;
    std::sort(sorted.begin(), sorted.end());
    out.push_back({"top" + std::to_string(k), std::move(sorted)});
  }
  return out;
}

}  // namespace dirinf
