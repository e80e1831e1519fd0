#include "dirinf/cli.hpp"

#include "dirinf/baselines.hpp"
#include "dirinf/closed_testing.hpp"
#include "dirinf/directional.hpp"
#include "dirinf/oracle.hpp"
#include "dirinf/partitioning.hpp"
#include "dirinf/report.hpp"
#include "dirinf/simulation.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dirinf {

namespace {

using nlohmann::json;

json id_list(const Dataset& d, const IndexSet& s) {
  json arr = json::array();
  for (auto i : s) arr.push_back(d.ids[i]);
  return arr;
}

std::size_t count_in(const IndexSet& s, const IndexSet& query) { return intersect(s, query).size(); }

json bound_entry(const std::string& name, const Dataset& d, const IndexSet& members, std::size_t lp,
                 std::size_t lm) {
  return {{"subset", name},
          {"ids", id_list(d, members)},
          {"size", members.size()},
          {"ell_plus", lp},
          {"ell_minus", lm},
          {"n_plus_interval", {lp, members.size() - lm}}};
}

bool is_stepwise(const std::string& m) { return m == "holm" || m == "gr-fwer" || m == "bh" || m == "gr-fdr"; }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

json bounds_report(const Dataset& data, const BoundsOptions& opt, const std::vector<Query>& extra) {
  const std::size_t n = data.size();
  const double level = opt.alpha_tilde ? alpha_tilde(opt.alpha, n) : opt.alpha;
  const SignSplit split = sign_split(data.p);

  std::vector<Query> queries{{"all", full_index_set(n)}};
  queries.insert(queries.end(), extra.begin(), extra.end());
  std::vector<IndexSet> sets;
  for (const auto& q : queries) sets.push_back(q.members);

  json rep;
  rep["method"] = opt.method;
  rep["combiner"] = is_stepwise(opt.method) ? json(nullptr) : json(combiner_name(opt.combiner));
  rep["alpha"] = opt.alpha;
  rep["level"] = {{"name", opt.alpha_tilde ? "alpha-tilde" : "alpha"}, {"value", level}};
  rep["n"] = n;
  rep["s_minus"] = id_list(data, split.s_minus);
  rep["qi_pvalue"] = nullptr;
  rep["pc_bounds"] = nullptr;
  json entries = json::array();
  json disc;

  auto directional_discoveries = [&](const DirectionalBounds& b, bool qi) {
    json adj = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      adj.push_back({{"id", data.ids[i]},
                     {"hypothesis", std::string(split.in_minus(i) ? "theta<=0" : "theta>=0")},
                     {"conditional_p", split.cond[i]},
                     {"adjusted_p", b.adjusted[i]}});
    }
    disc = {{"positive", id_list(data, b.d_plus)},
            {"negative", id_list(data, b.d_minus)},
            {"negative_claim", "theta<0"},
            {"adjusted", adj}};
    for (std::size_t q = 0; q < queries.size(); ++q) {
      entries.push_back(bound_entry(queries[q].name, data, b.queries[q], b.ell_plus[q], b.ell_minus[q]));
    }
    (void)qi;
  };

  if (opt.method == "dct") {
    directional_discoveries(dct_bounds(sets, split, opt.combiner, level, opt.exhaustive), false);
  } else if (opt.method == "qi") {
    QiResult r = qi_closed_testing(sets, split, opt.combiner, level);
    if (opt.exhaustive) {
      if (n > kMaxExhaustive) throw SizeError("exhaustive QI closure limited to 25 hypotheses");
      for (std::size_t q = 0; q < sets.size(); ++q) {
        const IndexSet s = normalize_index_set(sets[q], n);
        r.bounds.ell_plus[q] = qi_lower_bound_bruteforce(intersect(s, split.s_minus), split, opt.combiner, level);
        r.bounds.ell_minus[q] = qi_lower_bound_bruteforce(intersect(s, split.s_plus), split, opt.combiner, level);
      }
    }
    rep["qi_pvalue"] = r.qi_pvalue;
    directional_discoveries(r.bounds, true);
  } else if (opt.method == "ap") {
    ApResult r = ap_analysis(sets, split, opt.combiner, level);
    if (opt.exhaustive) {
      for (std::size_t q = 0; q < sets.size(); ++q) {
        r.sets[q] = partition_confidence_set_bruteforce(r.queries[q], split, opt.combiner, level);
      }
    }
    for (std::size_t q = 0; q < queries.size(); ++q) {
      const auto& cs = r.sets[q];
      json e = bound_entry(queries[q].name, data, r.queries[q], cs.ell_plus_tilde, cs.ell_minus_tilde);
      e["n_plus_set"] = cs.n_plus;
      e["f_values"] = cs.f_values;
      entries.push_back(e);
    }
    json adj = json::array();
    for (std::size_t i = 0; i < n; ++i) {
      adj.push_back({{"id", data.ids[i]}, {"p_bar", r.adjusted.p_bar[i]}, {"q_bar", r.adjusted.q_bar[i]}});
    }
    disc = {{"positive", id_list(data, r.d_plus)},
            {"negative", id_list(data, r.d_minus)},
            {"negative_claim", "theta<=0"},
            {"adjusted", adj}};
  } else if (opt.method == "pc") {
    const PCBounds pc = adaptive_pc_bounds(split, opt.combiner, level);
    rep["pc_bounds"] = {{"l_plus", pc.l_plus},
                        {"l_minus", pc.l_minus},
                        {"pvalues_plus", pc.pc_pvalues_plus},
                        {"pvalues_minus", pc.pc_pvalues_minus}};
    entries.push_back(bound_entry("all", data, full_index_set(n), pc.l_plus, pc.l_minus));
    disc = {{"positive", json::array()}, {"negative", json::array()}, {"negative_claim", "theta<0"}};
  } else if (is_stepwise(opt.method)) {
    const StepwiseSpec spec = build_spec(parse_stepwise(opt.method), n, level);
    const StepwiseResult r = run_stepwise(data.p, spec);
    for (const auto& q : queries) {
      entries.push_back(bound_entry(q.name, data, q.members, count_in(r.d_plus, q.members),
                                    count_in(r.d_minus, q.members)));
    }
    disc = {{"positive", id_list(data, r.d_plus)},
            {"negative", id_list(data, r.d_minus)},
            {"negative_claim", spec.non_positive ? "theta<=0" : "theta<0"},
            {"critical_values", spec.critical_values}};
  } else if (opt.method == "unconditional") {
    const UnconditionalDecisions r = unconditional_partition_bounds(data.p, opt.combiner, level);
    for (const auto& q : queries) {
      entries.push_back(bound_entry(q.name, data, q.members, count_in(r.d_plus, q.members),
                                    count_in(r.d_minus, q.members)));
    }
    disc = {{"positive", id_list(data, r.d_plus)},
            {"negative", id_list(data, r.d_minus)},
            {"negative_claim", "theta<=0"},
            {"threshold", r.threshold}};
  } else {
    throw std::invalid_argument("unknown method '" + opt.method + "'");
  }

  rep["bounds"] = entries.front();
  rep["subsets"] = json(std::vector<json>(entries.begin() + 1, entries.end()));
  rep["discoveries"] = disc;
  return rep;
}

void write_bounds_csv(std::ostream& out, const json& rep) {
  out << "subset,size,ell_plus,ell_minus,n_plus_low,n_plus_high,n_plus_set\n";
  auto row = [&](const json& e) {
    std::string set;
    if (e.contains("n_plus_set")) {
      for (const auto& v : e["n_plus_set"]) set += (set.empty() ? "" : " ") + std::to_string(v.get<std::size_t>());
    }
    out << e["subset"].get<std::string>() << ',' << e["size"] << ',' << e["ell_plus"] << ',' << e["ell_minus"]
        << ',' << e["n_plus_interval"][0] << ',' << e["n_plus_interval"][1] << ',' << set << '\n';
  };
  row(rep["bounds"]);
  for (const auto& e : rep["subsets"]) row(e);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simultaneous directional inference: sign discoveries and lower bounds on the numbers of "
               "positive and negative parameters."};
  app.require_subcommand(1);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "bounds and discoveries for a data file");
  BoundsOptions bo;
  std::string input, subsets_path, output, format = "json", level = "alpha", combiner = "simes";
  bool topk = false;
  bounds->add_option("--input", input, "CSV with columns {id,p}, {id,z} or {id,pi_trt,se_trt,pi_ctl,se_ctl}")
      ->required();
  bounds->add_option("--method", bo.method, "dct|ap|qi|pc|holm|gr-fwer|bh|gr-fdr|unconditional")
      ->check(CLI::IsMember({"dct", "ap", "qi", "pc", "holm", "gr-fwer", "bh", "gr-fdr", "unconditional"}));
  bounds->add_option("--combiner", combiner, "fisher|simes|msimes|sidak|bonferroni");
  bounds->add_option("--alpha", bo.alpha, "nominal level")->check(CLI::Range(0.0, 1.0));
  bounds->add_option("--level", level, "alpha|alpha-tilde")->check(CLI::IsMember({"alpha", "alpha-tilde"}));
  bounds->add_option("--subsets", subsets_path, "one subset of ids per line, optional 'name:' prefix");
  bounds->add_flag("--topk-sweep", topk, "add I_k = the k largest |z|, k = 1..n");
  bounds->add_option("--output", output, "write here instead of stdout");
  bounds->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  bounds->add_flag("--oracle", bo.exhaustive, "use exhaustive enumeration (n <= 25)");

  // oracle-check
  auto* oracle = app.add_subcommand("oracle-check", "compare shortcuts with exhaustive enumeration");
  OracleOptions oo;
  std::size_t oracle_n = 10;
  std::string oracle_combiner = "all";
  oracle->add_option("--R", oo.instances, "random instances");
  oracle->add_option("--n", oracle_n, "parameters per instance (1..15)");
  oracle->add_option("--combiner", oracle_combiner, "all or one combiner name");
  oracle->add_option("--seed", oo.seed, "RNG seed");
  oracle->add_flag("--inject-fault", oo.inject_fault, "corrupt one shortcut value (harness self-test)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo evaluation");
  std::string preset, methods_arg = "dct,ap,gr-fwer,gr-fdr", sim_combiners = "fisher,msimes", theta_arg;
  std::string sim_output, sim_format = "json", sim_level = "alpha";
  SimConfig cfg;
  sim->add_option("--preset", preset, "fig4-row1|fig4-row2|fig5");
  sim->add_option("--B", cfg.replications, "replications");
  sim->add_option("--seed", cfg.seed, "RNG seed");
  sim->add_option("--alpha", cfg.alpha, "nominal level")->check(CLI::Range(0.0, 1.0));
  sim->add_option("--threads", cfg.threads, "worker threads, 0 = all cores");
  sim->add_option("--n", cfg.n, "number of parameters");
  sim->add_option("--n-plus", cfg.n_plus, "number of positive parameters");
  sim->add_option("--n-minus", cfg.n_minus, "number of negative parameters");
  sim->add_option("--snr", cfg.snr, "absolute nonzero mean");
  sim->add_option("--theta", theta_arg, "explicit comma-separated parameter vector");
  sim->add_option("--methods", methods_arg, "comma-separated: dct,ap,pc,holm,gr-fwer,bh,gr-fdr");
  sim->add_option("--combiner", sim_combiners, "comma-separated combiners for dct/ap/pc");
  sim->add_option("--level", sim_level, "AP level: alpha|alpha-tilde")->check(CLI::IsMember({"alpha", "alpha-tilde"}));
  sim->add_option("--output", sim_output, "write <prefix>.json and <prefix>.csv");
  sim->add_option("--format", sim_format, "stdout format without --output: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (bounds->parsed()) {
      bo.combiner = parse_combiner(combiner);
      bo.alpha_tilde = level == "alpha-tilde";
      const Dataset data = load_dataset(input);
      std::vector<Query> queries;
      if (!subsets_path.empty()) queries = load_subsets(subsets_path, data);
      if (topk) {
        auto k = topk_sweep(data);
        queries.insert(queries.end(), k.begin(), k.end());
      }
      const json rep = bounds_report(data, bo, queries);
      std::ostringstream text;
      if (format == "csv") write_bounds_csv(text, rep);
      else text << rep.dump(2) << '\n';
      if (output.empty()) out << text.str();
      else write_text(output, text.str());
      return kExitOk;
    }
    if (oracle->parsed()) {
      oo.n_min = oo.n_max = oracle_n;
      if (oracle_combiner != "all") oo.combiners = {parse_combiner(oracle_combiner)};
      const OracleReport r = run_oracle_check(oo);
      out << (r.ok() ? "PASS" : "FAIL") << " oracle-check: " << r.cases << " cases, " << r.ap_mismatches
          << " partitioning mismatches, " << r.ct_mismatches << " closed-testing mismatches, "
          << r.dominance_violations << " dominance violations\n";
      for (const auto& f : r.failures) err << "offending instance: " << f << '\n';
      return r.ok() ? kExitOk : kExitOracle;
    }
    if (sim->parsed()) {
      std::vector<SimPoint> points;
      if (!preset.empty()) {
        points = run_preset(preset, cfg.replications, cfg.seed, cfg.alpha, cfg.threads);
      } else {
        for (const auto& t : split_list(theta_arg)) cfg.theta.push_back(std::stod(t));
        const auto combs = split_list(sim_combiners);
        for (const auto& m : split_list(methods_arg)) {
          const MethodKind kind = parse_method_kind(m);
          if (kind == MethodKind::Dct || kind == MethodKind::Ap || kind == MethodKind::Pc) {
            for (const auto& c : combs) {
              cfg.methods.push_back({kind, parse_combiner(c), kind == MethodKind::Ap && sim_level == "alpha-tilde"});
            }
          } else {
            cfg.methods.push_back({kind, Combiner::Fisher, false});
          }
        }
        points.push_back({cfg.theta.empty() ? cfg.snr : 0.0, "", run_simulation(cfg)});
      }
      if (!sim_output.empty()) {
        write_text(sim_output + ".json", to_json(points).dump(2) + "\n");
        std::ostringstream csv;
        write_curve_csv(csv, points);
        write_text(sim_output + ".csv", csv.str());
      } else if (sim_format == "csv") {
        write_curve_csv(out, points);
      } else {
        out << to_json(points).dump(2) << '\n';
      }
      return kExitOk;
    }
  } catch (const SizeError& e) {
    err << "size error: " << e.what() << '\n';
    return kExitSize;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace dirinf
