#include "app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "infobounds/campaign.hpp"
#include "infobounds/divergences.hpp"
#include "infobounds/error.hpp"
#include "infobounds/io.hpp"
#include "infobounds/list_decoding.hpp"
#include "infobounds/majorization.hpp"
#include "infobounds/source_coding.hpp"
#include "infobounds/worked_example.hpp"

namespace infobounds::cli {

namespace {

using nlohmann::json;

struct Common {
  std::string unit = "bits";
  double tolerance = kDefaultTolerance;
  std::uint64_t seed = 0;
  std::string out;
  unsigned D = 2;
};

/// Converts nats to the requested presentation unit.
class Units {
 public:
  Units(const std::string& name, unsigned D) : name_(name) {
    if (name == "bits") {
      divisor_ = std::log(2.0);
    } else if (name == "nats") {
      divisor_ = 1.0;
    } else if (name == "logD") {
      require(D >= 2, ErrorKind::InvalidArgument, "--unit logD needs --D >= 2");
      divisor_ = std::log(static_cast<double>(D));
      name_ = "log" + std::to_string(D);
    } else {
      fail(ErrorKind::InvalidArgument, "unknown unit '" + name + "'");
    }
  }

  double operator()(double nats) const { return nats / divisor_; }
  json operator()(ExtReal nats) const {
    return nats.is_finite() ? json((*this)(nats.value())) : json("+inf");
  }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  double divisor_ = 1.0;
};

json ext(ExtReal v) { return v.is_finite() ? json(v.value()) : json("+inf"); }

json bound_record(double raw, int iterations = -1) {
  json j{{"raw", raw}, {"clamped", std::max(raw, 0.0)}};
  if (iterations >= 0) j["iterations"] = iterations;
  return j;
}

std::string sig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Flattened "path: value" lines for the human-readable summary.
void summarize(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) summarize(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      summarize(j[i], prefix + "[" + std::to_string(i) + "]", os);
    }
  } else if (j.is_number_float()) {
    os << prefix << ": " << sig9(j.get<double>()) << "\n";
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

void emit(const json& report, const Common& common, std::ostream& out) {
  if (common.out.empty()) {
    out << report.dump(2) << "\n";
    return;
  }
  std::ofstream file(common.out);
  require(file.good(), ErrorKind::InvalidArgument, "cannot write '" + common.out + "'");
  file << report.dump(2) << "\n";
  summarize(report, "", out);
}

std::vector<FGenerator> generators(const std::vector<std::string>& names) {
  std::vector<FGenerator> out;
  for (const auto& n : names) out.push_back(FGenerator::from_name(n));
  return out;
}

// --- subcommands -----------------------------------------------------------

struct DivergenceArgs {
  std::string p, q, joint, f = "kl";
};

int cmd_divergence(const DivergenceArgs& a, const Common& c, std::ostream& out) {
  const Units units(c.unit, c.D);
  const auto f = FGenerator::from_name(a.f);
  // Only relative entropy carries an information unit.
  const auto present = [&](ExtReal v) { return f.name() == "kl" ? units(v) : ext(v); };
  json report{{"command", "divergence"}, {"f", f.name()}, {"unit", units.name()}};
  require(!a.p.empty() || !a.joint.empty(), ErrorKind::InvalidArgument,
          "divergence needs --p/--q or --joint");
  if (!a.p.empty()) {
    require(!a.q.empty(), ErrorKind::InvalidArgument, "--p needs --q");
    const auto p = io::read_pmf(io::load_json(a.p), c.tolerance);
    const auto q = io::read_pmf(io::load_json(a.q), c.tolerance);
    report["divergence"] = present(f_divergence(p, q, f));
    report["total_variation"] = total_variation(p, q);
    report["renyi_entropy_p"] = units(renyi_entropy(p, 1.0));
  }
  if (!a.joint.empty()) {
    const auto joint = io::read_joint(io::load_json(a.joint), c.tolerance);
    report["conditional_entropy"] = units(conditional_entropy(joint));
    report["expected_divergence_to_uniform"] = present(expected_div_to_uniform(joint, f));
    report["map_error"] = map_error(joint);
  }
  emit(report, c, out);
  return kOk;
}

struct ListboundArgs {
  std::string joint, rule;
  std::vector<std::string> f;
  std::optional<double> gamma;
  std::size_t L = 1;
  bool all = false;
};

int cmd_listbound(const ListboundArgs& a, const Common& c, std::ostream& out) {
  const Units units(c.unit, c.D);
  const auto joint = io::read_joint(io::load_json(a.joint), c.tolerance);
  const VariableListRule rule = a.rule.empty()
                                    ? VariableListRule(top_l_rule(joint, a.L))
                                    : io::read_rule(io::load_json(a.rule), joint);
  const std::size_t M = joint.num_x();
  const double p = error_prob(joint, rule);
  const double h = conditional_entropy(joint);

  json report{
      {"command", "listbound"},
      {"unit", units.name()},
      {"M", M},
      {"num_y", joint.num_y()},
      {"rule", io::to_json(rule, joint)},
      {"error_probability", p},
      {"map_error", map_error(joint)},
      {"conditional_entropy", units(h)},
      {"expected_list_size", expected_list_size(joint, rule)},
      {"expected_log_list_size", units(expected_log_list_size(joint, rule))},
      {"max_list_size", rule.max_list_size()},
  };
  json bounds = json::object();

  const auto ak = ak_invert(h, M, expected_log_list_size(joint, rule), rule.max_list_size());
  bounds["fano_variable_list"] = bound_record(ak.general.p, ak.general.iterations);
  bounds["fano_max_list"] = bound_record(ak.max_list->p, ak.max_list->iterations);

  const auto opt = optimize_gamma(joint, rule);
  bounds["egamma_optimized"] = bound_record(opt.bound);
  bounds["egamma_optimized"]["gamma"] = opt.gamma;
  bounds["egamma_optimized"]["candidates"] = opt.candidates;

  const double witness_gamma = a.gamma.value_or(opt.gamma);
  if (a.gamma) {
    bounds["egamma_at_gamma"] = bound_record(egamma_bound(joint, rule, *a.gamma));
    bounds["egamma_at_gamma"]["gamma"] = *a.gamma;
  }
  if (a.gamma || a.all) {
    const auto w = equality_check(joint, rule, witness_gamma);
    json violations = json::array();
    for (const auto& [y, reason] : w.violations) {
      violations.push_back({{"y", joint.y_labels()[y]}, {"reason", reason}});
    }
    bounds["equality_check"] = {{"gamma", w.gamma},
                                {"alpha", w.alpha},
                                {"satisfied", w.satisfied},
                                {"violations", std::move(violations)}};
  }

  if (const auto fixed = io::as_fixed(rule)) {
    const std::size_t L = fixed->list_size();
    std::vector<std::string> names = a.f;
    if (a.all) names = {"kl", "tv", "chi2", "egamma:1.5"};
    if (names.empty()) names = {"kl"};
    json gen = json::array();
    json refined = json::array();
    for (const auto& f : generators(names)) {
      const auto check = gen_fano_check(joint, *fixed, f);
      const auto inv = gen_fano_invert(check.lhs, M, L, f);
      gen.push_back({{"f", f.name()},
                     {"lhs", ext(check.lhs)},
                     {"rhs", ext(check.rhs)},
                     {"holds", check.holds},
                     {"bound", bound_record(inv.p, inv.iterations)}});
      if (!f.has_curvature_floor() || f.curvature_floor(1.0, 1.0) <= 0.0) continue;
      try {
        const auto r = refined_bound(joint, *fixed, f);
        json rec{{"f", f.name()},
                 {"xi1_star", r.xi1_star},
                 {"xi2_star", r.xi2_star},
                 {"m_f", r.m_f_used},
                 {"expected_posterior", r.expected_posterior},
                 {"lhs", ext(r.lhs)},
                 {"base_rhs", ext(r.base_rhs)},
                 {"correction_a", r.correction_a},
                 {"bound_a", ext(r.bound_a)},
                 {"p_bound_a", bound_record(r.p_bound_a.p, r.p_bound_a.iterations)}};
        if (r.bound_b) {
          rec["correction_b"] = *r.correction_b;
          rec["bound_b"] = ext(*r.bound_b);
          rec["p_bound_b"] = bound_record(r.p_bound_b->p, r.p_bound_b->iterations);
        }
        refined.push_back(std::move(rec));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotApplicable) throw;
        refined.push_back({{"f", f.name()}, {"not_applicable", e.what()}});
      }
    }
    const auto binary = fano_fixed_invert(h, M, L);
    bounds["list_size"] = L;
    bounds["generalized_fano"] = std::move(gen);
    bounds["fano_binary_kl"] = bound_record(binary.p, binary.iterations);
    bounds["refined_fano"] = std::move(refined);
  }
  report["bounds"] = std::move(bounds);
  emit(report, c, out);
  return kOk;
}

struct CampbellArgs {
  std::string pmf, code;
  std::vector<double> rho{1.0};
  unsigned k = 1;
  bool exact = false;
};

json campbell_record(const CampbellReport& r, const CodeSpec& code) {
  const double log_d = std::log(static_cast<double>(r.D));
  return {{"lengths", io::to_json(code)["lengths"]},
          {"kraft_sum", kraft_sum(code)},
          {"lambda_k", {{"logD", r.lambda_k}, {"nats", r.lambda_k * log_d}}},
          {"normalized_cgf", {{"logD", r.normalized_cgf}, {"nats", r.normalized_cgf * log_d}}},
          {"renyi_term", {{"logD", r.renyi_term}, {"nats", r.renyi_term * log_d}}},
          {"converse_margin", {{"logD", r.converse_margin}, {"nats", r.converse_margin * log_d}}},
          {"achievability_margin", r.achievability_margin}};
}

int cmd_campbell(const CampbellArgs& a, const Common& c, std::ostream& out) {
  const auto p = io::read_pmf(io::load_json(a.pmf), c.tolerance);
  const auto mode = a.exact ? CgfMode::Exact : CgfMode::Product;
  std::optional<CodeSpec> given;
  if (!a.code.empty()) given = io::read_code(io::load_json(a.code), p);
  const unsigned D = given ? given->alphabet_size() : c.D;

  const auto huff = huffman(p, D);
  json runs = json::array();
  for (double rho : a.rho) {
    const auto tilted = campbell_lengths(p, rho, D);
    json run{{"rho", rho},
             {"campbell", campbell_record(campbell_verify(p, tilted, rho, a.k, mode), tilted)},
             {"huffman", campbell_record(campbell_verify(p, huff, rho, a.k, mode), huff)}};
    if (given) run["given"] = campbell_record(campbell_verify(p, *given, rho, a.k, mode), *given);
    runs.push_back(std::move(run));
  }
  const double log_d = std::log(static_cast<double>(D));
  const double h = shannon_entropy(p);
  json report{{"command", "campbell"},
              {"D", D},
              {"k", a.k},
              {"mode", a.exact ? "exact" : "product"},
              {"entropy", {{"logD", h / log_d}, {"nats", h}}},
              {"huffman_mean_length", expected_length(p, huff)},
              {"runs", std::move(runs)}};
  emit(report, c, out);
  return kOk;
}

struct ClusterArgs {
  std::string pmf, map;
  std::size_t m = 2;
  unsigned k = 1;
  std::vector<double> rho;
};

int cmd_cluster(const ClusterArgs& a, const Common& c, std::ostream& out) {
  const Units units(c.unit, c.D);
  const auto p = io::read_pmf(io::load_json(a.pmf), c.tolerance);
  const ClusterMap map = a.map.empty() ? cluster_oracle(p, a.m, 1.0).best
                                       : io::read_cluster_map(io::load_json(a.map), p);
  const auto r = clustering_report(p, a.m, map, c.D, a.k, a.rho);
  json refs = json::array();
  for (const auto& ref : r.renyi) {
    refs.push_back({{"rho", ref.rho},
                    {"renyi_reference", ref.reference},
                    {"cgf_difference", ref.cgf_difference}});
  }
  json report{{"command", "cluster"},
              {"unit", units.name()},
              {"m", r.m},
              {"D", r.D},
              {"k", r.k},
              {"map", io::to_json(map, p)["map"]},
              {"induced", io::to_json(r.induced)},
              {"tilde", io::to_json(r.tilde.pmf)},
              {"n_star", r.tilde.n_star ? json(*r.tilde.n_star) : json(nullptr)},
              {"code_x", io::to_json(r.code_x)["lengths"]},
              {"code_y", io::to_json(r.code_y)["lengths"]},
              {"mean_length_x", r.mean_length_x},
              {"mean_length_y", r.mean_length_y},
              {"entropy_x", units(r.entropy_x)},
              {"entropy_induced", units(r.entropy_induced)},
              {"entropy_tilde", units(r.entropy_tilde)},
              {"delta", r.delta},
              {"band", {r.band_lower, r.band_upper}},
              {"in_band", r.in_band},
              {"renyi", std::move(refs)}};
  emit(report, c, out);
  return kOk;
}

int cmd_fuzz(std::size_t trials, const Common& c, std::ostream& out) {
  FuzzConfig cfg;
  cfg.seed = c.seed;
  cfg.trials = trials;
  const auto report = run_fuzz_campaign(cfg);
  json j = to_json(report);
  j["command"] = "fuzz";
  emit(j, c, out);
  return report.total_violations() == 0 ? kOk : kNotApplicable;
}

int cmd_reproduce(const Common& c, std::ostream& out) {
  const auto checks = reproduce_worked_example();
  json j = to_json(checks);
  j["command"] = "reproduce-paper";
  emit(j, c, out);
  return j["all_pass"].get<bool>() ? kOk : kNotApplicable;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidPmf:
      return kInvalidInput;
    case ErrorKind::EnumerationLimit:
      return kEnumerationLimit;
    case ErrorKind::NotMajorized:
    case ErrorKind::Infeasible:
    case ErrorKind::NotApplicable:
    case ErrorKind::Precondition:
      return kNotApplicable;
  }
  return kInvalidInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lower bounds on list-decoding error and Campbell source-coding bounds"};
  app.require_subcommand(1);

  Common common;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--unit", common.unit, "Output unit for information quantities")
        ->check(CLI::IsMember({"bits", "nats", "logD"}));
    sub->add_option("--tol", common.tolerance, "pmf validation tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", common.seed, "Random seed");
    sub->add_option("--out", common.out, "Write the JSON report here");
    sub->add_option("--D", common.D, "Code alphabet size")->check(CLI::Range(2u, 1u << 16));
  };

  DivergenceArgs div;
  auto* div_cmd = app.add_subcommand("divergence", "f-divergence between two pmfs");
  div_cmd->add_option("--p", div.p, "pmf file P");
  div_cmd->add_option("--q", div.q, "pmf file Q");
  div_cmd->add_option("--joint", div.joint, "joint pmf file");
  div_cmd->add_option("--f", div.f, "kl | tv | chi2 | egamma:<gamma>");
  add_common(div_cmd);

  ListboundArgs lb;
  auto* lb_cmd = app.add_subcommand("listbound", "List-decoding error probability and bounds");
  lb_cmd->add_option("--joint", lb.joint, "joint pmf file")->required();
  lb_cmd->add_option("--rule", lb.rule, "rule file (default: top-L rule)");
  lb_cmd->add_option("--L", lb.L, "list size of the default top-L rule");
  lb_cmd->add_option("--f", lb.f, "generators for fixed-size bounds")->delimiter(',');
  lb_cmd->add_option("--gamma", lb.gamma, "evaluate the E_gamma bound at this gamma");
  lb_cmd->add_flag("--all", lb.all, "every bound for every registry generator");
  add_common(lb_cmd);

  CampbellArgs cb;
  auto* cb_cmd = app.add_subcommand("campbell", "Cumulant generating function bounds");
  cb_cmd->add_option("--pmf", cb.pmf, "pmf file")->required();
  cb_cmd->add_option("--code", cb.code, "code file (lengths to verify)");
  cb_cmd->add_option("--rho", cb.rho, "rho values")->delimiter(',')->check(CLI::PositiveNumber);
  cb_cmd->add_option("--k", cb.k, "block length")->check(CLI::PositiveNumber);
  cb_cmd->add_flag("--exact", cb.exact, "enumerate all n^k blocks");
  add_common(cb_cmd);

  ClusterArgs cl;
  auto* cl_cmd = app.add_subcommand("cluster", "Average-length change under clustering");
  cl_cmd->add_option("--pmf", cl.pmf, "pmf file")->required();
  cl_cmd->add_option("--m", cl.m, "number of clusters")->required();
  cl_cmd->add_option("--map", cl.map, "cluster map file (default: Shannon-entropy maximizer)");
  cl_cmd->add_option("--k", cl.k, "block length")->check(CLI::PositiveNumber);
  cl_cmd->add_option("--rho", cl.rho, "rho grid")->delimiter(',')->check(CLI::PositiveNumber);
  add_common(cl_cmd);

  std::size_t trials = 1000;
  auto* fz_cmd = app.add_subcommand("fuzz", "Randomized invariant campaign");
  fz_cmd->add_option("--trials", trials, "number of trials");
  add_common(fz_cmd);

  auto* rp_cmd = app.add_subcommand("reproduce-paper", "Recompute the worked 5x2 example");
  add_common(rp_cmd);

  std::vector<std::string> argv_store{"infobounds"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalidInput;
  }

  try {
    if (div_cmd->parsed()) return cmd_divergence(div, common, out);
    if (lb_cmd->parsed()) return cmd_listbound(lb, common, out);
    if (cb_cmd->parsed()) return cmd_campbell(cb, common, out);
    if (cl_cmd->parsed()) return cmd_cluster(cl, common, out);
    if (fz_cmd->parsed()) return cmd_fuzz(trials, common, out);
    if (rp_cmd->parsed()) return cmd_reproduce(common, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kInvalidInput;
}

}  // namespace infobounds::cli
