#include "infobounds/campaign.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "infobounds/divergences.hpp"
#include "infobounds/error.hpp"
#include "infobounds/list_decoding.hpp"
#include "infobounds/sampling.hpp"
#include "infobounds/source_coding.hpp"

namespace infobounds {

namespace {

enum Suite : std::size_t {
  kDataProcessing,
  kFanoGeneralized,
  kFanoBinaryKl,
  kFanoRefinedA,
  kFanoRefinedB,
  kFanoVariableList,
  kFanoMaxList,
  kEgammaBound,
  kCampbellConverse,
  kCampbellAchievability,
  kSuiteCount,
};

constexpr std::array<const char*, kSuiteCount> kSuiteNames = {
    "data_processing",  "fano_generalized",   "fano_binary_kl",
    "fano_refined_a",   "fano_refined_b",     "fano_variable_list",
    "fano_max_list",    "egamma_bound",       "campbell_converse",
    "campbell_achievability",
};

std::vector<FGenerator> registry() {
  return {FGenerator::kl(), FGenerator::tv(), FGenerator::chi2(), FGenerator::egamma(1.5)};
}

void data_processing_trial(Rng& rng, const FuzzConfig& cfg, std::vector<SuiteResult>& out,
                           const std::vector<FGenerator>& gens) {
  const std::size_t n = rng.between(2, cfg.max_atoms);
  const std::size_t n_out = rng.between(1, cfg.max_atoms);
  const auto p = random_pmf(rng, n, 0.15);
  const auto q = random_pmf(rng, n, 0.15);
  const auto k = random_kernel(rng, n, n_out);
  const auto pk = push_forward(p, k);
  const auto qk = push_forward(q, k);
  for (const auto& f : gens) {
    const ExtReal before = f_divergence(p, q, f);
    const ExtReal after = f_divergence(pk, qk, f);
    if (before.is_infinite()) {
      out[kDataProcessing].record(0.0);
    } else if (after.is_infinite()) {
      out[kDataProcessing].record(-std::numeric_limits<double>::infinity());
    } else {
      out[kDataProcessing].record(before.value() - after.value());
    }
  }
}

void fixed_list_trial(const JointPMF& joint, const FixedListRule& rule, double h_cond,
                      std::vector<SuiteResult>& out, const std::vector<FGenerator>& gens,
                      std::size_t& negative_b) {
  const std::size_t M = joint.num_x();
  const std::size_t L = rule.list_size();
  const double p = error_prob(joint, rule);
  for (const auto& f : gens) {
    const auto check = gen_fano_check(joint, rule, f);
    out[kFanoGeneralized].record(check.holds ? 0.0 : -1.0);
    out[kFanoGeneralized].record(p - gen_fano_invert(check.lhs, M, L, f).p);
  }
  out[kFanoBinaryKl].record(p - fano_fixed_invert(h_cond, M, L).p);

  for (const auto& f : {FGenerator::kl(), FGenerator::chi2()}) {
    const auto report = refined_bound(joint, rule, f);
    if (report.lhs.is_finite()) {
      out[kFanoRefinedA].record(report.lhs.value() - report.bound_a.value());
    }
    out[kFanoRefinedA].record(p - report.p_bound_a.p);
    if (report.bound_b) {
      if (report.lhs.is_finite()) {
        out[kFanoRefinedB].record(report.lhs.value() - report.bound_b->value());
      }
      // the part-b term is frequently negative; tallied, not a violation
      if (*report.correction_b < -1e-12) ++negative_b;
      out[kFanoRefinedB].record(p - report.p_bound_b->p);
    }
  }
}

void variable_list_trial(const JointPMF& joint, const VariableListRule& rule, double h_cond,
                         std::vector<SuiteResult>& out) {
  const double p = error_prob(joint, rule);
  const auto ak = ak_invert(h_cond, joint.num_x(), expected_log_list_size(joint, rule),
                            rule.max_list_size());
  out[kFanoVariableList].record(p - ak.general.p);
  out[kFanoMaxList].record(p - ak.max_list->p);

  out[kEgammaBound].record(p - optimize_gamma(joint, rule).bound);
  for (double gamma : {1.0, 1.25, 2.0, 4.0}) {
    out[kEgammaBound].record(p - egamma_bound(joint, rule, gamma));
  }
}

void source_coding_trial(Rng& rng, const FuzzConfig& cfg, std::vector<SuiteResult>& out) {
  const std::size_t n = rng.between(2, cfg.max_source);
  const unsigned D = rng.chance(0.5) ? 2 : 3;
  const auto p = random_pmf(rng, n);
  const auto code = random_code(rng, n, D);
  for (double rho : {0.25, 1.0, 4.0}) {
    out[kCampbellConverse].record(campbell_verify(p, code, rho, 1).converse_margin);
    const auto tilted = campbell_lengths(p, rho, D);
    const double m = campbell_verify(p, tilted, rho, 1).achievability_margin;
    out[kCampbellAchievability].record(std::min(m, 1.0 - m));
  }
}

}  // namespace

void SuiteResult::record(double margin, double tolerance) {
  ++checks;
  worst_margin = std::min(worst_margin, margin);
  if (!(margin >= -tolerance)) ++violations;
}

std::size_t FuzzReport::total_violations() const {
  std::size_t total = 0;
  for (const auto& s : suites) total += s.violations;
  return total;
}

const SuiteResult& FuzzReport::suite(const std::string& name) const {
  for (const auto& s : suites) {
    if (s.name == name) return s;
  }
  fail(ErrorKind::InvalidArgument, "no suite named '" + name + "'");
}

FuzzReport run_fuzz_campaign(const FuzzConfig& config) {
  require(config.trials >= 1, ErrorKind::InvalidArgument, "fuzz campaign needs trials >= 1");
  require(config.max_x >= 2 && config.max_y >= 1 && config.max_atoms >= 2 &&
              config.max_source >= 2,
          ErrorKind::InvalidArgument, "fuzz sizes too small");
  std::vector<SuiteResult> suites(kSuiteCount);
  for (std::size_t i = 0; i < kSuiteCount; ++i) suites[i].name = kSuiteNames[i];
  const auto gens = registry();
  std::size_t negative_b = 0;

  for (std::size_t t = 0; t < config.trials; ++t) {
    Rng rng = Rng::substream(config.seed, t);
    data_processing_trial(rng, config, suites, gens);

    const std::size_t M = rng.between(2, config.max_x);
    const std::size_t ny = rng.between(1, config.max_y);
    const auto joint = random_joint(rng, M, ny);
    const double h_cond = conditional_entropy(joint);
    const std::size_t L = rng.between(1, M - 1);
    const auto top = top_l_rule(joint, L);
    fixed_list_trial(joint, top, h_cond, suites, gens, negative_b);
    fixed_list_trial(joint, random_fixed_rule(rng, M, ny, L), h_cond, suites, gens,
                     negative_b);
    variable_list_trial(joint, top, h_cond, suites);
    variable_list_trial(joint, random_variable_rule(rng, M, ny), h_cond, suites);

    source_coding_trial(rng, config, suites);
  }
  return FuzzReport{config, std::move(suites), negative_b};
}

nlohmann::json to_json(const FuzzReport& report) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : report.suites) {
    suites.push_back({
        {"name", s.name},
        {"checks", s.checks},
        {"violations", s.violations},
        {"worst_margin", std::isfinite(s.worst_margin) ? nlohmann::json(s.worst_margin)
                                                       : nlohmann::json(nullptr)},
    });
  }
  return {
      {"seed", report.config.seed},
      {"trials", report.config.trials},
      {"sizes",
       {{"max_x", report.config.max_x},
        {"max_y", report.config.max_y},
        {"max_atoms", report.config.max_atoms},
        {"max_source", report.config.max_source}}},
      {"suites", std::move(suites)},
      {"total_violations", report.total_violations()},
      {"negative_refined_b_corrections", report.negative_refined_b_corrections},
  };
}

}  // namespace infobounds
