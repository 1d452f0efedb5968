#include "infobounds/worked_example.hpp"

#include <cmath>

#include "infobounds/divergences.hpp"

namespace infobounds {

JointPMF worked_example_joint() {
  constexpr double a = 1.0 / 8.0;
  constexpr double b = 1.0 / 16.0;
  constexpr double c = 1.0 / 24.0;
  constexpr double d = 3.0 / 16.0;
  return JointPMF({"0", "1", "2", "3", "4"}, {"0", "1"},
                  {{a, c}, {a, c}, {a, c}, {b, d}, {b, d}});
}

VariableListRule worked_example_rule() { return VariableListRule(5, {{0, 1, 2}, {3, 4}}); }

std::vector<ExampleCheck> reproduce_worked_example() {
  const auto joint = worked_example_joint();
  const auto rule = worked_example_rule();
  std::vector<ExampleCheck> out;
  const auto add = [&](std::string name, double value, double expected, double tol) {
    out.push_back({std::move(name), value, expected, tol, std::abs(value - expected) <= tol});
  };

  const double h_nats = conditional_entropy(joint);
  add("conditional_entropy_bits", h_nats / std::log(2.0), 2.1038, 5e-4);
  add("list_error_probability", error_prob(joint, rule), 0.25, 1e-12);
  add("egamma_bound_at_5/4", egamma_bound(joint, rule, 1.25), 0.25, 1e-12);
  add("egamma_bound_optimized", optimize_gamma(joint, rule).bound, 0.25, 1e-12);

  const auto ak = ak_invert(h_nats, joint.num_x(), expected_log_list_size(joint, rule),
                            rule.max_list_size());
  add("fano_variable_list_bound", ak.general.p, 0.1206, 5e-4);
  add("fano_max_list_bound", ak.max_list->p, 0.0939, 5e-4);

  const auto witness = equality_check(joint, rule, 1.25);
  add("equality_condition_satisfied", witness.satisfied ? 1.0 : 0.0, 1.0, 0.0);
  add("alpha(0)", witness.alpha[0], 0.25, 1e-12);
  add("alpha(1)", witness.alpha[1], 0.375, 1e-12);
  return out;
}

nlohmann::json to_json(const std::vector<ExampleCheck>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name},
                   {"value", c.value},
                   {"expected", c.expected},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
    all = all && c.pass;
  }
  return {{"checks", std::move(arr)}, {"all_pass", all}};
}

}  // namespace infobounds
