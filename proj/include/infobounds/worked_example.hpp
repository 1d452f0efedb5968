#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infobounds/list_decoding.hpp"
#include "infobounds/prob_core.hpp"

namespace infobounds {

/// The 5 x 2 joint pmf with rational entries 1/8, 1/16, 1/24, 3/16.
JointPMF worked_example_joint();

/// Lists {0,1,2} for y = 0 and {3,4} for y = 1.
VariableListRule worked_example_rule();

struct ExampleCheck {
  std::string name;
  double value;
  double expected;
  double tolerance;
  bool pass;
};

/// Recomputes every figure of the worked example and compares it against its
/// reference value at the stated tolerance.
std::vector<ExampleCheck> reproduce_worked_example();

nlohmann::json to_json(const std::vector<ExampleCheck>& checks);

}  // namespace infobounds
