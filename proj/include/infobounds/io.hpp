#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "infobounds/list_decoding.hpp"
#include "infobounds/majorization.hpp"
#include "infobounds/prob_core.hpp"
#include "infobounds/source_coding.hpp"

namespace infobounds::io {

using nlohmann::json;

/// Parses a file; malformed JSON becomes an InvalidArgument error.
json load_json(const std::filesystem::path& path);

/// A probability entry: a number or a [numerator, denominator] pair.
double parse_probability(const json& value);

/// A label: a string, or an integer written in decimal.
std::string parse_label(const json& value);

/// {"labels": [...], "p": [...]}
ProbVector read_pmf(const json& doc, double tolerance = kDefaultTolerance);
/// {"x": [...], "y": [...], "pxy": [[...], ...]} with one row per x.
JointPMF read_joint(const json& doc, double tolerance = kDefaultTolerance);
/// {"lists": {"y_label": ["x_label", ...], ...}}; every y must have a list.
VariableListRule read_rule(const json& doc, const JointPMF& joint);
/// Fixed-size view of a rule whose lists all hold L < M entries, else nullopt.
std::optional<FixedListRule> as_fixed(const VariableListRule& rule);
/// {"D": int, "lengths": {"label": int, ...}}, ordered by the pmf's labels.
CodeSpec read_code(const json& doc, const ProbVector& pmf);
/// {"map": {"src_label": "cluster_label", ...}}. Clusters are numbered in
/// order of first appearance along the pmf's labels.
ClusterMap read_cluster_map(const json& doc, const ProbVector& pmf);

json to_json(const ProbVector& p);
json to_json(const JointPMF& joint);
json to_json(const VariableListRule& rule, const JointPMF& joint);
json to_json(const CodeSpec& code);
json to_json(const ClusterMap& map, const ProbVector& pmf);

}  // namespace infobounds::io
