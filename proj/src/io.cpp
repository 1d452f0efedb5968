#include "infobounds/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "infobounds/error.hpp"

namespace infobounds::io {

namespace {

const json& field(const json& doc, const char* key) {
  require(doc.is_object() && doc.contains(key), ErrorKind::InvalidArgument,
          std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::vector<std::string> parse_labels(const json& arr, const char* what) {
  require(arr.is_array(), ErrorKind::InvalidArgument, std::string(what) + " must be an array");
  std::vector<std::string> out;
  out.reserve(arr.size());
  for (const auto& v : arr) out.push_back(parse_label(v));
  return out;
}

std::size_t lookup(const std::vector<std::string>& labels, const std::string& label,
                   const char* what) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return i;
  }
  fail(ErrorKind::InvalidArgument, std::string("unknown ") + what + " label '" + label + "'");
}

}  // namespace

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidArgument, "cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, "cannot parse '" + path.string() + "': " + e.what());
  }
}

double parse_probability(const json& value) {
  if (value.is_number()) return value.get<double>();
  require(value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number(),
          ErrorKind::InvalidArgument, "probability must be a number or [num, den]");
  const double den = value[1].get<double>();
  require(den != 0.0, ErrorKind::InvalidArgument, "zero denominator in rational probability");
  return value[0].get<double>() / den;
}

std::string parse_label(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  fail(ErrorKind::InvalidArgument, "labels must be strings or integers, got " + value.dump());
}

ProbVector read_pmf(const json& doc, double tolerance) {
  const json& p = field(doc, "p");
  require(p.is_array(), ErrorKind::InvalidArgument, "'p' must be an array");
  std::vector<double> mass;
  for (const auto& v : p) mass.push_back(parse_probability(v));
  std::vector<std::string> labels;
  if (doc.contains("labels")) labels = parse_labels(doc.at("labels"), "'labels'");
  return ProbVector::validate(mass, tolerance, std::move(labels));
}

JointPMF read_joint(const json& doc, double tolerance) {
  auto xs = parse_labels(field(doc, "x"), "'x'");
  auto ys = parse_labels(field(doc, "y"), "'y'");
  const json& pxy = field(doc, "pxy");
  require(pxy.is_array() && pxy.size() == xs.size(), ErrorKind::InvalidArgument,
          "'pxy' needs one row per x label");
  std::vector<std::vector<double>> rows;
  for (const auto& row : pxy) {
    require(row.is_array() && row.size() == ys.size(), ErrorKind::InvalidArgument,
            "every 'pxy' row needs one entry per y label");
    std::vector<double> r;
    for (const auto& v : row) r.push_back(parse_probability(v));
    rows.push_back(std::move(r));
  }
  return JointPMF(std::move(xs), std::move(ys), rows, tolerance);
}

VariableListRule read_rule(const json& doc, const JointPMF& joint) {
  const json& lists = field(doc, "lists");
  require(lists.is_object(), ErrorKind::InvalidArgument, "'lists' must be an object");
  std::vector<XList> out(joint.num_y());
  std::vector<bool> seen(joint.num_y(), false);
  for (const auto& [y_label, xs] : lists.items()) {
    const std::size_t y = lookup(joint.y_labels(), y_label, "y");
    require(xs.is_array(), ErrorKind::InvalidArgument, "each list must be an array");
    for (const auto& x : xs) out[y].push_back(lookup(joint.x_labels(), parse_label(x), "x"));
    seen[y] = true;
  }
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    require(seen[y], ErrorKind::InvalidArgument, "no list given for y = " + joint.y_labels()[y]);
  }
  return VariableListRule(joint.num_x(), std::move(out));
}

std::optional<FixedListRule> as_fixed(const VariableListRule& rule) {
  const std::size_t L = rule.lists().front().size();
  for (const auto& list : rule.lists()) {
    if (list.size() != L) return std::nullopt;
  }
  if (L >= rule.num_x()) return std::nullopt;
  return FixedListRule(rule.num_x(), L, rule.lists());
}

CodeSpec read_code(const json& doc, const ProbVector& pmf) {
  const json& d = field(doc, "D");
  require(d.is_number_integer() && d.get<long long>() >= 2, ErrorKind::InvalidArgument,
          "'D' must be an integer >= 2");
  const json& lengths = field(doc, "lengths");
  require(lengths.is_object(), ErrorKind::InvalidArgument, "'lengths' must be an object");
  std::vector<unsigned> out(pmf.size(), 0);
  std::vector<bool> seen(pmf.size(), false);
  for (const auto& [label, l] : lengths.items()) {
    const std::size_t i = lookup(pmf.labels(), label, "symbol");
    require(l.is_number_integer() && l.get<long long>() >= 1, ErrorKind::InvalidArgument,
            "codeword lengths must be positive integers");
    out[i] = static_cast<unsigned>(l.get<long long>());
    seen[i] = true;
  }
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    require(seen[i], ErrorKind::InvalidArgument, "no length given for '" + pmf.labels()[i] + "'");
  }
  return CodeSpec(static_cast<unsigned>(d.get<long long>()), std::move(out), pmf.labels());
}

ClusterMap read_cluster_map(const json& doc, const ProbVector& pmf) {
  const json& map = field(doc, "map");
  require(map.is_object(), ErrorKind::InvalidArgument, "'map' must be an object");
  std::vector<std::string> target(pmf.size());
  std::vector<bool> seen(pmf.size(), false);
  for (const auto& [src, dst] : map.items()) {
    const std::size_t i = lookup(pmf.labels(), src, "source");
    target[i] = parse_label(dst);
    seen[i] = true;
  }
  std::vector<std::string> clusters;
  std::vector<std::size_t> assignment(pmf.size());
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    require(seen[i], ErrorKind::InvalidArgument,
            "cluster map does not cover '" + pmf.labels()[i] + "'");
    auto it = std::find(clusters.begin(), clusters.end(), target[i]);
    if (it == clusters.end()) it = clusters.insert(clusters.end(), target[i]);
    assignment[i] = static_cast<std::size_t>(it - clusters.begin());
  }
  const std::size_t m = clusters.size();
  return ClusterMap(std::move(assignment), m, std::move(clusters));
}

json to_json(const ProbVector& p) {
  return json{{"labels", p.labels()}, {"p", std::vector<double>(p.mass().begin(), p.mass().end())}};
}

json to_json(const JointPMF& joint) {
  json rows = json::array();
  for (std::size_t x = 0; x < joint.num_x(); ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < joint.num_y(); ++y) row.push_back(joint(x, y));
    rows.push_back(std::move(row));
  }
  return json{{"x", joint.x_labels()}, {"y", joint.y_labels()}, {"pxy", std::move(rows)}};
}

json to_json(const VariableListRule& rule, const JointPMF& joint) {
  json lists = json::object();
  for (std::size_t y = 0; y < rule.lists().size(); ++y) {
    json xs = json::array();
    for (std::size_t x : rule[y]) xs.push_back(joint.x_labels()[x]);
    lists[joint.y_labels()[y]] = std::move(xs);
  }
  return json{{"lists", std::move(lists)}};
}

json to_json(const CodeSpec& code) {
  json lengths = json::object();
  for (std::size_t i = 0; i < code.size(); ++i) lengths[code.labels()[i]] = code[i];
  return json{{"D", code.alphabet_size()}, {"lengths", std::move(lengths)}};
}

json to_json(const ClusterMap& map, const ProbVector& pmf) {
  json m = json::object();
  for (std::size_t i = 0; i < map.num_sources(); ++i) {
    m[pmf.labels()[i]] = map.cluster_labels()[map[i]];
  }
  return json{{"map", std::move(m)}};
}

}  // namespace infobounds::io
