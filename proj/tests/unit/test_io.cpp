#include <cmath>
#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "helpers.hpp"
#include "infobounds/io.hpp"

using namespace infobounds;
using nlohmann::json;

TEST_CASE("probabilities may be rational pairs") {
  CHECK(io::parse_probability(json(0.25)) == 0.25);
  CHECK(io::parse_probability(json::parse("[1, 24]")) == 1.0 / 24);
  CHECK_FAILS_WITH(io::parse_probability(json::parse("[1, 0]")), ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(io::parse_probability(json("x")), ErrorKind::InvalidArgument);
}

TEST_CASE("labels may be strings or integers") {
  CHECK(io::parse_label(json("a")) == "a");
  CHECK(io::parse_label(json(3)) == "3");
  CHECK_FAILS_WITH(io::parse_label(json(1.5)), ErrorKind::InvalidArgument);
}

TEST_CASE("pmf documents") {
  const auto p = io::read_pmf(json::parse(R"({"labels": ["a", "b"], "p": [[1, 3], [2, 3]]})"));
  CHECK(p.labels() == std::vector<std::string>{"a", "b"});
  CHECK(p[0] == doctest::Approx(1.0 / 3));
  const auto q = io::read_pmf(json::parse(R"({"p": [0.5, 0.5]})"));
  CHECK(q.labels() == std::vector<std::string>{"0", "1"});
  CHECK_FAILS_WITH(io::read_pmf(json::parse(R"({"p": [0.5, 0.6]})")), ErrorKind::InvalidPmf);
  CHECK_FAILS_WITH(io::read_pmf(json::parse(R"({"q": [1]})")), ErrorKind::InvalidArgument);
  // a looser tolerance admits rounded decimals
  CHECK_NOTHROW(io::read_pmf(json::parse(R"({"p": [0.333, 0.333, 0.333]})"), 1e-2));
}

TEST_CASE("joint and rule documents") {
  const auto doc = json::parse(R"({
    "x": ["a", "b", "c"], "y": [0, 1],
    "pxy": [[[1, 4], 0.0], [[1, 8], [1, 8]], [[1, 8], [3, 8]]]})");
  const auto j = io::read_joint(doc);
  CHECK(j.num_x() == 3);
  CHECK(j.y_labels() == std::vector<std::string>{"0", "1"});
  CHECK(j(2, 1) == doctest::Approx(0.375));

  const auto rule = io::read_rule(json::parse(R"({"lists": {"0": ["a"], "1": ["c", "b"]}})"), j);
  CHECK(rule[0] == XList{0});
  CHECK(rule[1] == XList{1, 2});
  CHECK_FALSE(io::as_fixed(rule).has_value());
  const auto fixed =
      io::as_fixed(io::read_rule(json::parse(R"({"lists": {"0": ["a"], "1": ["c"]}})"), j));
  REQUIRE(fixed.has_value());
  CHECK(fixed->list_size() == 1);

  CHECK_FAILS_WITH(io::read_rule(json::parse(R"({"lists": {"0": ["a"]}})"), j),
                   ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(io::read_rule(json::parse(R"({"lists": {"0": ["z"], "1": ["a"]}})"), j),
                   ErrorKind::InvalidArgument);

  const auto back = io::to_json(rule, j);
  CHECK(back["lists"]["1"] == json::parse(R"(["b", "c"])"));
  const auto round = io::read_joint(io::to_json(j));
  CHECK(round(1, 1) == j(1, 1));
}

TEST_CASE("code and cluster map documents") {
  const auto p = io::read_pmf(json::parse(R"({"labels": ["a", "b", "c"], "p": [0.5, 0.25, 0.25]})"));
  const auto code = io::read_code(json::parse(R"({"D": 2, "lengths": {"c": 2, "a": 1, "b": 2}})"), p);
  CHECK(code.lengths() == std::vector<unsigned>{1, 2, 2});
  CHECK(io::to_json(code)["lengths"]["c"] == 2);
  CHECK_FAILS_WITH(io::read_code(json::parse(R"({"D": 1, "lengths": {}})"), p),
                   ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(io::read_code(json::parse(R"({"D": 2, "lengths": {"a": 1}})"), p),
                   ErrorKind::InvalidArgument);

  const auto map = io::read_cluster_map(
      json::parse(R"({"map": {"a": "left", "b": "right", "c": "right"}})"), p);
  CHECK(map.num_clusters() == 2);
  CHECK(map.assignment() == std::vector<std::size_t>{0, 1, 1});
  CHECK(map.cluster_labels() == std::vector<std::string>{"left", "right"});
  CHECK(io::to_json(map, p)["map"]["b"] == "right");
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "infobounds_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "ok.json") << R"({"p": [1]})";
    std::ofstream(dir / "bad.json") << "{ not json";
  }
  CHECK(io::load_json(dir / "ok.json")["p"][0] == 1);
  CHECK_FAILS_WITH(io::load_json(dir / "bad.json"), ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(io::load_json(dir / "missing.json"), ErrorKind::InvalidArgument);
  std::filesystem::remove_all(dir);
}
