#include <cmath>
#include <vector>

#include <doctest.h>

#include "../oracles.hpp"
#include "helpers.hpp"
#include "infobounds/divergences.hpp"
#include "infobounds/majorization.hpp"
#include "infobounds/sampling.hpp"
#include "infobounds/source_coding.hpp"

using namespace infobounds;

namespace {
ProbVector pmf(std::vector<double> v) { return validate(v); }
std::vector<double> vec(const ProbVector& p) { return {p.mass().begin(), p.mass().end()}; }
}  // namespace

TEST_CASE("code specs") {
  const CodeSpec c(2, {1, 2, 2});
  CHECK(kraft_sum(c) == 1.0);
  CHECK(c.kraft_feasible());
  const CodeSpec over(2, {1, 1, 1});
  CHECK(kraft_sum(over) == 1.5);
  CHECK_FALSE(over.kraft_feasible());
  CHECK_FAILS_WITH(CodeSpec(1, {1}), ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(CodeSpec(2, {0, 1}), ErrorKind::InvalidArgument);
  CHECK(expected_length(pmf({0.5, 0.25, 0.25}), c) == 1.5);
}

TEST_CASE("huffman on small sources") {
  CHECK(huffman(uniform(4), 2).lengths() == std::vector<unsigned>{2, 2, 2, 2});
  CHECK(huffman(pmf({0.5, 0.25, 0.25}), 2).lengths() == std::vector<unsigned>{1, 2, 2});
  CHECK(huffman(pmf({1.0}), 2).lengths() == std::vector<unsigned>{1});
  // ternary with padding: four symbols -> first merge takes two
  const auto t = huffman(pmf({0.4, 0.3, 0.2, 0.1}), 3);
  CHECK(t.lengths() == std::vector<unsigned>{1, 1, 2, 2});
  CHECK(kraft_sum(t) <= 1.0);
}

TEST_CASE("huffman is optimal against exhaustive length search") {
  Rng rng(31);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = rng.between(1, 6);
    const auto p = random_pmf(rng, n);
    const auto code = huffman(p, 2);
    CHECK(code.kraft_feasible());
    CHECK(std::abs(expected_length(p, code) - oracle::min_expected_length(vec(p), 2)) <= 1e-12);
  }
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = rng.between(2, 5);
    const auto p = random_pmf(rng, n);
    CHECK(std::abs(expected_length(p, huffman(p, 3)) - oracle::min_expected_length(vec(p), 3)) <=
          1e-12);
  }
}

TEST_CASE("campbell lengths") {
  for (double rho : {0.25, 1.0, 4.0}) {
    const auto c = campbell_lengths(uniform(4), rho, 2);
    CHECK(c.lengths() == std::vector<unsigned>{2, 2, 2, 2});
    const auto r = campbell_verify(uniform(4), c, rho, 1);
    CHECK(std::abs(r.achievability_margin) <= 1e-12);
    CHECK(std::abs(r.converse_margin) <= 1e-12);
  }
  // rho -> 0 recovers Shannon lengths ceil(-log2 p)
  const auto p = pmf({0.4, 0.3, 0.2, 0.1});
  const auto s = campbell_lengths(p, 1e-9, 2);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(s[i] == static_cast<unsigned>(std::ceil(-std::log2(p[i]))));
  }
  CHECK_FAILS_WITH(campbell_lengths(p, 0.0, 2), ErrorKind::InvalidArgument);
}

TEST_CASE("campbell lengths cover zero-mass atoms") {
  const auto c = campbell_lengths(pmf({0.5, 0.3, 0.0, 0.2}), 1.0, 2);
  CHECK(c.kraft_feasible());
  CHECK(c[2] >= 1);
  // a dyadic source leaves no room for an extra symbol
  CHECK_FAILS_WITH(campbell_lengths(pmf({0.5, 0.5, 0.0}), 1e-9, 2), ErrorKind::InvalidArgument);
}

TEST_CASE("campbell sandwich on random sources") {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_pmf(rng, rng.between(2, 10));
    for (unsigned D : {2u, 3u}) {
      for (double rho : {0.25, 1.0, 4.0}) {
        const auto c = campbell_lengths(p, rho, D);
        CHECK(kraft_sum(c) <= 1.0 + 1e-12);
        const auto r = campbell_verify(p, c, rho, 1);
        CHECK(r.achievability_margin >= -1e-9);
        CHECK(r.achievability_margin <= 1.0 + 1e-9);
      }
    }
  }
}

TEST_CASE("cgf against direct block summation") {
  const auto p = pmf({0.5, 0.3, 0.2});
  const CodeSpec c(2, {1, 2, 2});
  const std::vector<unsigned> len{1, 2, 2};
  for (double rho : {0.25, 1.0, 4.0}) {
    for (unsigned k : {1u, 2u, 3u}) {
      const double expected = oracle::block_cgf(vec(p), len, rho, 2, k);
      CHECK(std::abs(cgf(p, c, rho, k, CgfMode::Exact) - expected) <= 1e-12);
      CHECK(std::abs(cgf(p, c, rho, k, CgfMode::Product) - expected) <= 1e-12);
    }
  }
}

TEST_CASE("cgf special cases") {
  const auto p = pmf({0.6, 0.3, 0.1});
  const CodeSpec constant(2, {3, 3, 3});
  CHECK(cgf(p, constant, 0.7, 1) == doctest::Approx(0.7 * 3));
  const CodeSpec c(2, {1, 2, 2});
  CHECK(cgf(p, c, 1e-6, 1) / 1e-6 == doctest::Approx(expected_length(p, c)).epsilon(1e-4));
  CHECK_FAILS_WITH(cgf(p, c, 1.0, 13, CgfMode::Exact), ErrorKind::EnumerationLimit);
  CHECK_FAILS_WITH(cgf(p, c, -1.0, 1), ErrorKind::InvalidArgument);
}

TEST_CASE("cgf normalized is non-decreasing in rho") {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = rng.between(2, 8);
    const auto p = random_pmf(rng, n);
    const auto code = random_code(rng, n, 2);
    double prev = -1.0;
    for (double rho = 0.05; rho < 8.0; rho *= 1.3) {
      const double v = cgf(p, code, rho, 1) / rho;
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("converse holds for any Kraft-feasible code") {
  Rng rng(43);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = rng.between(2, 10);
    const unsigned D = rng.chance(0.5) ? 2 : 3;
    const auto p = random_pmf(rng, n);
    const auto code = random_code(rng, n, D);
    for (double rho : {0.25, 1.0, 4.0}) {
      CHECK(campbell_verify(p, code, rho, 1).converse_margin >= -1e-9);
    }
  }
  CHECK_FAILS_WITH(campbell_verify(uniform(3), CodeSpec(2, {1, 1, 1}), 1.0, 1),
                   ErrorKind::InvalidArgument);
}

TEST_CASE("huffman sits in the Shannon sandwich") {
  Rng rng(47);
  for (int t = 0; t < 100; ++t) {
    const auto p = random_pmf(rng, rng.between(2, 10));
    for (unsigned D : {2u, 3u}) {
      const double h = oracle::entropy(vec(p)) / std::log(static_cast<double>(D));
      const double e = expected_length(p, huffman(p, D));
      CHECK(e >= h - 1e-12);
      CHECK(e <= h + 1.0 + 1e-12);
    }
  }
}

TEST_CASE("clustering report on a uniform source") {
  const ClusterMap split({0, 0, 1, 1}, 2);
  const auto r = clustering_report(uniform(4), 2, split, 2, 1, {1.0});
  CHECK(r.mean_length_x == 2.0);
  CHECK(r.mean_length_y == 1.0);
  CHECK(r.entropy_x - r.entropy_tilde == doctest::Approx(std::log(2.0)));
  CHECK(std::abs(r.delta) <= 1e-12);
  CHECK(r.band_lower == -1.0);
  CHECK(r.band_upper == 0.08607);
  CHECK(r.in_band);
}

TEST_CASE("clustering report when the induced pmf equals X~m") {
  const auto p = pmf({0.6, 0.2, 0.2});
  const auto r = clustering_report(p, 2, ClusterMap({0, 1, 1}, 2), 2, 1, {});
  CHECK(r.entropy_induced == doctest::Approx(r.entropy_tilde));
  // Huffman: (1,2,2) for P and (1,1) for (0.6, 0.4)
  const double expected = (1.4 - 1.0) - (oracle::entropy({0.6, 0.2, 0.2}) -
                                         oracle::entropy({0.6, 0.4})) / std::log(2.0);
  CHECK(r.delta == doctest::Approx(expected));
}

TEST_CASE("clustering band constant") {
  CHECK(clustering_band_upper(2) == 0.08607);
  CHECK(clustering_band_upper(4) == doctest::Approx(0.08607 / 2));
  CHECK_FAILS_WITH(clustering_report(uniform(4), 2, ClusterMap({0, 1, 2, 2}, 3), 2, 1, {}),
                   ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(clustering_report(uniform(3), 3, ClusterMap({0, 1, 1}, 2), 2, 1, {}),
                   ErrorKind::InvalidArgument);
}
