#include <cmath>
#include <vector>

#include <doctest.h>

#include "../oracles.hpp"
#include "helpers.hpp"
#include "infobounds/divergences.hpp"
#include "infobounds/list_decoding.hpp"
#include "infobounds/sampling.hpp"
#include "infobounds/worked_example.hpp"

using namespace infobounds;

namespace {

const std::vector<std::vector<double>> kRows{
    {1.0 / 8, 1.0 / 24}, {1.0 / 8, 1.0 / 24}, {1.0 / 8, 1.0 / 24},
    {1.0 / 16, 3.0 / 16}, {1.0 / 16, 3.0 / 16}};

JointPMF example() { return JointPMF(kRows); }
VariableListRule example_rule() { return VariableListRule(5, {{0, 1, 2}, {3, 4}}); }

std::vector<std::vector<double>> rows_of(const JointPMF& j) {
  std::vector<std::vector<double>> r(j.num_x(), std::vector<double>(j.num_y()));
  for (std::size_t x = 0; x < j.num_x(); ++x) {
    for (std::size_t y = 0; y < j.num_y(); ++y) r[x][y] = j(x, y);
  }
  return r;
}

}  // namespace

TEST_CASE("embedded example matches the local table") {
  const auto j = worked_example_joint();
  for (std::size_t x = 0; x < 5; ++x) {
    for (std::size_t y = 0; y < 2; ++y) CHECK(j(x, y) == doctest::Approx(kRows[x][y]));
  }
}

TEST_CASE("error probability of explicit rules") {
  CHECK(error_prob(example(), example_rule()) == doctest::Approx(0.25).epsilon(1e-14));
  const VariableListRule everything(5, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}});
  CHECK(error_prob(example(), everything) == doctest::Approx(0.0));
  CHECK(expected_list_size(example(), example_rule()) == doctest::Approx(2.5));
  CHECK(expected_log_list_size(example(), example_rule()) ==
        doctest::Approx(0.5 * std::log(3.0) + 0.5 * std::log(2.0)));
}

TEST_CASE("rule validation") {
  CHECK_FAILS_WITH(FixedListRule(5, 5, {{0, 1, 2, 3, 4}}), ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(FixedListRule(5, 2, {{0, 1}, {1}}), ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(VariableListRule(5, {{0, 7}}), ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(VariableListRule(5, {{}}), ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(VariableListRule(5, {{1, 1}}), ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(error_prob(example(), VariableListRule(5, {{0}})), ErrorKind::InvalidArgument);
}

TEST_CASE("top-L rules") {
  const auto j = example();
  const auto t3 = top_l_rule(j, 3);
  CHECK(t3[0] == XList{0, 1, 2});
  CHECK(t3[1] == XList{0, 3, 4});
  const auto t2 = top_l_rule(j, 2);
  CHECK(t2[0] == XList{0, 1});
  CHECK(t2[1] == XList{3, 4});
  CHECK(error_prob(j, t2) == doctest::Approx(3.0 / 8));
  CHECK(error_prob(j, top_l_rule(j, 1)) == doctest::Approx(11.0 / 16));
  CHECK(error_prob(j, top_l_rule(j, 1)) == doctest::Approx(map_error(j)));
  CHECK(selects_most_probable(j, t3));
  CHECK(selects_most_probable(j, example_rule()));
  CHECK_FALSE(selects_most_probable(j, VariableListRule(5, {{3}, {0}})));
  CHECK_FAILS_WITH(top_l_rule(j, 5), ErrorKind::InvalidArgument);
  CHECK_FAILS_WITH(top_l_rule(j, 0), ErrorKind::InvalidArgument);
}

TEST_CASE("brute force over all rules") {
  const auto j = example();
  const auto b1 = brute_force_min_error(j, 1);
  CHECK(b1.min_error == doctest::Approx(11.0 / 16));
  CHECK(b1.rules_evaluated == 25);
  const auto b3 = brute_force_min_error(j, 3);
  CHECK(b3.min_error == doctest::Approx(5.0 / 24));
  CHECK(b3.rules_evaluated == 100);
  CHECK(error_prob(j, top_l_rule(j, 3)) == doctest::Approx(5.0 / 24));
  const JointPMF wide(std::vector<std::vector<double>>(12, std::vector<double>(6, 1.0 / 72)));
  CHECK_FAILS_WITH(brute_force_min_error(wide, 6), ErrorKind::EnumerationLimit);
}

TEST_CASE("top-L optimality against the joint exhaustive oracle") {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const std::size_t M = rng.between(2, 5);
    const auto j = random_joint(rng, M, rng.between(1, 3));
    for (std::size_t L = 1; L < M; ++L) {
      const double expected = oracle::min_list_error_exhaustive(rows_of(j), L);
      CHECK(std::abs(error_prob(j, top_l_rule(j, L)) - expected) <= 1e-12);
      CHECK(std::abs(brute_force_min_error(j, L).min_error - expected) <= 1e-12);
    }
  }
}

TEST_CASE("generalized Fano right side") {
  // kl: (L/M) f(M(1-p)/L) + (1 - L/M) f(Mp/(M-L)) = d(p || 1 - L/M)
  for (double p : {0.0, 0.1, 0.4, 0.7}) {
    const double rhs = gen_fano_rhs(p, 5, 2, FGenerator::kl()).value();
    CHECK(rhs == doctest::Approx(binary_kl(p, 0.6).value()).epsilon(1e-12));
  }
  CHECK(gen_fano_rhs(0.75, 4, 1, FGenerator::chi2()).value() == doctest::Approx(0.0));
}

TEST_CASE("generalized Fano check with uniform conditionals") {
  const JointPMF j(std::vector<std::vector<double>>(4, {0.125, 0.125}));
  const auto rule = FixedListRule(4, 1, {{0}, {2}});
  for (const auto& f : {FGenerator::kl(), FGenerator::chi2(), FGenerator::tv()}) {
    const auto c = gen_fano_check(j, rule, f);
    CHECK(c.lhs.value() == doctest::Approx(0.0));
    CHECK(c.rhs.value() == doctest::Approx(0.0));
    CHECK(c.holds);
  }
}

TEST_CASE("generalized Fano inversion") {
  CHECK(gen_fano_invert(0.0, 4, 1, FGenerator::kl()).p == doctest::Approx(0.75).epsilon(1e-11));
  CHECK(gen_fano_invert(0.0, 4, 1, FGenerator::chi2()).p == doctest::Approx(0.75).epsilon(1e-11));
  CHECK(gen_fano_invert(1e6, 4, 1, FGenerator::kl()).p == 0.0);
  CHECK(gen_fano_invert(ExtReal::infinity(), 4, 1, FGenerator::kl()).p == 0.0);
  CHECK_FAILS_WITH(gen_fano_invert(-0.5, 4, 1, FGenerator::kl()), ErrorKind::InvalidArgument);
}

TEST_CASE("two inversions of the kl bound agree and are tight") {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    const std::size_t M = rng.between(2, 8);
    const auto j = random_joint(rng, M, rng.between(1, 4));
    const std::size_t L = rng.between(1, M - 1);
    const double h = conditional_entropy(j);
    const double lhs = std::log(static_cast<double>(M)) - h;
    const auto a = gen_fano_invert(lhs, M, L, FGenerator::kl());
    const auto b = fano_fixed_invert(h, M, L);
    CHECK(std::abs(a.p - b.p) <= 1e-9);
    const double p0 = 1.0 - static_cast<double>(L) / M;
    CHECK(binary_kl(a.p, p0).value() <= lhs + 1e-9);
    if (a.p > 1e-6) CHECK(binary_kl(a.p - 1e-6, p0).value() > lhs);
    CHECK(a.iterations <= 200);
  }
}

TEST_CASE("refined bound quantities") {
  const auto j = example();
  const auto t2 = top_l_rule(j, 2);
  const auto r = refined_bound(j, t2, FGenerator::kl());
  CHECK(r.xi1_star == doctest::Approx(5.0 / 12));
  CHECK(r.xi2_star == doctest::Approx(15.0 / 8));
  CHECK(r.m_f_used == doctest::Approx(8.0 / 15));
  CHECK(r.expected_posterior == doctest::Approx(25.0 / 96));
  // 25/96 - (5/8)/2 - (3/8)/3 < 0
  CHECK(r.correction_a == 0.0);
  REQUIRE(r.correction_b.has_value());
  // (1/2)(8/15)(5)(25/96 - 5/16) = -5/72: the top-L term can be negative
  CHECK(*r.correction_b == doctest::Approx(-5.0 / 72));
  CHECK(r.lhs.value() >= r.bound_a.value() - 1e-12);
  CHECK(r.lhs.value() >= r.bound_b->value() - 1e-12);
  CHECK(r.p_bound_a.p <= r.error_prob + 1e-9);
  CHECK(r.p_bound_b->p <= r.error_prob + 1e-9);
}

TEST_CASE("refined bound applicability") {
  const auto j = example();
  CHECK_FAILS_WITH(refined_bound(j, top_l_rule(j, 2), FGenerator::tv()),
                   ErrorKind::NotApplicable);
  CHECK_FAILS_WITH(refined_bound(j, top_l_rule(j, 2), FGenerator::egamma(1.5)),
                   ErrorKind::NotApplicable);
  const FixedListRule off(5, 2, {{3, 4}, {0, 1}});
  CHECK_FAILS_WITH(refined_bound(j, off, FGenerator::kl(), RefinedPart::B),
                   ErrorKind::Precondition);
  const auto a = refined_bound(j, off, FGenerator::chi2());
  CHECK_FALSE(a.bound_b.has_value());
  CHECK(a.m_f_used == 2.0);
}

TEST_CASE("refined bounds are sound on random instances") {
  Rng rng(8);
  for (int t = 0; t < 300; ++t) {
    const std::size_t M = rng.between(2, 8);
    const auto j = random_joint(rng, M, rng.between(1, 4));
    const std::size_t L = rng.between(1, M - 1);
    for (const auto& rule : {top_l_rule(j, L), random_fixed_rule(rng, M, j.num_y(), L)}) {
      const double p = error_prob(j, rule);
      for (const auto& f : {FGenerator::kl(), FGenerator::chi2()}) {
        const auto r = refined_bound(j, rule, f);
        CHECK(r.correction_a >= 0.0);
        if (r.lhs.is_finite()) CHECK(r.lhs.value() >= r.bound_a.value() - 1e-9);
        CHECK(r.p_bound_a.p <= p + 1e-9);
        if (r.bound_b) {
          if (r.lhs.is_finite()) CHECK(r.lhs.value() >= r.bound_b->value() - 1e-9);
          CHECK(r.p_bound_b->p <= p + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("variable list Fano bounds") {
  const auto j = example();
  const double h = conditional_entropy(j);
  const double elog = expected_log_list_size(j, example_rule());
  const auto ak = ak_invert(h, 5, elog, 3);
  CHECK(ak.general.p == doctest::Approx(0.1206).epsilon(5e-4 / 0.1206));
  REQUIRE(ak.max_list.has_value());
  CHECK(ak.max_list->p == doctest::Approx(0.0939).epsilon(5e-4 / 0.0939));
  // plugging back in
  const auto g = [&](double p) { return binary_entropy(p) + elog + p * std::log(5.0); };
  CHECK(g(ak.general.p) >= h - 1e-9);
  CHECK(g(ak.general.p - 1e-6) < h);
  CHECK(ak_invert(0.5, 5, 0.6).general.p == 0.0);
  CHECK_FALSE(ak_invert(0.5, 5, 0.6).max_list.has_value());
  CHECK_FAILS_WITH(ak_invert(10.0, 2, 0.0), ErrorKind::Infeasible);
  CHECK_FAILS_WITH(ak_invert(-1.0, 2, 0.0), ErrorKind::InvalidArgument);
}

TEST_CASE("E_gamma bound") {
  const auto j = example();
  const auto rule = example_rule();
  CHECK(std::abs(egamma_bound(j, rule, 1.25) - 0.25) <= 1e-12);
  // at gamma = 1: 1 - 2.5/5 - (1/2)(0.3/2 + 0.7/2) = 0.25 as well
  CHECK(std::abs(egamma_bound(j, rule, 1.0) - 0.25) <= 1e-12);
  CHECK(egamma_bound(j, rule, 2.0) < 0.25);
  const VariableListRule everything(5, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}});
  CHECK(egamma_bound(j, everything, 1.0) <= 1e-12);
  CHECK_FAILS_WITH(egamma_bound(j, rule, 0.9), ErrorKind::InvalidArgument);
}

TEST_CASE("gamma optimization") {
  const auto j = example();
  const auto opt = optimize_gamma(j, example_rule());
  CHECK(std::abs(opt.bound - 0.25) <= 1e-12);
  // the objective is flat on [1, 5/4]; the lowest maximizer is reported
  CHECK(opt.gamma >= 1.0);
  CHECK(opt.gamma <= 1.25);

  const JointPMF flat(std::vector<std::vector<double>>(4, {0.125, 0.125}));
  const VariableListRule lists(4, {{0}, {1, 2}});
  const auto u = optimize_gamma(flat, lists);
  CHECK(u.gamma == 1.0);
  CHECK(u.bound == doctest::Approx(1.0 - 1.5 / 4));

  Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    const std::size_t M = rng.between(2, 8);
    const auto r = random_joint(rng, M, rng.between(1, 4));
    const auto rule = random_variable_rule(rng, M, r.num_y());
    const auto best = optimize_gamma(r, rule);
    for (double g : {1.0, 1.5, 3.0}) CHECK(best.bound >= egamma_bound(r, rule, g) - 1e-12);
    CHECK(best.bound <= error_prob(r, rule) + 1e-9);
  }
}

TEST_CASE("equality certification") {
  const auto j = example();
  const auto w = equality_check(j, example_rule(), 1.25);
  CHECK(w.satisfied);
  REQUIRE(w.alpha.size() == 2);
  CHECK(std::abs(w.alpha[0] - 0.25) <= 1e-12);
  CHECK(std::abs(w.alpha[1] - 0.375) <= 1e-12);

  CHECK_FALSE(equality_check(j, example_rule(), 2.0).satisfied);

  auto rows = kRows;
  rows[0][0] -= 0.01;
  rows[3][0] += 0.01;
  const auto broken = equality_check(JointPMF(rows), example_rule(), 1.25);
  CHECK_FALSE(broken.satisfied);
  CHECK_FALSE(broken.violations.empty());
  CHECK_FAILS_WITH(equality_check(j, example_rule(), 0.5), ErrorKind::InvalidArgument);
}

TEST_CASE("certified equality is tight") {
  Rng rng(23);
  int certified = 0;
  for (int t = 0; t < 300; ++t) {
    // build two-level conditionals so the condition can hold
    const std::size_t M = rng.between(3, 7);
    const std::size_t ny = rng.between(1, 3);
    std::vector<std::vector<double>> rows(M, std::vector<double>(ny));
    std::vector<XList> lists;
    for (std::size_t y = 0; y < ny; ++y) {
      const std::size_t size = rng.between(1, M - 1);
      const double alpha = (1.0 / M) + rng.uniform() * (1.0 / size - 1.0 / M);
      const double rest = (1.0 - alpha * size) / static_cast<double>(M - size);
      XList l;
      for (std::size_t x = 0; x < M; ++x) {
        rows[x][y] = (x < size ? alpha : rest) / static_cast<double>(ny);
        if (x < size) l.push_back(x);
      }
      lists.push_back(l);
    }
    const JointPMF j(rows);
    const VariableListRule rule(M, lists);
    const auto w = equality_check(j, rule, 1.0);
    if (!w.satisfied) continue;
    ++certified;
    CHECK(std::abs(egamma_bound(j, rule, 1.0) - error_prob(j, rule)) <= 1e-12);
  }
  CHECK(certified > 100);
}
