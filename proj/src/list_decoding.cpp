#include "infobounds/list_decoding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "infobounds/error.hpp"

namespace infobounds {

namespace {

constexpr double kBisectionTolerance = 1e-12;
constexpr int kMaxBisectionSteps = 200;

void check_lists(std::size_t M, const std::vector<XList>& lists) {
  require(M >= 1, ErrorKind::InvalidArgument, "rule needs M >= 1");
  require(!lists.empty(), ErrorKind::InvalidArgument, "rule needs one list per y");
  for (const auto& list : lists) {
    require(!list.empty(), ErrorKind::InvalidArgument, "every list must be non-empty");
    std::set<std::size_t> seen;
    for (std::size_t x : list) {
      require(x < M, ErrorKind::InvalidArgument,
              "list index " + std::to_string(x) + " out of range for M = " + std::to_string(M));
      require(seen.insert(x).second, ErrorKind::InvalidArgument, "list entries must be distinct");
    }
  }
}

void check_rule_matches(const JointPMF& joint, const VariableListRule& rule) {
  require(rule.num_x() == joint.num_x() && rule.lists().size() == joint.num_y(),
          ErrorKind::InvalidArgument, "rule does not match the joint pmf's alphabets");
}

/// Smallest p in [lo, hi] with `ok(p)`, assuming ok is false at lo, true at hi
/// and monotone in between.
Inversion bisect(double lo, double hi, const std::function<bool(double)>& ok) {
  int steps = 0;
  while (hi - lo > kBisectionTolerance && steps < kMaxBisectionSteps) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++steps;
  }
  return Inversion{hi, steps};
}

/// Smallest p in [0, 1] with g(p) <= target for convex g.
Inversion invert_convex(const std::function<ExtReal(double)>& g, ExtReal target) {
  if (g(0.0) <= target) return Inversion{0.0, 0};
  // Golden-section search for the minimizer; g is convex on [0, 1].
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = 0.0;
  double b = 1.0;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  ExtReal gc = g(c);
  ExtReal gd = g(d);
  int steps = 0;
  while (b - a > kBisectionTolerance && steps < kMaxBisectionSteps) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - ratio * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + ratio * (b - a);
      gd = g(d);
    }
    ++steps;
  }
  const double p_min = 0.5 * (a + b);
  if (!(g(p_min) <= target)) {
    // Only reachable through rounding at equality; the minimizer is the
    // closest admissible point.
    return Inversion{p_min, steps};
  }
  Inversion inv = bisect(0.0, p_min, [&](double p) { return g(p) <= target; });
  inv.iterations += steps;
  return inv;
}

}  // namespace

FixedListRule::FixedListRule(std::size_t M, std::size_t L, std::vector<XList> lists)
    : M_(M), L_(L), lists_(std::move(lists)) {
  require(L >= 1 && L < M, ErrorKind::InvalidArgument,
          "fixed list size needs 1 <= L < M (L = " + std::to_string(L) +
              ", M = " + std::to_string(M) + ")");
  check_lists(M, lists_);
  for (auto& list : lists_) {
    require(list.size() == L, ErrorKind::InvalidArgument,
            "every list of a fixed-size rule must hold exactly L entries");
    std::sort(list.begin(), list.end());
  }
}

VariableListRule::VariableListRule(std::size_t M, std::vector<XList> lists)
    : M_(M), lists_(std::move(lists)) {
  check_lists(M, lists_);
  for (auto& list : lists_) std::sort(list.begin(), list.end());
}

VariableListRule::VariableListRule(const FixedListRule& fixed)
    : M_(fixed.num_x()), lists_(fixed.lists()) {}

std::size_t VariableListRule::max_list_size() const {
  std::size_t n = 0;
  for (const auto& list : lists_) n = std::max(n, list.size());
  return n;
}

double error_prob(const JointPMF& joint, const VariableListRule& rule) {
  check_rule_matches(joint, rule);
  double covered = 0.0;
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    for (std::size_t x : rule[y]) covered += joint(x, y);
  }
  return std::clamp(1.0 - covered, 0.0, 1.0);
}

double expected_list_size(const JointPMF& joint, const VariableListRule& rule) {
  check_rule_matches(joint, rule);
  double e = 0.0;
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    e += joint.column_mass(y) * static_cast<double>(rule[y].size());
  }
  return e;
}

double expected_log_list_size(const JointPMF& joint, const VariableListRule& rule) {
  check_rule_matches(joint, rule);
  double e = 0.0;
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    e += joint.column_mass(y) * std::log(static_cast<double>(rule[y].size()));
  }
  return e;
}

FixedListRule top_l_rule(const JointPMF& joint, std::size_t L) {
  const std::size_t M = joint.num_x();
  require(L >= 1 && L < M, ErrorKind::InvalidArgument, "top-L rule needs 1 <= L < M");
  std::vector<XList> lists;
  lists.reserve(joint.num_y());
  XList order(M);
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return joint(a, y) > joint(b, y); });
    lists.emplace_back(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(L));
  }
  return FixedListRule(M, L, std::move(lists));
}

bool selects_most_probable(const JointPMF& joint, const VariableListRule& rule) {
  check_rule_matches(joint, rule);
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    double min_in = 1.0;
    double max_out = 0.0;
    std::vector<bool> in(joint.num_x(), false);
    for (std::size_t x : rule[y]) in[x] = true;
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      const double c = joint.conditional(x, y);
      if (in[x]) {
        min_in = std::min(min_in, c);
      } else {
        max_out = std::max(max_out, c);
      }
    }
    if (min_in < max_out) return false;
  }
  return true;
}

ExtReal gen_fano_rhs(double p, std::size_t M, std::size_t L, const FGenerator& f) {
  const double m = static_cast<double>(M);
  const double l = static_cast<double>(L);
  return (l / m) * f.at(m * (1.0 - p) / l) + (1.0 - l / m) * f.at(m * p / (m - l));
}

FanoCheck gen_fano_check(const JointPMF& joint, const FixedListRule& rule, const FGenerator& f) {
  const ExtReal lhs = expected_div_to_uniform(joint, f);
  const double p = error_prob(joint, rule);
  const ExtReal rhs = gen_fano_rhs(p, joint.num_x(), rule.list_size(), f);
  const bool holds = lhs.is_infinite() || lhs.value() >= rhs.value() - 1e-9;
  return FanoCheck{lhs, rhs, holds};
}

Inversion gen_fano_invert(ExtReal lhs, std::size_t M, std::size_t L, const FGenerator& f) {
  require(lhs >= -1e-12, ErrorKind::InvalidArgument, "divergence must be non-negative");
  require(L >= 1 && L < M, ErrorKind::InvalidArgument, "needs 1 <= L < M");
  if (lhs < 0.0) lhs = 0.0;
  const auto ok = [&](double p) { return gen_fano_rhs(p, M, L, f) <= lhs; };
  if (ok(0.0)) return Inversion{0.0, 0};
  const double p0 = 1.0 - static_cast<double>(L) / static_cast<double>(M);
  return bisect(0.0, p0, ok);
}

Inversion fano_fixed_invert(double h_cond, std::size_t M, std::size_t L) {
  require(h_cond >= 0.0, ErrorKind::InvalidArgument, "conditional entropy must be non-negative");
  require(L >= 1 && L < M, ErrorKind::InvalidArgument, "needs 1 <= L < M");
  const double p0 = 1.0 - static_cast<double>(L) / static_cast<double>(M);
  const double budget = std::log(static_cast<double>(M)) - h_cond;
  const auto ok = [&](double p) { return binary_kl(p, p0) <= ExtReal(budget); };
  if (ok(0.0)) return Inversion{0.0, 0};
  return bisect(0.0, p0, ok);
}

RefinedBoundReport refined_bound(const JointPMF& joint, const FixedListRule& rule,
                                 const FGenerator& f, RefinedPart part) {
  const std::size_t M = joint.num_x();
  const std::size_t L = rule.list_size();
  const double m = static_cast<double>(M);
  const double l = static_cast<double>(L);
  require(f.has_curvature_floor(), ErrorKind::NotApplicable,
          "generator '" + f.name() + "' has no closed-form curvature floor");

  double min_c = 1.0;
  double max_c = 0.0;
  double expected_posterior = 0.0;
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    for (std::size_t x = 0; x < M; ++x) {
      const double c = joint.conditional(x, y);
      min_c = std::min(min_c, c);
      max_c = std::max(max_c, c);
      expected_posterior += joint(x, y) * c;
    }
  }
  const double xi1 = m * min_c;
  const double xi2 = m * max_c;
  const double m_f = f.curvature_floor(xi1, xi2);
  require(m_f > 0.0, ErrorKind::NotApplicable,
          "generator '" + f.name() + "' has zero curvature floor on [xi1*, xi2*]");

  const bool top_l = selects_most_probable(joint, rule);
  if (part == RefinedPart::B) {
    require(top_l, ErrorKind::Precondition,
            "part b needs a rule selecting the L most probable elements");
  }
  const bool want_b = top_l && part != RefinedPart::A;

  const double p = error_prob(joint, rule);
  const ExtReal lhs = expected_div_to_uniform(joint, f);
  const ExtReal base = gen_fano_rhs(p, M, L, f);
  const double scale = 0.5 * m_f * m;
  const auto term_a = [&](double q) {
    return scale * std::max(expected_posterior - (1.0 - q) / l - q / (m - l), 0.0);
  };
  const auto term_b = [&](double q) { return scale * (expected_posterior - (1.0 - q) / l); };

  RefinedBoundReport report{
      .xi1_star = xi1,
      .xi2_star = xi2,
      .m_f_used = m_f,
      .expected_posterior = expected_posterior,
      .error_prob = p,
      .lhs = lhs,
      .base_rhs = base,
      .correction_a = term_a(p),
      .bound_a = base + ExtReal(term_a(p)),
      .correction_b = std::nullopt,
      .bound_b = std::nullopt,
      .p_bound_a = invert_convex(
          [&](double q) { return gen_fano_rhs(q, M, L, f) + ExtReal(term_a(q)); }, lhs),
      .p_bound_b = std::nullopt,
  };
  if (want_b) {
    const double corr = term_b(p);
    report.correction_b = corr;
    report.bound_b = base + ExtReal(corr);
    report.p_bound_b = invert_convex(
        [&](double q) { return gen_fano_rhs(q, M, L, f) + ExtReal(term_b(q)); }, lhs);
  }
  return report;
}

AhlswedeKornerBounds ak_invert(double h_cond, std::size_t M, double e_log_list,
                               std::optional<std::size_t> N) {
  require(h_cond >= 0.0, ErrorKind::InvalidArgument, "conditional entropy must be non-negative");
  require(e_log_list >= 0.0, ErrorKind::InvalidArgument, "E[ln |L(Y)|] must be non-negative");
  require(M >= 1, ErrorKind::InvalidArgument, "needs M >= 1");
  const double log_m = std::log(static_cast<double>(M));

  const auto solve = [&](const std::function<double(double)>& g, double cap,
                         const char* form) -> Inversion {
    if (g(0.0) >= h_cond) return Inversion{0.0, 0};
    require(g(cap) >= h_cond, ErrorKind::Infeasible,
            std::string("no p below the monotonicity cap satisfies the ") + form + " form");
    return bisect(0.0, cap, [&](double p) { return g(p) >= h_cond; });
  };

  const double m = static_cast<double>(M);
  AhlswedeKornerBounds out{
      solve([&](double p) { return binary_entropy(p) + e_log_list + p * log_m; }, m / (m + 1.0),
            "general"),
      std::nullopt};
  if (N) {
    require(*N >= 1 && *N <= M, ErrorKind::InvalidArgument, "needs 1 <= N <= M");
    const double n = static_cast<double>(*N);
    const double log_n = std::log(n);
    out.max_list = solve(
        [&](double p) { return binary_entropy(p) + (1.0 - p) * log_n + p * log_m; },
        m / (m + n), "max-list");
  }
  return out;
}

double egamma_bound(const JointPMF& joint, const VariableListRule& rule, double gamma) {
  require(gamma >= 1.0, ErrorKind::InvalidArgument, "E_gamma bound needs gamma >= 1");
  const double m = static_cast<double>(joint.num_x());
  const double level = gamma / m;
  double spread = 0.0;
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    double s = 0.0;
    for (std::size_t x = 0; x < joint.num_x(); ++x) s += std::abs(joint.conditional(x, y) - level);
    spread += joint.column_mass(y) * s;
  }
  return 0.5 * (1.0 + gamma) - gamma * expected_list_size(joint, rule) / m - 0.5 * spread;
}

GammaOptimum optimize_gamma(const JointPMF& joint, const VariableListRule& rule) {
  const double m = static_cast<double>(joint.num_x());
  std::vector<double> candidates{1.0};
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      const double g = m * joint.conditional(x, y);
      if (g >= 1.0) candidates.push_back(g);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  GammaOptimum best{1.0, egamma_bound(joint, rule, 1.0), candidates.size()};
  for (double g : candidates) {
    const double v = egamma_bound(joint, rule, g);
    // Rounding noise on a flat segment must not move the optimum to the right.
    if (v > best.bound + 1e-13) {
      best.gamma = g;
      best.bound = v;
    }
  }
  return best;
}

EqualityWitness equality_check(const JointPMF& joint, const VariableListRule& rule, double gamma) {
  require(gamma >= 1.0, ErrorKind::InvalidArgument, "equality check needs gamma >= 1");
  check_rule_matches(joint, rule);
  constexpr double kTol = 1e-12;
  const std::size_t M = joint.num_x();
  const double m = static_cast<double>(M);

  EqualityWitness w{gamma, std::vector<double>(joint.num_y(), 0.0), true, {}};
  const auto violate = [&](std::size_t y, std::string reason) {
    w.satisfied = false;
    w.violations.emplace_back(y, std::move(reason));
  };

  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    const auto& list = rule[y];
    const std::size_t s = list.size();
    std::vector<bool> in(M, false);
    for (std::size_t x : list) in[x] = true;

    double sum_in = 0.0;
    double min_in = 1.0;
    double max_in = 0.0;
    double min_out = 1.0;
    double max_out = 0.0;
    for (std::size_t x = 0; x < M; ++x) {
      const double c = joint.conditional(x, y);
      if (in[x]) {
        sum_in += c;
        min_in = std::min(min_in, c);
        max_in = std::max(max_in, c);
      } else {
        min_out = std::min(min_out, c);
        max_out = std::max(max_out, c);
      }
    }
    const double alpha = sum_in / static_cast<double>(s);
    w.alpha[y] = alpha;

    if (static_cast<double>(s) > m / gamma + kTol) {
      violate(y, "list size " + std::to_string(s) + " exceeds M/gamma");
    }
    if (s < M && min_in < max_out - kTol) {
      violate(y, "list does not hold the most probable elements");
    }
    if (max_in - min_in > kTol) {
      violate(y, "conditional pmf is not constant on the list");
    }
    if (s < M) {
      const double off = (1.0 - alpha * static_cast<double>(s)) / (m - static_cast<double>(s));
      if (std::abs(max_out - off) > kTol || std::abs(min_out - off) > kTol) {
        violate(y, "conditional pmf is not uniform off the list");
      }
    }
    if (alpha < gamma / m - kTol || alpha > 1.0 / static_cast<double>(s) + kTol) {
      violate(y, "alpha(y) outside [gamma/M, 1/|L(y)|]");
    }
  }
  return w;
}

BruteForceResult brute_force_min_error(const JointPMF& joint, std::size_t L) {
  const std::size_t M = joint.num_x();
  const std::size_t ny = joint.num_y();
  require(L >= 1 && L < M, ErrorKind::InvalidArgument, "needs 1 <= L < M");

  // all L-subsets of {0..M-1} in lexicographic order
  std::vector<XList> subsets;
  XList current(L);
  std::iota(current.begin(), current.end(), std::size_t{0});
  while (true) {
    subsets.push_back(current);
    std::size_t i = L;
    while (i > 0 && current[i - 1] == M - L + (i - 1)) --i;
    if (i == 0) break;
    ++current[i - 1];
    for (std::size_t j = i; j < L; ++j) current[j] = current[j - 1] + 1;
  }
  const double total = std::pow(static_cast<double>(subsets.size()), static_cast<double>(ny));
  require(total <= kBruteForceLimit, ErrorKind::EnumerationLimit,
          "C(M, L)^|Y| = " + std::to_string(total) + " rules exceeds the enumeration limit");

  std::vector<std::vector<double>> covered(ny, std::vector<double>(subsets.size(), 0.0));
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t s = 0; s < subsets.size(); ++s) {
      for (std::size_t x : subsets[s]) covered[y][s] += joint(x, y);
    }
  }

  std::vector<std::size_t> pick(ny, 0);
  std::vector<std::size_t> best_pick = pick;
  double best = std::numeric_limits<double>::infinity();
  std::size_t evaluated = 0;
  while (true) {
    double mass = 0.0;
    for (std::size_t y = 0; y < ny; ++y) mass += covered[y][pick[y]];
    const double err = std::clamp(1.0 - mass, 0.0, 1.0);
    ++evaluated;
    if (err < best) {
      best = err;
      best_pick = pick;
    }
    std::size_t y = ny;
    while (y > 0 && pick[y - 1] + 1 == subsets.size()) pick[--y] = 0;
    if (y == 0) break;
    ++pick[y - 1];
  }

  std::vector<XList> lists(ny);
  for (std::size_t y = 0; y < ny; ++y) lists[y] = subsets[best_pick[y]];
  return BruteForceResult{FixedListRule(M, L, std::move(lists)), best, evaluated};
}

}  // namespace infobounds
