#include "infobounds/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <vector>

#include "infobounds/error.hpp"

namespace infobounds {

namespace {

void check_same_atoms(const ProbVector& p, const ProbVector& q) {
  require(p.size() == q.size() && p.labels() == q.labels(), ErrorKind::InvalidArgument,
          "divergence arguments must be defined over the same atoms");
}

// x ln(x / y) for x > 0, y > 0.
double xlogxy(double x, double y) { return x * std::log(x / y); }

void check_generator(const std::string& name, const FGenerator::Eval& eval) {
  const double at_one = eval(1.0);
  require(std::abs(at_one) <= 1e-12, ErrorKind::InvalidArgument,
          "generator '" + name + "' has f(1) = " + std::to_string(at_one) + ", expected 0");

  constexpr int kGrid = 97;
  std::vector<double> t(kGrid);
  std::vector<double> ft(kGrid);
  for (int i = 0; i < kGrid; ++i) {
    t[i] = std::pow(10.0, -6.0 + 12.0 * i / (kGrid - 1));
    ft[i] = eval(t[i]);
    require(std::isfinite(ft[i]), ErrorKind::InvalidArgument,
            "generator '" + name + "' is not finite on (0, inf)");
  }
  for (int i = 0; i < kGrid; ++i) {
    for (int j = i + 1; j < kGrid; ++j) {
      const double mid = eval(0.5 * (t[i] + t[j]));
      const double chord = 0.5 * (ft[i] + ft[j]);
      // Absolute 1e-12 slack, scaled with magnitude so rounding at t ~ 1e6 does
      // not reject piecewise-linear generators.
      const double slack = 1e-12 * (1.0 + std::abs(ft[i]) + std::abs(ft[j]));
      require(mid <= chord + slack, ErrorKind::InvalidArgument,
              "generator '" + name + "' fails the midpoint convexity test");
    }
  }
}

}  // namespace

FGenerator::FGenerator(std::string name, Eval eval, ExtReal f_at_zero,
                       ExtReal slope_at_infinity, std::optional<CurvatureFloor> curvature_floor)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      f_at_zero_(f_at_zero),
      slope_at_infinity_(slope_at_infinity),
      curvature_floor_(std::move(curvature_floor)) {}

FGenerator FGenerator::kl() {
  return FGenerator(
      "kl", [](double t) { return t * std::log(t); }, 0.0, ExtReal::infinity(),
      // f''(t) = 1/t is decreasing, so the floor sits at the right end.
      [](double, double hi) { return 1.0 / hi; });
}

FGenerator FGenerator::tv() {
  return FGenerator(
      "tv", [](double t) { return 0.5 * std::abs(t - 1.0); }, 0.5, 0.5,
      [](double, double) { return 0.0; });
}

FGenerator FGenerator::chi2() {
  return FGenerator(
      "chi2", [](double t) { return (t - 1.0) * (t - 1.0); }, 1.0, ExtReal::infinity(),
      [](double, double) { return 2.0; });
}

FGenerator FGenerator::egamma(double gamma) {
  require(gamma >= 1.0, ErrorKind::InvalidArgument, "E_gamma needs gamma >= 1");
  char name[64];
  std::snprintf(name, sizeof name, "egamma:%.17g", gamma);
  return FGenerator(
      name, [gamma](double t) { return std::max(t - gamma, 0.0); }, 0.0, 1.0,
      [](double, double) { return 0.0; });
}

FGenerator FGenerator::custom(std::string name, Eval eval, ExtReal f_at_zero,
                              ExtReal slope_at_infinity,
                              std::optional<CurvatureFloor> curvature_floor) {
  require(static_cast<bool>(eval), ErrorKind::InvalidArgument, "generator needs a function");
  check_generator(name, eval);
  return FGenerator(std::move(name), std::move(eval), f_at_zero, slope_at_infinity,
                    std::move(curvature_floor));
}

FGenerator FGenerator::from_name(const std::string& spec) {
  if (spec == "kl") return kl();
  if (spec == "tv") return tv();
  if (spec == "chi2") return chi2();
  const std::string prefix = "egamma:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string arg = spec.substr(prefix.size());
    char* end = nullptr;
    const double gamma = std::strtod(arg.c_str(), &end);
    require(!arg.empty() && end == arg.c_str() + arg.size(), ErrorKind::InvalidArgument,
            "cannot parse gamma in '" + spec + "'");
    return egamma(gamma);
  }
  fail(ErrorKind::InvalidArgument,
       "unknown generator '" + spec + "' (expected kl, tv, chi2 or egamma:<gamma>)");
}

double FGenerator::curvature_floor(double lo, double hi) const {
  require(curvature_floor_.has_value(), ErrorKind::NotApplicable,
          "generator '" + name_ + "' has no closed-form curvature floor");
  require(hi > 0.0 && lo <= hi, ErrorKind::InvalidArgument,
          "curvature interval must meet (0, inf)");
  return (*curvature_floor_)(std::max(lo, 0.0), hi);
}

ExtReal f_divergence(const ProbVector& p, const ProbVector& q, const FGenerator& f) {
  check_same_atoms(p, q);
  ExtReal total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] == 0.0) {
      if (p[i] > 0.0) total += p[i] * f.slope_at_infinity();
    } else if (p[i] == 0.0) {
      total += q[i] * f.f_at_zero();
    } else {
      total += ExtReal(q[i] * f(p[i] / q[i]));
    }
  }
  return total;
}

double e_gamma(const ProbVector& p, const ProbVector& q, double gamma) {
  require(gamma >= 1.0, ErrorKind::InvalidArgument, "E_gamma needs gamma >= 1");
  check_same_atoms(p, q);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::max(p[i] - gamma * q[i], 0.0);
  return total;
}

double total_variation(const ProbVector& p, const ProbVector& q) {
  check_same_atoms(p, q);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return 0.5 * total;
}

ExtReal binary_kl(double p, double q) {
  require(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0, ErrorKind::InvalidArgument,
          "binary_kl arguments must lie in [0, 1]");
  double total = 0.0;
  if (p > 0.0) {
    if (q == 0.0) return ExtReal::infinity();
    total += xlogxy(p, q);
  }
  if (p < 1.0) {
    if (q == 1.0) return ExtReal::infinity();
    total += xlogxy(1.0 - p, 1.0 - q);
  }
  return total;
}

double binary_entropy(double p) {
  require(p >= 0.0 && p <= 1.0, ErrorKind::InvalidArgument,
          "binary_entropy argument must lie in [0, 1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

double shannon_entropy(const ProbVector& p) {
  double h = 0.0;
  for (double m : p.mass()) {
    if (m > 0.0) h -= m * std::log(m);
  }
  return h;
}

double renyi_entropy(const ProbVector& p, double alpha) {
  require(alpha > 0.0, ErrorKind::InvalidArgument, "Renyi order must be positive");
  if (alpha == 1.0) return shannon_entropy(p);
  // log-sum-exp of alpha * ln p over the support
  double peak = -std::numeric_limits<double>::infinity();
  for (double m : p.mass()) {
    if (m > 0.0) peak = std::max(peak, alpha * std::log(m));
  }
  double acc = 0.0;
  for (double m : p.mass()) {
    if (m > 0.0) acc += std::exp(alpha * std::log(m) - peak);
  }
  return (peak + std::log(acc)) / (1.0 - alpha);
}

double conditional_entropy(const JointPMF& joint) {
  double h = 0.0;
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    for (std::size_t x = 0; x < joint.num_x(); ++x) {
      const double m = joint(x, y);
      if (m > 0.0) h -= m * std::log(joint.conditional(x, y));
    }
  }
  return h;
}

ExtReal expected_div_to_uniform(const JointPMF& joint, const FGenerator& f) {
  const std::size_t M = joint.num_x();
  const double u = 1.0 / static_cast<double>(M);
  ExtReal total = 0.0;
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    ExtReal div = 0.0;
    for (std::size_t x = 0; x < M; ++x) {
      const double c = joint.conditional(x, y);
      div += c == 0.0 ? u * f.f_at_zero() : ExtReal(u * f(c / u));
    }
    total += joint.column_mass(y) * div;
  }
  return total;
}

}  // namespace infobounds
