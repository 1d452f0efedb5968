#pragma once

#include <functional>
#include <optional>
#include <string>

#include "infobounds/extended_real.hpp"
#include "infobounds/prob_core.hpp"

namespace infobounds {

/// Convex generator f: (0, inf) -> R with f(1) = 0, together with its
/// boundary limits and (optionally) a closed-form lower bound on f''.
class FGenerator {
 public:
  using Eval = std::function<double(double)>;
  /// inf of f'' over [lo, hi] intersected with (0, inf).
  using CurvatureFloor = std::function<double(double lo, double hi)>;

  static FGenerator kl();
  static FGenerator tv();
  static FGenerator chi2();
  static FGenerator egamma(double gamma);

  /// User generator. Rejected unless f(1) = 0 and midpoint convexity holds on
  /// a logarithmic grid over [1e-6, 1e6].
  static FGenerator custom(std::string name, Eval eval, ExtReal f_at_zero,
                           ExtReal slope_at_infinity,
                           std::optional<CurvatureFloor> curvature_floor = std::nullopt);

  /// "kl" | "tv" | "chi2" | "egamma:<gamma>".
  static FGenerator from_name(const std::string& spec);

  const std::string& name() const { return name_; }
  double operator()(double t) const { return eval_(t); }

  /// f(t) for t >= 0 with f(0) read as the limit from the right.
  ExtReal at(double t) const { return t == 0.0 ? f_at_zero_ : ExtReal(eval_(t)); }

  ExtReal f_at_zero() const { return f_at_zero_; }
  ExtReal slope_at_infinity() const { return slope_at_infinity_; }
  bool has_curvature_floor() const { return curvature_floor_.has_value(); }
  double curvature_floor(double lo, double hi) const;

 private:
  FGenerator(std::string name, Eval eval, ExtReal f_at_zero, ExtReal slope_at_infinity,
             std::optional<CurvatureFloor> curvature_floor);

  std::string name_;
  Eval eval_;
  ExtReal f_at_zero_;
  ExtReal slope_at_infinity_;
  std::optional<CurvatureFloor> curvature_floor_;
};

/// D_f(P || Q) with the usual conventions at zero masses.
ExtReal f_divergence(const ProbVector& p, const ProbVector& q, const FGenerator& f);

/// E_gamma(P || Q) = sum_x (P(x) - gamma Q(x))^+, gamma >= 1.
double e_gamma(const ProbVector& p, const ProbVector& q, double gamma);

double total_variation(const ProbVector& p, const ProbVector& q);

/// d(p || q) in nats, continuous extension; +inf when q in {0, 1} and p != q.
ExtReal binary_kl(double p, double q);

/// h(p) in nats.
double binary_entropy(double p);

double shannon_entropy(const ProbVector& p);

/// H_alpha(P) in nats; alpha = 1 is Shannon entropy.
double renyi_entropy(const ProbVector& p, double alpha);

/// H(X|Y) in nats.
double conditional_entropy(const JointPMF& joint);

/// E[D_f(P_{X|Y}(.|Y) || U_M)].
ExtReal expected_div_to_uniform(const JointPMF& joint, const FGenerator& f);

}  // namespace infobounds
