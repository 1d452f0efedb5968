#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infobounds/divergences.hpp"
#include "infobounds/extended_real.hpp"
#include "infobounds/prob_core.hpp"

namespace infobounds {

using XList = std::vector<std::size_t>;

/// One list of exactly L distinct x indices per y, with L < M.
class FixedListRule {
 public:
  FixedListRule(std::size_t M, std::size_t L, std::vector<XList> lists);

  std::size_t list_size() const { return L_; }
  std::size_t num_x() const { return M_; }
  const std::vector<XList>& lists() const { return lists_; }
  const XList& operator[](std::size_t y) const { return lists_[y]; }

 private:
  std::size_t M_;
  std::size_t L_;
  std::vector<XList> lists_;
};

/// One non-empty list of distinct x indices per y.
class VariableListRule {
 public:
  VariableListRule(std::size_t M, std::vector<XList> lists);
  // NOLINTNEXTLINE(google-explicit-constructor): every fixed rule is a variable rule
  VariableListRule(const FixedListRule& fixed);

  std::size_t num_x() const { return M_; }
  const std::vector<XList>& lists() const { return lists_; }
  const XList& operator[](std::size_t y) const { return lists_[y]; }
  /// N = max_y |L(y)|.
  std::size_t max_list_size() const;

 private:
  std::size_t M_;
  std::vector<XList> lists_;
};

/// P_L = P[X not in L(Y)].
double error_prob(const JointPMF& joint, const VariableListRule& rule);

/// E[|L(Y)|] and E[ln |L(Y)|] under P_Y.
double expected_list_size(const JointPMF& joint, const VariableListRule& rule);
double expected_log_list_size(const JointPMF& joint, const VariableListRule& rule);

/// Per y, the L most probable x given y; ties go to the lowest index.
FixedListRule top_l_rule(const JointPMF& joint, std::size_t L);

/// True when every list holds |L(y)| most probable elements given y.
bool selects_most_probable(const JointPMF& joint, const VariableListRule& rule);

/// Right side of the generalized Fano inequality for fixed list size L as a
/// function of the error probability p:
///   (L/M) f(M(1-p)/L) + (1-L/M) f(Mp/(M-L)).
ExtReal gen_fano_rhs(double p, std::size_t M, std::size_t L, const FGenerator& f);

struct FanoCheck {
  ExtReal lhs;  ///< E[D_f(P_{X|Y}(.|Y) || U_M)]
  ExtReal rhs;
  bool holds;
};

FanoCheck gen_fano_check(const JointPMF& joint, const FixedListRule& rule, const FGenerator& f);

struct Inversion {
  double p;        ///< the bound on P_L
  int iterations;  ///< bisection steps used
};

/// Smallest p in [0, 1-L/M] with gen_fano_rhs(p) <= lhs.
Inversion gen_fano_invert(ExtReal lhs, std::size_t M, std::size_t L, const FGenerator& f);

/// Smallest p in [0, 1-L/M] with d(p || 1-L/M) <= ln M - H(X|Y), evaluated
/// through binary_kl directly.
Inversion fano_fixed_invert(double h_cond, std::size_t M, std::size_t L);

enum class RefinedPart {
  Auto,  ///< part b whenever the rule selects the L most probable elements
  A,     ///< part a only
  B,     ///< part b required; Precondition error if the rule does not qualify
};

struct RefinedBoundReport {
  double xi1_star;
  double xi2_star;
  double m_f_used;
  double expected_posterior;  ///< E[P_{X|Y}(X|Y)]
  double error_prob;
  ExtReal lhs;
  ExtReal base_rhs;
  double correction_a;
  ExtReal bound_a;
  std::optional<double> correction_b;  ///< raw value, reported as computed
  std::optional<ExtReal> bound_b;
  /// Lower bounds on P_L obtained by inverting the refined inequalities.
  Inversion p_bound_a;
  std::optional<Inversion> p_bound_b;
};

RefinedBoundReport refined_bound(const JointPMF& joint, const FixedListRule& rule,
                                 const FGenerator& f, RefinedPart part = RefinedPart::Auto);

struct AhlswedeKornerBounds {
  Inversion general;
  std::optional<Inversion> max_list;
};

/// Lower bounds on P_L from H(X|Y) <= h(p) + E[ln|L|] + p ln M and, when N is
/// given, H(X|Y) <= h(p) + (1-p) ln N + p ln M. All in nats.
AhlswedeKornerBounds ak_invert(double h_cond, std::size_t M, double e_log_list,
                               std::optional<std::size_t> N = std::nullopt);

/// Raw E_gamma lower bound on P_L (may be negative).
double egamma_bound(const JointPMF& joint, const VariableListRule& rule, double gamma);

struct GammaOptimum {
  double gamma;
  double bound;
  std::size_t candidates;  ///< breakpoints evaluated
};

/// Maximizes egamma_bound over gamma >= 1 by enumerating breakpoints.
GammaOptimum optimize_gamma(const JointPMF& joint, const VariableListRule& rule);

struct EqualityWitness {
  double gamma;
  std::vector<double> alpha;  ///< level on the list, per y
  bool satisfied;
  std::vector<std::pair<std::size_t, std::string>> violations;
};

/// Certifies the sufficient condition for equality in the E_gamma bound.
EqualityWitness equality_check(const JointPMF& joint, const VariableListRule& rule, double gamma);

struct BruteForceResult {
  FixedListRule best;
  double min_error;
  std::size_t rules_evaluated;
};

inline constexpr double kBruteForceLimit = 1e6;

/// Minimum of P_L over every fixed-size-L rule (C(M, L)^|Y| <= 1e6).
BruteForceResult brute_force_min_error(const JointPMF& joint, std::size_t L);

}  // namespace infobounds
