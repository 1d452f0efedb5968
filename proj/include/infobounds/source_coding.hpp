#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "infobounds/majorization.hpp"
#include "infobounds/prob_core.hpp"

namespace infobounds {

/// Codeword lengths (in D-ary symbols) of a fixed-to-variable code, one per
/// source symbol. Kraft feasibility is reported, not enforced, so infeasible
/// length vectors can be inspected; operations that need a UD code check it.
class CodeSpec {
 public:
  CodeSpec(unsigned D, std::vector<unsigned> lengths, std::vector<std::string> labels = {});

  unsigned alphabet_size() const { return D_; }
  std::size_t size() const { return lengths_.size(); }
  unsigned operator[](std::size_t i) const { return lengths_[i]; }
  const std::vector<unsigned>& lengths() const { return lengths_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool kraft_feasible() const;

 private:
  unsigned D_;
  std::vector<unsigned> lengths_;
  std::vector<std::string> labels_;
};

inline constexpr double kKraftSlack = 1e-12;

double kraft_sum(const CodeSpec& spec);

/// E[l(X)] in D-ary symbols.
double expected_length(const ProbVector& p, const CodeSpec& spec);

/// D-ary Huffman code. Ties in the merge queue go to the earliest-created node.
CodeSpec huffman(const ProbVector& p, unsigned D);

/// Tilted-Shannon lengths l(x) = ceil(log_D(T / P(x)^beta)), beta = 1/(1+rho),
/// T = sum_z P(z)^beta, floored at 1. Zero-mass atoms share whatever Kraft
/// budget the support leaves; InvalidArgument when there is none.
CodeSpec campbell_lengths(const ProbVector& p, double rho, unsigned D);

enum class CgfMode { Exact, Product };

inline constexpr double kCgfExactLimit = 1e6;

/// Lambda_k(rho) = (1/k) log_D E[D^{rho l(X^k)}] for the per-symbol code
/// applied blockwise (l(x^k) = sum of per-symbol lengths). Exact mode
/// enumerates all n^k blocks.
double cgf(const ProbVector& p, const CodeSpec& spec, double rho, unsigned k,
           CgfMode mode = CgfMode::Product);

struct CampbellReport {
  double rho;
  unsigned k;
  unsigned D;
  double lambda_k;         ///< log-D units per source symbol
  double normalized_cgf;   ///< lambda_k / rho
  double renyi_term;       ///< H_{1/(1+rho)}(X) / ln D
  double converse_margin;  ///< normalized_cgf - renyi_term, >= 0 for UD codes
  /// k * converse_margin: fraction of the 1/k achievability slack consumed;
  /// Campbell's construction keeps it in [0, 1].
  double achievability_margin;
};

CampbellReport campbell_verify(const ProbVector& p, const CodeSpec& spec, double rho, unsigned k,
                               CgfMode mode = CgfMode::Product);

/// Upper edge of the clustering band, in log-D units per symbol.
double clustering_band_upper(unsigned D);
inline constexpr double kClusteringGapConstant = 0.08607;

struct RenyiReference {
  double rho;
  /// rho * (H_{1/(1+rho)}(X) - H_{1/(1+rho)}(X~m)), log-D units.
  double reference;
  /// (Lambda(rho) - Lambda_bar(rho)) / rho of the two Huffman codes.
  double cgf_difference;
};

struct ClusteringReport {
  std::size_t m;
  unsigned D;
  unsigned k;
  CodeSpec code_x;
  CodeSpec code_y;
  ProbVector induced;
  TildeResult tilde;
  double mean_length_x;  ///< E[l(X)]
  double mean_length_y;  ///< E[l_bar(Y)]
  double entropy_x;      ///< nats
  double entropy_induced;
  double entropy_tilde;
  double delta;  ///< log-D units
  double band_lower;
  double band_upper;
  bool in_band;
  std::vector<RenyiReference> renyi;
};

ClusteringReport clustering_report(const ProbVector& p, std::size_t m, const ClusterMap& map,
                                   unsigned D, unsigned k, const std::vector<double>& rho_grid = {});

}  // namespace infobounds
