#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infobounds/prob_core.hpp"

namespace infobounds {

/// Square non-negative matrix with unit row and column sums.
class DoublyStochasticMatrix {
 public:
  /// Validates entries >= 0 and row/column sums within `tolerance` of 1.
  explicit DoublyStochasticMatrix(std::vector<std::vector<double>> entries,
                                  double tolerance = 1e-12);

  static DoublyStochasticMatrix identity(std::size_t n);

  std::size_t size() const { return entries_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const std::vector<std::vector<double>>& entries() const { return entries_; }

  /// Largest |row sum - 1| or |column sum - 1|.
  double max_stochasticity_error() const;

  /// Row vector times this matrix.
  std::vector<double> apply(std::span<const double> row) const;

  Kernel as_kernel() const;

 private:
  std::vector<std::vector<double>> entries_;
};

/// Surjection from n source atoms onto m clusters.
class ClusterMap {
 public:
  ClusterMap(std::vector<std::size_t> assignment, std::size_t num_clusters,
             std::vector<std::string> cluster_labels = {});

  std::size_t num_sources() const { return assignment_.size(); }
  std::size_t num_clusters() const { return cluster_labels_.size(); }
  std::size_t operator[](std::size_t source) const { return assignment_[source]; }
  const std::vector<std::size_t>& assignment() const { return assignment_; }
  const std::vector<std::string>& cluster_labels() const { return cluster_labels_; }

 private:
  std::vector<std::size_t> assignment_;
  std::vector<std::string> cluster_labels_;
};

/// Q majorizes P: every top-k partial sum of Q dominates that of P. The shorter
/// vector is padded with zero atoms.
bool majorizes(const ProbVector& q, const ProbVector& p, double tolerance = 1e-12);

/// Doubly stochastic W with Q W = P, built from at most n-1 T-transforms.
/// Throws NotMajorized when Q does not majorize P.
DoublyStochasticMatrix ds_witness(const ProbVector& q, const ProbVector& p);

struct TildeResult {
  ProbVector pmf;                       ///< m atoms, in sorted order
  std::optional<std::size_t> n_star;    ///< none on the equiprobable branch
  std::vector<std::size_t> permutation; ///< sorted position -> original index of P
};

/// Extremal m-atom pmf X~m: keeps the n* largest masses of P and spreads the
/// rest evenly; uniform(m) when max P < 1/m.
TildeResult tilde_x_m(const ProbVector& p, std::size_t m);

/// Mass of each cluster.
ProbVector induced_pmf(const ProbVector& p, const ClusterMap& map);

struct ClusterOracleResult {
  ClusterMap best;
  double max_renyi;  ///< nats
};

inline constexpr std::size_t kClusterOracleMaxAtoms = 9;

/// Exhaustive search over clusterings of P into m groups for the largest
/// H_alpha of the induced pmf. Ties resolve to the lexicographically smallest
/// assignment.
ClusterOracleResult cluster_oracle(const ProbVector& p, std::size_t m, double alpha);

/// Calls `visit` for every surjection [n] -> [m], in lexicographic order.
void for_each_surjection(std::size_t n, std::size_t m,
                         const std::function<void(const std::vector<std::size_t>&)>& visit);

/// Calls `visit` for every partition of [n] into m blocks, given as its
/// restricted-growth string (the lexicographically smallest labelling).
void for_each_partition(std::size_t n, std::size_t m,
                        const std::function<void(const std::vector<std::size_t>&)>& visit);

}  // namespace infobounds
