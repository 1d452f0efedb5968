#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace infobounds {

inline constexpr double kDefaultTolerance = 1e-9;

/// Finite probability mass function over labelled atoms. Immutable.
class ProbVector {
 public:
  /// Accepts raw masses whose sum is within `tolerance` of 1 and renormalizes
  /// them so the stored sum is 1 to machine precision. Zeros are preserved.
  /// Empty `labels` means "0", "1", ...
  static ProbVector validate(std::span<const double> raw, double tolerance = kDefaultTolerance,
                             std::vector<std::string> labels = {});

  /// Same checks as validate() but the masses are stored as given. Used where
  /// callers need bit-exact entries (e.g. the kept atoms of X~m).
  static ProbVector exact(std::vector<double> mass, std::vector<std::string> labels = {},
                          double tolerance = kDefaultTolerance);

  std::size_t size() const { return mass_.size(); }
  double operator[](std::size_t i) const { return mass_[i]; }
  std::span<const double> mass() const { return mass_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of `label`, or size() when absent.
  std::size_t index_of(const std::string& label) const;

 private:
  ProbVector(std::vector<double> mass, std::vector<std::string> labels)
      : mass_(std::move(mass)), labels_(std::move(labels)) {}

  std::vector<double> mass_;
  std::vector<std::string> labels_;
};

ProbVector uniform(std::size_t M);

inline ProbVector validate(std::span<const double> raw, double tolerance = kDefaultTolerance) {
  return ProbVector::validate(raw, tolerance);
}

std::vector<std::string> default_labels(std::size_t n);

/// Row-stochastic mapping: one ProbVector per input symbol, all over the same
/// output alphabet.
class Kernel {
 public:
  Kernel(std::vector<std::string> input_labels, std::vector<ProbVector> rows);

  /// Plain matrix form; each row validated as a pmf.
  static Kernel from_rows(const std::vector<std::vector<double>>& rows,
                          double tolerance = kDefaultTolerance);

  std::size_t num_inputs() const { return rows_.size(); }
  std::size_t num_outputs() const { return rows_.front().size(); }
  const ProbVector& row(std::size_t input) const { return rows_[input]; }
  double operator()(std::size_t input, std::size_t output) const { return rows_[input][output]; }
  const std::vector<std::string>& input_labels() const { return input_labels_; }
  const std::vector<std::string>& output_labels() const { return rows_.front().labels(); }

 private:
  std::vector<std::string> input_labels_;
  std::vector<ProbVector> rows_;
};

/// Joint pmf of (X, Y) stored as an M x |Y| matrix, rows indexed by x.
/// Every column must carry positive mass.
class JointPMF {
 public:
  JointPMF(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
           const std::vector<std::vector<double>>& rows, double tolerance = kDefaultTolerance);

  /// Unlabelled convenience form.
  explicit JointPMF(const std::vector<std::vector<double>>& rows,
                    double tolerance = kDefaultTolerance);

  std::size_t num_x() const { return x_labels_.size(); }
  std::size_t num_y() const { return y_labels_.size(); }
  double operator()(std::size_t x, std::size_t y) const { return mass_[x * num_y() + y]; }
  const std::vector<std::string>& x_labels() const { return x_labels_; }
  const std::vector<std::string>& y_labels() const { return y_labels_; }

  /// P_Y(y): column sum.
  double column_mass(std::size_t y) const { return column_mass_[y]; }
  /// P_{X|Y}(x|y).
  double conditional(std::size_t x, std::size_t y) const { return (*this)(x, y) / column_mass_[y]; }

 private:
  std::vector<std::string> x_labels_;
  std::vector<std::string> y_labels_;
  std::vector<double> mass_;
  std::vector<double> column_mass_;
};

/// Product pmf P(x) Q(y).
JointPMF product(const ProbVector& px, const ProbVector& py);

struct Decomposition {
  ProbVector px;
  ProbVector py;
  Kernel x_given_y;  ///< inputs are y symbols, outputs are x symbols
};

Decomposition decompose(const JointPMF& joint);

/// Row vector P times row-stochastic K.
ProbVector push_forward(const ProbVector& p, const Kernel& kernel);

/// Minimum single-output error probability, achieved by the MAP rule:
/// 1 - sum_y max_x P_XY(x, y).
double map_error(const JointPMF& joint);

}  // namespace infobounds
