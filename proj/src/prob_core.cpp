#include "infobounds/prob_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "infobounds/error.hpp"

namespace infobounds {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidPmf: return "invalid-pmf";
    case ErrorKind::NotMajorized: return "not-majorized";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::NotApplicable: return "not-applicable";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::EnumerationLimit: return "enumeration-limit";
  }
  return "unknown";
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

namespace {

void check_labels(std::vector<std::string>& labels, std::size_t n) {
  if (labels.empty()) labels = default_labels(n);
  require(labels.size() == n, ErrorKind::InvalidArgument,
          "label count " + std::to_string(labels.size()) + " does not match " +
              std::to_string(n) + " masses");
  std::set<std::string> seen(labels.begin(), labels.end());
  require(seen.size() == labels.size(), ErrorKind::InvalidArgument, "labels must be distinct");
}

double checked_sum(std::span<const double> raw, double tolerance) {
  require(!raw.empty(), ErrorKind::InvalidPmf, "pmf needs at least one atom");
  double sum = 0.0;
  for (double m : raw) {
    require(std::isfinite(m), ErrorKind::InvalidPmf, "pmf entries must be finite");
    require(m >= 0.0, ErrorKind::InvalidPmf, "negative mass " + std::to_string(m));
    sum += m;
  }
  require(std::abs(sum - 1.0) <= tolerance, ErrorKind::InvalidPmf,
          "masses sum to " + std::to_string(sum) + ", not 1");
  return sum;
}

}  // namespace

ProbVector ProbVector::validate(std::span<const double> raw, double tolerance,
                                std::vector<std::string> labels) {
  const double sum = checked_sum(raw, tolerance);
  check_labels(labels, raw.size());
  std::vector<double> mass(raw.begin(), raw.end());
  if (sum != 1.0) {
    for (double& m : mass) m /= sum;
  }
  return ProbVector(std::move(mass), std::move(labels));
}

ProbVector ProbVector::exact(std::vector<double> mass, std::vector<std::string> labels,
                             double tolerance) {
  checked_sum(mass, tolerance);
  check_labels(labels, mass.size());
  return ProbVector(std::move(mass), std::move(labels));
}

std::size_t ProbVector::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  return static_cast<std::size_t>(it - labels_.begin());
}

ProbVector uniform(std::size_t M) {
  require(M >= 1, ErrorKind::InvalidArgument, "uniform() needs M >= 1");
  return ProbVector::exact(std::vector<double>(M, 1.0 / static_cast<double>(M)));
}

Kernel::Kernel(std::vector<std::string> input_labels, std::vector<ProbVector> rows)
    : input_labels_(std::move(input_labels)), rows_(std::move(rows)) {
  require(!rows_.empty(), ErrorKind::InvalidArgument, "kernel needs at least one input");
  check_labels(input_labels_, rows_.size());
  for (const auto& r : rows_) {
    require(r.labels() == rows_.front().labels(), ErrorKind::InvalidArgument,
            "kernel rows must share one output alphabet");
  }
}

Kernel Kernel::from_rows(const std::vector<std::vector<double>>& rows, double tolerance) {
  std::vector<ProbVector> pmfs;
  pmfs.reserve(rows.size());
  for (const auto& r : rows) pmfs.push_back(ProbVector::validate(r, tolerance));
  return Kernel({}, std::move(pmfs));
}

JointPMF::JointPMF(std::vector<std::string> x_labels, std::vector<std::string> y_labels,
                   const std::vector<std::vector<double>>& rows, double tolerance)
    : x_labels_(std::move(x_labels)), y_labels_(std::move(y_labels)) {
  require(!rows.empty(), ErrorKind::InvalidPmf, "joint pmf needs at least one x row");
  const std::size_t ny = rows.front().size();
  require(ny >= 1, ErrorKind::InvalidPmf, "joint pmf needs at least one y column");
  mass_.reserve(rows.size() * ny);
  for (const auto& r : rows) {
    require(r.size() == ny, ErrorKind::InvalidPmf, "joint pmf rows must have equal length");
    mass_.insert(mass_.end(), r.begin(), r.end());
  }
  const double sum = checked_sum(mass_, tolerance);
  if (sum != 1.0) {
    for (double& m : mass_) m /= sum;
  }
  check_labels(x_labels_, rows.size());
  check_labels(y_labels_, ny);

  column_mass_.assign(ny, 0.0);
  for (std::size_t x = 0; x < num_x(); ++x) {
    for (std::size_t y = 0; y < ny; ++y) column_mass_[y] += (*this)(x, y);
  }
  for (std::size_t y = 0; y < ny; ++y) {
    require(column_mass_[y] > 0.0, ErrorKind::InvalidPmf,
            "column y=" + y_labels_[y] + " has zero mass");
  }
}

JointPMF::JointPMF(const std::vector<std::vector<double>>& rows, double tolerance)
    : JointPMF({}, {}, rows, tolerance) {}

JointPMF product(const ProbVector& px, const ProbVector& py) {
  std::vector<std::vector<double>> rows(px.size(), std::vector<double>(py.size()));
  for (std::size_t x = 0; x < px.size(); ++x) {
    for (std::size_t y = 0; y < py.size(); ++y) rows[x][y] = px[x] * py[y];
  }
  return JointPMF(px.labels(), py.labels(), rows);
}

Decomposition decompose(const JointPMF& joint) {
  const std::size_t M = joint.num_x();
  const std::size_t ny = joint.num_y();
  std::vector<double> px(M, 0.0);
  std::vector<double> py(ny);
  std::vector<ProbVector> conditionals;
  conditionals.reserve(ny);
  for (std::size_t y = 0; y < ny; ++y) {
    py[y] = joint.column_mass(y);
    std::vector<double> column(M);
    for (std::size_t x = 0; x < M; ++x) {
      column[x] = joint.conditional(x, y);
      px[x] += joint(x, y);
    }
    conditionals.push_back(ProbVector::validate(column, kDefaultTolerance, joint.x_labels()));
  }
  return Decomposition{
      ProbVector::validate(px, kDefaultTolerance, joint.x_labels()),
      ProbVector::validate(py, kDefaultTolerance, joint.y_labels()),
      Kernel(joint.y_labels(), std::move(conditionals)),
  };
}

ProbVector push_forward(const ProbVector& p, const Kernel& kernel) {
  require(p.size() == kernel.num_inputs(), ErrorKind::InvalidArgument,
          "pmf has " + std::to_string(p.size()) + " atoms but kernel has " +
              std::to_string(kernel.num_inputs()) + " inputs");
  std::vector<double> out(kernel.num_outputs(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += p[i] * kernel(i, j);
  }
  return ProbVector::validate(out, kDefaultTolerance, kernel.output_labels());
}

double map_error(const JointPMF& joint) {
  double covered = 0.0;
  for (std::size_t y = 0; y < joint.num_y(); ++y) {
    double best = 0.0;
    for (std::size_t x = 0; x < joint.num_x(); ++x) best = std::max(best, joint(x, y));
    covered += best;
  }
  return std::max(0.0, 1.0 - covered);
}

}  // namespace infobounds
