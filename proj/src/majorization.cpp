#include "infobounds/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "infobounds/divergences.hpp"
#include "infobounds/error.hpp"

namespace infobounds {

namespace {

// Indices of `mass` ordered by non-increasing mass; equal masses keep index order.
std::vector<std::size_t> descending_order(std::span<const double> mass) {
  std::vector<std::size_t> order(mass.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return mass[a] > mass[b]; });
  return order;
}

std::vector<double> sorted_descending(std::span<const double> mass, std::size_t length) {
  std::vector<double> out(mass.begin(), mass.end());
  out.resize(std::max(length, out.size()), 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

// Below this a coordinate counts as already matched by the T-transform sweep.
constexpr double kMatchSlack = 1e-14;

}  // namespace

DoublyStochasticMatrix::DoublyStochasticMatrix(std::vector<std::vector<double>> entries,
                                               double tolerance)
    : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  require(n >= 1, ErrorKind::InvalidArgument, "doubly stochastic matrix must be non-empty");
  for (const auto& row : entries_) {
    require(row.size() == n, ErrorKind::InvalidArgument, "doubly stochastic matrix must be square");
    for (double v : row) {
      require(v >= 0.0, ErrorKind::InvalidArgument, "doubly stochastic matrix has a negative entry");
    }
  }
  require(max_stochasticity_error() <= tolerance, ErrorKind::InvalidArgument,
          "row or column sums deviate from 1");
}

DoublyStochasticMatrix DoublyStochasticMatrix::identity(std::size_t n) {
  std::vector<std::vector<double>> e(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) e[i][i] = 1.0;
  return DoublyStochasticMatrix(std::move(e));
}

double DoublyStochasticMatrix::max_stochasticity_error() const {
  const std::size_t n = entries_.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += entries_[i][j];
      col += entries_[j][i];
    }
    worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0)});
  }
  return worst;
}

std::vector<double> DoublyStochasticMatrix::apply(std::span<const double> row) const {
  require(row.size() == size(), ErrorKind::InvalidArgument, "dimension mismatch");
  std::vector<double> out(size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) out[j] += row[i] * entries_[i][j];
  }
  return out;
}

Kernel DoublyStochasticMatrix::as_kernel() const {
  return Kernel::from_rows(entries_, 1e-9);
}

ClusterMap::ClusterMap(std::vector<std::size_t> assignment, std::size_t num_clusters,
                       std::vector<std::string> cluster_labels)
    : assignment_(std::move(assignment)), cluster_labels_(std::move(cluster_labels)) {
  const std::size_t n = assignment_.size();
  require(num_clusters >= 1 && num_clusters < n, ErrorKind::InvalidArgument,
          "cluster map needs 1 <= m < n (m = " + std::to_string(num_clusters) +
              ", n = " + std::to_string(n) + ")");
  if (cluster_labels_.empty()) cluster_labels_ = default_labels(num_clusters);
  require(cluster_labels_.size() == num_clusters, ErrorKind::InvalidArgument,
          "cluster label count does not match m");
  std::vector<bool> hit(num_clusters, false);
  for (std::size_t c : assignment_) {
    require(c < num_clusters, ErrorKind::InvalidArgument, "cluster index out of range");
    hit[c] = true;
  }
  require(std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }),
          ErrorKind::InvalidArgument, "cluster map is not surjective");
}

bool majorizes(const ProbVector& q, const ProbVector& p, double tolerance) {
  const std::size_t n = std::max(q.size(), p.size());
  const auto qs = sorted_descending(q.mass(), n);
  const auto ps = sorted_descending(p.mass(), n);
  double sq = 0.0;
  double sp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sq += qs[k];
    sp += ps[k];
    if (sq < sp - tolerance) return false;
  }
  return true;
}

DoublyStochasticMatrix ds_witness(const ProbVector& q, const ProbVector& p) {
  require(q.size() == p.size(), ErrorKind::InvalidArgument,
          "ds_witness needs pmfs of equal length");
  require(majorizes(q, p), ErrorKind::NotMajorized, "Q does not majorize P");
  const std::size_t n = q.size();
  const auto q_order = descending_order(q.mass());
  const auto p_order = descending_order(p.mass());

  // Work in sorted coordinates: x starts at sorted Q and is driven to sorted P
  // by T-transforms; prefix sums of x dominate those of the target throughout.
  std::vector<double> x(n);
  std::vector<double> target(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = q[q_order[i]];
    target[i] = p[p_order[i]];
  }
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) w[i][i] = 1.0;

  for (std::size_t step = 0; step < n; ++step) {
    std::size_t i = 0;
    while (i < n && std::abs(x[i] - target[i]) <= kMatchSlack) ++i;
    if (i == n) break;
    require(x[i] > target[i], ErrorKind::NotMajorized, "Q does not majorize P");
    std::size_t k = i + 1;
    while (k < n && x[k] >= target[k] - kMatchSlack) ++k;
    if (k == n) break;  // residual below slack spread over several coordinates

    const double surplus = x[i] - target[i];
    const double deficit = target[k] - x[k];
    const double delta = std::min(surplus, deficit);
    const double mix = delta / (x[i] - x[k]);  // 1 - lambda, in (0, 1]
    for (std::size_t r = 0; r < n; ++r) {
      const double a = w[r][i];
      const double b = w[r][k];
      w[r][i] = (1.0 - mix) * a + mix * b;
      w[r][k] = mix * a + (1.0 - mix) * b;
    }
    x[i] -= delta;
    x[k] += delta;
    if (surplus <= deficit) {
      x[i] = target[i];
    } else {
      x[k] = target[k];
    }
  }

  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[q_order[i]][p_order[j]] = w[i][j];
  }
  return DoublyStochasticMatrix(std::move(out));
}

TildeResult tilde_x_m(const ProbVector& p, std::size_t m) {
  const std::size_t n = p.size();
  require(m >= 2 && m + 1 <= n, ErrorKind::InvalidArgument,
          "X~m needs 2 <= m <= n-1 (m = " + std::to_string(m) + ", n = " + std::to_string(n) +
              ")");
  auto order = descending_order(p.mass());
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = p[order[i]];

  std::vector<std::string> labels(m);
  if (sorted[0] < 1.0 / static_cast<double>(m)) {
    for (std::size_t i = 0; i < m; ++i) labels[i] = "~" + std::to_string(i + 1);
    return TildeResult{ProbVector::exact(std::vector<double>(m, 1.0 / static_cast<double>(m)),
                                         std::move(labels)),
                       std::nullopt, std::move(order)};
  }

  // tail[i] = sum of sorted[i..n-1]
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) tail[i] = tail[i + 1] + sorted[i];

  // 1-based i in {1..m-1}: sorted[i-1] >= tail[i] / (m - i)
  std::size_t n_star = 1;
  for (std::size_t i = 1; i < m; ++i) {
    const double spread = tail[i] / static_cast<double>(m - i);
    if (sorted[i - 1] >= spread * (1.0 - 1e-14)) n_star = i;
  }

  std::vector<double> mass(m);
  for (std::size_t i = 0; i < n_star; ++i) {
    mass[i] = sorted[i];
    labels[i] = p.labels()[order[i]];
  }
  const double level = tail[n_star] / static_cast<double>(m - n_star);
  for (std::size_t i = n_star; i < m; ++i) {
    mass[i] = level;
    labels[i] = "~" + std::to_string(i + 1);
  }
  return TildeResult{ProbVector::exact(std::move(mass), std::move(labels)), n_star,
                     std::move(order)};
}

ProbVector induced_pmf(const ProbVector& p, const ClusterMap& map) {
  require(map.num_sources() == p.size(), ErrorKind::InvalidArgument,
          "cluster map is defined on " + std::to_string(map.num_sources()) + " atoms, pmf has " +
              std::to_string(p.size()));
  std::vector<double> mass(map.num_clusters(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) mass[map[i]] += p[i];
  return ProbVector::validate(mass, kDefaultTolerance, map.cluster_labels());
}

void for_each_surjection(std::size_t n, std::size_t m,
                         const std::function<void(const std::vector<std::size_t>&)>& visit) {
  require(m >= 1 && m <= n, ErrorKind::InvalidArgument, "surjection needs 1 <= m <= n");
  std::vector<std::size_t> a(n, 0);
  std::vector<std::size_t> count(m, 0);
  count[0] = n;
  std::size_t covered = 1;
  while (true) {
    if (covered == m) visit(a);
    // odometer increment, last position least significant
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (--count[a[pos]] == 0) --covered;
      if (a[pos] + 1 < m) {
        ++a[pos];
        if (count[a[pos]]++ == 0) ++covered;
        break;
      }
      a[pos] = 0;
      if (count[0]++ == 0) ++covered;
      if (pos == 0) return;
    }
  }
}

namespace {

void partitions_from(std::size_t pos, std::size_t used, std::size_t n, std::size_t m,
                     std::vector<std::size_t>& a,
                     const std::function<void(const std::vector<std::size_t>&)>& visit) {
  if (pos == n) {
    if (used == m) visit(a);
    return;
  }
  const std::size_t top = std::min(used, m - 1);
  for (std::size_t v = 0; v <= top; ++v) {
    const std::size_t now_used = v == used ? used + 1 : used;
    if (m - now_used > n - pos - 1) continue;  // cannot open enough blocks
    a[pos] = v;
    partitions_from(pos + 1, now_used, n, m, a, visit);
  }
}

}  // namespace

void for_each_partition(std::size_t n, std::size_t m,
                        const std::function<void(const std::vector<std::size_t>&)>& visit) {
  require(m >= 1 && m <= n, ErrorKind::InvalidArgument, "partition needs 1 <= m <= n");
  std::vector<std::size_t> a(n, 0);
  partitions_from(0, 0, n, m, a, visit);
}

ClusterOracleResult cluster_oracle(const ProbVector& p, std::size_t m, double alpha) {
  const std::size_t n = p.size();
  require(n <= kClusterOracleMaxAtoms, ErrorKind::EnumerationLimit,
          "cluster oracle enumerates at most " + std::to_string(kClusterOracleMaxAtoms) +
              " atoms, got " + std::to_string(n));
  require(m >= 2 && m + 1 <= n, ErrorKind::InvalidArgument, "cluster oracle needs 2 <= m <= n-1");
  require(alpha > 0.0, ErrorKind::InvalidArgument, "Renyi order must be positive");

  // Induced pmfs depend only on the partition; the restricted-growth string is
  // the lexicographically first surjection of each class, so scanning them in
  // order and keeping strict improvements matches a full surjection scan.
  std::vector<std::size_t> best;
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<double> mass(m);
  for_each_partition(n, m, [&](const std::vector<std::size_t>& a) {
    std::fill(mass.begin(), mass.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) mass[a[i]] += p[i];
    const double h = renyi_entropy(ProbVector::exact(mass), alpha);
    if (h > best_value) {
      best_value = h;
      best = a;
    }
  });
  return ClusterOracleResult{ClusterMap(std::move(best), m), best_value};
}

}  // namespace infobounds
