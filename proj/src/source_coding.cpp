#include "infobounds/source_coding.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

#include "infobounds/divergences.hpp"
#include "infobounds/error.hpp"

namespace infobounds {

namespace {

void check_alphabet(unsigned D) {
  require(D >= 2, ErrorKind::InvalidArgument, "code alphabet size D must be >= 2");
}

// ln sum_i w_i exp(e_i) for weights summing to 1. The expm1/log1p route keeps
// precision when every exponent is small (rho -> 0).
double log_mean_exp(const std::vector<double>& weights, const std::vector<double>& exponents) {
  double peak = 0.0;
  for (double e : exponents) peak = std::max(peak, e);
  if (peak <= 1.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) acc += weights[i] * std::expm1(exponents[i]);
    return std::log1p(acc);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i] * std::exp(exponents[i] - peak);
  }
  return peak + std::log(acc);
}

}  // namespace

CodeSpec::CodeSpec(unsigned D, std::vector<unsigned> lengths, std::vector<std::string> labels)
    : D_(D), lengths_(std::move(lengths)), labels_(std::move(labels)) {
  check_alphabet(D);
  require(!lengths_.empty(), ErrorKind::InvalidArgument, "code needs at least one codeword");
  for (unsigned l : lengths_) {
    require(l >= 1, ErrorKind::InvalidArgument, "codeword lengths must be positive");
  }
  if (labels_.empty()) labels_ = default_labels(lengths_.size());
  require(labels_.size() == lengths_.size(), ErrorKind::InvalidArgument,
          "label count does not match the number of codewords");
}

bool CodeSpec::kraft_feasible() const { return kraft_sum(*this) <= 1.0 + kKraftSlack; }

double kraft_sum(const CodeSpec& spec) {
  const double d = spec.alphabet_size();
  double sum = 0.0;
  for (unsigned l : spec.lengths()) sum += std::pow(d, -static_cast<double>(l));
  return sum;
}

double expected_length(const ProbVector& p, const CodeSpec& spec) {
  require(p.size() == spec.size(), ErrorKind::InvalidArgument,
          "code and pmf have different alphabet sizes");
  double e = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) e += p[i] * spec[i];
  return e;
}

CodeSpec huffman(const ProbVector& p, unsigned D) {
  check_alphabet(D);
  const std::size_t n = p.size();
  if (n == 1) return CodeSpec(D, {1}, p.labels());

  // (weight, creation index); the smallest creation index wins ties.
  using Node = std::pair<double, std::size_t>;
  std::priority_queue<Node, std::vector<Node>, std::greater<>> queue;
  std::vector<std::size_t> parent(n, 0);
  for (std::size_t i = 0; i < n; ++i) queue.emplace(p[i], i);

  // First merge takes 2 + (n-2) mod (D-1) nodes so every later merge is full.
  std::size_t take = 2 + (n - 2) % (D - 1);
  while (queue.size() > 1) {
    const std::size_t id = parent.size();
    parent.push_back(id);  // provisional root
    double weight = 0.0;
    for (std::size_t j = 0; j < take && !queue.empty(); ++j) {
      const auto [w, child] = queue.top();
      queue.pop();
      weight += w;
      parent[child] = id;
    }
    queue.emplace(weight, id);
    take = D;
  }

  std::vector<unsigned> lengths(n);
  const std::size_t root = queue.top().second;
  for (std::size_t i = 0; i < n; ++i) {
    unsigned depth = 0;
    for (std::size_t v = i; v != root; v = parent[v]) ++depth;
    lengths[i] = depth;
  }
  return CodeSpec(D, std::move(lengths), p.labels());
}

CodeSpec campbell_lengths(const ProbVector& p, double rho, unsigned D) {
  require(rho > 0.0, ErrorKind::InvalidArgument, "rho must be positive");
  check_alphabet(D);
  const double beta = 1.0 / (1.0 + rho);
  const double log_d = std::log(static_cast<double>(D));

  double tilt = 0.0;
  for (double m : p.mass()) {
    if (m > 0.0) tilt += std::pow(m, beta);
  }
  const double log_tilt = std::log(tilt);

  std::vector<unsigned> lengths(p.size(), 0);
  double kraft = 0.0;
  std::size_t zeros = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) {
      ++zeros;
      continue;
    }
    const double ideal = (log_tilt - beta * std::log(p[i])) / log_d;
    // an ideal length that is integral up to rounding keeps its value
    const double rounded = std::ceil(ideal - 1e-12);
    lengths[i] = static_cast<unsigned>(std::max(1.0, rounded));
    kraft += std::pow(static_cast<double>(D), -static_cast<double>(lengths[i]));
  }
  if (zeros > 0) {
    const double room = 1.0 - kraft;
    require(room > kKraftSlack, ErrorKind::InvalidArgument,
            "support exhausts the Kraft budget; zero-mass atoms cannot be coded");
    const double l = std::ceil(std::log(static_cast<double>(zeros) / room) / log_d);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0.0) lengths[i] = static_cast<unsigned>(std::max(1.0, l));
    }
  }
  return CodeSpec(D, std::move(lengths), p.labels());
}

double cgf(const ProbVector& p, const CodeSpec& spec, double rho, unsigned k, CgfMode mode) {
  require(rho > 0.0, ErrorKind::InvalidArgument, "rho must be positive");
  require(k >= 1, ErrorKind::InvalidArgument, "block length k must be >= 1");
  require(p.size() == spec.size(), ErrorKind::InvalidArgument,
          "code and pmf have different alphabet sizes");
  const double log_d = std::log(static_cast<double>(spec.alphabet_size()));
  const double slope = rho * log_d;

  if (mode == CgfMode::Product) {
    // The block sum factorizes into k identical per-symbol sums.
    std::vector<double> w;
    std::vector<double> e;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0.0) continue;
      w.push_back(p[i]);
      e.push_back(slope * spec[i]);
    }
    return log_mean_exp(w, e) / log_d;
  }

  const std::size_t n = p.size();
  const double blocks = std::pow(static_cast<double>(n), static_cast<double>(k));
  require(blocks <= kCgfExactLimit, ErrorKind::EnumerationLimit,
          "n^k = " + std::to_string(blocks) + " blocks exceeds the exact-mode limit");
  std::vector<double> w;
  std::vector<double> e;
  w.reserve(static_cast<std::size_t>(blocks));
  e.reserve(static_cast<std::size_t>(blocks));
  std::vector<std::size_t> digits(k, 0);
  while (true) {
    double prob = 1.0;
    double length = 0.0;
    for (std::size_t d : digits) {
      prob *= p[d];
      length += spec[d];
    }
    if (prob > 0.0) {
      w.push_back(prob);
      e.push_back(slope * length);
    }
    std::size_t pos = k;
    while (pos > 0 && digits[pos - 1] + 1 == n) digits[--pos] = 0;
    if (pos == 0) break;
    ++digits[pos - 1];
  }
  return log_mean_exp(w, e) / (log_d * static_cast<double>(k));
}

CampbellReport campbell_verify(const ProbVector& p, const CodeSpec& spec, double rho, unsigned k,
                               CgfMode mode) {
  require(spec.kraft_feasible(), ErrorKind::InvalidArgument,
          "Kraft sum " + std::to_string(kraft_sum(spec)) +
              " exceeds 1; the converse only covers UD codes");
  const double lambda = cgf(p, spec, rho, k, mode);
  const double log_d = std::log(static_cast<double>(spec.alphabet_size()));
  const double renyi_term = renyi_entropy(p, 1.0 / (1.0 + rho)) / log_d;
  const double normalized = lambda / rho;
  const double margin = normalized - renyi_term;
  return CampbellReport{rho,    k,          spec.alphabet_size(), lambda, normalized,
                        renyi_term, margin, static_cast<double>(k) * margin};
}

double clustering_band_upper(unsigned D) {
  check_alphabet(D);
  return kClusteringGapConstant * std::log(2.0) / std::log(static_cast<double>(D));
}

ClusteringReport clustering_report(const ProbVector& p, std::size_t m, const ClusterMap& map,
                                   unsigned D, unsigned k, const std::vector<double>& rho_grid) {
  check_alphabet(D);
  require(k >= 1, ErrorKind::InvalidArgument, "block length k must be >= 1");
  require(m >= 2 && m + 1 <= p.size(), ErrorKind::InvalidArgument,
          "clustering needs 2 <= m <= n-1");
  require(map.num_clusters() == m, ErrorKind::InvalidArgument,
          "cluster map has " + std::to_string(map.num_clusters()) + " clusters, expected " +
              std::to_string(m));

  ProbVector induced = induced_pmf(p, map);
  TildeResult tilde = tilde_x_m(p, m);
  CodeSpec code_x = huffman(p, D);
  CodeSpec code_y = huffman(induced, D);
  const double log_d = std::log(static_cast<double>(D));

  const double mean_x = expected_length(p, code_x);
  const double mean_y = expected_length(induced, code_y);
  const double h_x = shannon_entropy(p);
  const double h_induced = shannon_entropy(induced);
  const double h_tilde = shannon_entropy(tilde.pmf);
  const double delta = (mean_x - mean_y) - (h_x - h_tilde) / log_d;
  const double lower = -1.0 / static_cast<double>(k);
  const double upper = clustering_band_upper(D);

  std::vector<RenyiReference> renyi;
  renyi.reserve(rho_grid.size());
  for (double rho : rho_grid) {
    require(rho > 0.0, ErrorKind::InvalidArgument, "rho must be positive");
    const double order = 1.0 / (1.0 + rho);
    const double ref = rho * (renyi_entropy(p, order) - renyi_entropy(tilde.pmf, order)) / log_d;
    const double diff = (cgf(p, code_x, rho, k) - cgf(induced, code_y, rho, k)) / rho;
    renyi.push_back(RenyiReference{rho, ref, diff});
  }

  return ClusteringReport{
      .m = m,
      .D = D,
      .k = k,
      .code_x = std::move(code_x),
      .code_y = std::move(code_y),
      .induced = std::move(induced),
      .tilde = std::move(tilde),
      .mean_length_x = mean_x,
      .mean_length_y = mean_y,
      .entropy_x = h_x,
      .entropy_induced = h_induced,
      .entropy_tilde = h_tilde,
      .delta = delta,
      .band_lower = lower,
      .band_upper = upper,
      .in_band = delta >= lower - 1e-12 && delta <= upper + 1e-12,
      .renyi = std::move(renyi),
  };
}

}  // namespace infobounds
