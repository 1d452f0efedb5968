#include "infobounds/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace infobounds {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<double> random_weights(Rng& rng, std::size_t n, double zero_chance) {
  std::vector<double> w(n);
  bool any = false;
  for (auto& v : w) {
    v = rng.chance(zero_chance) ? 0.0 : -std::log(1.0 - rng.uniform());
    any = any || v > 0.0;
  }
  if (!any) w[rng.between(0, n - 1)] = 1.0;
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= sum;
  return w;
}

XList random_subset(Rng& rng, std::size_t M, std::size_t size) {
  XList all(M);
  std::iota(all.begin(), all.end(), std::size_t{0});
  for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[rng.between(i, M - 1)]);
  all.resize(size);
  return all;
}

}  // namespace

Rng Rng::substream(std::uint64_t master, std::uint64_t index) {
  return Rng(splitmix64(master + index));
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::between(std::size_t lo, std::size_t hi) {
  const std::uint64_t span = hi - lo + 1;
  return lo + static_cast<std::size_t>(engine_() % span);
}

ProbVector random_pmf(Rng& rng, std::size_t n, double zero_chance) {
  return ProbVector::validate(random_weights(rng, n, zero_chance));
}

JointPMF random_joint(Rng& rng, std::size_t M, std::size_t ny, double zero_chance) {
  std::vector<std::vector<double>> rows(M, std::vector<double>(ny));
  const auto column_weights = random_weights(rng, ny, 0.0);
  for (std::size_t y = 0; y < ny; ++y) {
    const auto col = random_weights(rng, M, zero_chance);
    for (std::size_t x = 0; x < M; ++x) rows[x][y] = column_weights[y] * col[x];
  }
  return JointPMF(rows);
}

Kernel random_kernel(Rng& rng, std::size_t inputs, std::size_t outputs, double zero_chance) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < inputs; ++i) rows.push_back(random_weights(rng, outputs, zero_chance));
  return Kernel::from_rows(rows);
}

FixedListRule random_fixed_rule(Rng& rng, std::size_t M, std::size_t ny, std::size_t L) {
  std::vector<XList> lists;
  for (std::size_t y = 0; y < ny; ++y) lists.push_back(random_subset(rng, M, L));
  return FixedListRule(M, L, std::move(lists));
}

VariableListRule random_variable_rule(Rng& rng, std::size_t M, std::size_t ny) {
  std::vector<XList> lists;
  for (std::size_t y = 0; y < ny; ++y) lists.push_back(random_subset(rng, M, rng.between(1, M)));
  return VariableListRule(M, std::move(lists));
}

CodeSpec random_code(Rng& rng, std::size_t n, unsigned D, unsigned max_length) {
  std::vector<unsigned> lengths(n);
  for (auto& l : lengths) l = static_cast<unsigned>(rng.between(1, max_length));
  const auto kraft = [&] {
    double s = 0.0;
    for (unsigned l : lengths) s += std::pow(static_cast<double>(D), -static_cast<double>(l));
    return s;
  };
  // lengthen the shortest codewords until the Kraft inequality holds
  while (kraft() > 1.0) {
    auto it = std::min_element(lengths.begin(), lengths.end());
    ++*it;
  }
  return CodeSpec(D, std::move(lengths));
}

std::vector<std::vector<double>> random_doubly_stochastic(Rng& rng, std::size_t n) {
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) w[i][i] = 1.0;
  if (n < 2) return w;
  const std::size_t steps = rng.between(1, 2 * n);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = rng.between(0, n - 1);
    std::size_t k = rng.between(0, n - 2);
    if (k >= i) ++k;
    const double mix = rng.uniform();
    for (std::size_t r = 0; r < n; ++r) {
      const double a = w[r][i];
      const double b = w[r][k];
      w[r][i] = (1.0 - mix) * a + mix * b;
      w[r][k] = mix * a + (1.0 - mix) * b;
    }
  }
  return w;
}

}  // namespace infobounds
