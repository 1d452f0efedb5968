#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "infobounds/list_decoding.hpp"
#include "infobounds/prob_core.hpp"
#include "infobounds/source_coding.hpp"

namespace infobounds {

/// Seeded generator with platform-independent output (mt19937_64 plus
/// hand-rolled uniform mapping; the std distributions are not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent substream for trial `index` of a campaign seeded by `master`.
  static Rng substream(std::uint64_t master, std::uint64_t index);

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi);
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Random pmf on n atoms; each atom is zeroed with probability `zero_chance`
/// (at least one atom stays positive).
ProbVector random_pmf(Rng& rng, std::size_t n, double zero_chance = 0.0);

/// Random joint pmf with every column observable.
JointPMF random_joint(Rng& rng, std::size_t M, std::size_t ny, double zero_chance = 0.1);

Kernel random_kernel(Rng& rng, std::size_t inputs, std::size_t outputs, double zero_chance = 0.1);

FixedListRule random_fixed_rule(Rng& rng, std::size_t M, std::size_t ny, std::size_t L);

VariableListRule random_variable_rule(Rng& rng, std::size_t M, std::size_t ny);

/// Random Kraft-feasible length vector with lengths in [1, max_length].
CodeSpec random_code(Rng& rng, std::size_t n, unsigned D, unsigned max_length = 12);

/// Random doubly stochastic n x n matrix as a product of random T-transforms.
std::vector<std::vector<double>> random_doubly_stochastic(Rng& rng, std::size_t n);

}  // namespace infobounds
