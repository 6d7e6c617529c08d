#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>

#include "smc/permutation.hpp"

namespace smc {

struct HillClimbOptions {
  int restarts = 20;
  std::uint64_t seed = 0;
  // Evaluate the transposition neighbourhood on OpenMP threads. The result
  // does not depend on this flag.
  bool parallel_neighbours = true;
};

struct HillClimbOutcome {
  std::uint64_t best_value = 0;
  Permutation witness;
  std::uint64_t evaluations = 0;
};

// Integer-valued objective over permutations of 1..n. Must be safe to call
// concurrently.
using PermutationObjective = std::function<std::uint64_t(std::span<const int>)>;

// Best-improvement ascent over all n(n-1)/2 transpositions, scanned in (i, j)
// lexicographic order with ties going to the first neighbour found. Each
// restart begins at a uniformly random permutation drawn from one mt19937_64
// stream seeded with `seed`; the best value over restarts wins, ties keep the
// earlier restart.
HillClimbOutcome hill_climb_max(int n, const PermutationObjective& objective,
                                const HillClimbOptions& opts);

// Fisher-Yates with `rng() % (i + 1)` draws, so the sequence is identical on
// every standard library.
Permutation random_permutation(int n, std::mt19937_64& rng);

}  // namespace smc
