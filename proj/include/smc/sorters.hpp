#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "smc/algorithm.hpp"
#include "smc/exact.hpp"
#include "smc/permutation.hpp"

namespace smc {

// How M3Quicksort's median-of-three step is charged.
//   Fixed:        3 comparisons per partition step, so a step over n >= 3
//                 elements costs exactly n (the modular recurrence's leading term).
//   Instrumented: the 2 or 3 comparisons actually performed.
// In both, the n-3 elements outside the sample are compared once with the pivot.
enum class M3Convention { Fixed, Instrumented };

struct SorterOptions {
  M3Convention m3 = M3Convention::Fixed;

  friend bool operator==(const SorterOptions&, const SorterOptions&) = default;
};

struct RuntimeCount {
  std::uint64_t comparisons = 0;

  friend auto operator<=>(const RuntimeCount&, const RuntimeCount&) = default;
};

// Counts element comparisons of the deterministic implementation of `alg`.
//
//   quicksort    first element as pivot; stable partition, n-1 comparisons per list of n
//   m3quicksort  median of first/middle/last as pivot, stable partition (see M3Convention)
//   bubblesort   passes over a shrinking prefix, stops after a pass with no swap
//   mergesort    top-down, left half floor(n/2), one comparison per merge step
//
// Values need only be distinct; they are not required to be 1..N.
RuntimeCount count_comparisons(Algorithm alg, std::span<const int> values,
                               const SorterOptions& opts = {});
RuntimeCount count_comparisons(Algorithm alg, const Permutation& p,
                               const SorterOptions& opts = {});

// Reusable scratch space so hot loops avoid per-call allocation.
// One instance per thread.
class ComparisonCounter {
 public:
  ComparisonCounter(Algorithm alg, SorterOptions opts = {}) : alg_(alg), opts_(opts) {}

  std::uint64_t count(std::span<const int> values);
  // Sorts `values` in place and returns the comparison count.
  std::uint64_t sort(std::span<int> values);

 private:
  Algorithm alg_;
  SorterOptions opts_;
  std::vector<int> work_;
  std::vector<int> scratch_;
};

struct EnumerationLimits {
  // N! enumeration is refused above this N.
  int max_n = 10;
};

// Mean comparisons over all N! inputs, exact. Throws BudgetExceeded when N > limits.max_n.
Rational average_runtime_exact(Algorithm alg, int n, const SorterOptions& opts = {},
                               const EnumerationLimits& limits = {});

enum class MaxStrategy { ClosedForm, Exhaustive, HillClimb };

struct MaxRuntimeResult {
  RuntimeCount count;
  Permutation witness;
  MaxStrategy strategy;
};

// Largest comparison count over inputs of size n.
//   ClosedForm  quicksort (sorted witness) and bubblesort (reversed witness) only
//   Exhaustive  true maximum, lowest-rank witness; n <= limits.max_n
//   HillClimb   lower bound from best-improvement transposition ascent
MaxRuntimeResult max_runtime(Algorithm alg, int n, MaxStrategy strategy, std::uint64_t seed = 0,
                             int restarts = 20, const SorterOptions& opts = {},
                             const EnumerationLimits& limits = {});

// Merge recurrences under the floor(n/2) split:
//   worst W(n) = W(floor(n/2)) + W(ceil(n/2)) + n - 1
//   best  B(n) = B(floor(n/2)) + B(ceil(n/2)) + floor(n/2)
std::uint64_t mergesort_worst_count(int n);
std::uint64_t mergesort_best_count(int n);

}  // namespace smc
