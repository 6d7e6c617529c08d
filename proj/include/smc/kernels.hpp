#pragma once

// Data-parallel kernels behind the exhaustive oracle. Each kernel has a serial
// reference in `serial::` and an OpenMP version in `omp::` with the same
// signature; results are exact integers, so both must agree bit for bit.

#include <cstdint>
#include <span>
#include <vector>

#include "smc/algorithm.hpp"
#include "smc/permutation.hpp"
#include "smc/sorters.hpp"

namespace smc::kernels {

using Count = std::uint16_t;

struct ArgMax {
  std::uint64_t value = 0;
  Rank rank = 0;
};

// Cost of one group-sum sweep for every input of size n, in table lookups.
//   direct:   N! * N!/(N-K)!   (every member of every group)
//   marginal: N! * C(N,K)      (one lookup per fixed-position subset per input)
std::uint64_t direct_sweep_cost(int n, int k);
std::uint64_t marginal_sweep_cost(int n, int k);

namespace serial {

// counts[r] = comparisons on the permutation of Lehmer rank r.
std::vector<Count> memo_counts(Algorithm alg, int n, const SorterOptions& opts);

// sums[r] = sum of counts over the perturbed group of permutation r, by
// enumerating every group member.
std::vector<std::uint64_t> group_sums_direct(std::span<const Count> counts, int n, int k);

// Same sums by marginalising over the N-K positions a member leaves fixed:
// sums[p] = sum over fixed sets F, |F| = N-K, of G_F(p|F), where G_F(v) adds
// counts of all permutations equal to v on F.
std::vector<std::uint64_t> group_sums_marginal(std::span<const Count> counts, int n, int k);

// Largest value, lowest rank on ties.
ArgMax argmax(std::span<const std::uint64_t> values);

}  // namespace serial

namespace omp {

std::vector<Count> memo_counts(Algorithm alg, int n, const SorterOptions& opts);
std::vector<std::uint64_t> group_sums_direct(std::span<const Count> counts, int n, int k);
std::vector<std::uint64_t> group_sums_marginal(std::span<const Count> counts, int n, int k);
ArgMax argmax(std::span<const std::uint64_t> values);

// Threads used by the omp:: kernels (1 when built without OpenMP).
int max_threads();
void set_threads(int threads);

}  // namespace omp

}  // namespace smc::kernels
