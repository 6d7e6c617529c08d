#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "smc/algorithm.hpp"
#include "smc/exact.hpp"
#include "smc/permutation.hpp"
#include "smc/sorters.hpp"

namespace smc {

// Selects K of N positions and rearranges their values; sigma = K/N.
class PerturbationSpec {
 public:
  // Throws DomainError unless 1 <= k <= n.
  PerturbationSpec(int n, int k);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  double sigma() const noexcept { return static_cast<double>(k_) / static_cast<double>(n_); }

 private:
  int n_;
  int k_;
};

// N!/(N-K)!, the number of members (with multiplicity) of every perturbed group.
BigInt group_size(int n, int k);
std::uint64_t group_size_u64(int n, int k);

using MemberVisitor = std::function<void(std::span<const int>)>;

// Streams the perturbed group of p: for each of the C(N,K) position subsets
// (lexicographic), every K! rearrangement of the values at those positions,
// other positions fixed. Duplicates are emitted with their multiplicity.
void for_each_group_member(std::span<const int> p, int k, const MemberVisitor& visit);

// Materialised group; only sensible for small groups.
std::vector<Permutation> perturbed_group(const Permutation& p, int k);

// Comparison counts of every permutation of 1..N, indexed by Lehmer rank.
class RuntimeMemo {
 public:
  using Count = std::uint16_t;

  // Builds the table on the OpenMP kernel. Throws BudgetExceeded when n > limits.max_n.
  static RuntimeMemo build(Algorithm alg, int n, const SorterOptions& opts = {},
                           const EnumerationLimits& limits = {});

  RuntimeMemo(Algorithm alg, int n, SorterOptions opts, std::vector<Count> counts);

  Algorithm algorithm() const noexcept { return alg_; }
  int n() const noexcept { return n_; }
  const SorterOptions& options() const noexcept { return opts_; }
  std::span<const Count> counts() const noexcept { return counts_; }
  Count operator[](Rank r) const { return counts_[static_cast<std::size_t>(r)]; }
  Count lookup(std::span<const int> perm) const { return counts_[lehmer_rank(perm)]; }

  bool matches(Algorithm alg, int n, const SorterOptions& opts) const noexcept {
    return alg_ == alg && n_ == n && opts_ == opts;
  }

  // Binary cache file, all integers little-endian:
  //   8 bytes  magic "SMCMEMO1"
  //   u32      algorithm (0 quicksort, 1 m3quicksort, 2 bubblesort, 3 mergesort)
  //   u32      N
  //   u32      M3 convention (0 fixed, 1 instrumented)
  //   u64      entry count (N!)
  //   u16[]    counts by Lehmer rank
  void save(const std::filesystem::path& path) const;
  // nullopt when the file is absent, malformed, or keyed differently.
  static std::optional<RuntimeMemo> load(const std::filesystem::path& path, Algorithm alg, int n,
                                         const SorterOptions& opts);
  // Loads `<dir>/<alg>_<m3 convention>_<N>.memo`, building and saving it when absent.
  static RuntimeMemo load_or_build(const std::filesystem::path& dir, Algorithm alg, int n,
                                   const SorterOptions& opts = {},
                                   const EnumerationLimits& limits = {});

 private:
  Algorithm alg_;
  int n_;
  SorterOptions opts_;
  std::vector<Count> counts_;
};

// Exact mean of comparison counts over a perturbed group.
struct GroupAverage {
  std::uint64_t sum = 0;
  std::uint64_t size = 0;

  Rational exact() const { return Rational(BigInt(sum), BigInt(size)); }
  double value() const { return static_cast<double>(sum) / static_cast<double>(size); }
};

struct GroupBudget {
  // Largest group enumerated for a single input.
  std::uint64_t max_group_size = 10'000'000;
};

// Average comparisons of `alg` over the perturbed group of p. Uses memo lookups
// when a matching memo is supplied, direct sorting otherwise.
GroupAverage avg_perturbed_runtime(Algorithm alg, std::span<const int> p, int k,
                                   const RuntimeMemo* memo = nullptr,
                                   const SorterOptions& opts = {}, const GroupBudget& budget = {});

}  // namespace smc
