#include <algorithm>
#include <numeric>

#include "kernel_common.hpp"
#include "smc/errors.hpp"
#include "smc/kernels.hpp"
#include "smc/perturb.hpp"

namespace smc::kernels {

std::uint64_t direct_sweep_cost(int n, int k) {
  const std::uint64_t inputs = factorial_u64(n);
  const std::uint64_t group = falling_factorial_u64(n, k);
  if (group != 0 && inputs > UINT64_MAX / group) return UINT64_MAX;
  return inputs * group;
}

std::uint64_t marginal_sweep_cost(int n, int k) {
  const std::uint64_t inputs = factorial_u64(n);
  const std::uint64_t subsets = binomial_u64(n, k);
  if (subsets != 0 && inputs > UINT64_MAX / subsets) return UINT64_MAX;
  return inputs * subsets;
}

namespace serial {

std::vector<Count> memo_counts(Algorithm alg, int n, const SorterOptions& opts) {
  std::vector<Count> counts(static_cast<std::size_t>(factorial_u64(n)));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  ComparisonCounter counter(alg, opts);
  for (auto& c : counts) {
    c = static_cast<Count>(counter.count(perm));
    std::next_permutation(perm.begin(), perm.end());
  }
  return counts;
}

std::vector<std::uint64_t> group_sums_direct(std::span<const Count> counts, int n, int k) {
  PerturbationSpec spec(n, k);
  std::vector<std::uint64_t> sums(counts.size(), 0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  for (auto& s : sums) {
    for_each_group_member(perm, k, [&](std::span<const int> m) { s += counts[lehmer_rank(m)]; });
    std::next_permutation(perm.begin(), perm.end());
  }
  return sums;
}

std::vector<std::uint64_t> group_sums_marginal(std::span<const Count> counts, int n, int k) {
  PerturbationSpec spec(n, k);
  const int fixed_size = n - k;
  std::vector<std::uint64_t> sums(counts.size(), 0);
  std::vector<std::uint32_t> keys(counts.size());
  std::vector<std::uint64_t> marginal(static_cast<std::size_t>(falling_factorial_u64(n, fixed_size)));
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (const auto& fixed : detail::subsets(n, fixed_size)) {
    std::iota(perm.begin(), perm.end(), 1);
    for (auto& key : keys) {
      key = detail::injection_key(perm.data(), fixed, n);
      std::next_permutation(perm.begin(), perm.end());
    }
    std::fill(marginal.begin(), marginal.end(), 0);
    for (std::size_t r = 0; r < keys.size(); ++r) marginal[keys[r]] += counts[r];
    for (std::size_t r = 0; r < keys.size(); ++r) sums[r] += marginal[keys[r]];
  }
  return sums;
}

ArgMax argmax(std::span<const std::uint64_t> values) {
  ArgMax best;
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (r == 0 || values[r] > best.value) best = {values[r], static_cast<Rank>(r)};
  }
  return best;
}

}  // namespace serial
}  // namespace smc::kernels
