#include <algorithm>
#include <numeric>

#include "kernel_common.hpp"
#include "smc/errors.hpp"
#include "smc/kernels.hpp"
#include "smc/perturb.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace smc::kernels::omp {
namespace {

// Chunks of consecutive ranks; each chunk unranks its first permutation and
// then steps with next_permutation.
template <typename Body>
void for_each_rank_chunked(std::uint64_t total, int n, Body&& body) {
  const auto chunks = static_cast<long long>((total + detail::kChunk - 1) / detail::kChunk);
#pragma omp parallel
  {
    std::vector<int> perm(static_cast<std::size_t>(n));
#pragma omp for schedule(dynamic, 4)
    for (long long c = 0; c < chunks; ++c) {
      const std::uint64_t lo = static_cast<std::uint64_t>(c) * detail::kChunk;
      const std::uint64_t hi = std::min(total, lo + detail::kChunk);
      lehmer_unrank_into(lo, perm);
      for (std::uint64_t r = lo; r < hi; ++r) {
        body(r, perm);
        std::next_permutation(perm.begin(), perm.end());
      }
    }
  }
}

// Thread-private histograms are used while they stay small; larger tables
// take atomic adds instead.
constexpr std::size_t kPrivateHistogramLimit = std::size_t{1} << 20;

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

std::vector<Count> memo_counts(Algorithm alg, int n, const SorterOptions& opts) {
  const std::uint64_t total = factorial_u64(n);
  std::vector<Count> counts(static_cast<std::size_t>(total));
  const auto chunks = static_cast<long long>((total + detail::kChunk - 1) / detail::kChunk);
#pragma omp parallel
  {
    std::vector<int> perm(static_cast<std::size_t>(n));
    ComparisonCounter counter(alg, opts);
#pragma omp for schedule(dynamic, 4)
    for (long long c = 0; c < chunks; ++c) {
      const std::uint64_t lo = static_cast<std::uint64_t>(c) * detail::kChunk;
      const std::uint64_t hi = std::min(total, lo + detail::kChunk);
      lehmer_unrank_into(lo, perm);
      for (std::uint64_t r = lo; r < hi; ++r) {
        counts[static_cast<std::size_t>(r)] = static_cast<Count>(counter.count(perm));
        std::next_permutation(perm.begin(), perm.end());
      }
    }
  }
  return counts;
}

std::vector<std::uint64_t> group_sums_direct(std::span<const Count> counts, int n, int k) {
  PerturbationSpec spec(n, k);
  std::vector<std::uint64_t> sums(counts.size(), 0);
  for_each_rank_chunked(counts.size(), n, [&](std::uint64_t r, const std::vector<int>& perm) {
    std::uint64_t s = 0;
    for_each_group_member(perm, k, [&](std::span<const int> m) { s += counts[lehmer_rank(m)]; });
    sums[static_cast<std::size_t>(r)] = s;
  });
  return sums;
}

std::vector<std::uint64_t> group_sums_marginal(std::span<const Count> counts, int n, int k) {
  PerturbationSpec spec(n, k);
  const int fixed_size = n - k;
  const std::size_t total = counts.size();
  std::vector<std::uint64_t> sums(total, 0);
  std::vector<std::uint32_t> keys(total);
  std::vector<std::uint64_t> marginal(static_cast<std::size_t>(falling_factorial_u64(n, fixed_size)));
  const bool private_histograms =
      marginal.size() * static_cast<std::size_t>(max_threads()) <= kPrivateHistogramLimit;
  const auto size = static_cast<long long>(total);

  for (const auto& fixed : detail::subsets(n, fixed_size)) {
    for_each_rank_chunked(total, n, [&](std::uint64_t r, const std::vector<int>& perm) {
      keys[static_cast<std::size_t>(r)] = detail::injection_key(perm.data(), fixed, n);
    });

    std::fill(marginal.begin(), marginal.end(), 0);
    if (private_histograms) {
#pragma omp parallel
      {
        std::vector<std::uint64_t> local(marginal.size(), 0);
#pragma omp for schedule(static)
        for (long long r = 0; r < size; ++r) local[keys[static_cast<std::size_t>(r)]] += counts[static_cast<std::size_t>(r)];
#pragma omp critical(smc_marginal_reduce)
        for (std::size_t i = 0; i < local.size(); ++i) marginal[i] += local[i];
      }
    } else {
#pragma omp parallel for schedule(static)
      for (long long r = 0; r < size; ++r) {
        const auto key = keys[static_cast<std::size_t>(r)];
#pragma omp atomic
        marginal[key] += counts[static_cast<std::size_t>(r)];
      }
    }

#pragma omp parallel for schedule(static)
    for (long long r = 0; r < size; ++r)
      sums[static_cast<std::size_t>(r)] += marginal[keys[static_cast<std::size_t>(r)]];
  }
  return sums;
}

ArgMax argmax(std::span<const std::uint64_t> values) {
  ArgMax best;
  bool have = false;
  const auto size = static_cast<long long>(values.size());
#pragma omp parallel
  {
    ArgMax local;
    bool local_have = false;
#pragma omp for schedule(static)
    for (long long r = 0; r < size; ++r) {
      const auto v = values[static_cast<std::size_t>(r)];
      if (!local_have || v > local.value) {
        local = {v, static_cast<Rank>(r)};
        local_have = true;
      }
    }
#pragma omp critical(smc_argmax_reduce)
    {
      if (local_have && (!have || local.value > best.value ||
                         (local.value == best.value && local.rank < best.rank))) {
        best = local;
        have = true;
      }
    }
  }
  return best;
}

}  // namespace smc::kernels::omp
