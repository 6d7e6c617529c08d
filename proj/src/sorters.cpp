#include "smc/sorters.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "smc/errors.hpp"
#include "smc/hillclimb.hpp"

namespace smc {
namespace {

// Stable partition around a[0]; relative order inside each side is kept, so a
// uniformly random input yields uniformly random sub-lists.
std::uint64_t quicksort_count(int* a, int n, int* tmp) {
  if (n <= 1) return 0;
  const int pivot = a[0];
  int less = 0;
  int greater = 0;
  for (int i = 1; i < n; ++i) {
    if (a[i] < pivot)
      a[less++] = a[i];
    else
      tmp[greater++] = a[i];
  }
  a[less] = pivot;
  std::copy(tmp, tmp + greater, a + less + 1);
  return static_cast<std::uint64_t>(n - 1) + quicksort_count(a, less, tmp) +
         quicksort_count(a + less + 1, greater, tmp);
}

std::uint64_t m3quicksort_count(int* a, int n, int* tmp, M3Convention conv) {
  if (n <= 1) return 0;
  if (n == 2) {
    if (a[0] > a[1]) std::swap(a[0], a[1]);
    return 1;
  }
  const int x = a[0];
  const int y = a[(n - 1) / 2];
  const int z = a[n - 1];
  std::uint64_t median_cost = 2;
  const int lo = std::min(x, y);
  const int hi = std::max(x, y);
  int pivot;
  if (z > hi) {
    pivot = hi;
  } else {
    median_cost = 3;
    pivot = std::max(z, lo);
  }
  if (conv == M3Convention::Fixed) median_cost = 3;

  int less = 0;
  int greater = 0;
  for (int i = 0; i < n; ++i) {
    const int v = a[i];
    if (v == pivot) continue;
    if (v < pivot)
      a[less++] = v;
    else
      tmp[greater++] = v;
  }
  a[less] = pivot;
  std::copy(tmp, tmp + greater, a + less + 1);
  return median_cost + static_cast<std::uint64_t>(n - 3) +
         m3quicksort_count(a, less, tmp, conv) +
         m3quicksort_count(a + less + 1, greater, tmp, conv);
}

std::uint64_t bubblesort_count(int* a, int n) {
  std::uint64_t comparisons = 0;
  for (int end = n - 1; end > 0; --end) {
    bool swapped = false;
    for (int j = 0; j < end; ++j) {
      ++comparisons;
      if (a[j] > a[j + 1]) {
        std::swap(a[j], a[j + 1]);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  return comparisons;
}

std::uint64_t mergesort_count(int* a, int n, int* tmp) {
  if (n <= 1) return 0;
  const int half = n / 2;
  std::uint64_t comparisons = mergesort_count(a, half, tmp) + mergesort_count(a + half, n - half, tmp);
  int i = 0;
  int j = half;
  int k = 0;
  while (i < half && j < n) {
    ++comparisons;
    tmp[k++] = (a[j] < a[i]) ? a[j++] : a[i++];
  }
  while (i < half) tmp[k++] = a[i++];
  while (j < n) tmp[k++] = a[j++];
  std::copy(tmp, tmp + n, a);
  return comparisons;
}

void check_enumerable(int n, const EnumerationLimits& limits) {
  if (n > limits.max_n)
    throw BudgetExceeded("N! enumeration for N=" + std::to_string(n) +
                         " exceeds the cap N <= " + std::to_string(limits.max_n));
}

}  // namespace

std::uint64_t ComparisonCounter::sort(std::span<int> values) {
  const int n = static_cast<int>(values.size());
  if (scratch_.size() < values.size()) scratch_.resize(values.size());
  switch (alg_) {
    case Algorithm::Quicksort:
      return quicksort_count(values.data(), n, scratch_.data());
    case Algorithm::M3Quicksort:
      return m3quicksort_count(values.data(), n, scratch_.data(), opts_.m3);
    case Algorithm::BubblesortOpt:
      return bubblesort_count(values.data(), n);
    case Algorithm::Mergesort:
      return mergesort_count(values.data(), n, scratch_.data());
  }
  return 0;
}

std::uint64_t ComparisonCounter::count(std::span<const int> values) {
  work_.assign(values.begin(), values.end());
  return sort(work_);
}

RuntimeCount count_comparisons(Algorithm alg, std::span<const int> values, const SorterOptions& opts) {
  ComparisonCounter counter(alg, opts);
  return {counter.count(values)};
}

RuntimeCount count_comparisons(Algorithm alg, const Permutation& p, const SorterOptions& opts) {
  return count_comparisons(alg, p.items(), opts);
}

Rational average_runtime_exact(Algorithm alg, int n, const SorterOptions& opts,
                               const EnumerationLimits& limits) {
  if (n < 0) throw DomainError("N must be nonnegative");
  check_enumerable(n, limits);
  if (n <= 1) return Rational(0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  ComparisonCounter counter(alg, opts);
  std::uint64_t total = 0;
  do {
    total += counter.count(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Rational(BigInt(total), BigInt(factorial_u64(n)));
}

MaxRuntimeResult max_runtime(Algorithm alg, int n, MaxStrategy strategy, std::uint64_t seed,
                             int restarts, const SorterOptions& opts,
                             const EnumerationLimits& limits) {
  if (n < 0) throw DomainError("N must be nonnegative");
  switch (strategy) {
    case MaxStrategy::ClosedForm: {
      Permutation witness;
      if (alg == Algorithm::Quicksort)
        witness = Permutation::identity(n);
      else if (alg == Algorithm::BubblesortOpt)
        witness = Permutation::reversed(n);
      else
        throw DomainError("closed-form MaxRuntime is only available for quicksort and bubblesort, not " +
                          std::string(to_string(alg)));
      const RuntimeCount count = count_comparisons(alg, witness, opts);
      return {count, std::move(witness), strategy};
    }
    case MaxStrategy::Exhaustive: {
      check_enumerable(n, limits);
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 1);
      ComparisonCounter counter(alg, opts);
      std::uint64_t best = 0;
      std::vector<int> witness = perm;
      do {
        const std::uint64_t c = counter.count(perm);
        if (c > best) {
          best = c;
          witness = perm;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      return {{best}, Permutation(std::move(witness)), strategy};
    }
    case MaxStrategy::HillClimb: {
      if (n == 0) return {{0}, Permutation{}, strategy};
      HillClimbOptions hc;
      hc.restarts = restarts;
      hc.seed = seed;
      auto objective = [alg, opts](std::span<const int> p) {
        ComparisonCounter counter(alg, opts);
        return counter.count(p);
      };
      HillClimbOutcome out = hill_climb_max(n, objective, hc);
      return {{out.best_value}, std::move(out.witness), strategy};
    }
  }
  throw DomainError("unknown MaxRuntime strategy");
}

std::uint64_t mergesort_worst_count(int n) {
  if (n <= 1) return 0;
  return mergesort_worst_count(n / 2) + mergesort_worst_count(n - n / 2) +
         static_cast<std::uint64_t>(n - 1);
}

std::uint64_t mergesort_best_count(int n) {
  if (n <= 1) return 0;
  return mergesort_best_count(n / 2) + mergesort_best_count(n - n / 2) +
         static_cast<std::uint64_t>(n / 2);
}

}  // namespace smc
