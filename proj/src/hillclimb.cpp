#include "smc/hillclimb.hpp"

#include <numeric>
#include <vector>

#include "smc/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace smc {

Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> items(static_cast<std::size_t>(n));
  std::iota(items.begin(), items.end(), 1);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(items[static_cast<std::size_t>(i)], items[static_cast<std::size_t>(j)]);
  }
  return Permutation(std::move(items));
}

namespace {

struct Move {
  std::uint64_t value = 0;
  long long index = -1;
};

// Better value wins; equal values go to the lower neighbour index.
bool better(const Move& a, const Move& b) {
  if (a.index < 0) return false;
  if (b.index < 0) return true;
  return a.value > b.value || (a.value == b.value && a.index < b.index);
}

Move best_neighbour(const Permutation& current, const std::vector<std::pair<int, int>>& pairs,
                    const PermutationObjective& objective, bool parallel) {
  const auto count = static_cast<long long>(pairs.size());
  Move best;
#pragma omp parallel if (parallel)
  {
    Move local;
    std::vector<int> work(current.items().begin(), current.items().end());
#pragma omp for schedule(static)
    for (long long idx = 0; idx < count; ++idx) {
      const auto [i, j] = pairs[static_cast<std::size_t>(idx)];
      std::swap(work[static_cast<std::size_t>(i)], work[static_cast<std::size_t>(j)]);
      const Move candidate{objective(work), idx};
      std::swap(work[static_cast<std::size_t>(i)], work[static_cast<std::size_t>(j)]);
      if (better(candidate, local)) local = candidate;
    }
#pragma omp critical(smc_hill_climb_reduce)
    {
      if (better(local, best)) best = local;
    }
  }
  return best;
}

}  // namespace

HillClimbOutcome hill_climb_max(int n, const PermutationObjective& objective,
                                const HillClimbOptions& opts) {
  if (n < 1) throw DomainError("hill climbing needs N >= 1");
  if (opts.restarts < 1) throw DomainError("hill climbing needs at least one restart");

  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  std::mt19937_64 rng(opts.seed);
  HillClimbOutcome out;
  bool have_best = false;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Permutation current = random_permutation(n, rng);
    std::uint64_t value = objective(current.items());
    ++out.evaluations;
    while (!pairs.empty()) {
      const Move move = best_neighbour(current, pairs, objective, opts.parallel_neighbours);
      out.evaluations += pairs.size();
      if (move.value <= value) break;
      const auto [i, j] = pairs[static_cast<std::size_t>(move.index)];
      current.swap_positions(i, j);
      value = move.value;
    }
    if (!have_best || value > out.best_value) {
      out.best_value = value;
      out.witness = current;
      have_best = true;
    }
  }
  return out;
}

}  // namespace smc
